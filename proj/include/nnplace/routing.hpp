// SPDX-License-Identifier: MIT

/**
 * @file routing.hpp
 * @brief Placements, swap steps and routing solutions shared by the solvers,
 *        the ILP model and the verifier.
 *
 * Cycle convention: placement C_t is the configuration at the start of cycle
 * t; steps[t] is the set of swaps executed during cycle t and turns C_t into
 * C_{t+1}. An interaction is met at cycle t when C_t makes all of its pairs
 * adjacent.
 */

#pragma once

#include "nnplace/leveling.hpp"
#include "nnplace/topology.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace nnplace {

class InvalidPlacement : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Injective map qubit -> vertex, with the inverse kept in sync.
class Placement {
public:
    Placement() = default;
    /// Throws InvalidPlacement unless the map is injective into [0, num_vertices).
    Placement(std::vector<VertexId> vertex_of, std::size_t num_vertices);

    static Placement identity(std::size_t num_qubits, std::size_t num_vertices);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return vertex_of_.size(); }
    [[nodiscard]] std::size_t num_vertices() const noexcept { return occupant_.size(); }
    [[nodiscard]] VertexId vertex_of(QubitId q) const { return vertex_of_.at(q); }
    [[nodiscard]] std::optional<QubitId> occupant(VertexId v) const;
    [[nodiscard]] const std::vector<VertexId>& vertices() const noexcept { return vertex_of_; }

    /// Exchanges the contents (qubit or empty slot) of two vertices.
    void swap_vertices(VertexId a, VertexId b);

    /// True when every pair sits on adjacent vertices.
    [[nodiscard]] bool satisfies(const TopologyGraph& graph, const Interaction& interaction) const;

    bool operator==(const Placement& other) const { return vertex_of_ == other.vertex_of_ && occupant_.size() == other.occupant_.size(); }

private:
    static constexpr std::uint32_t kEmpty = 0xffffffffu;
    std::vector<VertexId> vertex_of_;
    std::vector<std::uint32_t> occupant_;
};

/// Swaps executed in one cycle; sorted, and a matching on graph edges when valid.
struct SwapStep {
    std::vector<Edge> swaps;

    [[nodiscard]] bool empty() const noexcept { return swaps.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return swaps.size(); }
    bool operator==(const SwapStep&) const = default;
};

enum class Formulation : std::uint8_t { P2, P3 };

[[nodiscard]] std::string_view to_string(Formulation f) noexcept;

struct RoutingSolution {
    Formulation formulation = Formulation::P2;
    Placement start;
    /// One entry per cycle, possibly empty.
    std::vector<SwapStep> steps;
    /// Cycle at which each interaction is declared met (non-decreasing).
    std::vector<std::size_t> met_cycle;
    /// P3: activation cycle of each level (strictly increasing).
    std::vector<std::size_t> level_cycle;

    std::size_t swap_count = 0;
    /// Cycles containing at least one swap.
    std::size_t swap_delay = 0;
    /// P2: levels + swap cycles. P3: 1 + activation cycle of the last level.
    std::size_t total_delay = 0;
    /// False when the search budget expired and this is the best incumbent.
    bool optimal = true;

    /// Placement after replaying every step.
    [[nodiscard]] Placement final_placement() const;
    /// Placement at the start of the given cycle (clamped to the last step).
    [[nodiscard]] Placement placement_at(std::size_t cycle) const;
};

/// Recomputes swap_count, swap_delay and total_delay from the steps and cycles.
void refresh_metrics(RoutingSolution& solution);

}  // namespace nnplace
