// SPDX-License-Identifier: MIT

/**
 * @file solver.hpp
 * @brief Exact routing by best-first search, a brute-force oracle and a
 *        greedy upper-bound router.
 *
 * P2 minimizes (swap cycles, swaps) lexicographically while meeting the
 * interactions in order. P3 schedules one level activation per cycle at
 * most, each only while its interaction is met, and forbids swaps touching
 * the active qubits of the level activated in the same cycle.
 *
 * Both searches key states by the placement of the qubits that still
 * matter plus the progress index, and only try swaps on edges with such a
 * qubit at an endpoint. The cycle heuristic max ceil((d - 1) / 2) is
 * admissible because one cycle moves each qubit at most one hop, so a pair's
 * distance drops by at most two; likewise each swap shortens a non-adjacent
 * pair by at most one hop, which bounds the swap count by max(d - 1).
 */

#pragma once

#include "nnplace/routing.hpp"

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nnplace {

class Unsatisfiable : public std::runtime_error {
public:
    Unsatisfiable(std::size_t interaction, const std::string& detail)
        : std::runtime_error(detail), interaction_(interaction) {}

    /// Index of the first interaction that cannot be embedded.
    [[nodiscard]] std::size_t interaction() const noexcept { return interaction_; }

private:
    std::size_t interaction_;
};

class GuardExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class P3Objective : std::uint8_t {
    /// 1 + activation cycle of the last level.
    Makespan,
    /// Sum of activation cycles, the objective of the P3 ILP.
    ActivationSum,
};

struct SolveOptions {
    /// Wall-clock limit; on expiry the best incumbent is returned with optimal = false.
    std::optional<std::chrono::duration<double>> budget;
    /// false runs uniform-cost search (zero heuristic).
    bool use_heuristic = true;
    P3Objective objective = P3Objective::Makespan;
    /// P3 only: latest allowed activation cycle.
    std::optional<std::size_t> horizon;
    /// Expanded-node cap; exceeding it counts as budget expiry.
    std::size_t max_nodes = 4'000'000;
};

/// Injective map of the interaction's paired qubits onto vertices making
/// every pair adjacent, if one exists. Result is indexed by qubit id and
/// holds kNoVertex for qubits outside the pairs.
inline constexpr VertexId kNoVertex = 0xffffffffu;
[[nodiscard]] std::optional<std::vector<VertexId>> find_embedding(const TopologyGraph& graph,
                                                                  const Interaction& interaction,
                                                                  std::size_t num_qubits);
[[nodiscard]] bool embeddable(const TopologyGraph& graph, const Interaction& interaction, std::size_t num_qubits);

/// Throws Unsatisfiable naming the first interaction that cannot be embedded.
void check_satisfiable(const TopologyGraph& graph, const std::vector<Interaction>& interactions,
                       std::size_t num_qubits);

[[nodiscard]] RoutingSolution solve_p2(const TopologyGraph& graph, const Placement& start,
                                       const std::vector<Interaction>& interactions, const SolveOptions& options = {});

[[nodiscard]] RoutingSolution solve_p3(const TopologyGraph& graph, const Placement& start,
                                       const std::vector<Interaction>& interactions, const SolveOptions& options = {});

/// Single interaction, uniform-cost layered search over full placements.
[[nodiscard]] RoutingSolution solve_p1(const TopologyGraph& graph, const Placement& start,
                                       const Interaction& interaction);

struct BruteForceResult {
    std::size_t swap_count = 0;
    std::size_t swap_delay = 0;

    bool operator==(const BruteForceResult&) const = default;
};

inline constexpr std::size_t kBruteForceMaxVertices = 9;
inline constexpr std::size_t kBruteForceMaxHorizon = 6;

/// Exhaustive P2 enumeration of every matching sequence of up to `horizon`
/// cycles. nullopt when nothing meets all interactions within the horizon.
/// Throws GuardExceeded beyond 9 vertices or 6 cycles.
[[nodiscard]] std::optional<BruteForceResult> brute_force_route(const TopologyGraph& graph, const Placement& start,
                                                                const std::vector<Interaction>& interactions,
                                                                std::size_t horizon);

/// Feasible schedule from per-interaction greedy routing; for P3 each
/// interaction's swap cycles are followed by its own activation cycle.
/// Throws Unsatisfiable.
[[nodiscard]] RoutingSolution greedy_upper_bound(const TopologyGraph& graph, const Placement& start,
                                                 const std::vector<Interaction>& interactions,
                                                 Formulation formulation = Formulation::P2);

}  // namespace nnplace
