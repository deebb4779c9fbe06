// SPDX-License-Identifier: MIT

/**
 * @file pipeline.hpp
 * @brief Block-wise routing of whole circuits, SWAP insertion and reports.
 *
 * The level schedule is cut into blocks of b consecutive levels. Blocks are
 * solved in order and each block starts from the exit placement of the one
 * before it. The merged circuit has one line per topology vertex.
 */

#pragma once

#include "nnplace/solver.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nnplace {

struct Block {
    /// Inclusive level range [lo, hi].
    std::size_t lo = 0;
    std::size_t hi = 0;
    std::vector<Interaction> interactions;
    Placement entry;

    [[nodiscard]] std::size_t size() const noexcept { return hi - lo + 1; }
};

/// ceil(levels / b) blocks in level order; interactions and entry placements are left empty.
/// Throws std::invalid_argument for b = 0.
[[nodiscard]] std::vector<Block> split_blocks(const LevelSchedule& schedule, std::size_t block_size);

class VerificationFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RouteOptions {
    Formulation formulation = Formulation::P2;
    std::size_t block_size = 1;
    SolveOptions solve;
};

struct RoutedCircuit {
    std::string name;
    QuantumCircuit original;
    LevelSchedule schedule;
    TopologyGraph topology;
    Placement start;
    Formulation formulation = Formulation::P2;
    std::size_t block_size = 1;
    std::vector<Block> blocks;
    std::vector<RoutingSolution> solutions;
    /// Original gates plus inserted SWAP gates, one line per vertex.
    QuantumCircuit merged;

    std::size_t swap_count = 0;
    std::size_t swap_delay = 0;
    std::size_t total_delay = 0;
    double wall_time_s = 0.0;

    [[nodiscard]] bool all_optimal() const noexcept;
    [[nodiscard]] Placement exit_placement() const;
};

/// Solves every block with the exact solver and merges the result.
/// Throws Unsatisfiable (message names the level and its gates) and
/// VerificationFailed when the merged circuit does not replay.
[[nodiscard]] RoutedCircuit route_circuit(const QuantumCircuit& circuit, const TopologyGraph& topology,
                                          const Placement& start, const RouteOptions& options,
                                          std::string name = "circuit");

/// Builds the merged circuit from routed.blocks and routed.solutions after
/// verifying each block; throws VerificationFailed on any mismatch.
[[nodiscard]] QuantumCircuit insert_swaps(const RoutedCircuit& routed);

/// Line names of the merged circuit: the qubit initially on each vertex, or v<index>.
[[nodiscard]] std::vector<std::string> vertex_line_names(const QuantumCircuit& circuit, const Placement& start);

/// One JSON object on a single line.
[[nodiscard]] std::string report_json(const RoutedCircuit& routed);
/// Aligned text table with a header row, one row per circuit.
[[nodiscard]] std::string report_table(const std::vector<RoutedCircuit>& routed);

}  // namespace nnplace
