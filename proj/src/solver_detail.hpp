// SPDX-License-Identifier: MIT

#pragma once

#include "nnplace/solver.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace nnplace::detail {

/// Embedding of the paired qubits minimizing the summed distance from their
/// current vertices. Search stops improving after node_limit nodes.
std::optional<std::vector<VertexId>> closest_embedding(const TopologyGraph& graph, const DistanceMatrix& dist,
                                                       const Interaction& interaction, const Placement& current,
                                                       std::size_t node_limit);

/// Calls visit(matching) for every matching of `edges` (sorted, lexicographic
/// order, empty matching first). Stops early when visit returns false.
void for_each_matching(const std::vector<Edge>& edges, std::size_t num_vertices,
                       const std::function<bool(const std::vector<Edge>&)>& visit);

/// Packs a swap sequence into cycles, each swap as early as the swaps
/// before it on the same vertices allow.
std::vector<SwapStep> pack_swaps(const std::vector<Edge>& sequence, std::size_t num_vertices);

/// Drops empty steps after the last non-empty one.
void trim_steps(std::vector<SwapStep>& steps);

}  // namespace nnplace::detail
