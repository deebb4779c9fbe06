// SPDX-License-Identifier: MIT

/**
 * @file topology.hpp
 * @brief Physical qubit layouts: the topology families and distance queries.
 *
 * A topology graph has vertices 0..|V|-1 (physical locations) and undirected
 * edges between locations whose qubits may interact. Each family has a
 * smallest member; build_topology() returns the smallest member with at
 * least as many vertices as the circuit has qubits.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nnplace {

using VertexId = std::uint32_t;

enum class TopologyKind : std::uint8_t { Path1D, Cycle, Mesh2D, Torus, Grid3D, CyclicButterfly, FullyConnected, Custom };

/// CLI spelling: 1d, cycle, mesh2d, torus, grid3d, cbn, full.
[[nodiscard]] std::string_view to_string(TopologyKind kind) noexcept;
[[nodiscard]] std::optional<TopologyKind> topology_kind_from_string(std::string_view s) noexcept;

/// Undirected edge with u < v.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;

    Edge() = default;
    Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

    auto operator<=>(const Edge&) const = default;
};

class TopologyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested qubit count cannot be served by the family.
class UnsupportedSize : public TopologyError {
public:
    using TopologyError::TopologyError;
};

class Disconnected : public TopologyError {
public:
    using TopologyError::TopologyError;
};

class TopologyGraph {
public:
    /// Builds a graph from an edge list; rejects self-loops, duplicate edges
    /// and out-of-range endpoints. Connectivity is checked lazily.
    TopologyGraph(TopologyKind kind, std::size_t num_vertices, std::vector<Edge> edges,
                  std::vector<std::size_t> dims = {});

    [[nodiscard]] TopologyKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t num_vertices() const noexcept { return num_vertices_; }
    [[nodiscard]] std::size_t num_edges() const noexcept { return edges_.size(); }
    /// Sorted lexicographically.
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
    /// Shape metadata: {n} for path/cycle/full, {rows, cols} for mesh/torus,
    /// {a, b, c} for 3D grids, {order} for the butterfly.
    [[nodiscard]] const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    /// Sorted ascending.
    [[nodiscard]] const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_.at(v); }
    [[nodiscard]] std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }
    [[nodiscard]] std::size_t max_degree() const noexcept;
    [[nodiscard]] bool adjacent(VertexId a, VertexId b) const;
    /// Index into edges(), if (a, b) is an edge.
    [[nodiscard]] std::optional<std::size_t> edge_index(VertexId a, VertexId b) const;
    [[nodiscard]] bool connected() const;

    /// One `u v` line per edge.
    [[nodiscard]] std::string edge_list() const;

private:
    TopologyKind kind_;
    std::size_t num_vertices_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> dims_;
    std::vector<std::vector<VertexId>> adjacency_;
};

[[nodiscard]] TopologyGraph make_path(std::size_t vertices);
[[nodiscard]] TopologyGraph make_cycle(std::size_t vertices);
[[nodiscard]] TopologyGraph make_mesh(std::size_t rows, std::size_t cols);
[[nodiscard]] TopologyGraph make_torus(std::size_t rows, std::size_t cols);
[[nodiscard]] TopologyGraph make_grid3d(std::size_t a, std::size_t b, std::size_t c);
/// Wrap-around butterfly of the given order r: r * 2^r vertices.
[[nodiscard]] TopologyGraph make_cyclic_butterfly(std::size_t order);
[[nodiscard]] TopologyGraph make_fully_connected(std::size_t vertices);

/// Smallest member of the family with at least max(n, family minimum) vertices.
[[nodiscard]] TopologyGraph build_topology(TopologyKind kind, std::size_t num_qubits);

/// Smallest vertex count any member of the family may have.
[[nodiscard]] std::size_t family_minimum(TopologyKind kind) noexcept;

/// Row-major |V| x |V| BFS hop counts.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(std::size_t n, std::vector<std::uint32_t> data) : n_(n), data_(std::move(data)) {}

    [[nodiscard]] std::uint32_t operator()(VertexId a, VertexId b) const { return data_[a * n_ + b]; }
    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::uint32_t diameter() const noexcept;

private:
    std::size_t n_ = 0;
    std::vector<std::uint32_t> data_;
};

/// Throws Disconnected if some pair is unreachable.
[[nodiscard]] DistanceMatrix shortest_distances(const TopologyGraph& graph);

}  // namespace nnplace
