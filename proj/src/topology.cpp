// SPDX-License-Identifier: MIT

#include "nnplace/topology.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <limits>
#include <queue>

namespace nnplace {

std::string_view to_string(TopologyKind kind) noexcept {
    switch (kind) {
    case TopologyKind::Path1D: return "1d";
    case TopologyKind::Cycle: return "cycle";
    case TopologyKind::Mesh2D: return "mesh2d";
    case TopologyKind::Torus: return "torus";
    case TopologyKind::Grid3D: return "grid3d";
    case TopologyKind::CyclicButterfly: return "cbn";
    case TopologyKind::FullyConnected: return "full";
    case TopologyKind::Custom: return "custom";
    }
    return "?";
}

std::optional<TopologyKind> topology_kind_from_string(std::string_view s) noexcept {
    for (auto k : {TopologyKind::Path1D, TopologyKind::Cycle, TopologyKind::Mesh2D, TopologyKind::Torus,
                   TopologyKind::Grid3D, TopologyKind::CyclicButterfly, TopologyKind::FullyConnected}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

TopologyGraph::TopologyGraph(TopologyKind kind, std::size_t num_vertices, std::vector<Edge> edges,
                             std::vector<std::size_t> dims)
    : kind_(kind), num_vertices_(num_vertices), edges_(std::move(edges)), dims_(std::move(dims)),
      adjacency_(num_vertices) {
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.u == e.v) throw TopologyError(fmt::format("self-loop at vertex {}", e.u));
        if (e.v >= num_vertices_) throw TopologyError(fmt::format("edge ({}, {}) out of range", e.u, e.v));
        if (i > 0 && edges_[i - 1] == e) throw TopologyError(fmt::format("duplicate edge ({}, {})", e.u, e.v));
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

std::size_t TopologyGraph::max_degree() const noexcept {
    std::size_t best = 0;
    for (const auto& adj : adjacency_) best = std::max(best, adj.size());
    return best;
}

bool TopologyGraph::adjacent(VertexId a, VertexId b) const {
    const auto& adj = adjacency_.at(a);
    return std::binary_search(adj.begin(), adj.end(), b);
}

std::optional<std::size_t> TopologyGraph::edge_index(VertexId a, VertexId b) const {
    if (a == b) return std::nullopt;
    const Edge e(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
}

bool TopologyGraph::connected() const {
    if (num_vertices_ == 0) return true;
    std::vector<bool> seen(num_vertices_, false);
    std::vector<VertexId> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (VertexId w : adjacency_[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == num_vertices_;
}

std::string TopologyGraph::edge_list() const {
    std::string out;
    for (const auto& e : edges_) out += fmt::format("{} {}\n", e.u, e.v);
    return out;
}

TopologyGraph make_path(std::size_t vertices) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < vertices; ++i) {
        edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(i + 1));
    }
    return {TopologyKind::Path1D, vertices, std::move(edges), {vertices}};
}

TopologyGraph make_cycle(std::size_t vertices) {
    if (vertices < 3) throw UnsupportedSize("a cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < vertices; ++i) {
        edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % vertices));
    }
    return {TopologyKind::Cycle, vertices, std::move(edges), {vertices}};
}

namespace {

TopologyGraph grid2d(TopologyKind kind, std::size_t rows, std::size_t cols, bool wrap) {
    if (rows < 3 || cols < 3) throw UnsupportedSize("2D mesh/torus dimensions must be at least 3");
    auto id = [cols](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * cols + c); };
    std::vector<Edge> edges;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            else if (wrap) edges.emplace_back(id(r, c), id(r, 0));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
            else if (wrap) edges.emplace_back(id(r, c), id(0, c));
        }
    }
    return {kind, rows * cols, std::move(edges), {rows, cols}};
}

}  // namespace

TopologyGraph make_mesh(std::size_t rows, std::size_t cols) { return grid2d(TopologyKind::Mesh2D, rows, cols, false); }

TopologyGraph make_torus(std::size_t rows, std::size_t cols) { return grid2d(TopologyKind::Torus, rows, cols, true); }

TopologyGraph make_grid3d(std::size_t a, std::size_t b, std::size_t c) {
    if (a < 2 || b < 2 || c < 2) throw UnsupportedSize("3D grid dimensions must be at least 2");
    auto id = [b, c](std::size_t i, std::size_t j, std::size_t k) { return static_cast<VertexId>((i * b + j) * c + k); };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < a; ++i) {
        for (std::size_t j = 0; j < b; ++j) {
            for (std::size_t k = 0; k < c; ++k) {
                if (i + 1 < a) edges.emplace_back(id(i, j, k), id(i + 1, j, k));
                if (j + 1 < b) edges.emplace_back(id(i, j, k), id(i, j + 1, k));
                if (k + 1 < c) edges.emplace_back(id(i, j, k), id(i, j, k + 1));
            }
        }
    }
    return {TopologyKind::Grid3D, a * b * c, std::move(edges), {a, b, c}};
}

TopologyGraph make_cyclic_butterfly(std::size_t order) {
    if (order < 3 || order > 16) throw UnsupportedSize("cyclic butterfly order must be in [3, 16]");
    const std::size_t words = std::size_t{1} << order;
    auto id = [words](std::size_t level, std::size_t word) { return static_cast<VertexId>(level * words + word); };
    std::vector<Edge> edges;
    for (std::size_t level = 0; level < order; ++level) {
        const std::size_t next = (level + 1) % order;
        for (std::size_t w = 0; w < words; ++w) {
            edges.emplace_back(id(level, w), id(next, w));
            edges.emplace_back(id(level, w), id(next, w ^ (std::size_t{1} << level)));
        }
    }
    return {TopologyKind::CyclicButterfly, order * words, std::move(edges), {order}};
}

TopologyGraph make_fully_connected(std::size_t vertices) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < vertices; ++i) {
        for (std::size_t j = i + 1; j < vertices; ++j) edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
    }
    return {TopologyKind::FullyConnected, vertices, std::move(edges), {vertices}};
}

std::size_t family_minimum(TopologyKind kind) noexcept {
    switch (kind) {
    case TopologyKind::Path1D: return 2;
    case TopologyKind::Cycle: return 3;
    case TopologyKind::Mesh2D:
    case TopologyKind::Torus: return 9;
    case TopologyKind::Grid3D: return 8;
    case TopologyKind::CyclicButterfly: return 24;
    case TopologyKind::FullyConnected: return 1;
    case TopologyKind::Custom: return 1;
    }
    return 1;
}

namespace {

constexpr std::size_t kMaxVertices = 1u << 16;

std::pair<std::size_t, std::size_t> mesh_shape(std::size_t need) {
    // Minimal product first, then the squarest shape (largest r with r <= c).
    for (std::size_t product = std::max<std::size_t>(need, 9);; ++product) {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t r = 3; r * r <= product; ++r) {
            if (product % r == 0 && product / r >= 3) best = {r, product / r};
        }
        if (best) return *best;
    }
}

std::array<std::size_t, 3> grid3d_shape(std::size_t need) {
    for (std::size_t product = std::max<std::size_t>(need, 8);; ++product) {
        std::optional<std::array<std::size_t, 3>> best;
        for (std::size_t a = 2; a * a * a <= product; ++a) {
            if (product % a != 0) continue;
            const std::size_t rest = product / a;
            for (std::size_t b = a; b * b <= rest; ++b) {
                if (rest % b != 0) continue;
                std::array<std::size_t, 3> cand{a, b, rest / b};
                if (!best || cand[2] < (*best)[2] || (cand[2] == (*best)[2] && cand[0] > (*best)[0])) best = cand;
            }
        }
        if (best) return *best;
    }
}

}  // namespace

TopologyGraph build_topology(TopologyKind kind, std::size_t num_qubits) {
    if (num_qubits < 1) throw UnsupportedSize("topology requested for zero qubits");
    if (num_qubits > kMaxVertices) throw UnsupportedSize(fmt::format("{} qubits exceeds the supported size", num_qubits));
    const std::size_t need = std::max(num_qubits, family_minimum(kind));
    switch (kind) {
    case TopologyKind::Path1D: return make_path(need);
    case TopologyKind::Cycle: return make_cycle(need);
    case TopologyKind::Mesh2D: {
        auto [r, c] = mesh_shape(need);
        return make_mesh(r, c);
    }
    case TopologyKind::Torus: {
        auto [r, c] = mesh_shape(need);
        return make_torus(r, c);
    }
    case TopologyKind::Grid3D: {
        auto s = grid3d_shape(need);
        return make_grid3d(s[0], s[1], s[2]);
    }
    case TopologyKind::CyclicButterfly: {
        std::size_t order = 3;
        while (order * (std::size_t{1} << order) < need) ++order;
        return make_cyclic_butterfly(order);
    }
    case TopologyKind::FullyConnected: return make_fully_connected(need);
    case TopologyKind::Custom: break;
    }
    throw UnsupportedSize("custom topologies are built from explicit edge lists");
}

std::uint32_t DistanceMatrix::diameter() const noexcept {
    std::uint32_t best = 0;
    for (auto d : data_) best = std::max(best, d);
    return best;
}

DistanceMatrix shortest_distances(const TopologyGraph& graph) {
    const std::size_t n = graph.num_vertices();
    constexpr auto kInf = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> data(n * n, kInf);
    std::queue<VertexId> queue;
    for (std::size_t s = 0; s < n; ++s) {
        auto* row = data.data() + s * n;
        row[s] = 0;
        queue.push(static_cast<VertexId>(s));
        while (!queue.empty()) {
            VertexId v = queue.front();
            queue.pop();
            for (VertexId w : graph.neighbors(v)) {
                if (row[w] == kInf) {
                    row[w] = row[v] + 1;
                    queue.push(w);
                }
            }
        }
        for (std::size_t t = 0; t < n; ++t) {
            if (row[t] == kInf) throw Disconnected(fmt::format("vertices {} and {} are not connected", s, t));
        }
    }
    return {n, std::move(data)};
}

}  // namespace nnplace
