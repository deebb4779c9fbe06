// SPDX-License-Identifier: MIT

#include "nnplace/topology.hpp"

#include <gtest/gtest.h>

namespace nnplace {
namespace {

void expect_degrees(const TopologyGraph& g, std::size_t lo, std::size_t hi) {
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        EXPECT_GE(g.degree(static_cast<VertexId>(v)), lo) << to_string(g.kind()) << " v" << v;
        EXPECT_LE(g.degree(static_cast<VertexId>(v)), hi) << to_string(g.kind()) << " v" << v;
    }
}

TEST(BuildTopology, Examples) {
    const auto mesh = build_topology(TopologyKind::Mesh2D, 5);
    EXPECT_EQ(mesh.num_vertices(), 9u);
    EXPECT_EQ(mesh.dims(), (std::vector<std::size_t>{3, 3}));
    EXPECT_EQ(build_topology(TopologyKind::CyclicButterfly, 7).num_vertices(), 24u);
    const auto path = build_topology(TopologyKind::Path1D, 4);
    EXPECT_EQ(path.num_vertices(), 4u);
    EXPECT_EQ(path.num_edges(), 3u);
    const auto torus = build_topology(TopologyKind::Torus, 9);
    EXPECT_EQ(torus.num_vertices(), 9u);
    EXPECT_EQ(torus.num_edges(), 18u);
}

TEST(BuildTopology, Minimums) {
    EXPECT_EQ(build_topology(TopologyKind::Path1D, 1).num_vertices(), 2u);
    EXPECT_EQ(build_topology(TopologyKind::Cycle, 2).num_vertices(), 3u);
    EXPECT_EQ(build_topology(TopologyKind::Grid3D, 3).num_vertices(), 8u);
    EXPECT_EQ(build_topology(TopologyKind::FullyConnected, 5).num_vertices(), 5u);
    EXPECT_THROW((void)build_topology(TopologyKind::Cycle, 0), UnsupportedSize);
}

TEST(BuildTopology, Shapes) {
    EXPECT_EQ(build_topology(TopologyKind::Mesh2D, 10).dims(), (std::vector<std::size_t>{3, 4}));
    EXPECT_EQ(build_topology(TopologyKind::Mesh2D, 16).dims(), (std::vector<std::size_t>{4, 4}));
    EXPECT_EQ(build_topology(TopologyKind::Mesh2D, 13).dims(), (std::vector<std::size_t>{3, 5}));
    EXPECT_EQ(build_topology(TopologyKind::Grid3D, 9).dims(), (std::vector<std::size_t>{2, 2, 3}));
    EXPECT_EQ(build_topology(TopologyKind::Grid3D, 27).dims(), (std::vector<std::size_t>{3, 3, 3}));
    EXPECT_EQ(build_topology(TopologyKind::CyclicButterfly, 25).num_vertices(), 64u);
}

TEST(BuildTopology, DegreeBounds) {
    for (std::size_t n : {4u, 9u, 12u, 20u}) {
        auto path = build_topology(TopologyKind::Path1D, n);
        expect_degrees(path, 1, 2);
        expect_degrees(build_topology(TopologyKind::Cycle, n), 2, 2);
        expect_degrees(build_topology(TopologyKind::Mesh2D, n), 2, 4);
        expect_degrees(build_topology(TopologyKind::Torus, n), 4, 4);
        expect_degrees(build_topology(TopologyKind::Grid3D, n), 3, 6);
        expect_degrees(build_topology(TopologyKind::CyclicButterfly, n), 4, 4);
        auto full = build_topology(TopologyKind::FullyConnected, n);
        expect_degrees(full, n - 1, n - 1);
        for (auto kind : {TopologyKind::Path1D, TopologyKind::Cycle, TopologyKind::Mesh2D, TopologyKind::Torus,
                          TopologyKind::Grid3D, TopologyKind::CyclicButterfly, TopologyKind::FullyConnected}) {
            EXPECT_TRUE(build_topology(kind, n).connected()) << to_string(kind);
        }
    }
}

TEST(TopologyGraph, RejectsBadEdges) {
    EXPECT_THROW(TopologyGraph(TopologyKind::Custom, 3, {{1, 1}}), TopologyError);
    EXPECT_THROW(TopologyGraph(TopologyKind::Custom, 3, {{0, 1}, {1, 0}}), TopologyError);
    EXPECT_THROW(TopologyGraph(TopologyKind::Custom, 3, {{0, 3}}), TopologyError);
}

TEST(TopologyGraph, Queries) {
    const auto g = make_cycle(5);
    EXPECT_TRUE(g.adjacent(0, 4));
    EXPECT_FALSE(g.adjacent(0, 2));
    EXPECT_EQ(g.neighbors(0), (std::vector<VertexId>{1, 4}));
    EXPECT_EQ(g.edge_index(4, 0), g.edge_index(0, 4));
    EXPECT_FALSE(g.edge_index(0, 2).has_value());
    EXPECT_EQ(make_path(3).edge_list(), "0 1\n1 2\n");
}

TEST(ShortestDistances, Values) {
    const auto d = shortest_distances(make_path(4));
    EXPECT_EQ(d(0, 3), 3u);
    EXPECT_EQ(d(2, 1), 1u);
    EXPECT_EQ(d.diameter(), 3u);
    EXPECT_EQ(shortest_distances(make_cycle(6)).diameter(), 3u);
    EXPECT_EQ(shortest_distances(make_torus(3, 3)).diameter(), 2u);
    EXPECT_EQ(shortest_distances(make_mesh(3, 3))(0, 8), 4u);
    EXPECT_THROW((void)shortest_distances(TopologyGraph(TopologyKind::Custom, 3, {{0, 1}})), Disconnected);
}

TEST(KindNames, RoundTrip) {
    for (const char* s : {"1d", "cycle", "mesh2d", "torus", "grid3d", "cbn", "full"}) {
        auto k = topology_kind_from_string(s);
        ASSERT_TRUE(k.has_value()) << s;
        EXPECT_EQ(to_string(*k), s);
    }
    EXPECT_FALSE(topology_kind_from_string("hypercube").has_value());
}

}  // namespace
}  // namespace nnplace
