// SPDX-License-Identifier: MIT

#include "nnplace/pipeline.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

namespace nnplace {
namespace {

using testing::data_path;
using testing::read_text;

QuantumCircuit corpus(const std::string& name) { return parse_real(read_text(data_path("revlib/" + name + ".real"))); }

RoutedCircuit route(const QuantumCircuit& c, TopologyKind kind, Formulation f, std::size_t b) {
    const auto g = build_topology(kind, c.num_qubits());
    return route_circuit(c, g, Placement::identity(c.num_qubits(), g.num_vertices()), {f, b, {}}, "bench");
}

TEST(SplitBlocks, Sizes) {
    LevelSchedule s;
    s.levels.resize(5);
    const auto blocks = split_blocks(s, 2);
    ASSERT_EQ(blocks.size(), 3u);
    EXPECT_EQ(blocks[0].size(), 2u);
    EXPECT_EQ(blocks[1].size(), 2u);
    EXPECT_EQ(blocks[2].size(), 1u);
    EXPECT_EQ(blocks[2].lo, 4u);
    EXPECT_EQ(split_blocks(s, 9).size(), 1u);
    EXPECT_TRUE(split_blocks(LevelSchedule{}, 3).empty());
    EXPECT_THROW((void)split_blocks(s, 0), std::invalid_argument);
}

TEST(RouteCircuit, ZeroSwapRoutingKeepsCircuit) {
    const auto c = corpus("graycode6_48");
    for (Formulation f : {Formulation::P2, Formulation::P3}) {
        const auto r = route(c, TopologyKind::Path1D, f, 1);
        EXPECT_EQ(r.swap_count, 0u);
        EXPECT_EQ(r.total_delay, 5u);
        EXPECT_EQ(r.merged, c);
    }
}

TEST(RouteCircuit, ConfigAbdcSingleSwap) {
    // The second level needs pairs a-b and b-d, i.e. the configuration a b d c: one swap on (v2,v3).
    QuantumCircuit c({"a", "b", "c", "d"});
    c.add_gate(Gate::cnot(0, 1));
    c.add_gate(Gate::cnot(2, 3));
    c.add_gate(Gate::toffoli({0, 3}, 1));
    const auto r = route(c, TopologyKind::Path1D, Formulation::P2, 2);
    EXPECT_EQ(r.swap_count, 1u);
    std::size_t swaps = 0;
    for (const auto& g : r.merged.gates()) {
        if (g.kind != GateKind::Swap) continue;
        ++swaps;
        EXPECT_EQ(g, Gate::swap(2, 3));
    }
    EXPECT_EQ(swaps, 1u);
    EXPECT_EQ(compute_levels(r.merged).size(), r.total_delay);
}

TEST(RouteCircuit, CorpusVerifiesOnEveryTopology) {
    for (const char* name : {"xor5_254", "3_17_14", "fredkin_7"}) {
        const auto c = corpus(name);
        for (auto kind : {TopologyKind::Path1D, TopologyKind::Cycle, TopologyKind::Mesh2D, TopologyKind::FullyConnected}) {
            for (Formulation f : {Formulation::P2, Formulation::P3}) {
                const auto r = route(c, kind, f, 2);
                EXPECT_TRUE(r.all_optimal());
                const auto merged = parse_real(write_real(r.merged));
                EXPECT_LE(compute_levels(merged).size(), r.total_delay) << name;
                for (const auto& g : merged.gates()) {
                    for (const auto& p : required_pairs(g)) EXPECT_TRUE(r.topology.adjacent(p.first, p.second));
                }
                for (std::size_t b = 0; b + 1 < r.blocks.size(); ++b) {
                    EXPECT_EQ(r.blocks[b + 1].entry, r.solutions[b].final_placement());
                }
            }
        }
    }
}

TEST(RouteCircuit, FullBlockIsNoWorseThanSmallBlocks) {
    const auto c = corpus("xor5_254");
    const auto full = route(c, TopologyKind::Path1D, Formulation::P3, 16);
    for (std::size_t b : {1u, 2u, 3u}) {
        EXPECT_LE(full.total_delay, route(c, TopologyKind::Path1D, Formulation::P3, b).total_delay) << "b " << b;
    }
}

TEST(RouteCircuit, UnsatisfiableNamesLevel) {
    const auto c = corpus("toffoli4");
    try {
        (void)route(c, TopologyKind::Cycle, Formulation::P2, 1);
        FAIL();
    } catch (const Unsatisfiable& e) {
        EXPECT_EQ(e.interaction(), 0u);
        EXPECT_NE(std::string(e.what()).find("level 0"), std::string::npos);
    }
    EXPECT_NO_THROW((void)route(c, TopologyKind::Mesh2D, Formulation::P2, 1));
}

TEST(InsertSwaps, TamperedSolutionFails) {
    const auto c = corpus("xor5_254");
    auto r = route(c, TopologyKind::Path1D, Formulation::P2, 16);
    ASSERT_GT(r.swap_count, 0u);
    for (auto& step : r.solutions[0].steps) {
        if (!step.empty()) {
            step.swaps.pop_back();
            break;
        }
    }
    EXPECT_THROW((void)insert_swaps(r), VerificationFailed);
}

TEST(Report, Json) {
    const auto r = route(corpus("fredkin_7"), TopologyKind::Path1D, Formulation::P2, 1);
    const auto j = nlohmann::json::parse(report_json(r));
    EXPECT_EQ(j.at("benchmark"), "bench");
    EXPECT_EQ(j.at("vars"), 3);
    EXPECT_EQ(j.at("gates"), 1);
    EXPECT_EQ(j.at("levels"), 1);
    EXPECT_EQ(j.at("S"), 0);
    EXPECT_EQ(j.at("D"), 1);
    EXPECT_EQ(j.at("topology"), "1d");
    EXPECT_EQ(j.at("block_optimal"), nlohmann::json::array({true}));

    const auto x = nlohmann::json::parse(report_json(route(corpus("xor5_254"), TopologyKind::Path1D, Formulation::P2, 2)));
    EXPECT_EQ(x.at("vars"), 6);
    EXPECT_EQ(x.at("gates"), 7);
    EXPECT_EQ(x.at("levels"), 5);
    EXPECT_EQ(x.at("blocks"), 3);
}

TEST(Report, EmptyCircuit) {
    const QuantumCircuit c({"a", "b"});
    const auto r = route(c, TopologyKind::Path1D, Formulation::P3, 1);
    const auto j = nlohmann::json::parse(report_json(r));
    EXPECT_EQ(j.at("gates"), 0);
    EXPECT_EQ(j.at("levels"), 0);
    EXPECT_EQ(j.at("S"), 0);
    EXPECT_EQ(j.at("D"), 0);
    EXPECT_EQ(j.at("optimal"), true);
}

TEST(Report, Table) {
    const auto a = route(corpus("fredkin_7"), TopologyKind::Path1D, Formulation::P2, 1);
    const auto b = route(corpus("3_17_14"), TopologyKind::Mesh2D, Formulation::P3, 2);
    const auto text = report_table({a, b});
    std::istringstream in(text);
    std::string header, row1, row2, extra;
    std::getline(in, header);
    std::getline(in, row1);
    std::getline(in, row2);
    EXPECT_FALSE(std::getline(in, extra));
    EXPECT_EQ(header.rfind("benchmark", 0), 0u);
    EXPECT_NE(row2.find("mesh2d"), std::string::npos);
    EXPECT_NE(row2.find("p3"), std::string::npos);
}

TEST(VertexLineNames, FreeVerticesGetFreshNames) {
    const QuantumCircuit c({"a", "v3"});
    const auto names = vertex_line_names(c, Placement({2, 0}, 4));
    EXPECT_EQ(names, (std::vector<std::string>{"v3", "v1", "a", "v3_"}));
}

}  // namespace
}  // namespace nnplace
