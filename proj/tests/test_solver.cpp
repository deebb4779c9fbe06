// SPDX-License-Identifier: MIT

#include "nnplace/solver.hpp"
#include "nnplace/verify.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>

namespace nnplace {
namespace {

using testing::make_interaction;
using testing::four_qubit_configs;
using testing::config_target;

const Placement kAbcd = Placement::identity(4, 4);

void expect_verified(const TopologyGraph& g, const Placement& start, const std::vector<Interaction>& inters,
                     const RoutingSolution& sol) {
    const ProblemInstance in{g, start, inters, sol.formulation, 0};
    const auto rep = verify_solution(in, sol);
    ASSERT_TRUE(rep.ok()) << to_string(rep.violations.front().kind) << ": " << rep.violations.front().detail;
    EXPECT_EQ(rep.swap_count, sol.swap_count);
    EXPECT_EQ(rep.swap_delay, sol.swap_delay);
    EXPECT_EQ(rep.total_delay, sol.total_delay);
}

TEST(SolveP2, FourQubitConfigurations) {
    const auto g = make_path(4);
    for (const auto& row : four_qubit_configs()) {
        const std::vector<Interaction> inters{config_target(row.config)};
        const auto sol = solve_p2(g, kAbcd, inters);
        EXPECT_EQ(sol.swap_count, row.swaps) << row.config;
        EXPECT_EQ(sol.swap_delay, row.delay) << row.config;
        EXPECT_TRUE(sol.optimal);
        expect_verified(g, kAbcd, inters, sol);
    }
}

TEST(SolveP2, AlreadyMetNeedsNoCycles) {
    const auto sol = solve_p2(make_path(2), Placement::identity(2, 2), {make_interaction({{0, 1}})});
    EXPECT_EQ(sol.swap_delay, 0u);
    EXPECT_EQ(sol.total_delay, 1u);
    EXPECT_TRUE(sol.steps.empty());
}

TEST(SolveP2, ThreeControlStarIsUnsatisfiableOnDegreeTwo) {
    const auto star = make_interaction({{0, 3}, {1, 3}, {2, 3}});
    for (const auto& g : {make_path(5), make_cycle(5)}) {
        EXPECT_THROW((void)solve_p2(g, Placement::identity(4, 5), {star}), Unsatisfiable);
        EXPECT_THROW((void)solve_p3(g, Placement::identity(4, 5), {star}), Unsatisfiable);
    }
    EXPECT_NO_THROW(check_satisfiable(make_mesh(3, 3), {star}, 4));
}

TEST(SolveP2, Determinism) {
    std::mt19937 rng(11);
    const auto g = testing::grid_2x3();
    std::vector<Interaction> inters;
    for (int i = 0; i < 4; ++i) inters.push_back(testing::random_level(rng, 5));
    const auto start = testing::random_placement(rng, 5, 6);
    for (Formulation f : {Formulation::P2, Formulation::P3}) {
        auto run = [&] { return f == Formulation::P2 ? solve_p2(g, start, inters) : solve_p3(g, start, inters); };
        const auto a = run();
        const auto b = run();
        EXPECT_EQ(a.steps, b.steps);
        EXPECT_EQ(a.met_cycle, b.met_cycle);
        EXPECT_EQ(a.level_cycle, b.level_cycle);
    }
}

TEST(BruteForce, Examples) {
    const auto g = make_path(4);
    EXPECT_EQ(brute_force_route(g, kAbcd, {config_target("a b c d")}, 3), (BruteForceResult{0, 0}));
    EXPECT_EQ(brute_force_route(g, kAbcd, {config_target("a d c b")}, 3), (BruteForceResult{3, 3}));
    EXPECT_FALSE(brute_force_route(g, kAbcd, {config_target("a d c b")}, 2).has_value());
    EXPECT_THROW((void)brute_force_route(make_path(10), Placement::identity(4, 10), {}, 1), GuardExceeded);
    EXPECT_THROW((void)brute_force_route(g, kAbcd, {}, 7), GuardExceeded);
}

TEST(BruteForce, AgreesWithSolverOnMultiLevelInstances) {
    std::mt19937 rng(3);
    const std::vector<TopologyGraph> graphs{make_path(4), make_cycle(5), testing::grid_2x3()};
    int compared = 0;
    for (int round = 0; round < 40; ++round) {
        const auto& g = graphs[static_cast<std::size_t>(round) % graphs.size()];
        const std::size_t q = 4;
        std::vector<Interaction> inters;
        for (int k = 0; k < 1 + round % 3; ++k) inters.push_back(testing::random_level(rng, q));
        const auto start = testing::random_placement(rng, q, g.num_vertices());
        RoutingSolution sol;
        try {
            sol = solve_p2(g, start, inters);
        } catch (const Unsatisfiable&) {
            continue;
        }
        if (sol.swap_delay > kBruteForceMaxHorizon) continue;
        const auto bf = brute_force_route(g, start, inters, sol.swap_delay);
        ASSERT_TRUE(bf.has_value());
        EXPECT_EQ(*bf, (BruteForceResult{sol.swap_count, sol.swap_delay})) << "round " << round;
        ++compared;
    }
    EXPECT_GE(compared, 30);
}

TEST(SolveP1, MatchesP2WithOneInteraction) {
    std::mt19937 rng(5);
    const auto g = make_cycle(5);
    for (int round = 0; round < 20; ++round) {
        const auto inter = testing::random_level(rng, 4);
        const auto start = testing::random_placement(rng, 4, 5);
        const auto p1 = solve_p1(g, start, inter);
        const auto p2 = solve_p2(g, start, {inter});
        EXPECT_EQ(p1.swap_count, p2.swap_count);
        EXPECT_EQ(p1.swap_delay, p2.swap_delay);
    }
}

struct OracleCase {
    TopologyGraph graph;
    std::size_t qubits;
    std::vector<Interaction> levels;
    std::size_t makespan, swaps, actsum, horizon;
};

std::vector<OracleCase> load_p3_oracle() {
    std::vector<OracleCase> out;
    std::istringstream file(testing::read_text(testing::data_path("instances/p3_oracle.txt")));
    std::string line;
    while (std::getline(file, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream in(line);
        std::string kind, bar, levels;
        std::size_t n = 0, q = 0;
        OracleCase c{make_path(2), 0, {}, 0, 0, 0, 0};
        in >> kind >> n >> q >> bar >> levels >> bar >> c.makespan >> c.swaps >> c.actsum >> c.horizon;
        c.graph = kind == "path" ? make_path(n) : make_cycle(n);
        c.qubits = q;
        std::istringstream lv(levels);
        std::string level;
        while (std::getline(lv, level, ';')) {
            Interaction inter;
            const auto slash = level.find('/');
            std::istringstream ps(level.substr(0, slash));
            std::string pair;
            while (std::getline(ps, pair, ',')) {
                const auto dash = pair.find('-');
                inter.pairs.emplace(static_cast<QubitId>(std::stoul(pair.substr(0, dash))),
                                    static_cast<QubitId>(std::stoul(pair.substr(dash + 1))));
            }
            std::istringstream as(level.substr(slash + 1));
            std::string a;
            while (std::getline(as, a, ',')) inter.active_qubits.insert(static_cast<QubitId>(std::stoul(a)));
            c.levels.push_back(std::move(inter));
        }
        out.push_back(std::move(c));
    }
    return out;
}

TEST(SolveP3, ExhaustiveReferenceValues) {
    const auto cases = load_p3_oracle();
    ASSERT_GE(cases.size(), 30u);
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        const auto start = Placement::identity(c.qubits, c.graph.num_vertices());
        const auto ms = solve_p3(c.graph, start, c.levels);
        EXPECT_EQ(ms.total_delay, c.makespan) << "case " << i;
        EXPECT_EQ(ms.swap_count, c.swaps) << "case " << i;
        expect_verified(c.graph, start, c.levels, ms);

        SolveOptions opt;
        opt.objective = P3Objective::ActivationSum;
        opt.horizon = c.horizon;
        const auto as = solve_p3(c.graph, start, c.levels, opt);
        std::size_t sum = 0;
        for (auto tau : as.level_cycle) sum += tau;
        EXPECT_EQ(sum, c.actsum) << "case " << i;
        EXPECT_LE(as.level_cycle.back(), c.horizon);
        expect_verified(c.graph, start, c.levels, as);
    }
}

TEST(SolveP3, AllLevelsAlreadyMet) {
    const std::vector<Interaction> inters{make_interaction({{0, 1}}), make_interaction({{1, 2}}, {0}),
                                          make_interaction({}, {2})};
    const auto sol = solve_p3(make_path(3), Placement::identity(3, 3), inters);
    EXPECT_EQ(sol.total_delay, 3u);
    EXPECT_EQ(sol.swap_count, 0u);
}

TEST(SolveP3, DelayWithinLevelsOfP2) {
    std::mt19937 rng(17);
    for (int round = 0; round < 12; ++round) {
        const auto g = round % 2 == 0 ? make_path(4) : make_cycle(4);
        std::vector<Interaction> inters;
        const std::size_t levels = 2 + static_cast<std::size_t>(round % 3);
        for (std::size_t k = 0; k < levels; ++k) inters.push_back(testing::random_level(rng, 4));
        const auto start = testing::random_placement(rng, 4, 4);
        const auto p2 = solve_p2(g, start, inters);
        const auto p3 = solve_p3(g, start, inters);
        EXPECT_LE(p3.total_delay, p2.total_delay) << "round " << round;
        EXPECT_LE(p2.total_delay, p3.total_delay + levels - 1) << "round " << round;
    }
}

TEST(Heuristic, UniformCostGivesSameOptimum) {
    std::mt19937 rng(23);
    const auto g = testing::grid_2x3();
    for (int round = 0; round < 10; ++round) {
        std::vector<Interaction> inters;
        for (int k = 0; k < 3; ++k) inters.push_back(testing::random_level(rng, 5));
        const auto start = testing::random_placement(rng, 5, 6);
        SolveOptions plain;
        plain.use_heuristic = false;
        for (Formulation f : {Formulation::P2, Formulation::P3}) {
            const auto a = f == Formulation::P2 ? solve_p2(g, start, inters) : solve_p3(g, start, inters);
            const auto b = f == Formulation::P2 ? solve_p2(g, start, inters, plain) : solve_p3(g, start, inters, plain);
            EXPECT_EQ(a.total_delay, b.total_delay) << "round " << round;
            EXPECT_EQ(a.swap_count, b.swap_count) << "round " << round;
            EXPECT_EQ(a.swap_delay, b.swap_delay) << "round " << round;
        }
    }
}

TEST(Budget, ExpiryReturnsVerifiedIncumbent) {
    std::mt19937 rng(29);
    const auto g = make_mesh(4, 4);
    std::vector<Interaction> inters;
    for (int k = 0; k < 6; ++k) inters.push_back(testing::random_level(rng, 14));
    const auto start = testing::random_placement(rng, 14, 16);
    SolveOptions opt;
    opt.budget = std::chrono::duration<double>(0.0);
    for (Formulation f : {Formulation::P2, Formulation::P3}) {
        const auto sol = f == Formulation::P2 ? solve_p2(g, start, inters, opt) : solve_p3(g, start, inters, opt);
        EXPECT_FALSE(sol.optimal);
        expect_verified(g, start, inters, sol);
    }
}

TEST(Greedy, Properties) {
    const auto g = make_path(6);
    for (QubitId d = 1; d <= 5; ++d) {
        const auto sol = greedy_upper_bound(g, Placement::identity(6, 6), {make_interaction({{0, d}})});
        EXPECT_EQ(sol.swap_delay, d - 1u) << "distance " << d;
        if (d <= 4) {
            const auto bf = brute_force_route(make_path(5), Placement::identity(5, 5), {make_interaction({{0, d}})}, 6);
            ASSERT_TRUE(bf.has_value());
            EXPECT_EQ(bf->swap_count, d - 1u);
        }
    }
    std::mt19937 rng(31);
    const std::vector<TopologyGraph> graphs{make_path(5), make_cycle(6), make_mesh(3, 3), make_torus(3, 3)};
    for (int round = 0; round < 40; ++round) {
        const auto& gr = graphs[static_cast<std::size_t>(round) % graphs.size()];
        std::vector<Interaction> inters;
        for (int k = 0; k < 3; ++k) inters.push_back(testing::random_level(rng, 5));
        const auto start = testing::random_placement(rng, 5, gr.num_vertices());
        for (Formulation f : {Formulation::P2, Formulation::P3}) {
            RoutingSolution opt;
            try {
                opt = f == Formulation::P2 ? solve_p2(gr, start, inters) : solve_p3(gr, start, inters);
            } catch (const Unsatisfiable&) {
                continue;
            }
            const auto ub = greedy_upper_bound(gr, start, inters, f);
            expect_verified(gr, start, inters, ub);
            EXPECT_FALSE(ub.optimal);
            EXPECT_GE(ub.total_delay, opt.total_delay) << "round " << round;
            if (f == Formulation::P2) EXPECT_GE(ub.swap_delay, opt.swap_delay);
        }
    }
}

}  // namespace
}  // namespace nnplace
