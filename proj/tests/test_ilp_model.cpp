// SPDX-License-Identifier: MIT

#include "nnplace/ilp_model.hpp"
#include "nnplace/solver.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

namespace nnplace {
namespace {

using testing::make_interaction;

std::map<std::string, std::size_t> prefix_counts(const IlpModel& m) {
    std::map<std::string, std::size_t> out;
    for (const auto& v : m.variables()) ++out[v.name.substr(0, v.name.find('_'))];
    return out;
}

struct Dims {
    std::size_t V, E, Q, K, T, P, deg_pos, with_pairs, active;
};

Dims dims_of(const ProblemInstance& in) {
    Dims d{in.graph.num_vertices(), in.graph.num_edges(), in.start.num_qubits(), in.interactions.size(), in.horizon,
           0, 0, 0, 0};
    std::set<QubitPair> pairs;
    std::set<QubitId> active;
    for (const auto& i : in.interactions) {
        pairs.insert(i.pairs.begin(), i.pairs.end());
        active.insert(i.active_qubits.begin(), i.active_qubits.end());
        if (!i.pairs.empty()) ++d.with_pairs;
    }
    d.P = pairs.size();
    d.active = active.size();
    for (std::size_t v = 0; v < d.V; ++v) d.deg_pos += in.graph.degree(static_cast<VertexId>(v)) > 0 ? 1 : 0;
    return d;
}

ProblemInstance sample_instance(Formulation f) {
    ProblemInstance in{testing::grid_2x3(), Placement::identity(4, 6),
                       {make_interaction({{0, 3}}, {1}), make_interaction({}, {2}), make_interaction({{1, 2}, {0, 3}})},
                       f, 3};
    return in;
}

TEST(BuildModel, P2VariableCounts) {
    for (std::size_t T : {1u, 2u, 4u}) {
        auto in = sample_instance(Formulation::P2);
        in.horizon = T;
        const auto d = dims_of(in);
        const auto c = prefix_counts(build_p2_model(in));
        EXPECT_EQ(c.at("delay"), 1u);
        EXPECT_EQ(c.at("m"), d.K * (T + 1));
        EXPECT_EQ(c.at("x"), d.V * d.Q * (T + 1));
        EXPECT_EQ(c.at("s"), d.E * T);
        EXPECT_EQ(c.at("y"), 2 * d.E * d.Q * T);
        EXPECT_EQ(c.at("u"), d.V * d.Q * T);
        EXPECT_EQ(c.at("c"), d.deg_pos * d.Q * T);
        EXPECT_EQ(c.at("p"), 2 * d.E * d.P * (T + 1));
        EXPECT_EQ(c.at("n"), d.P * (T + 1));
        EXPECT_EQ(c.count("a"), 0u);
        EXPECT_EQ(c.count("sb"), 0u);
    }
}

TEST(BuildModel, P3VariableCounts) {
    auto in = sample_instance(Formulation::P3);
    in.horizon = 4;
    const auto d = dims_of(in);
    const auto T = d.T;
    const auto c = prefix_counts(build_p3_model(in));
    EXPECT_EQ(c.count("delay"), 0u);
    EXPECT_EQ(c.at("a"), d.K * (T + 1));
    EXPECT_EQ(c.at("m"), d.K * (T + 1));
    EXPECT_EQ(c.at("eb"), d.with_pairs * T);
    EXPECT_EQ(c.at("b"), d.active * T);
    EXPECT_EQ(c.at("bv"), d.active * d.V * T);
    EXPECT_EQ(c.at("sb"), d.E * T);
    EXPECT_EQ(c.at("s"), d.E * T);
}

TEST(BuildModel, P3RejectsShortHorizon) {
    auto in = sample_instance(Formulation::P3);
    in.horizon = 1;
    EXPECT_THROW((void)build_p3_model(in), std::invalid_argument);
}

TEST(BuildModel, ConstraintNamesCarryFamily) {
    const auto m = build_p3_model(sample_instance(Formulation::P3));
    std::set<std::string> names;
    for (const auto& c : m.constraints()) {
        EXPECT_TRUE(names.insert(c.name).second) << c.name;
        const auto tag = c.name.substr(0, c.name.rfind('_'));
        EXPECT_EQ(family_from_tag(tag), c.family) << c.name;
    }
    for (const auto& v : m.variables()) EXPECT_EQ(v.type, VarType::Binary) << v.name;
}

// Every AND/OR definition must admit exactly the assignments where z equals the operator value.
TEST(Linearization, ExactForAllOperandValues) {
    for (BoolOp op : {BoolOp::And, BoolOp::Or}) {
        IlpModel m;
        const auto a = m.add_variable("a");
        const auto b = m.add_variable("b");
        const auto c = m.add_variable("c");
        const auto z = m.add_variable("z");
        m.define(ConstraintFamily::PositionUpdate, z, op,
                 {AffineExpr::of(a), AffineExpr::negation(b), AffineExpr::of(c)});
        for (int bits = 0; bits < 16; ++bits) {
            Assignment vals{double(bits & 1), double((bits >> 1) & 1), double((bits >> 2) & 1), double((bits >> 3) & 1)};
            const bool la = vals[0] > 0.5;
            const bool lb = vals[1] < 0.5;
            const bool lc = vals[2] > 0.5;
            const bool expect = op == BoolOp::And ? (la && lb && lc) : (la || lb || lc);
            const bool feasible = violated_constraints(m, vals).empty();
            EXPECT_EQ(feasible, (vals[3] > 0.5) == expect) << "op " << int(op) << " bits " << bits;
            Assignment completed = vals;
            complete_definitions(m, completed);
            EXPECT_EQ(completed[3] > 0.5, expect);
        }
    }
}

TEST(ExportLp, RoundTrip) {
    for (Formulation f : {Formulation::P2, Formulation::P3}) {
        const auto m = build_model(sample_instance(f));
        const std::string text = export_lp(m);
        const auto back = parse_lp(text);
        EXPECT_EQ(back.comment, m.comment);
        ASSERT_EQ(back.variables().size(), m.variables().size());
        std::map<std::string, VarType> types;
        for (const auto& v : m.variables()) types[v.name] = v.type;
        for (const auto& v : back.variables()) EXPECT_EQ(types.at(v.name), v.type) << v.name;

        auto canon = [](const IlpModel& model, const std::vector<Term>& terms) {
            std::map<std::string, double> out;
            for (const auto& t : terms) {
                if (t.coef != 0.0) out[model.variables()[t.var].name] += t.coef;
            }
            return out;
        };
        EXPECT_EQ(canon(back, back.objective()), canon(m, m.objective()));
        ASSERT_EQ(back.constraints().size(), m.constraints().size());
        std::map<std::string, const LinearConstraint*> by_name;
        for (const auto& c : back.constraints()) by_name[c.name] = &c;
        for (const auto& c : m.constraints()) {
            ASSERT_TRUE(by_name.count(c.name)) << c.name;
            const auto& r = *by_name.at(c.name);
            EXPECT_EQ(r.family, c.family);
            EXPECT_EQ(r.sense, c.sense);
            EXPECT_DOUBLE_EQ(r.rhs, c.rhs);
            EXPECT_EQ(canon(back, r.terms), canon(m, c.terms)) << c.name;
        }
        EXPECT_EQ(export_lp(back), text);
    }
}

TEST(ExportLp, LayoutRules) {
    auto in = sample_instance(Formulation::P3);
    in.graph = make_fully_connected(6);
    in.horizon = 5;
    const auto text = export_lp(build_p3_model(in));
    std::istringstream lines(text);
    std::string line;
    std::vector<std::string> sections;
    while (std::getline(lines, line)) {
        EXPECT_LE(line.size(), 255u);
        if (!line.empty() && line[0] != ' ' && line[0] != '\\') sections.push_back(line);
    }
    EXPECT_EQ(sections, (std::vector<std::string>{"Minimize", "Subject To", "Bounds", "Binaries", "Generals", "End"}));
}

TEST(ExportLp, BinariesListDecisionVariables) {
    const auto m = build_p3_model(sample_instance(Formulation::P3));
    const auto text = export_lp(m);
    const auto bin = text.substr(text.find("Binaries\n"), text.find("Generals\n") - text.find("Binaries\n"));
    std::istringstream in(bin);
    std::set<std::string> listed;
    std::string tok;
    while (in >> tok) listed.insert(tok);
    for (const auto& v : m.variables()) {
        const auto head = v.name.substr(0, v.name.find('_'));
        if (head == "a" || head == "m" || head == "x" || head == "s") EXPECT_TRUE(listed.count(v.name)) << v.name;
    }
}

TEST(ParseLp, Errors) {
    EXPECT_THROW((void)parse_lp("Maximize\n obj: x\nEnd\n"), LpParseError);
    EXPECT_THROW((void)parse_lp("Minimize\n obj: x\nSubject To\n zz_0: x >= 1\nEnd\n"), LpParseError);
    EXPECT_THROW((void)parse_lp("Minimize\n obj: x\nSubject To\n x >= 1\nEnd\n"), LpParseError);
}

TEST(ParseSolutionValues, SkipsNoise) {
    const auto v = parse_solution_values("Objective 3\nColumns 2\nx_0_0_0 1\ns_0_1_0 0.9999999 # note\nbad line here\n");
    EXPECT_EQ(v.size(), 4u);
    EXPECT_DOUBLE_EQ(v.at("Objective"), 3.0);
    EXPECT_DOUBLE_EQ(v.at("x_0_0_0"), 1.0);
}

// Solutions found by the exact solver, encoded as ILP assignments, satisfy every row
// and reach the same objective value.
TEST(EncodeSolution, SolverSolutionsAreFeasible) {
    std::mt19937 rng(7);
    const std::vector<TopologyGraph> graphs{make_path(4), make_cycle(4), testing::grid_2x3()};
    for (int round = 0; round < 24; ++round) {
        const auto& g = graphs[static_cast<std::size_t>(round) % graphs.size()];
        const std::size_t q = 3 + static_cast<std::size_t>(round % 2);
        std::vector<Interaction> inters;
        for (int k = 0; k < 3; ++k) inters.push_back(testing::random_level(rng, q));
        const auto start = testing::random_placement(rng, q, g.num_vertices());
        for (Formulation f : {Formulation::P2, Formulation::P3}) {
            SolveOptions opt;
            opt.objective = P3Objective::ActivationSum;
            RoutingSolution sol;
            try {
                sol = f == Formulation::P2 ? solve_p2(g, start, inters, opt) : solve_p3(g, start, inters, opt);
            } catch (const Unsatisfiable&) {
                continue;
            }
            ASSERT_TRUE(sol.optimal);
            ProblemInstance in{g, start, inters, f, sol.steps.size() + inters.size() + 1};
            const auto model = build_model(in);
            const auto values = encode_solution(model, in, sol);
            const auto bad = violated_constraints(model, values);
            EXPECT_TRUE(bad.empty()) << "round " << round << " " << to_string(f) << " first " << bad.front();
            double expect = 0.0;
            if (f == Formulation::P2) {
                expect = static_cast<double>(sol.met_cycle.back());
            } else {
                for (auto tau : sol.level_cycle) expect += static_cast<double>(tau);
            }
            EXPECT_DOUBLE_EQ(objective_value(model, values), expect);

            std::map<std::string, double> named;
            for (std::size_t i = 0; i < values.size(); ++i) named[model.variables()[i].name] = values[i];
            const auto decoded = decode_solution(in, named);
            EXPECT_EQ(decoded.swap_count, sol.swap_count);
            EXPECT_EQ(decoded.total_delay, sol.total_delay);
        }
    }
}

TEST(EncodeSolution, TamperedAssignmentIsInfeasible) {
    const ProblemInstance in{make_path(4), Placement::identity(4, 4), {make_interaction({{0, 3}})}, Formulation::P2, 3};
    const auto sol = solve_p2(in.graph, in.start, in.interactions);
    const auto model = build_p2_model(in);
    auto values = encode_solution(model, in, sol);
    ASSERT_TRUE(violated_constraints(model, values).empty());
    values[model.var("m_0_0")] = 0.0;
    EXPECT_FALSE(violated_constraints(model, values).empty());
}

}  // namespace
}  // namespace nnplace
