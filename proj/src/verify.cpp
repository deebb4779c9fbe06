// SPDX-License-Identifier: MIT

#include "nnplace/verify.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace nnplace {

std::string_view to_string(ViolationKind kind) noexcept {
    switch (kind) {
    case ViolationKind::StartMismatch: return "StartMismatch";
    case ViolationKind::NotAnEdge: return "NotAnEdge";
    case ViolationKind::MatchingViolation: return "MatchingViolation";
    case ViolationKind::OrderViolation: return "OrderViolation";
    case ViolationKind::NotMet: return "NotMet";
    case ViolationKind::BlockingViolation: return "BlockingViolation";
    case ViolationKind::MissingCycle: return "MissingCycle";
    }
    return "?";
}

bool VerificationReport::has(ViolationKind kind) const noexcept {
    return std::any_of(violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; });
}

namespace {

class Checker {
public:
    Checker(const ProblemInstance& in, const RoutingSolution& sol) : in_(in), sol_(sol) {}

    VerificationReport run() {
        check_start();
        check_steps();
        replay();
        if (in_.formulation == Formulation::P2) check_p2();
        else check_p3();
        RoutingSolution copy = sol_;
        copy.formulation = in_.formulation;
        refresh_metrics(copy);
        report_.swap_count = copy.swap_count;
        report_.swap_delay = copy.swap_delay;
        report_.total_delay = copy.total_delay;
        return std::move(report_);
    }

private:
    void add(ViolationKind kind, std::size_t cycle, std::string detail) {
        report_.violations.push_back({kind, cycle, std::move(detail)});
    }

    void check_start() {
        if (!(sol_.start == in_.start)) add(ViolationKind::StartMismatch, 0, "solution starts from a different placement");
    }

    void check_steps() {
        const auto& g = in_.graph;
        for (std::size_t t = 0; t < sol_.steps.size(); ++t) {
            std::vector<bool> used(g.num_vertices(), false);
            for (const auto& e : sol_.steps[t].swaps) {
                if (e.v >= g.num_vertices() || !g.adjacent(e.u, e.v)) {
                    add(ViolationKind::NotAnEdge, t, fmt::format("swap ({}, {}) is not a graph edge", e.u, e.v));
                    continue;
                }
                for (VertexId v : {e.u, e.v}) {
                    if (used[v]) add(ViolationKind::MatchingViolation, t, fmt::format("vertex {} swapped twice", v));
                    used[v] = true;
                }
            }
        }
    }

    /// Placements C_0..C_{steps}; invalid swaps are skipped so the rest can still be checked.
    void replay() {
        Placement p = in_.start;
        if (p.num_vertices() != in_.graph.num_vertices()) return;
        placements_.push_back(p);
        for (const auto& step : sol_.steps) {
            for (const auto& e : step.swaps) {
                if (e.v < in_.graph.num_vertices() && in_.graph.adjacent(e.u, e.v)) p.swap_vertices(e.u, e.v);
            }
            placements_.push_back(p);
        }
    }

    const Placement& at(std::size_t cycle) const { return placements_[std::min(cycle, placements_.size() - 1)]; }

    bool check_met(const std::vector<std::size_t>& cycles, bool strict, std::string_view what) {
        const std::size_t k = in_.interactions.size();
        if (cycles.size() != k) {
            add(ViolationKind::MissingCycle, 0, fmt::format("{} {} cycles for {} interactions", cycles.size(), what, k));
            return false;
        }
        for (std::size_t i = 0; i + 1 < k; ++i) {
            if (cycles[i + 1] < cycles[i] || (strict && cycles[i + 1] == cycles[i])) {
                add(ViolationKind::OrderViolation, cycles[i + 1],
                    fmt::format("{} {} at cycle {} precedes {} {} at cycle {}", what, i + 1, cycles[i + 1], what, i,
                                cycles[i]));
            }
        }
        if (placements_.empty()) return false;
        for (std::size_t i = 0; i < k; ++i) {
            if (!at(cycles[i]).satisfies(in_.graph, in_.interactions[i])) {
                add(ViolationKind::NotMet, cycles[i], fmt::format("interaction {} not met at cycle {}", i, cycles[i]));
            }
        }
        return true;
    }

    void check_p2() { check_met(sol_.met_cycle, false, "interaction"); }

    void check_p3() {
        if (!check_met(sol_.level_cycle, true, "level")) return;
        const std::size_t k = in_.interactions.size();
        std::vector<std::size_t> met = sol_.met_cycle.empty() ? sol_.level_cycle : sol_.met_cycle;
        if (met.size() != k) {
            add(ViolationKind::MissingCycle, 0, "met cycles do not cover every interaction");
            return;
        }
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t tau = sol_.level_cycle[i];
            if (met[i] > tau) {
                add(ViolationKind::OrderViolation, tau, fmt::format("level {} activated before it is met", i));
                continue;
            }
            // Pair qubits are frozen from the met cycle up to activation, and
            // every active qubit is frozen in the activation cycle itself.
            const auto paired = in_.interactions[i].paired_qubits();
            for (std::size_t t = met[i]; t <= tau && t < sol_.steps.size(); ++t) {
                const auto& frozen = t == tau ? in_.interactions[i].active_qubits : paired;
                const Placement& p = at(t);
                for (const auto& e : sol_.steps[t].swaps) {
                    for (VertexId v : {e.u, e.v}) {
                        if (v >= p.num_vertices()) continue;
                        auto q = p.occupant(v);
                        if (q && frozen.count(*q) != 0) {
                            add(ViolationKind::BlockingViolation, t,
                                fmt::format("swap ({}, {}) moves qubit {} of level {}", e.u, e.v, *q, i));
                        }
                    }
                }
            }
        }
    }

    const ProblemInstance& in_;
    const RoutingSolution& sol_;
    std::vector<Placement> placements_;
    VerificationReport report_;
};

}  // namespace

VerificationReport verify_solution(const ProblemInstance& instance, const RoutingSolution& solution) {
    return Checker(instance, solution).run();
}

}  // namespace nnplace
