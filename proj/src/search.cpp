// SPDX-License-Identifier: MIT

#include "solver_detail.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <compare>
#include <cstring>
#include <queue>
#include <unordered_map>

namespace nnplace {

namespace {

using Clock = std::chrono::steady_clock;

struct Cost {
    std::size_t primary = 0;
    std::size_t swaps = 0;

    auto operator<=>(const Cost&) const = default;
    Cost operator+(const Cost& o) const { return {primary + o.primary, swaps + o.swaps}; }
};

struct Node {
    std::vector<std::uint16_t> pos;
    std::size_t next = 0;
    std::size_t cycle = 0;
    Cost g;
    std::size_t parent = 0;
    std::vector<Edge> step;
    bool activated = false;
};

struct OpenEntry {
    Cost f;
    std::size_t seq = 0;
    std::size_t node = 0;

    bool operator>(const OpenEntry& o) const {
        if (f != o.f) return f > o.f;
        return seq > o.seq;
    }
};

class BudgetExpired {};

class AStar {
public:
    AStar(const TopologyGraph& graph, const Placement& start, const std::vector<Interaction>& inters,
          Formulation form, const SolveOptions& opt)
        : g_(graph), start_(start), inters_(inters), form_(form), opt_(opt), dist_(shortest_distances(graph)),
          K_(inters.size()), Q_(start.num_qubits()) {
        if (opt.budget) deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(*opt.budget);
        // Qubits that still matter once interaction i is next.
        relevant_.resize(K_ + 1);
        std::vector<bool> mark(Q_, false);
        for (std::size_t i = K_; i-- > 0;) {
            const auto& qs = form_ == Formulation::P2 ? inters_[i].paired_qubits() : inters_[i].active_qubits;
            for (QubitId q : qs) mark[q] = true;
            for (std::size_t q = 0; q < Q_; ++q) {
                if (mark[q]) relevant_[i].push_back(static_cast<QubitId>(q));
            }
        }
    }

    RoutingSolution run() {
        Node root;
        root.pos.resize(Q_);
        for (std::size_t q = 0; q < Q_; ++q) root.pos[q] = static_cast<std::uint16_t>(start_.vertex_of(static_cast<QubitId>(q)));
        if (form_ == Formulation::P2) root.next = advance(root.pos, 0);
        nodes_.push_back(std::move(root));
        best_[key(nodes_[0])] = nodes_[0].g;
        push(0);

        std::size_t expansions = 0;
        while (!open_.empty()) {
            const OpenEntry top = open_.top();
            open_.pop();
            const Node& n = nodes_[top.node];
            if (best_.at(key(n)) < n.g) continue;
            if (n.next == K_) return build(top.node);
            if ((++expansions & 63) == 0) check_budget();
            expand(top.node);
        }
        throw Unsatisfiable(K_, "no schedule exists within the horizon");
    }

private:
    void check_budget() const {
        if (deadline_ && Clock::now() > *deadline_) throw BudgetExpired{};
        if (nodes_.size() > opt_.max_nodes) throw BudgetExpired{};
    }

    bool satisfied(const std::vector<std::uint16_t>& pos, const Interaction& inter) const {
        for (const auto& p : inter.pairs) {
            if (!g_.adjacent(pos[p.first], pos[p.second])) return false;
        }
        return true;
    }

    std::size_t advance(const std::vector<std::uint16_t>& pos, std::size_t i) const {
        while (i < K_ && satisfied(pos, inters_[i])) ++i;
        return i;
    }

    std::string key(const Node& n) const {
        std::string k;
        const auto& rel = relevant_[n.next];
        k.resize(sizeof(std::uint32_t) * 2 + rel.size() * sizeof(std::uint16_t));
        const auto next = static_cast<std::uint32_t>(n.next);
        const auto cycle = static_cast<std::uint32_t>(opt_.horizon ? n.cycle : 0);
        std::memcpy(k.data(), &next, sizeof next);
        std::memcpy(k.data() + sizeof next, &cycle, sizeof cycle);
        char* out = k.data() + 2 * sizeof(std::uint32_t);
        for (QubitId q : rel) {
            std::memcpy(out, &n.pos[q], sizeof(std::uint16_t));
            out += sizeof(std::uint16_t);
        }
        return k;
    }

    std::size_t pair_cycles(const std::vector<std::uint16_t>& pos, const Interaction& inter,
                            std::size_t& swaps) const {
        std::size_t cycles = 0;
        for (const auto& p : inter.pairs) {
            const std::size_t d = dist_(pos[p.first], pos[p.second]);
            cycles = std::max(cycles, d / 2);  // ceil((d - 1) / 2)
            swaps = std::max(swaps, d - 1);
        }
        return cycles;
    }

    /// Lower bound on the remaining cost; see the file comment in solver.hpp.
    Cost heuristic(const Node& n) const {
        if (!opt_.use_heuristic || n.next == K_) return {};
        std::size_t swaps = 0;
        if (form_ == Formulation::P2) {
            std::size_t cycles = 0;
            for (std::size_t j = n.next; j < K_; ++j) cycles = std::max(cycles, pair_cycles(n.pos, inters_[j], swaps));
            return {cycles, swaps};
        }
        // Earliest relative activation cycle of each pending level.
        std::size_t sum = 0;
        std::size_t prev = 0;
        for (std::size_t j = n.next; j < K_; ++j) {
            std::size_t lb = std::max(pair_cycles(n.pos, inters_[j], swaps), j - n.next);
            if (j > n.next) lb = std::max(lb, prev + 1);
            sum += lb;
            prev = lb;
        }
        if (opt_.objective == P3Objective::Makespan) return {prev + 1, swaps};
        return {sum, swaps};
    }

    /// Relative cycle of the last activation is at least this many cycles away.
    std::size_t last_activation_bound(const Node& n) const {
        std::size_t prev = 0;
        std::size_t ignored = 0;
        for (std::size_t j = n.next; j < K_; ++j) {
            std::size_t lb = std::max(pair_cycles(n.pos, inters_[j], ignored), j - n.next);
            if (j > n.next) lb = std::max(lb, prev + 1);
            prev = lb;
        }
        return prev;
    }

    void push(std::size_t id) {
        const Node& n = nodes_[id];
        open_.push({n.g + heuristic(n), seq_++, id});
    }

    void offer(Node child) {
        if (opt_.horizon && child.next < K_ && child.cycle + last_activation_bound(child) > *opt_.horizon) return;
        std::string k = key(child);
        auto it = best_.find(k);
        if (it != best_.end() && it->second <= child.g) return;
        best_[std::move(k)] = child.g;
        nodes_.push_back(std::move(child));
        push(nodes_.size() - 1);
    }

    void expand(std::size_t id) {
        const std::size_t V = g_.num_vertices();
        std::vector<std::int64_t> occ(V, -1);
        const std::vector<std::uint16_t> pos = nodes_[id].pos;
        const std::size_t next = nodes_[id].next;
        const std::size_t cycle = nodes_[id].cycle;
        const Cost g = nodes_[id].g;
        for (std::size_t q = 0; q < Q_; ++q) occ[pos[q]] = static_cast<std::int64_t>(q);
        std::vector<bool> rel(Q_, false);
        for (QubitId q : relevant_[next]) rel[q] = true;
        std::vector<Edge> cand;
        for (const Edge& e : g_.edges()) {
            const bool hit_u = occ[e.u] >= 0 && rel[static_cast<std::size_t>(occ[e.u])];
            const bool hit_v = occ[e.v] >= 0 && rel[static_cast<std::size_t>(occ[e.v])];
            if (hit_u || hit_v) cand.push_back(e);
        }

        auto make_child = [&](const std::vector<Edge>& m, bool activate) {
            Node c;
            c.pos = pos;
            for (const Edge& e : m) {
                const auto a = occ[e.u];
                const auto b = occ[e.v];
                if (a >= 0) c.pos[static_cast<std::size_t>(a)] = static_cast<std::uint16_t>(e.v);
                if (b >= 0) c.pos[static_cast<std::size_t>(b)] = static_cast<std::uint16_t>(e.u);
            }
            c.cycle = cycle + 1;
            c.parent = id;
            c.step = m;
            c.activated = activate;
            c.g = g;
            c.g.swaps += m.size();
            if (form_ == Formulation::P2) {
                c.next = advance(c.pos, next);
                c.g.primary += 1;
            } else {
                c.next = activate ? next + 1 : next;
                c.g.primary += opt_.objective == P3Objective::Makespan ? 1 : K_ - c.next;
            }
            offer(std::move(c));
        };

        std::size_t generated = 0;
        auto visit = [&](bool activate) {
            return [&, activate](const std::vector<Edge>& m) {
                if ((++generated & 1023) == 0) check_budget();
                if (!m.empty() || activate) make_child(m, activate);
                return true;
            };
        };

        if (form_ == Formulation::P3 && satisfied(pos, inters_[next])) {
            std::vector<Edge> free_cand;
            for (const Edge& e : cand) {
                auto busy = [&](VertexId v) {
                    return occ[v] >= 0 && inters_[next].active_qubits.count(static_cast<QubitId>(occ[v])) != 0;
                };
                if (!busy(e.u) && !busy(e.v)) free_cand.push_back(e);
            }
            detail::for_each_matching(free_cand, V, visit(true));
        }
        detail::for_each_matching(cand, V, visit(false));
    }

    RoutingSolution build(std::size_t id) const {
        std::vector<std::size_t> chain;
        for (std::size_t cur = id; cur != 0; cur = nodes_[cur].parent) chain.push_back(cur);
        std::reverse(chain.begin(), chain.end());

        RoutingSolution sol;
        sol.formulation = form_;
        sol.start = start_;
        for (std::size_t c : chain) sol.steps.push_back({nodes_[c].step});
        if (form_ == Formulation::P2) {
            Placement p = start_;
            std::size_t i = 0;
            for (std::size_t t = 0; t <= sol.steps.size(); ++t) {
                if (t > 0) {
                    for (const Edge& e : sol.steps[t - 1].swaps) p.swap_vertices(e.u, e.v);
                }
                while (i < K_ && p.satisfies(g_, inters_[i])) {
                    sol.met_cycle.push_back(t);
                    ++i;
                }
            }
        } else {
            for (std::size_t t = 0; t < chain.size(); ++t) {
                if (!nodes_[chain[t]].activated) continue;
                const std::size_t i = sol.level_cycle.size();
                const bool no_pairs = inters_[i].pairs.empty();
                sol.met_cycle.push_back(no_pairs ? (i == 0 ? 0 : sol.met_cycle.back()) : t);
                sol.level_cycle.push_back(t);
            }
        }
        detail::trim_steps(sol.steps);
        refresh_metrics(sol);
        sol.optimal = true;
        return sol;
    }

    const TopologyGraph& g_;
    const Placement& start_;
    const std::vector<Interaction>& inters_;
    Formulation form_;
    SolveOptions opt_;
    DistanceMatrix dist_;
    std::size_t K_;
    std::size_t Q_;
    std::optional<Clock::time_point> deadline_;
    std::vector<std::vector<QubitId>> relevant_;
    std::vector<Node> nodes_;
    std::unordered_map<std::string, Cost> best_;
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<>> open_;
    std::size_t seq_ = 0;
};

RoutingSolution solve(const TopologyGraph& graph, const Placement& start, const std::vector<Interaction>& inters,
                      Formulation form, const SolveOptions& options) {
    if (start.num_vertices() != graph.num_vertices()) {
        throw InvalidPlacement(fmt::format("placement spans {} vertices, graph has {}", start.num_vertices(),
                                           graph.num_vertices()));
    }
    if (graph.num_vertices() > 0xffff) throw std::invalid_argument("graph too large for the exact solver");
    check_satisfiable(graph, inters, start.num_qubits());
    try {
        return AStar(graph, start, inters, form, options).run();
    } catch (const BudgetExpired&) {
        RoutingSolution inc = greedy_upper_bound(graph, start, inters, form);
        inc.optimal = false;
        return inc;
    }
}

}  // namespace

RoutingSolution solve_p2(const TopologyGraph& graph, const Placement& start,
                         const std::vector<Interaction>& interactions, const SolveOptions& options) {
    return solve(graph, start, interactions, Formulation::P2, options);
}

RoutingSolution solve_p3(const TopologyGraph& graph, const Placement& start,
                         const std::vector<Interaction>& interactions, const SolveOptions& options) {
    return solve(graph, start, interactions, Formulation::P3, options);
}

}  // namespace nnplace
