// SPDX-License-Identifier: MIT

#include "solver_detail.hpp"

#include <fmt/format.h>

#include <map>

namespace nnplace {

namespace {

using Layout = std::vector<VertexId>;

Layout apply(const Layout& from, const Placement& proto, const std::vector<Edge>& swaps) {
    Placement p(from, proto.num_vertices());
    for (const Edge& e : swaps) p.swap_vertices(e.u, e.v);
    return p.vertices();
}

}  // namespace

RoutingSolution solve_p1(const TopologyGraph& graph, const Placement& start, const Interaction& interaction) {
    check_satisfiable(graph, {interaction}, start.num_qubits());
    struct Entry {
        std::size_t swaps;
        Layout prev;
        std::vector<Edge> step;
    };
    // layers[t] maps each placement first reached after t cycles to its cheapest predecessor.
    std::vector<std::map<Layout, Entry>> layers(1);
    layers[0][start.vertices()] = {0, {}, {}};
    std::map<Layout, bool> visited{{start.vertices(), true}};

    auto done = [&](const Layout& l) { return Placement(l, start.num_vertices()).satisfies(graph, interaction); };
    for (std::size_t t = 0;; ++t) {
        const Layout* goal = nullptr;
        std::size_t goal_swaps = 0;
        for (const auto& [layout, entry] : layers[t]) {
            if (done(layout) && (goal == nullptr || entry.swaps < goal_swaps)) {
                goal = &layout;
                goal_swaps = entry.swaps;
            }
        }
        if (goal != nullptr) {
            RoutingSolution sol;
            sol.formulation = Formulation::P2;
            sol.start = start;
            sol.steps.resize(t);
            Layout cur = *goal;
            for (std::size_t s = t; s > 0; --s) {
                const Entry& e = layers[s].at(cur);
                sol.steps[s - 1].swaps = e.step;
                cur = e.prev;
            }
            sol.met_cycle = {t};
            detail::trim_steps(sol.steps);
            refresh_metrics(sol);
            return sol;
        }
        std::map<Layout, Entry> next;
        for (const auto& [layout, entry] : layers[t]) {
            detail::for_each_matching(graph.edges(), graph.num_vertices(), [&](const std::vector<Edge>& m) {
                if (m.empty()) return true;
                Layout to = apply(layout, start, m);
                if (visited.count(to) != 0 && next.count(to) == 0) return true;
                const std::size_t swaps = entry.swaps + m.size();
                auto it = next.find(to);
                if (it == next.end() || swaps < it->second.swaps) next[to] = {swaps, layout, m};
                return true;
            });
        }
        for (const auto& kv : next) visited[kv.first] = true;
        layers.push_back(std::move(next));
    }
}

std::optional<BruteForceResult> brute_force_route(const TopologyGraph& graph, const Placement& start,
                                                  const std::vector<Interaction>& interactions, std::size_t horizon) {
    if (graph.num_vertices() > kBruteForceMaxVertices || horizon > kBruteForceMaxHorizon) {
        throw GuardExceeded(fmt::format("brute force limited to {} vertices and {} cycles (got {} and {})",
                                        kBruteForceMaxVertices, kBruteForceMaxHorizon, graph.num_vertices(), horizon));
    }
    const std::size_t k = interactions.size();
    auto progress = [&](const Layout& l, std::size_t i) {
        Placement p(l, start.num_vertices());
        while (i < k && p.satisfies(graph, interactions[i])) ++i;
        return i;
    };
    // State: (placement, interactions met so far) -> fewest swaps after t cycles.
    std::map<std::pair<Layout, std::size_t>, std::size_t> layer;
    layer[{start.vertices(), progress(start.vertices(), 0)}] = 0;
    for (std::size_t t = 0; t <= horizon; ++t) {
        std::optional<std::size_t> best;
        for (const auto& [state, swaps] : layer) {
            if (state.second == k && (!best || swaps < *best)) best = swaps;
        }
        if (best) return BruteForceResult{*best, t};
        if (t == horizon) break;
        std::map<std::pair<Layout, std::size_t>, std::size_t> next;
        for (const auto& [state, swaps] : layer) {
            detail::for_each_matching(graph.edges(), graph.num_vertices(), [&](const std::vector<Edge>& m) {
                if (m.empty()) return true;
                Layout to = apply(state.first, start, m);
                const std::size_t i = progress(to, state.second);
                auto [it, inserted] = next.try_emplace({std::move(to), i}, swaps + m.size());
                if (!inserted && swaps + m.size() < it->second) it->second = swaps + m.size();
                return true;
            });
        }
        layer = std::move(next);
    }
    return std::nullopt;
}

}  // namespace nnplace
