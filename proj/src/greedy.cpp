// SPDX-License-Identifier: MIT

#include "solver_detail.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace nnplace {

namespace {

constexpr std::size_t kEmbeddingNodeLimit = 200'000;

/// Moves tokens along a BFS spanning tree so every paired qubit reaches its
/// target vertex; vertices without a target accept any other content.
std::vector<Edge> route_on_tree(const TopologyGraph& graph, Placement& p, const std::vector<VertexId>& target_of) {
    const std::size_t n = graph.num_vertices();
    std::vector<std::optional<QubitId>> wanted(n);
    for (std::size_t q = 0; q < target_of.size(); ++q) {
        if (target_of[q] != kNoVertex) wanted[target_of[q]] = static_cast<QubitId>(q);
    }
    auto is_wildcard = [&](VertexId v) {
        auto q = p.occupant(v);
        return !q || target_of[*q] == kNoVertex;
    };

    std::vector<VertexId> parent(n, kNoVertex);
    std::vector<std::size_t> depth(n, 0);
    std::vector<VertexId> order;
    std::vector<bool> seen(n, false);
    std::queue<VertexId> queue;
    queue.push(0);
    seen[0] = true;
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop();
        order.push_back(v);
        for (VertexId w : graph.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = true;
                parent[w] = v;
                depth[w] = depth[v] + 1;
                queue.push(w);
            }
        }
    }

    std::vector<bool> alive(n, true);
    auto tree_path = [&](VertexId from, VertexId to) {
        std::vector<VertexId> up;
        std::vector<VertexId> down;
        while (from != to) {
            if (depth[from] >= depth[to]) {
                up.push_back(from);
                from = parent[from];
            } else {
                down.push_back(to);
                to = parent[to];
            }
        }
        up.push_back(from);
        up.insert(up.end(), down.rbegin(), down.rend());
        return up;
    };

    std::vector<Edge> seq;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const VertexId leaf = *it;
        std::optional<VertexId> source;
        if (wanted[leaf]) {
            source = p.vertex_of(*wanted[leaf]);
        } else if (!is_wildcard(leaf)) {
            // nearest wildcard inside the remaining tree
            std::vector<bool> mark(n, false);
            std::queue<VertexId> bfs;
            bfs.push(leaf);
            mark[leaf] = true;
            while (!bfs.empty() && !source) {
                VertexId v = bfs.front();
                bfs.pop();
                std::vector<VertexId> next;
                if (parent[v] != kNoVertex) next.push_back(parent[v]);
                for (VertexId w : graph.neighbors(v)) {
                    if (parent[w] == v) next.push_back(w);
                }
                std::sort(next.begin(), next.end());
                for (VertexId w : next) {
                    if (mark[w] || !alive[w]) continue;
                    mark[w] = true;
                    if (is_wildcard(w)) {
                        source = w;
                        break;
                    }
                    bfs.push(w);
                }
            }
        }
        if (source && *source != leaf) {
            const auto path = tree_path(*source, leaf);
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                p.swap_vertices(path[i], path[i + 1]);
                seq.emplace_back(path[i], path[i + 1]);
            }
        }
        alive[leaf] = false;
    }
    return seq;
}

/// Swap sequence that brings `p` to a placement meeting the interaction.
std::vector<Edge> greedy_segment(const TopologyGraph& graph, const DistanceMatrix& dist, Placement& p,
                                 const Interaction& inter) {
    const Placement saved = p;
    std::vector<Edge> seq;
    std::set<std::vector<VertexId>> seen{p.vertices()};
    const std::size_t cap = 4 * graph.num_vertices() * (inter.pairs.size() + 1);
    bool stuck = false;
    while (!p.satisfies(graph, inter)) {
        const QubitPair* far = nullptr;
        std::uint32_t far_d = 0;
        for (const auto& pr : inter.pairs) {
            const auto d = dist(p.vertex_of(pr.first), p.vertex_of(pr.second));
            if (d > far_d) {
                far = &pr;
                far_d = d;
            }
        }
        const VertexId a = p.vertex_of(far->first);
        const VertexId b = p.vertex_of(far->second);
        VertexId hop = kNoVertex;
        for (VertexId w : graph.neighbors(a)) {
            if (dist(w, b) + 1 == far_d) {
                hop = w;
                break;
            }
        }
        p.swap_vertices(a, hop);
        seq.emplace_back(a, hop);
        if (!seen.insert(p.vertices()).second || seq.size() > cap) {
            stuck = true;
            break;
        }
    }
    if (!stuck) return seq;

    p = saved;
    auto emb = detail::closest_embedding(graph, dist, inter, p, kEmbeddingNodeLimit);
    if (!emb) throw Unsatisfiable(0, "interaction cannot be embedded");
    return route_on_tree(graph, p, *emb);
}

}  // namespace

RoutingSolution greedy_upper_bound(const TopologyGraph& graph, const Placement& start,
                                   const std::vector<Interaction>& interactions, Formulation formulation) {
    check_satisfiable(graph, interactions, start.num_qubits());
    const DistanceMatrix dist = shortest_distances(graph);
    RoutingSolution sol;
    sol.formulation = formulation;
    sol.start = start;
    sol.optimal = false;
    Placement p = start;
    for (std::size_t i = 0; i < interactions.size(); ++i) {
        const auto seq = greedy_segment(graph, dist, p, interactions[i]);
        auto steps = detail::pack_swaps(seq, graph.num_vertices());
        sol.steps.insert(sol.steps.end(), steps.begin(), steps.end());
        if (formulation == Formulation::P2) {
            sol.met_cycle.push_back(sol.steps.size());
        } else {
            const std::size_t tau = sol.steps.size();
            sol.level_cycle.push_back(tau);
            const bool no_pairs = interactions[i].pairs.empty();
            sol.met_cycle.push_back(no_pairs ? (i == 0 ? 0 : sol.met_cycle.back()) : tau);
            sol.steps.emplace_back();
        }
    }
    detail::trim_steps(sol.steps);
    refresh_metrics(sol);
    return sol;
}

}  // namespace nnplace
