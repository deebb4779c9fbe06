// SPDX-License-Identifier: MIT

#include "solver_detail.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>
#include <map>

namespace nnplace {

namespace {

/// Backtracking subgraph embedding of an interaction's pair graph.
class Embedder {
public:
    Embedder(const TopologyGraph& graph, const Interaction& inter, std::size_t num_qubits)
        : graph_(graph), num_qubits_(num_qubits) {
        const auto paired = inter.paired_qubits();
        nodes_.assign(paired.begin(), paired.end());
        std::map<QubitId, std::size_t> local;
        for (std::size_t i = 0; i < nodes_.size(); ++i) local[nodes_[i]] = i;
        adj_.resize(nodes_.size());
        for (const auto& p : inter.pairs) {
            adj_[local[p.first]].push_back(local[p.second]);
            adj_[local[p.second]].push_back(local[p.first]);
        }
        build_order();
    }

    void set_cost(const DistanceMatrix* dist, const Placement* current, std::size_t node_limit) {
        dist_ = dist;
        current_ = current;
        node_limit_ = node_limit;
    }

    std::optional<std::vector<VertexId>> run() {
        for (QubitId q : nodes_) {
            if (q >= num_qubits_) return std::nullopt;
        }
        if (nodes_.size() > graph_.num_vertices()) return std::nullopt;
        map_.assign(nodes_.size(), kNoVertex);
        used_.assign(graph_.num_vertices(), false);
        search(0, 0);
        return best_;
    }

private:
    void build_order() {
        const std::size_t n = nodes_.size();
        std::vector<bool> placed(n, false);
        std::vector<std::size_t> linked(n, 0);
        for (std::size_t step = 0; step < n; ++step) {
            std::size_t pick = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (placed[i]) continue;
                if (pick == n || linked[i] > linked[pick] ||
                    (linked[i] == linked[pick] && adj_[i].size() > adj_[pick].size())) {
                    pick = i;
                }
            }
            placed[pick] = true;
            order_.push_back(pick);
            for (std::size_t j : adj_[pick]) ++linked[j];
        }
    }

    std::size_t step_cost(std::size_t node, VertexId v) const {
        if (dist_ == nullptr) return 0;
        return (*dist_)(current_->vertex_of(nodes_[node]), v);
    }

    bool fits(std::size_t node, VertexId v) const {
        if (used_[v] || graph_.degree(v) < adj_[node].size()) return false;
        for (std::size_t j : adj_[node]) {
            if (map_[j] != kNoVertex && !graph_.adjacent(map_[j], v)) return false;
        }
        return true;
    }

    /// Returns true to stop the whole search.
    bool search(std::size_t pos, std::size_t cost) {
        if (best_ && cost >= best_cost_) return false;
        if (pos == order_.size()) {
            std::vector<VertexId> out(num_qubits_, kNoVertex);
            for (std::size_t i = 0; i < nodes_.size(); ++i) out[nodes_[i]] = map_[i];
            best_ = std::move(out);
            best_cost_ = cost;
            return dist_ == nullptr || cost == 0;
        }
        if (++visited_ > node_limit_ && best_) return true;
        const std::size_t node = order_[pos];
        std::vector<VertexId> cands;
        std::optional<VertexId> anchor;
        for (std::size_t j : adj_[node]) {
            if (map_[j] != kNoVertex) {
                anchor = map_[j];
                break;
            }
        }
        if (anchor) {
            cands = graph_.neighbors(*anchor);
        } else {
            cands.resize(graph_.num_vertices());
            for (std::size_t v = 0; v < cands.size(); ++v) cands[v] = static_cast<VertexId>(v);
        }
        if (dist_ != nullptr) {
            std::stable_sort(cands.begin(), cands.end(),
                             [&](VertexId a, VertexId b) { return step_cost(node, a) < step_cost(node, b); });
        }
        for (VertexId v : cands) {
            if (!fits(node, v)) continue;
            map_[node] = v;
            used_[v] = true;
            const bool stop = search(pos + 1, cost + step_cost(node, v));
            used_[v] = false;
            map_[node] = kNoVertex;
            if (stop) return true;
        }
        return false;
    }

    const TopologyGraph& graph_;
    std::size_t num_qubits_;
    std::vector<QubitId> nodes_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::size_t> order_;
    std::vector<VertexId> map_;
    std::vector<bool> used_;
    const DistanceMatrix* dist_ = nullptr;
    const Placement* current_ = nullptr;
    std::size_t node_limit_ = std::numeric_limits<std::size_t>::max();
    std::size_t visited_ = 0;
    std::optional<std::vector<VertexId>> best_;
    std::size_t best_cost_ = 0;
};

}  // namespace

std::optional<std::vector<VertexId>> find_embedding(const TopologyGraph& graph, const Interaction& interaction,
                                                    std::size_t num_qubits) {
    return Embedder(graph, interaction, num_qubits).run();
}

bool embeddable(const TopologyGraph& graph, const Interaction& interaction, std::size_t num_qubits) {
    return find_embedding(graph, interaction, num_qubits).has_value();
}

void check_satisfiable(const TopologyGraph& graph, const std::vector<Interaction>& interactions,
                       std::size_t num_qubits) {
    for (std::size_t i = 0; i < interactions.size(); ++i) {
        if (!embeddable(graph, interactions[i], num_qubits)) {
            std::string pairs;
            for (const auto& p : interactions[i].pairs) pairs += fmt::format(" ({},{})", p.first, p.second);
            throw Unsatisfiable(i, fmt::format("interaction {} cannot be embedded in the {} topology:{}", i,
                                               to_string(graph.kind()), pairs));
        }
    }
}

namespace detail {

std::optional<std::vector<VertexId>> closest_embedding(const TopologyGraph& graph, const DistanceMatrix& dist,
                                                       const Interaction& interaction, const Placement& current,
                                                       std::size_t node_limit) {
    Embedder e(graph, interaction, current.num_qubits());
    e.set_cost(&dist, &current, node_limit);
    return e.run();
}

void for_each_matching(const std::vector<Edge>& edges, std::size_t num_vertices,
                       const std::function<bool(const std::vector<Edge>&)>& visit) {
    std::vector<bool> used(num_vertices, false);
    std::vector<Edge> chosen;
    bool stopped = false;
    // Pre-order over include decisions yields lexicographic order of edge index lists.
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (stopped) return;
        if (!visit(chosen)) {
            stopped = true;
            return;
        }
        for (std::size_t i = from; i < edges.size() && !stopped; ++i) {
            const Edge& e = edges[i];
            if (used[e.u] || used[e.v]) continue;
            used[e.u] = used[e.v] = true;
            chosen.push_back(e);
            rec(i + 1);
            chosen.pop_back();
            used[e.u] = used[e.v] = false;
        }
    };
    rec(0);
}

std::vector<SwapStep> pack_swaps(const std::vector<Edge>& sequence, std::size_t num_vertices) {
    std::vector<std::size_t> ready(num_vertices, 0);
    std::vector<SwapStep> steps;
    for (const Edge& e : sequence) {
        const std::size_t c = std::max(ready[e.u], ready[e.v]);
        if (steps.size() <= c) steps.resize(c + 1);
        steps[c].swaps.push_back(e);
        ready[e.u] = ready[e.v] = c + 1;
    }
    for (auto& s : steps) std::sort(s.swaps.begin(), s.swaps.end());
    return steps;
}

void trim_steps(std::vector<SwapStep>& steps) {
    while (!steps.empty() && steps.back().empty()) steps.pop_back();
}

}  // namespace detail

}  // namespace nnplace
