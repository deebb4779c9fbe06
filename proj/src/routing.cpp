// SPDX-License-Identifier: MIT

#include "nnplace/routing.hpp"

#include <fmt/format.h>

namespace nnplace {

Placement::Placement(std::vector<VertexId> vertex_of, std::size_t num_vertices)
    : vertex_of_(std::move(vertex_of)), occupant_(num_vertices, kEmpty) {
    for (std::size_t q = 0; q < vertex_of_.size(); ++q) {
        const VertexId v = vertex_of_[q];
        if (v >= num_vertices) {
            throw InvalidPlacement(fmt::format("qubit {} placed on vertex {} outside [0, {})", q, v, num_vertices));
        }
        if (occupant_[v] != kEmpty) {
            throw InvalidPlacement(fmt::format("qubits {} and {} share vertex {}", occupant_[v], q, v));
        }
        occupant_[v] = static_cast<std::uint32_t>(q);
    }
}

Placement Placement::identity(std::size_t num_qubits, std::size_t num_vertices) {
    std::vector<VertexId> v(num_qubits);
    for (std::size_t q = 0; q < num_qubits; ++q) v[q] = static_cast<VertexId>(q);
    return {std::move(v), num_vertices};
}

std::optional<QubitId> Placement::occupant(VertexId v) const {
    const auto q = occupant_.at(v);
    if (q == kEmpty) return std::nullopt;
    return q;
}

void Placement::swap_vertices(VertexId a, VertexId b) {
    std::swap(occupant_.at(a), occupant_.at(b));
    if (occupant_[a] != kEmpty) vertex_of_[occupant_[a]] = a;
    if (occupant_[b] != kEmpty) vertex_of_[occupant_[b]] = b;
}

bool Placement::satisfies(const TopologyGraph& graph, const Interaction& interaction) const {
    for (const auto& p : interaction.pairs) {
        if (!graph.adjacent(vertex_of_.at(p.first), vertex_of_.at(p.second))) return false;
    }
    return true;
}

std::string_view to_string(Formulation f) noexcept { return f == Formulation::P2 ? "p2" : "p3"; }

Placement RoutingSolution::placement_at(std::size_t cycle) const {
    Placement p = start;
    for (std::size_t t = 0; t < cycle && t < steps.size(); ++t) {
        for (const auto& e : steps[t].swaps) p.swap_vertices(e.u, e.v);
    }
    return p;
}

Placement RoutingSolution::final_placement() const { return placement_at(steps.size()); }

void refresh_metrics(RoutingSolution& solution) {
    solution.swap_count = 0;
    solution.swap_delay = 0;
    for (const auto& step : solution.steps) {
        solution.swap_count += step.size();
        if (!step.empty()) ++solution.swap_delay;
    }
    if (solution.formulation == Formulation::P2) {
        solution.total_delay = solution.met_cycle.size() + solution.swap_delay;
    } else {
        solution.total_delay = solution.level_cycle.empty() ? 0 : solution.level_cycle.back() + 1;
    }
}

}  // namespace nnplace
