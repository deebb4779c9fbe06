// SPDX-License-Identifier: MIT

#include "nnplace/pipeline.hpp"

#include "nnplace/verify.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <set>

namespace nnplace {

std::vector<Block> split_blocks(const LevelSchedule& schedule, std::size_t block_size) {
    if (block_size == 0) throw std::invalid_argument("block size must be at least 1");
    std::vector<Block> blocks;
    for (std::size_t lo = 0; lo < schedule.size(); lo += block_size) {
        Block b;
        b.lo = lo;
        b.hi = std::min(lo + block_size, schedule.size()) - 1;
        blocks.push_back(std::move(b));
    }
    return blocks;
}

bool RoutedCircuit::all_optimal() const noexcept {
    return std::all_of(solutions.begin(), solutions.end(), [](const RoutingSolution& s) { return s.optimal; });
}

Placement RoutedCircuit::exit_placement() const {
    return solutions.empty() ? start : solutions.back().final_placement();
}

std::vector<std::string> vertex_line_names(const QuantumCircuit& circuit, const Placement& start) {
    std::set<std::string> taken(circuit.qubit_names().begin(), circuit.qubit_names().end());
    std::vector<std::string> names;
    for (std::size_t v = 0; v < start.num_vertices(); ++v) {
        if (auto q = start.occupant(static_cast<VertexId>(v))) {
            names.push_back(circuit.name(*q));
            continue;
        }
        std::string n = fmt::format("v{}", v);
        while (taken.count(n) != 0) n += '_';
        taken.insert(n);
        names.push_back(std::move(n));
    }
    return names;
}

namespace {

Gate relabel(const Gate& g, const Placement& p) {
    Gate out = g;
    for (auto& q : out.controls) q = p.vertex_of(q);
    for (auto& q : out.targets) q = p.vertex_of(q);
    return out;
}

ProblemInstance block_instance(const RoutedCircuit& routed, std::size_t b) {
    return {routed.topology, routed.blocks[b].entry, routed.blocks[b].interactions, routed.formulation, 0};
}

/// Checks the merged circuit against the topology and the original gate order.
void replay_merged(const RoutedCircuit& routed, const QuantumCircuit& merged, const std::vector<bool>& inserted) {
    const auto& g = routed.topology;
    std::vector<Gate> expected;
    for (const auto& level : routed.schedule.levels) {
        for (std::size_t gi : level) expected.push_back(routed.original.gates()[gi]);
    }
    Placement p = routed.start;
    std::size_t next = 0;
    for (std::size_t i = 0; i < merged.num_gates(); ++i) {
        const Gate& gate = merged.gates()[i];
        for (const auto& pr : required_pairs(gate)) {
            if (!g.adjacent(pr.first, pr.second)) {
                throw VerificationFailed(
                    fmt::format("gate {} of the routed circuit acts on non-adjacent vertices {} and {}", i, pr.first,
                                pr.second));
            }
        }
        if (inserted[i]) {
            p.swap_vertices(gate.targets[0], gate.targets[1]);
            continue;
        }
        Gate back = gate;
        for (auto& v : back.controls) v = *p.occupant(v);
        for (auto& v : back.targets) v = *p.occupant(v);
        if (next >= expected.size() || !(back == expected[next])) {
            throw VerificationFailed(fmt::format("gate {} of the routed circuit does not match the original", i));
        }
        ++next;
    }
    if (next != expected.size()) throw VerificationFailed("routed circuit lost gates");
    const std::size_t depth = compute_levels(merged).size();
    if (depth > routed.total_delay) {
        throw VerificationFailed(
            fmt::format("routed circuit re-levels to depth {} above the reported delay {}", depth, routed.total_delay));
    }
}

}  // namespace

QuantumCircuit insert_swaps(const RoutedCircuit& routed) {
    if (routed.solutions.size() != routed.blocks.size()) throw VerificationFailed("one solution per block expected");
    const std::size_t n = routed.topology.num_vertices();
    Placement cur = routed.start;
    for (std::size_t b = 0; b < routed.blocks.size(); ++b) {
        if (!(routed.blocks[b].entry == cur)) {
            throw VerificationFailed(fmt::format("block {} does not start from the previous exit placement", b));
        }
        const auto rep = verify_solution(block_instance(routed, b), routed.solutions[b]);
        if (!rep.ok()) {
            const auto& v = rep.violations.front();
            throw VerificationFailed(fmt::format("block {}: {} at cycle {}: {}", b, to_string(v.kind), v.cycle, v.detail));
        }
        cur = routed.solutions[b].final_placement();
    }

    QuantumCircuit out(vertex_line_names(routed.original, routed.start));
    if (routed.start == Placement::identity(routed.original.num_qubits(), n) && n == routed.original.num_qubits()) {
        out.header() = routed.original.header();
    } else {
        out.header().version = routed.original.header().version;
    }
    std::vector<bool> inserted;
    auto emit_gate = [&](const Gate& g, const Placement& p) {
        out.add_gate(relabel(g, p));
        inserted.push_back(false);
    };
    auto emit_swaps = [&](const SwapStep& step, Placement& p) {
        for (const Edge& e : step.swaps) {
            out.add_gate(Gate::swap(e.u, e.v));
            inserted.push_back(true);
            p.swap_vertices(e.u, e.v);
        }
    };

    for (std::size_t b = 0; b < routed.blocks.size(); ++b) {
        const Block& block = routed.blocks[b];
        const RoutingSolution& sol = routed.solutions[b];
        Placement p = block.entry;
        std::size_t t = 0;
        for (std::size_t j = 0; j < block.size(); ++j) {
            const auto& gates = routed.schedule.levels[block.lo + j];
            if (sol.formulation == Formulation::P2) {
                for (; t < sol.met_cycle[j]; ++t) emit_swaps(sol.steps[t], p);
                for (std::size_t gi : gates) emit_gate(routed.original.gates()[gi], p);
            } else {
                for (; t < sol.level_cycle[j]; ++t) {
                    if (t < sol.steps.size()) emit_swaps(sol.steps[t], p);
                }
                for (std::size_t gi : gates) emit_gate(routed.original.gates()[gi], p);
                if (t < sol.steps.size()) emit_swaps(sol.steps[t], p);
                ++t;
            }
        }
        for (; t < sol.steps.size(); ++t) emit_swaps(sol.steps[t], p);
    }
    replay_merged(routed, out, inserted);
    return out;
}

RoutedCircuit route_circuit(const QuantumCircuit& circuit, const TopologyGraph& topology, const Placement& start,
                            const RouteOptions& options, std::string name) {
    const auto t0 = std::chrono::steady_clock::now();
    if (start.num_qubits() != circuit.num_qubits()) {
        throw InvalidPlacement(fmt::format("placement covers {} qubits, circuit has {}", start.num_qubits(),
                                           circuit.num_qubits()));
    }
    if (start.num_vertices() != topology.num_vertices()) {
        throw InvalidPlacement(fmt::format("placement spans {} vertices, topology has {}", start.num_vertices(),
                                           topology.num_vertices()));
    }
    RoutedCircuit r{std::move(name), circuit, compute_levels(circuit), topology, start, options.formulation,
                    options.block_size, {}, {}, {}};
    const auto inters = interactions(circuit, r.schedule);
    try {
        check_satisfiable(topology, inters, circuit.num_qubits());
    } catch (const Unsatisfiable& e) {
        std::string gates;
        for (std::size_t gi : r.schedule.levels[e.interaction()]) gates += fmt::format(" {}", gi);
        throw Unsatisfiable(e.interaction(), fmt::format("level {} (gates{}) cannot be made nearest-neighbor on the {} "
                                                         "topology",
                                                         e.interaction(), gates, to_string(topology.kind())));
    }

    r.blocks = split_blocks(r.schedule, options.block_size);
    Placement cur = start;
    for (auto& block : r.blocks) {
        block.interactions.assign(inters.begin() + static_cast<std::ptrdiff_t>(block.lo),
                                  inters.begin() + static_cast<std::ptrdiff_t>(block.hi) + 1);
        block.entry = cur;
        RoutingSolution sol = options.formulation == Formulation::P2
                                  ? solve_p2(topology, cur, block.interactions, options.solve)
                                  : solve_p3(topology, cur, block.interactions, options.solve);
        cur = sol.final_placement();
        r.swap_count += sol.swap_count;
        r.swap_delay += sol.swap_delay;
        r.total_delay += sol.total_delay;
        r.solutions.push_back(std::move(sol));
    }
    r.merged = insert_swaps(r);
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::string report_json(const RoutedCircuit& routed) {
    nlohmann::ordered_json j;
    j["benchmark"] = routed.name;
    j["vars"] = routed.original.num_qubits();
    j["gates"] = routed.original.num_gates();
    j["levels"] = routed.schedule.size();
    j["topology"] = std::string(to_string(routed.topology.kind()));
    j["vertices"] = routed.topology.num_vertices();
    j["formulation"] = std::string(to_string(routed.formulation));
    j["block_size"] = routed.block_size;
    j["blocks"] = routed.blocks.size();
    j["S"] = routed.swap_count;
    j["swap_delay"] = routed.swap_delay;
    j["D"] = routed.total_delay;
    auto flags = nlohmann::ordered_json::array();
    for (const auto& s : routed.solutions) flags.push_back(s.optimal);
    j["block_optimal"] = flags;
    j["optimal"] = routed.all_optimal();
    j["wall_time_s"] = routed.wall_time_s;
    return j.dump();
}

std::string report_table(const std::vector<RoutedCircuit>& routed) {
    std::vector<std::vector<std::string>> rows{
        {"benchmark", "vars", "gates", "levels", "topology", "form", "b", "S", "swap_delay", "D", "optimal", "time_s"}};
    for (const auto& r : routed) {
        rows.push_back({r.name, std::to_string(r.original.num_qubits()), std::to_string(r.original.num_gates()),
                        std::to_string(r.schedule.size()), std::string(to_string(r.topology.kind())),
                        std::string(to_string(r.formulation)), std::to_string(r.block_size),
                        std::to_string(r.swap_count), std::to_string(r.swap_delay), std::to_string(r.total_delay),
                        r.all_optimal() ? "yes" : "no", fmt::format("{:.3f}", r.wall_time_s)});
    }
    std::vector<std::size_t> width(rows[0].size(), 0);
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) line += "  ";
            // names left-aligned, numbers right-aligned
            line += c == 0 || c == 4 || c == 5 ? fmt::format("{:<{}}", row[c], width[c])
                                               : fmt::format("{:>{}}", row[c], width[c]);
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + '\n';
    }
    return out;
}

}  // namespace nnplace
