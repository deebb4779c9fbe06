// SPDX-License-Identifier: MIT

#include "nnplace/leveling.hpp"

namespace nnplace {

std::set<QubitId> Interaction::paired_qubits() const {
    std::set<QubitId> out;
    for (const auto& p : pairs) {
        out.insert(p.first);
        out.insert(p.second);
    }
    return out;
}

std::vector<QubitPair> required_pairs(const Gate& gate) {
    std::vector<QubitPair> out;
    if (gate.targets.empty()) return out;
    const QubitId anchor = gate.targets.front();
    if (gate.targets.size() >= 2) out.emplace_back(gate.targets[0], gate.targets[1]);
    for (QubitId c : gate.controls) out.emplace_back(c, anchor);
    return out;
}

LevelSchedule compute_levels(const QuantumCircuit& circuit) {
    const auto& gates = circuit.gates();
    const std::size_t n = circuit.num_qubits();
    std::vector<bool> processed(gates.size(), false);
    LevelSchedule schedule;

    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (processed[i]) continue;
        std::vector<bool> busy(n, false);
        std::vector<std::size_t> level;
        for (std::size_t j = i; j < gates.size(); ++j) {
            if (processed[j]) continue;
            const auto qs = gates[j].qubits();
            bool free = true;
            for (QubitId q : qs) free = free && !busy[q];
            // Skipped gates block their qubits too, so no gate overtakes an
            // earlier one it shares a qubit with.
            for (QubitId q : qs) busy[q] = true;
            if (free) {
                level.push_back(j);
                processed[j] = true;
            }
        }
        schedule.levels.push_back(std::move(level));
    }
    return schedule;
}

std::vector<Interaction> interactions(const QuantumCircuit& circuit, const LevelSchedule& schedule) {
    std::vector<Interaction> out;
    out.reserve(schedule.size());
    for (const auto& level : schedule.levels) {
        Interaction inter;
        for (std::size_t gi : level) {
            const Gate& g = circuit.gates().at(gi);
            for (QubitId q : g.qubits()) inter.active_qubits.insert(q);
            for (const auto& p : required_pairs(g)) inter.pairs.insert(p);
        }
        out.push_back(std::move(inter));
    }
    return out;
}

}  // namespace nnplace
