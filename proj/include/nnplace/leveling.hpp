// SPDX-License-Identifier: MIT

#pragma once

#include "nnplace/circuit.hpp"

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

namespace nnplace {

/// Unordered qubit pair, stored with first < second.
struct QubitPair {
    QubitId first = 0;
    QubitId second = 0;

    QubitPair() = default;
    QubitPair(QubitId a, QubitId b) : first(a < b ? a : b), second(a < b ? b : a) {}

    auto operator<=>(const QubitPair&) const = default;
};

/// Partition of a circuit's gates into parallel levels.
struct LevelSchedule {
    /// levels[i] holds gate indices of level i in source order.
    std::vector<std::vector<std::size_t>> levels;

    [[nodiscard]] std::size_t size() const noexcept { return levels.size(); }
    bool operator==(const LevelSchedule&) const = default;
};

/// Qubit pairs that must be adjacent for one level to execute.
struct Interaction {
    std::set<QubitPair> pairs;
    std::set<QubitId> active_qubits;

    /// Qubits that occur in some pair.
    [[nodiscard]] std::set<QubitId> paired_qubits() const;
    bool operator==(const Interaction&) const = default;
};

/// Adjacency requirements of a single gate: every control next to the
/// (first) target, and for two-target gates the targets next to each other.
[[nodiscard]] std::vector<QubitPair> required_pairs(const Gate& gate);

/// Greedy level computation: a level opens at the first unprocessed gate and
/// absorbs every later gate whose qubits are free of both the level and any
/// skipped earlier gate.
[[nodiscard]] LevelSchedule compute_levels(const QuantumCircuit& circuit);

[[nodiscard]] std::vector<Interaction> interactions(const QuantumCircuit& circuit, const LevelSchedule& schedule);

}  // namespace nnplace
