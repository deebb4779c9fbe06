// SPDX-License-Identifier: MIT

/**
 * @file circuit.hpp
 * @brief Gate and circuit data model plus RevLib `.real` I/O.
 *
 * Qubits are dense integer ids 0..n-1; names live in a side table and are
 * only used for I/O. Gates keep controls and targets separately so the
 * adjacency rules of the router can be derived without re-parsing.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nnplace {

using QubitId = std::uint32_t;

enum class GateKind : std::uint8_t { Not, Cnot, Toffoli, V, VDag, Swap, Fredkin };

[[nodiscard]] std::string_view to_string(GateKind kind) noexcept;

struct Gate {
    GateKind kind = GateKind::Not;
    std::vector<QubitId> controls;
    std::vector<QubitId> targets;

    /// Controls followed by targets.
    [[nodiscard]] std::vector<QubitId> qubits() const;

    bool operator==(const Gate&) const = default;

    static Gate not_gate(QubitId target);
    static Gate cnot(QubitId control, QubitId target);
    static Gate toffoli(std::vector<QubitId> controls, QubitId target);
    static Gate swap(QubitId a, QubitId b);
    static Gate fredkin(std::vector<QubitId> controls, QubitId t1, QubitId t2);
};

/// Header directives that do not influence routing but survive a round trip.
struct RealHeader {
    std::string version = "1.0";
    std::optional<std::string> inputs;
    std::optional<std::string> outputs;
    std::optional<std::string> constants;
    std::optional<std::string> garbage;

    bool operator==(const RealHeader&) const = default;
};

class QuantumCircuit {
public:
    QuantumCircuit() = default;
    explicit QuantumCircuit(std::vector<std::string> qubit_names);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return names_.size(); }
    [[nodiscard]] const std::vector<std::string>& qubit_names() const noexcept { return names_; }
    [[nodiscard]] const std::string& name(QubitId q) const { return names_.at(q); }
    [[nodiscard]] std::optional<QubitId> find_qubit(std::string_view name) const;

    [[nodiscard]] const std::vector<Gate>& gates() const noexcept { return gates_; }
    [[nodiscard]] std::size_t num_gates() const noexcept { return gates_.size(); }

    /// Appends without validation; see validate().
    void add_gate(Gate gate) { gates_.push_back(std::move(gate)); }

    [[nodiscard]] RealHeader& header() noexcept { return header_; }
    [[nodiscard]] const RealHeader& header() const noexcept { return header_; }

    bool operator==(const QuantumCircuit&) const = default;

private:
    std::vector<std::string> names_;
    std::vector<Gate> gates_;
    RealHeader header_;
};

enum class ParseErrorKind : std::uint8_t {
    UnknownDirective,
    UnknownGate,
    UndeclaredQubit,
    ArityMismatch,
    Malformed,
};

[[nodiscard]] std::string_view to_string(ParseErrorKind kind) noexcept;

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail);

    [[nodiscard]] ParseErrorKind kind() const noexcept { return kind_; }
    /// 1-based line number in the source document.
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
};

[[nodiscard]] QuantumCircuit parse_real(std::string_view text);
[[nodiscard]] std::string write_real(const QuantumCircuit& circuit);

enum class ViolationRule : std::uint8_t { Disjointness, Arity, UndeclaredQubit, DuplicateQubit };

[[nodiscard]] std::string_view to_string(ViolationRule rule) noexcept;

struct CircuitViolation {
    std::size_t gate_index = 0;
    ViolationRule rule = ViolationRule::Arity;
    std::string detail;
};

/// Empty iff every gate satisfies the arity and disjointness rules.
[[nodiscard]] std::vector<CircuitViolation> validate(const QuantumCircuit& circuit);

}  // namespace nnplace
