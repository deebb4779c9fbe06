// SPDX-License-Identifier: MIT

#include "nnplace/circuit.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <unordered_map>

namespace nnplace {

std::string_view to_string(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::Not: return "NOT";
    case GateKind::Cnot: return "CNOT";
    case GateKind::Toffoli: return "TOFFOLI";
    case GateKind::V: return "V";
    case GateKind::VDag: return "VDAG";
    case GateKind::Swap: return "SWAP";
    case GateKind::Fredkin: return "FREDKIN";
    }
    return "?";
}

std::vector<QubitId> Gate::qubits() const {
    std::vector<QubitId> all = controls;
    all.insert(all.end(), targets.begin(), targets.end());
    return all;
}

Gate Gate::not_gate(QubitId target) { return {GateKind::Not, {}, {target}}; }
Gate Gate::cnot(QubitId control, QubitId target) { return {GateKind::Cnot, {control}, {target}}; }
Gate Gate::toffoli(std::vector<QubitId> controls, QubitId target) {
    return {GateKind::Toffoli, std::move(controls), {target}};
}
Gate Gate::swap(QubitId a, QubitId b) { return {GateKind::Swap, {}, {a, b}}; }
Gate Gate::fredkin(std::vector<QubitId> controls, QubitId t1, QubitId t2) {
    return {GateKind::Fredkin, std::move(controls), {t1, t2}};
}

QuantumCircuit::QuantumCircuit(std::vector<std::string> qubit_names) : names_(std::move(qubit_names)) {}

std::optional<QubitId> QuantumCircuit::find_qubit(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        return std::nullopt;
    }
    return static_cast<QubitId>(it - names_.begin());
}

std::string_view to_string(ParseErrorKind kind) noexcept {
    switch (kind) {
    case ParseErrorKind::UnknownDirective: return "UnknownDirective";
    case ParseErrorKind::UnknownGate: return "UnknownGate";
    case ParseErrorKind::UndeclaredQubit: return "UndeclaredQubit";
    case ParseErrorKind::ArityMismatch: return "ArityMismatch";
    case ParseErrorKind::Malformed: return "Malformed";
    }
    return "?";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
    : std::runtime_error(fmt::format("line {}: {}: {}", line, to_string(kind), detail)), kind_(kind), line_(line) {}

namespace {

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::string rest_after_first(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (i > 1) out += ' ';
        out += tokens[i];
    }
    return out;
}

std::optional<std::size_t> parse_count(std::string_view digits) {
    if (digits.empty()) return std::nullopt;
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
    return value;
}

struct Mnemonic {
    char family;  // 't', 'f', 'v', '+' (v+)
    std::optional<std::size_t> arity;
};

std::optional<Mnemonic> parse_mnemonic(std::string_view tok) {
    if (tok.empty()) return std::nullopt;
    if (tok[0] == 't' || tok[0] == 'f') {
        auto n = parse_count(tok.substr(1));
        if (!n) return std::nullopt;
        return Mnemonic{tok[0], n};
    }
    if (tok[0] == 'v') {
        std::string_view rest = tok.substr(1);
        char family = 'v';
        if (!rest.empty() && rest[0] == '+') {
            family = '+';
            rest.remove_prefix(1);
        }
        if (rest.empty()) return Mnemonic{family, std::nullopt};
        auto n = parse_count(rest);
        if (!n) return std::nullopt;
        return Mnemonic{family, n};
    }
    return std::nullopt;
}

Gate build_gate(const Mnemonic& m, std::vector<QubitId> ops, std::size_t line) {
    const std::size_t count = ops.size();
    if (m.arity && *m.arity != count) {
        throw ParseError(ParseErrorKind::ArityMismatch, line,
                         fmt::format("mnemonic expects {} operands, got {}", *m.arity, count));
    }
    auto split_last = [&](std::size_t targets) {
        Gate g;
        g.controls.assign(ops.begin(), ops.end() - static_cast<std::ptrdiff_t>(targets));
        g.targets.assign(ops.end() - static_cast<std::ptrdiff_t>(targets), ops.end());
        return g;
    };
    switch (m.family) {
    case 't': {
        if (count < 1) throw ParseError(ParseErrorKind::ArityMismatch, line, "t-gate needs at least 1 operand");
        Gate g = split_last(1);
        g.kind = count == 1 ? GateKind::Not : count == 2 ? GateKind::Cnot : GateKind::Toffoli;
        return g;
    }
    case 'f': {
        if (count < 2) throw ParseError(ParseErrorKind::ArityMismatch, line, "f-gate needs at least 2 operands");
        Gate g = split_last(2);
        g.kind = count == 2 ? GateKind::Swap : GateKind::Fredkin;
        return g;
    }
    default: {
        if (count < 1 || count > 2) {
            throw ParseError(ParseErrorKind::ArityMismatch, line, "v-gate takes 1 or 2 operands");
        }
        Gate g = split_last(1);
        g.kind = m.family == 'v' ? GateKind::V : GateKind::VDag;
        return g;
    }
    }
}

}  // namespace

QuantumCircuit parse_real(std::string_view text) {
    enum class Stage { Header, Body, Done };
    Stage stage = Stage::Header;
    std::optional<std::size_t> numvars;
    std::optional<std::vector<std::string>> variables;
    std::unordered_map<std::string, QubitId> index;
    RealHeader header;
    std::vector<Gate> gates;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view raw = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        auto tokens = split_ws(raw);
        if (tokens.empty()) {
            if (eol == text.size()) break;
            continue;
        }
        const std::string& head = tokens.front();

        if (stage == Stage::Done) {
            throw ParseError(ParseErrorKind::Malformed, line_no, "content after .end");
        }

        if (head[0] == '.') {
            if (head == ".begin") {
                if (stage != Stage::Header) throw ParseError(ParseErrorKind::Malformed, line_no, "duplicate .begin");
                if (!variables) throw ParseError(ParseErrorKind::Malformed, line_no, ".begin before .variables");
                stage = Stage::Body;
            } else if (head == ".end") {
                if (stage != Stage::Body) throw ParseError(ParseErrorKind::Malformed, line_no, ".end without .begin");
                stage = Stage::Done;
            } else if (stage != Stage::Header) {
                throw ParseError(ParseErrorKind::Malformed, line_no, fmt::format("directive {} inside gate list", head));
            } else if (head == ".version") {
                header.version = rest_after_first(tokens);
            } else if (head == ".numvars") {
                if (tokens.size() != 2 || !parse_count(tokens[1])) {
                    throw ParseError(ParseErrorKind::Malformed, line_no, ".numvars expects one integer");
                }
                numvars = parse_count(tokens[1]);
            } else if (head == ".variables") {
                std::vector<std::string> names(tokens.begin() + 1, tokens.end());
                for (std::size_t i = 0; i < names.size(); ++i) {
                    if (!index.emplace(names[i], static_cast<QubitId>(i)).second) {
                        throw ParseError(ParseErrorKind::Malformed, line_no, fmt::format("duplicate variable {}", names[i]));
                    }
                }
                variables = std::move(names);
            } else if (head == ".inputs") {
                header.inputs = rest_after_first(tokens);
            } else if (head == ".outputs") {
                header.outputs = rest_after_first(tokens);
            } else if (head == ".constants") {
                header.constants = rest_after_first(tokens);
            } else if (head == ".garbage") {
                header.garbage = rest_after_first(tokens);
            } else {
                throw ParseError(ParseErrorKind::UnknownDirective, line_no, fmt::format("unknown directive {}", head));
            }
            continue;
        }

        if (stage != Stage::Body) {
            throw ParseError(ParseErrorKind::Malformed, line_no, "gate line outside .begin/.end");
        }
        auto mnemonic = parse_mnemonic(head);
        if (!mnemonic) {
            throw ParseError(ParseErrorKind::UnknownGate, line_no, fmt::format("unknown gate mnemonic {}", head));
        }
        std::vector<QubitId> ops;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            auto it = index.find(tokens[i]);
            if (it == index.end()) {
                throw ParseError(ParseErrorKind::UndeclaredQubit, line_no, fmt::format("undeclared qubit {}", tokens[i]));
            }
            if (std::find(ops.begin(), ops.end(), it->second) != ops.end()) {
                throw ParseError(ParseErrorKind::Malformed, line_no, fmt::format("qubit {} repeated in gate", tokens[i]));
            }
            ops.push_back(it->second);
        }
        gates.push_back(build_gate(*mnemonic, std::move(ops), line_no));
    }

    if (stage != Stage::Done) {
        throw ParseError(ParseErrorKind::Malformed, line_no, "missing .begin/.end section");
    }
    if (numvars && *numvars != variables->size()) {
        throw ParseError(ParseErrorKind::Malformed, line_no,
                         fmt::format(".numvars {} does not match {} variables", *numvars, variables->size()));
    }

    QuantumCircuit circuit(std::move(*variables));
    circuit.header() = std::move(header);
    for (auto& g : gates) circuit.add_gate(std::move(g));
    return circuit;
}

namespace {

std::string mnemonic_of(const Gate& g) {
    const std::size_t count = g.controls.size() + g.targets.size();
    switch (g.kind) {
    case GateKind::Not:
    case GateKind::Cnot:
    case GateKind::Toffoli: return fmt::format("t{}", count);
    case GateKind::Swap:
    case GateKind::Fredkin: return fmt::format("f{}", count);
    case GateKind::V: return "v";
    case GateKind::VDag: return "v+";
    }
    return "?";
}

}  // namespace

std::string write_real(const QuantumCircuit& circuit) {
    std::string out;
    const auto& h = circuit.header();
    out += fmt::format(".version {}\n", h.version);
    out += fmt::format(".numvars {}\n", circuit.num_qubits());
    out += ".variables";
    for (const auto& n : circuit.qubit_names()) out += ' ' + n;
    out += '\n';
    if (h.inputs) out += fmt::format(".inputs {}\n", *h.inputs);
    if (h.outputs) out += fmt::format(".outputs {}\n", *h.outputs);
    if (h.constants) out += fmt::format(".constants {}\n", *h.constants);
    if (h.garbage) out += fmt::format(".garbage {}\n", *h.garbage);
    out += ".begin\n";
    for (const auto& g : circuit.gates()) {
        out += mnemonic_of(g);
        for (QubitId q : g.qubits()) out += ' ' + circuit.name(q);
        out += '\n';
    }
    out += ".end\n";
    return out;
}

std::string_view to_string(ViolationRule rule) noexcept {
    switch (rule) {
    case ViolationRule::Disjointness: return "DisjointnessViolation";
    case ViolationRule::Arity: return "ArityViolation";
    case ViolationRule::UndeclaredQubit: return "UndeclaredQubitViolation";
    case ViolationRule::DuplicateQubit: return "DuplicateQubitViolation";
    }
    return "?";
}

std::vector<CircuitViolation> validate(const QuantumCircuit& circuit) {
    std::vector<CircuitViolation> out;
    const auto n = circuit.num_qubits();
    for (std::size_t i = 0; i < circuit.num_gates(); ++i) {
        const Gate& g = circuit.gates()[i];
        const std::size_t c = g.controls.size();
        const std::size_t t = g.targets.size();
        bool arity_ok = false;
        switch (g.kind) {
        case GateKind::Not: arity_ok = c == 0 && t == 1; break;
        case GateKind::Cnot: arity_ok = c == 1 && t == 1; break;
        case GateKind::Toffoli: arity_ok = c >= 2 && t == 1; break;
        case GateKind::V:
        case GateKind::VDag: arity_ok = c <= 1 && t == 1; break;
        case GateKind::Swap: arity_ok = c == 0 && t == 2; break;
        case GateKind::Fredkin: arity_ok = c >= 1 && t == 2; break;
        }
        if (!arity_ok) {
            out.push_back({i, ViolationRule::Arity,
                           fmt::format("{} with {} controls and {} targets", to_string(g.kind), c, t)});
        }
        for (QubitId q : g.qubits()) {
            if (q >= n) out.push_back({i, ViolationRule::UndeclaredQubit, fmt::format("qubit id {} >= {}", q, n)});
        }
        std::set<QubitId> ctrl(g.controls.begin(), g.controls.end());
        std::set<QubitId> tgt(g.targets.begin(), g.targets.end());
        if (ctrl.size() != c || tgt.size() != t) {
            out.push_back({i, ViolationRule::DuplicateQubit, "repeated qubit among controls or targets"});
        }
        for (QubitId q : tgt) {
            if (ctrl.count(q) != 0) {
                out.push_back({i, ViolationRule::Disjointness, fmt::format("qubit {} is both control and target", q)});
                break;
            }
        }
    }
    return out;
}

}  // namespace nnplace
