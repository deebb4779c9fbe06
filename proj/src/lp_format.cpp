// SPDX-License-Identifier: MIT

#include "nnplace/ilp_model.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nnplace {

namespace {

constexpr std::size_t kWrapAt = 200;

std::string number(double v) {
    if (v == 0.0) v = 0.0;  // drops the sign of -0
    return fmt::format("{}", v);
}

/// Accumulates space-separated tokens, wrapping before the line gets long.
class LineWriter {
public:
    explicit LineWriter(std::string& out) : out_(out) {}

    void token(std::string_view tok) {
        if (line_.size() + 1 + tok.size() > kWrapAt && line_.size() > 1) flush();
        if (line_.empty()) line_ = " ";
        else line_ += ' ';
        line_ += tok;
    }

    void flush() {
        if (line_.empty()) return;
        out_ += line_;
        out_ += '\n';
        line_.clear();
    }

private:
    std::string& out_;
    std::string line_;
};

void write_terms(LineWriter& w, const std::vector<Term>& terms, const std::vector<Variable>& vars) {
    bool first = true;
    for (const auto& t : terms) {
        if (t.coef == 0.0) continue;
        const double mag = std::abs(t.coef);
        std::string tok;
        if (t.coef < 0) tok = "- ";
        else if (!first) tok = "+ ";
        if (mag != 1.0) tok += number(mag) + " ";
        tok += vars.at(t.var).name;
        w.token(tok);
        first = false;
    }
    if (first) w.token("0 " + (vars.empty() ? std::string("x") : vars.front().name));
}

std::string_view sense_token(RowSense s) {
    switch (s) {
    case RowSense::LessEqual: return "<=";
    case RowSense::GreaterEqual: return ">=";
    case RowSense::Equal: return "=";
    }
    return "=";
}

}  // namespace

std::string export_lp(const IlpModel& model) {
    const auto& vars = model.variables();
    std::string out;
    if (!model.comment.empty()) out += fmt::format("\\ {}\n", model.comment);
    out += "Minimize\n";
    {
        LineWriter w(out);
        w.token("obj:");
        bool any = std::any_of(model.objective().begin(), model.objective().end(),
                               [](const Term& t) { return t.coef != 0.0; });
        if (any) write_terms(w, model.objective(), vars);
        w.flush();
    }
    out += "Subject To\n";
    std::vector<std::size_t> order(model.constraints().size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return model.constraints()[a].family < model.constraints()[b].family;
    });
    for (std::size_t idx : order) {
        const auto& c = model.constraints()[idx];
        LineWriter w(out);
        w.token(c.name + ":");
        write_terms(w, c.terms, vars);
        w.token(fmt::format("{} {}", sense_token(c.sense), number(c.rhs)));
        w.flush();
    }
    out += "Bounds\n";
    for (const auto& v : vars) {
        if (v.type == VarType::Integer) out += fmt::format(" {} >= 0\n", v.name);
        else if (v.type == VarType::Continuous) out += fmt::format(" {} >= 0\n", v.name);
    }
    auto list_section = [&](std::string_view header, VarType type) {
        out += header;
        out += '\n';
        LineWriter w(out);
        for (const auto& v : vars) {
            if (v.type == type) w.token(v.name);
        }
        w.flush();
    };
    list_section("Binaries", VarType::Binary);
    list_section("Generals", VarType::Integer);
    out += "End\n";
    return out;
}

namespace {

enum class Section { None, Objective, Constraints, Bounds, Binaries, Generals, End };

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

std::optional<Section> section_header(std::string_view line) {
    std::string l = lower(line);
    // collapse internal whitespace runs
    std::istringstream in(l);
    std::string word;
    std::string norm;
    while (in >> word) norm += (norm.empty() ? "" : " ") + word;
    if (norm == "minimize" || norm == "minimise" || norm == "minimum" || norm == "min") return Section::Objective;
    if (norm == "maximize" || norm == "maximise" || norm == "maximum" || norm == "max") {
        throw LpParseError("only minimization models are supported");
    }
    if (norm == "subject to" || norm == "such that" || norm == "st" || norm == "s.t.") return Section::Constraints;
    if (norm == "bounds" || norm == "bound") return Section::Bounds;
    if (norm == "binaries" || norm == "binary" || norm == "bin") return Section::Binaries;
    if (norm == "generals" || norm == "general" || norm == "gen") return Section::Generals;
    if (norm == "end") return Section::End;
    return std::nullopt;
}

std::optional<double> to_number(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::string tmp(s);
    try {
        std::size_t used = 0;
        double v = std::stod(tmp, &used);
        if (used == tmp.size()) return v;
    } catch (const std::exception&) {
    }
    return std::nullopt;
}

std::optional<RowSense> to_sense(std::string_view s) {
    if (s == "<=" || s == "=<" || s == "<") return RowSense::LessEqual;
    if (s == ">=" || s == "=>" || s == ">") return RowSense::GreaterEqual;
    if (s == "=") return RowSense::Equal;
    return std::nullopt;
}

struct RawTerm {
    std::string var;
    double coef;
};

struct RawRow {
    std::string name;
    std::vector<RawTerm> terms;
    RowSense sense = RowSense::LessEqual;
    double rhs = 0.0;
};

/// Parses `[name:] terms` up to an optional sense token; returns the index after the terms.
std::size_t parse_terms(const std::vector<std::string>& toks, std::size_t i, std::vector<RawTerm>& terms) {
    double sign = 1.0;
    std::optional<double> coef;
    while (i < toks.size()) {
        const std::string& t = toks[i];
        if (to_sense(t)) break;
        if (t == "+") {
            ++i;
            continue;
        }
        if (t == "-") {
            sign = -sign;
            ++i;
            continue;
        }
        if (auto n = to_number(t)) {
            coef = coef.value_or(1.0) * *n;
            ++i;
            continue;
        }
        terms.push_back({t, sign * coef.value_or(1.0)});
        sign = 1.0;
        coef.reset();
        ++i;
    }
    if (coef) throw LpParseError(fmt::format("dangling constant {} in expression", *coef));
    return i;
}

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

IlpModel parse_lp(std::string_view text) {
    Section section = Section::None;
    std::string objective_text;
    std::string constraint_text;
    std::vector<std::string> binaries;
    std::vector<std::string> generals;
    std::string comment;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string line(text.substr(pos, eol - pos));
        pos = eol + 1;
        if (section == Section::None && comment.empty() && line.rfind("\\ ", 0) == 0) comment = line.substr(2);
        if (auto bs = line.find('\\'); bs != std::string::npos) line.resize(bs);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (auto s = section_header(line)) {
            section = *s;
            if (section == Section::End) break;
            continue;
        }
        switch (section) {
        case Section::Objective: objective_text += line + "\n"; break;
        case Section::Constraints: constraint_text += line + "\n"; break;
        case Section::Bounds: break;  // only default bounds are produced by export_lp
        case Section::Binaries:
            for (auto& t : tokenize(line)) binaries.push_back(t);
            break;
        case Section::Generals:
            for (auto& t : tokenize(line)) generals.push_back(t);
            break;
        case Section::None:
        case Section::End: throw LpParseError("content outside of any section: " + line);
        }
    }
    if (section != Section::End) throw LpParseError("missing End");

    std::vector<RawTerm> objective;
    {
        auto toks = tokenize(objective_text);
        std::size_t i = 0;
        if (!toks.empty() && toks[0].back() == ':') i = 1;
        i = parse_terms(toks, i, objective);
        if (i != toks.size()) throw LpParseError("unexpected token in objective");
    }

    std::vector<RawRow> rows;
    {
        auto toks = tokenize(constraint_text);
        std::size_t i = 0;
        while (i < toks.size()) {
            RawRow row;
            if (toks[i].back() == ':') {
                row.name = toks[i].substr(0, toks[i].size() - 1);
                ++i;
            }
            i = parse_terms(toks, i, row.terms);
            if (i >= toks.size()) throw LpParseError("constraint without sense: " + row.name);
            row.sense = *to_sense(toks[i++]);
            double sign = 1.0;
            if (i < toks.size() && (toks[i] == "-" || toks[i] == "+")) {
                if (toks[i] == "-") sign = -1.0;
                ++i;
            }
            if (i >= toks.size()) throw LpParseError("constraint without right-hand side: " + row.name);
            auto rhs = to_number(toks[i++]);
            if (!rhs) throw LpParseError("bad right-hand side in " + row.name);
            row.rhs = sign * *rhs;
            rows.push_back(std::move(row));
        }
    }

    IlpModel model;
    model.comment = comment;
    for (const auto& n : binaries) {
        if (!model.find(n)) model.add_variable(n, VarType::Binary);
    }
    for (const auto& n : generals) {
        if (!model.find(n)) model.add_variable(n, VarType::Integer);
    }
    auto resolve = [&](const std::vector<RawTerm>& raw) {
        std::vector<Term> terms;
        for (const auto& t : raw) {
            auto id = model.find(t.var);
            if (!id) id = model.add_variable(t.var, VarType::Continuous);
            terms.push_back({*id, t.coef});
        }
        return terms;
    };
    model.set_objective(resolve(objective));
    std::size_t unnamed = 0;
    for (auto& r : rows) {
        LinearConstraint c;
        c.terms = resolve(r.terms);
        c.sense = r.sense;
        c.rhs = r.rhs;
        c.name = r.name.empty() ? fmt::format("r_{}", unnamed++) : r.name;
        const auto cut = c.name.rfind('_');
        auto fam = cut == std::string::npos ? std::nullopt : family_from_tag(std::string_view(c.name).substr(0, cut));
        if (!fam) throw LpParseError("constraint name lacks a family tag: " + c.name);
        c.family = *fam;
        model.add_named_constraint(std::move(c));
    }
    return model;
}

}  // namespace nnplace
