// SPDX-License-Identifier: MIT

#include "nnplace/ilp_model.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace nnplace {

std::string_view to_string(ConstraintFamily family) noexcept {
    switch (family) {
    case ConstraintFamily::ObjectiveLink: return "objective-link";
    case ConstraintFamily::Chronological: return "chronological-interaction";
    case ConstraintFamily::SuccessfulInteraction: return "successful-interaction";
    case ConstraintFamily::NearestNeighbor: return "nearest-neighbor";
    case ConstraintFamily::PositionUpdate: return "position-update";
    case ConstraintFamily::LocationSwap: return "location-and-swap";
    case ConstraintFamily::Initialization: return "initialization";
    case ConstraintFamily::LevelScheduling: return "level-scheduling";
    case ConstraintFamily::SwapBlocking: return "swap-blocking";
    }
    return "?";
}

std::string_view family_tag(ConstraintFamily family) noexcept {
    switch (family) {
    case ConstraintFamily::ObjectiveLink: return "obj";
    case ConstraintFamily::Chronological: return "chr";
    case ConstraintFamily::SuccessfulInteraction: return "suc";
    case ConstraintFamily::NearestNeighbor: return "nn";
    case ConstraintFamily::PositionUpdate: return "pos";
    case ConstraintFamily::LocationSwap: return "loc";
    case ConstraintFamily::Initialization: return "ini";
    case ConstraintFamily::LevelScheduling: return "lvl";
    case ConstraintFamily::SwapBlocking: return "blk";
    }
    return "?";
}

std::optional<ConstraintFamily> family_from_tag(std::string_view tag) noexcept {
    for (auto f : {ConstraintFamily::ObjectiveLink, ConstraintFamily::Chronological,
                   ConstraintFamily::SuccessfulInteraction, ConstraintFamily::NearestNeighbor,
                   ConstraintFamily::PositionUpdate, ConstraintFamily::LocationSwap, ConstraintFamily::Initialization,
                   ConstraintFamily::LevelScheduling, ConstraintFamily::SwapBlocking}) {
        if (family_tag(f) == tag) return f;
    }
    return std::nullopt;
}

std::size_t IlpModel::add_variable(std::string name, VarType type) {
    const std::size_t id = variables_.size();
    if (!index_.emplace(name, id).second) throw std::invalid_argument("duplicate variable " + name);
    variables_.push_back({std::move(name), type});
    return id;
}

std::optional<std::size_t> IlpModel::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t IlpModel::var(std::string_view name) const {
    auto id = find(name);
    if (!id) throw std::out_of_range("unknown variable " + std::string(name));
    return *id;
}

void IlpModel::add_constraint(ConstraintFamily family, std::vector<Term> terms, RowSense sense, double rhs) {
    auto& counter = family_counters_[family];
    constraints_.push_back({fmt::format("{}_{}", family_tag(family), counter++), family, std::move(terms), sense, rhs});
}

void IlpModel::add_named_constraint(LinearConstraint constraint) {
    ++family_counters_[constraint.family];
    constraints_.push_back(std::move(constraint));
}

void IlpModel::define(ConstraintFamily family, std::size_t z, BoolOp op, std::vector<AffineExpr> operands) {
    // Each operand l = c + sum(terms); constraints are written as z - terms (sense) c-ish.
    double const_sum = 0.0;
    std::vector<Term> sum_terms{{z, 1.0}};
    for (const auto& l : operands) {
        std::vector<Term> row{{z, 1.0}};
        for (const auto& t : l.terms) {
            row.push_back({t.var, -t.coef});
            sum_terms.push_back({t.var, -t.coef});
        }
        const_sum += l.constant;
        // AND: z <= l.  OR: z >= l.
        add_constraint(family, std::move(row), op == BoolOp::And ? RowSense::LessEqual : RowSense::GreaterEqual,
                       l.constant);
    }
    const auto k = static_cast<double>(operands.size());
    if (op == BoolOp::And) {
        // z >= sum(l) - (k - 1)
        add_constraint(family, std::move(sum_terms), RowSense::GreaterEqual, const_sum - (k - 1.0));
    } else {
        // z <= sum(l)
        add_constraint(family, std::move(sum_terms), RowSense::LessEqual, const_sum);
    }
    definitions_.push_back({z, op, std::move(operands)});
}

namespace {

class ModelBuilder {
public:
    explicit ModelBuilder(const ProblemInstance& in)
        : in_(in), g_(in.graph), V_(g_.num_vertices()), E_(g_.num_edges()), Q_(in.start.num_qubits()),
          K_(in.interactions.size()), T_(in.horizon) {
        if (K_ == 0) throw std::invalid_argument("problem instance needs at least one interaction");
        if (in.start.num_vertices() != V_) {
            throw InvalidPlacement(fmt::format("placement spans {} vertices, graph has {}", in.start.num_vertices(), V_));
        }
        std::set<QubitPair> all;
        for (const auto& inter : in.interactions) {
            for (const auto& p : inter.pairs) {
                if (p.second >= Q_) throw std::invalid_argument(fmt::format("pair qubit {} not placed", p.second));
                all.insert(p);
            }
            for (QubitId q : inter.active_qubits) {
                if (q >= Q_) throw std::invalid_argument(fmt::format("active qubit {} not placed", q));
            }
        }
        pairs_.assign(all.begin(), all.end());
        model_.horizon = T_;
        model_.num_qubits = Q_;
        for (const auto& inter : in.interactions) model_.pair_counts.push_back(inter.pairs.size());
    }

    IlpModel build(Formulation f) {
        model_.comment = fmt::format("{} model: {} qubits, {} vertices, {} edges, {} interactions, horizon {}",
                                     to_string(f), Q_, V_, E_, K_, T_);
        if (f == Formulation::P2) delay_ = model_.add_variable("delay", VarType::Integer);
        declare_decisions(f);
        for (std::size_t t = 0; t <= T_; ++t) {
            if (t > 0) position_update(t);
            nearest_neighbor(t);
            if (f == Formulation::P3 && t < T_) swap_blocking(t);
        }
        if (f == Formulation::P2) objective_link();
        chronological();
        successful_interaction(f);
        location_and_swap();
        initialization();
        if (f == Formulation::P3) level_scheduling();
        return std::move(model_);
    }

private:
    std::size_t& m(std::size_t i, std::size_t t) { return m_[i * (T_ + 1) + t]; }
    std::size_t& a(std::size_t i, std::size_t t) { return a_[i * (T_ + 1) + t]; }
    std::size_t& x(std::size_t v, std::size_t q, std::size_t t) { return x_[(t * V_ + v) * Q_ + q]; }
    std::size_t& s(std::size_t e, std::size_t t) { return s_[t * E_ + e]; }
    std::size_t& n(std::size_t pi, std::size_t t) { return n_[pi * (T_ + 1) + t]; }

    void declare_decisions(Formulation f) {
        m_.resize(K_ * (T_ + 1));
        for (std::size_t i = 0; i < K_; ++i)
            for (std::size_t t = 0; t <= T_; ++t) m(i, t) = model_.add_variable(fmt::format("m_{}_{}", i, t));
        if (f == Formulation::P3) {
            a_.resize(K_ * (T_ + 1));
            for (std::size_t i = 0; i < K_; ++i)
                for (std::size_t t = 0; t <= T_; ++t) a(i, t) = model_.add_variable(fmt::format("a_{}_{}", i, t));
        }
        x_.resize((T_ + 1) * V_ * Q_);
        for (std::size_t v = 0; v < V_; ++v)
            for (std::size_t q = 0; q < Q_; ++q) x(v, q, 0) = model_.add_variable(fmt::format("x_{}_{}_0", v, q));
        s_.resize(T_ * E_);
        for (std::size_t t = 0; t < T_; ++t) {
            for (std::size_t e = 0; e < E_; ++e) {
                const Edge& ed = g_.edges()[e];
                s(e, t) = model_.add_variable(fmt::format("s_{}_{}_{}", ed.u, ed.v, t));
            }
        }
        n_.resize(pairs_.size() * (T_ + 1));
    }

    /// Qubit q sits at v in cycle t if it stayed (no swap touched v) or
    /// arrived over an edge whose swap fired in cycle t - 1.
    void position_update(std::size_t t) {
        for (std::size_t v = 0; v < V_; ++v) {
            const auto vid = static_cast<VertexId>(v);
            for (std::size_t q = 0; q < Q_; ++q) {
                std::vector<AffineExpr> stay;
                std::vector<AffineExpr> arrive;
                for (VertexId w : g_.neighbors(vid)) {
                    const std::size_t e = *g_.edge_index(vid, w);
                    stay.push_back(AffineExpr::negation(s(e, t - 1)));
                    const auto y = model_.add_variable(fmt::format("y_{}_{}_{}_{}", v, w, q, t));
                    model_.define(ConstraintFamily::PositionUpdate, y, BoolOp::And,
                                  {AffineExpr::of(s(e, t - 1)), AffineExpr::of(x(w, q, t - 1))});
                    arrive.push_back(AffineExpr::of(y));
                }
                stay.push_back(AffineExpr::of(x(v, q, t - 1)));
                const auto u = model_.add_variable(fmt::format("u_{}_{}_{}", v, q, t));
                model_.define(ConstraintFamily::PositionUpdate, u, BoolOp::And, std::move(stay));
                std::vector<AffineExpr> either{AffineExpr::of(u)};
                if (!arrive.empty()) {
                    const auto c = model_.add_variable(fmt::format("c_{}_{}_{}", v, q, t));
                    model_.define(ConstraintFamily::PositionUpdate, c, BoolOp::Or, std::move(arrive));
                    either.push_back(AffineExpr::of(c));
                }
                x(v, q, t) = model_.add_variable(fmt::format("x_{}_{}_{}", v, q, t));
                model_.define(ConstraintFamily::PositionUpdate, x(v, q, t), BoolOp::Or, std::move(either));
            }
        }
    }

    void nearest_neighbor(std::size_t t) {
        for (std::size_t pi = 0; pi < pairs_.size(); ++pi) {
            const auto [p, q] = std::pair{pairs_[pi].first, pairs_[pi].second};
            std::vector<AffineExpr> placements;
            for (const Edge& e : g_.edges()) {
                for (auto [vp, vq] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
                    const auto pv = model_.add_variable(fmt::format("p_{}_{}_{}_{}_{}", p, vp, q, vq, t));
                    model_.define(ConstraintFamily::NearestNeighbor, pv, BoolOp::And,
                                  {AffineExpr::of(x(vp, p, t)), AffineExpr::of(x(vq, q, t))});
                    placements.push_back(AffineExpr::of(pv));
                }
            }
            n(pi, t) = model_.add_variable(fmt::format("n_{}_{}_{}", p, q, t));
            model_.define(ConstraintFamily::NearestNeighbor, n(pi, t), BoolOp::Or, std::move(placements));
        }
    }

    /// Qubits of a level are pinned in its activation cycle, and the pair
    /// qubits of a met interaction stay pinned until its level fires.
    void swap_blocking(std::size_t t) {
        std::vector<std::optional<std::size_t>> eb(K_);
        for (std::size_t i = 0; i < K_; ++i) {
            if (in_.interactions[i].pairs.empty()) continue;
            eb[i] = model_.add_variable(fmt::format("eb_{}_{}", i, t));
            AffineExpr pending{{}, 1.0};
            for (std::size_t tp = 0; tp < t; ++tp) pending.terms.push_back({a(i, tp), -1.0});
            model_.define(ConstraintFamily::SwapBlocking, *eb[i], BoolOp::And,
                          {AffineExpr::negation(m(i, t)), std::move(pending)});
        }
        std::vector<std::optional<std::size_t>> bv(V_ * Q_);
        for (std::size_t q = 0; q < Q_; ++q) {
            std::vector<AffineExpr> reasons;
            for (std::size_t i = 0; i < K_; ++i) {
                const auto& inter = in_.interactions[i];
                if (inter.active_qubits.count(static_cast<QubitId>(q)) != 0) reasons.push_back(AffineExpr::of(a(i, t)));
                if (eb[i] && inter.paired_qubits().count(static_cast<QubitId>(q)) != 0) {
                    reasons.push_back(AffineExpr::of(*eb[i]));
                }
            }
            if (reasons.empty()) continue;
            const auto b = model_.add_variable(fmt::format("b_{}_{}", q, t));
            model_.define(ConstraintFamily::SwapBlocking, b, BoolOp::Or, std::move(reasons));
            for (std::size_t v = 0; v < V_; ++v) {
                const auto id = model_.add_variable(fmt::format("bv_{}_{}_{}", v, q, t));
                model_.define(ConstraintFamily::SwapBlocking, id, BoolOp::And,
                              {AffineExpr::of(b), AffineExpr::of(x(v, q, t))});
                bv[v * Q_ + q] = id;
            }
        }
        for (std::size_t e = 0; e < E_; ++e) {
            const Edge& ed = g_.edges()[e];
            std::vector<AffineExpr> touched;
            for (VertexId end : {ed.u, ed.v}) {
                for (std::size_t q = 0; q < Q_; ++q) {
                    if (bv[end * Q_ + q]) touched.push_back(AffineExpr::of(*bv[end * Q_ + q]));
                }
            }
            if (touched.empty()) continue;
            const auto sb = model_.add_variable(fmt::format("sb_{}_{}_{}", ed.u, ed.v, t));
            model_.define(ConstraintFamily::SwapBlocking, sb, BoolOp::Or, std::move(touched));
            model_.add_constraint(ConstraintFamily::SwapBlocking, {{s(e, t), 1.0}, {sb, 1.0}}, RowSense::LessEqual, 1.0);
        }
    }

    void objective_link() {
        std::vector<Term> row;
        for (std::size_t t = 0; t <= T_; ++t) row.push_back({m(K_ - 1, t), 1.0});
        row.push_back({delay_, -1.0});
        model_.add_constraint(ConstraintFamily::ObjectiveLink, std::move(row), RowSense::Equal, 0.0);
        model_.set_objective({{delay_, 1.0}});
    }

    void chronological() {
        for (std::size_t i = 0; i < K_; ++i) {
            for (std::size_t t = 0; t < T_; ++t) {
                // once met, an interaction stays met
                model_.add_constraint(ConstraintFamily::Chronological, {{m(i, t), 1.0}, {m(i, t + 1), -1.0}},
                                      RowSense::GreaterEqual, 0.0);
            }
        }
        for (std::size_t i = 0; i + 1 < K_; ++i) {
            for (std::size_t t = 0; t <= T_; ++t) {
                model_.add_constraint(ConstraintFamily::Chronological, {{m(i + 1, t), 1.0}, {m(i, t), -1.0}},
                                      RowSense::GreaterEqual, 0.0);
            }
        }
    }

    void successful_interaction(Formulation f) {
        for (std::size_t i = 0; i < K_; ++i) {
            const auto& inter = in_.interactions[i];
            const auto L = static_cast<double>(inter.pairs.size());
            for (std::size_t t = 0; t <= T_; ++t) {
                if (inter.pairs.empty()) {
                    // met as soon as every earlier interaction is
                    std::vector<Term> row{{m(i, t), 1.0}};
                    if (i > 0) row.push_back({m(i - 1, t), -1.0});
                    model_.add_constraint(ConstraintFamily::SuccessfulInteraction, std::move(row), RowSense::LessEqual,
                                          0.0);
                    continue;
                }
                // L*m[i,t] + sum n[p,q,t] + sum_{t'<t} L*(1 - m[i,t']) >= L
                std::vector<Term> row{{m(i, t), L}};
                for (const auto& p : inter.pairs) {
                    const auto pi = static_cast<std::size_t>(
                        std::lower_bound(pairs_.begin(), pairs_.end(), p) - pairs_.begin());
                    row.push_back({n(pi, t), 1.0});
                }
                for (std::size_t tp = 0; tp < t; ++tp) row.push_back({m(i, tp), -L});
                model_.add_constraint(ConstraintFamily::SuccessfulInteraction, std::move(row), RowSense::GreaterEqual,
                                      L - L * static_cast<double>(t));
            }
        }
        if (f == Formulation::P2) {
            model_.add_constraint(ConstraintFamily::SuccessfulInteraction, {{m(K_ - 1, T_), 1.0}}, RowSense::Equal, 0.0);
        }
    }

    void location_and_swap() {
        for (std::size_t t = 0; t <= T_; ++t) {
            for (std::size_t q = 0; q < Q_; ++q) {
                std::vector<Term> row;
                for (std::size_t v = 0; v < V_; ++v) row.push_back({x(v, q, t), 1.0});
                model_.add_constraint(ConstraintFamily::LocationSwap, std::move(row), RowSense::Equal, 1.0);
            }
        }
        for (std::size_t t = 0; t < T_; ++t) {
            for (std::size_t v = 0; v < V_; ++v) {
                const auto vid = static_cast<VertexId>(v);
                if (g_.degree(vid) < 2) continue;
                std::vector<Term> row;
                for (VertexId w : g_.neighbors(vid)) row.push_back({s(*g_.edge_index(vid, w), t), 1.0});
                model_.add_constraint(ConstraintFamily::LocationSwap, std::move(row), RowSense::LessEqual, 1.0);
            }
        }
    }

    void initialization() {
        for (std::size_t q = 0; q < Q_; ++q) {
            model_.add_constraint(ConstraintFamily::Initialization,
                                  {{x(in_.start.vertex_of(static_cast<QubitId>(q)), q, 0), 1.0}}, RowSense::Equal, 1.0);
        }
    }

    void level_scheduling() {
        for (std::size_t i = 0; i < K_; ++i) {
            std::vector<Term> row;
            for (std::size_t t = 0; t <= T_; ++t) row.push_back({a(i, t), 1.0});
            model_.add_constraint(ConstraintFamily::LevelScheduling, std::move(row), RowSense::Equal, 1.0);
        }
        for (std::size_t t = 0; t <= T_; ++t) {
            std::vector<Term> row;
            for (std::size_t i = 0; i < K_; ++i) row.push_back({a(i, t), 1.0});
            model_.add_constraint(ConstraintFamily::LevelScheduling, std::move(row), RowSense::LessEqual, 1.0);
        }
        for (std::size_t i = 0; i < K_; ++i) {
            for (std::size_t t = 0; t <= T_; ++t) {
                model_.add_constraint(ConstraintFamily::LevelScheduling, {{a(i, t), 1.0}, {m(i, t), 1.0}},
                                      RowSense::LessEqual, 1.0);
            }
        }
        for (std::size_t i = 0; i + 1 < K_; ++i) {
            std::vector<Term> row;
            for (std::size_t t = 1; t <= T_; ++t) {
                row.push_back({a(i + 1, t), static_cast<double>(t)});
                row.push_back({a(i, t), -static_cast<double>(t)});
            }
            if (row.empty()) row.push_back({a(i + 1, 0), 0.0});
            model_.add_constraint(ConstraintFamily::LevelScheduling, std::move(row), RowSense::GreaterEqual, 1.0);
        }
        std::vector<Term> obj;
        for (std::size_t i = 0; i < K_; ++i)
            for (std::size_t t = 1; t <= T_; ++t) obj.push_back({a(i, t), static_cast<double>(t)});
        model_.set_objective(std::move(obj));
    }

    const ProblemInstance& in_;
    const TopologyGraph& g_;
    std::size_t V_, E_, Q_, K_, T_;
    std::vector<QubitPair> pairs_;
    IlpModel model_;
    std::size_t delay_ = 0;
    std::vector<std::size_t> m_, a_, x_, s_, n_;
};

}  // namespace

IlpModel build_p2_model(const ProblemInstance& instance) { return ModelBuilder(instance).build(Formulation::P2); }

IlpModel build_p3_model(const ProblemInstance& instance) {
    if (instance.horizon + 1 < instance.interactions.size()) {
        throw std::invalid_argument(fmt::format("horizon {} cannot activate {} levels", instance.horizon,
                                                instance.interactions.size()));
    }
    return ModelBuilder(instance).build(Formulation::P3);
}

IlpModel build_model(const ProblemInstance& instance) {
    return instance.formulation == Formulation::P2 ? build_p2_model(instance) : build_p3_model(instance);
}

double evaluate(std::span<const Term> terms, const Assignment& values) {
    double sum = 0.0;
    for (const auto& t : terms) sum += t.coef * values.at(t.var);
    return sum;
}

double objective_value(const IlpModel& model, const Assignment& values) { return evaluate(model.objective(), values); }

std::vector<std::string> violated_constraints(const IlpModel& model, const Assignment& values) {
    constexpr double kTol = 1e-6;
    std::vector<std::string> out;
    for (const auto& c : model.constraints()) {
        const double lhs = evaluate(c.terms, values);
        bool ok = true;
        switch (c.sense) {
        case RowSense::LessEqual: ok = lhs <= c.rhs + kTol; break;
        case RowSense::GreaterEqual: ok = lhs >= c.rhs - kTol; break;
        case RowSense::Equal: ok = std::abs(lhs - c.rhs) <= kTol; break;
        }
        if (!ok) out.push_back(c.name);
    }
    return out;
}

void complete_definitions(const IlpModel& model, Assignment& values) {
    const auto& defs = model.definitions();
    for (std::size_t pass = 0; pass <= defs.size(); ++pass) {
        bool changed = false;
        for (const auto& d : defs) {
            bool result = d.op == BoolOp::And;
            for (const auto& l : d.operands) {
                const bool bit = l.constant + evaluate(l.terms, values) >= 0.5;
                result = d.op == BoolOp::And ? (result && bit) : (result || bit);
            }
            const double v = result ? 1.0 : 0.0;
            if (values.at(d.var) != v) {
                values[d.var] = v;
                changed = true;
            }
        }
        if (!changed) return;
    }
}

Assignment encode_solution(const IlpModel& model, const ProblemInstance& instance, const RoutingSolution& solution) {
    const std::size_t T = instance.horizon;
    const std::size_t K = instance.interactions.size();
    if (solution.steps.size() > T) {
        // trailing idle steps are harmless; anything else must fit the horizon
        for (std::size_t t = T; t < solution.steps.size(); ++t) {
            if (!solution.steps[t].empty()) {
                throw std::invalid_argument(fmt::format("solution swaps in cycle {} beyond horizon {}", t, T));
            }
        }
    }
    Assignment values(model.variables().size(), 0.0);
    auto set = [&](const std::string& name, double v) { values.at(model.var(name)) = v; };

    for (std::size_t q = 0; q < solution.start.num_qubits(); ++q) {
        set(fmt::format("x_{}_{}_0", solution.start.vertex_of(static_cast<QubitId>(q)), q), 1.0);
    }
    for (std::size_t t = 0; t < std::min(T, solution.steps.size()); ++t) {
        for (const auto& e : solution.steps[t].swaps) set(fmt::format("s_{}_{}_{}", e.u, e.v, t), 1.0);
    }
    std::vector<std::size_t> met = solution.met_cycle;
    if (met.empty()) met = solution.level_cycle;
    if (met.size() != K) throw std::invalid_argument("solution lacks a met cycle per interaction");
    // a level without pairs is met together with its predecessor
    for (std::size_t i = 0; i < K; ++i) {
        if (instance.interactions[i].pairs.empty()) met[i] = i == 0 ? 0 : met[i - 1];
    }
    double delay = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t t = 0; t <= T; ++t) {
            const double unmet = t < met[i] ? 1.0 : 0.0;
            set(fmt::format("m_{}_{}", i, t), unmet);
            if (i + 1 == K) delay += unmet;
        }
    }
    if (instance.formulation == Formulation::P2) {
        set("delay", delay);
    } else {
        if (solution.level_cycle.size() != K) throw std::invalid_argument("P3 solution lacks level cycles");
        for (std::size_t i = 0; i < K; ++i) {
            if (solution.level_cycle[i] > T) {
                throw std::invalid_argument(fmt::format("level {} activates after horizon {}", i, T));
            }
            set(fmt::format("a_{}_{}", i, solution.level_cycle[i]), 1.0);
        }
    }
    complete_definitions(model, values);
    return values;
}

std::map<std::string, double> parse_solution_values(std::string_view text) {
    std::map<std::string, double> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string line(text.substr(pos, eol - pos));
        pos = eol + 1;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream in(line);
        std::string name;
        std::string value;
        std::string extra;
        if (!(in >> name >> value) || (in >> extra)) continue;
        try {
            std::size_t used = 0;
            const double v = std::stod(value, &used);
            if (used == value.size()) out[name] = v;
        } catch (const std::exception&) {
            // lines whose second token is not a number are skipped
        }
    }
    return out;
}

RoutingSolution decode_solution(const ProblemInstance& instance, const std::map<std::string, double>& values) {
    auto on = [&](const std::string& name) {
        auto it = values.find(name);
        return it != values.end() && it->second >= 0.5;
    };
    const std::size_t T = instance.horizon;
    const std::size_t K = instance.interactions.size();
    RoutingSolution sol;
    sol.formulation = instance.formulation;
    sol.start = instance.start;
    for (std::size_t t = 0; t < T; ++t) {
        SwapStep step;
        for (const auto& e : instance.graph.edges()) {
            if (on(fmt::format("s_{}_{}_{}", e.u, e.v, t))) step.swaps.push_back(e);
        }
        sol.steps.push_back(std::move(step));
    }
    for (std::size_t i = 0; i < K; ++i) {
        std::size_t met = T + 1;
        for (std::size_t t = 0; t <= T; ++t) {
            if (!on(fmt::format("m_{}_{}", i, t))) {
                met = t;
                break;
            }
        }
        sol.met_cycle.push_back(met);
        if (instance.formulation == Formulation::P3) {
            std::size_t fired = T + 1;
            for (std::size_t t = 0; t <= T; ++t) {
                if (on(fmt::format("a_{}_{}", i, t))) {
                    fired = t;
                    break;
                }
            }
            sol.level_cycle.push_back(fired);
        }
    }
    std::size_t keep = 0;
    if (instance.formulation == Formulation::P2) {
        keep = sol.met_cycle.empty() ? 0 : sol.met_cycle.back();
    } else {
        keep = sol.level_cycle.empty() ? 0 : sol.level_cycle.back() + 1;
    }
    if (keep < sol.steps.size()) sol.steps.resize(keep);
    refresh_metrics(sol);
    return sol;
}

}  // namespace nnplace
