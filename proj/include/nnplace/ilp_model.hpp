// SPDX-License-Identifier: MIT

/**
 * @file ilp_model.hpp
 * @brief Solver-agnostic ILP models for depth-optimal nearest-neighbor routing.
 *
 * build_p2_model() minimizes the number of cycles spent on swaps while the
 * interactions are met in order; build_p3_model() schedules level
 * activations together with swaps and minimizes the sum of activation
 * cycles. Boolean definitions are linearized exactly:
 *
 *   z = AND(l_1..l_k):  z <= l_i,  z >= sum(l_i) - (k - 1)
 *   z = OR(l_1..l_k):   z >= l_i,  z <= sum(l_i)
 *
 * Every derived variable also keeps its definition so an assignment of the
 * decision variables can be completed and checked without a solver.
 */

#pragma once

#include "nnplace/routing.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nnplace {

struct ProblemInstance {
    TopologyGraph graph;
    Placement start;
    std::vector<Interaction> interactions;
    Formulation formulation = Formulation::P2;
    /// Last cycle index T; cycles run 0..T.
    std::size_t horizon = 0;
};

enum class VarType : std::uint8_t { Binary, Integer, Continuous };

enum class ConstraintFamily : std::uint8_t {
    ObjectiveLink,
    Chronological,
    SuccessfulInteraction,
    NearestNeighbor,
    PositionUpdate,
    LocationSwap,
    Initialization,
    LevelScheduling,
    SwapBlocking,
};

[[nodiscard]] std::string_view to_string(ConstraintFamily family) noexcept;
/// Short prefix used in constraint names, e.g. "chr" for Chronological.
[[nodiscard]] std::string_view family_tag(ConstraintFamily family) noexcept;
[[nodiscard]] std::optional<ConstraintFamily> family_from_tag(std::string_view tag) noexcept;

enum class RowSense : std::uint8_t { LessEqual, GreaterEqual, Equal };

struct Term {
    std::size_t var = 0;
    double coef = 0.0;

    bool operator==(const Term&) const = default;
};

struct Variable {
    std::string name;
    VarType type = VarType::Binary;

    bool operator==(const Variable&) const = default;
};

struct LinearConstraint {
    std::string name;
    ConstraintFamily family = ConstraintFamily::ObjectiveLink;
    std::vector<Term> terms;
    RowSense sense = RowSense::LessEqual;
    double rhs = 0.0;

    bool operator==(const LinearConstraint&) const = default;
};

/// constant + sum(terms); used as a 0/1-valued operand of AND/OR definitions.
struct AffineExpr {
    std::vector<Term> terms;
    double constant = 0.0;

    static AffineExpr of(std::size_t var) { return {{{var, 1.0}}, 0.0}; }
    static AffineExpr negation(std::size_t var) { return {{{var, -1.0}}, 1.0}; }
};

enum class BoolOp : std::uint8_t { And, Or };

struct Definition {
    std::size_t var = 0;
    BoolOp op = BoolOp::And;
    std::vector<AffineExpr> operands;
};

class IlpModel {
public:
    /// Throws std::invalid_argument on a duplicate name.
    std::size_t add_variable(std::string name, VarType type = VarType::Binary);
    [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;
    /// Throws std::out_of_range when missing.
    [[nodiscard]] std::size_t var(std::string_view name) const;

    /// Name is "<tag>_<running index within the family>".
    void add_constraint(ConstraintFamily family, std::vector<Term> terms, RowSense sense, double rhs);
    /// Adds an explicitly named constraint (used by the LP reader).
    void add_named_constraint(LinearConstraint constraint);

    /// Records z = op(operands) and adds its exact linearization.
    void define(ConstraintFamily family, std::size_t z, BoolOp op, std::vector<AffineExpr> operands);

    void set_objective(std::vector<Term> terms) { objective_ = std::move(terms); }

    [[nodiscard]] const std::vector<Variable>& variables() const noexcept { return variables_; }
    [[nodiscard]] const std::vector<LinearConstraint>& constraints() const noexcept { return constraints_; }
    [[nodiscard]] const std::vector<Term>& objective() const noexcept { return objective_; }
    [[nodiscard]] const std::vector<Definition>& definitions() const noexcept { return definitions_; }

    /// Free-form description written as a comment header on export.
    std::string comment;
    std::size_t horizon = 0;
    std::size_t num_qubits = 0;
    /// One entry per interaction: its pair count L_i.
    std::vector<std::size_t> pair_counts;

private:
    std::vector<Variable> variables_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<LinearConstraint> constraints_;
    std::vector<Term> objective_;
    std::vector<Definition> definitions_;
    std::map<ConstraintFamily, std::size_t> family_counters_;
};

/// Throws InvalidPlacement when the start placement does not fit the graph.
[[nodiscard]] IlpModel build_p2_model(const ProblemInstance& instance);
/// Throws std::invalid_argument when the horizon cannot fit one cycle per level.
[[nodiscard]] IlpModel build_p3_model(const ProblemInstance& instance);
/// Dispatches on instance.formulation.
[[nodiscard]] IlpModel build_model(const ProblemInstance& instance);

/// CPLEX LP text: Minimize / Subject To / Bounds / Binaries / Generals / End.
[[nodiscard]] std::string export_lp(const IlpModel& model);

class LpParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads the LP subset written by export_lp (constraint names carry the family tag).
[[nodiscard]] IlpModel parse_lp(std::string_view text);

using Assignment = std::vector<double>;

[[nodiscard]] double evaluate(std::span<const Term> terms, const Assignment& values);
[[nodiscard]] double objective_value(const IlpModel& model, const Assignment& values);
/// Names of constraints violated by the assignment (tolerance 1e-6).
[[nodiscard]] std::vector<std::string> violated_constraints(const IlpModel& model, const Assignment& values);

/// Fills every defined variable from its operands, leaving other entries unchanged.
void complete_definitions(const IlpModel& model, Assignment& values);

/// Encodes a routing solution as a full model assignment. Steps are padded
/// with idle cycles up to the horizon; derived variables follow their definitions.
[[nodiscard]] Assignment encode_solution(const IlpModel& model, const ProblemInstance& instance,
                                         const RoutingSolution& solution);

/// Parses `name value` lines; blank lines, `#` comments and non-numeric lines are skipped.
[[nodiscard]] std::map<std::string, double> parse_solution_values(std::string_view text);

/// Rebuilds a routing solution from solver values of the s, m and a variables.
/// Variables absent from the map count as 0; names not in the model are ignored.
[[nodiscard]] RoutingSolution decode_solution(const ProblemInstance& instance,
                                              const std::map<std::string, double>& values);

}  // namespace nnplace
