// SPDX-License-Identifier: MIT

#pragma once

#include "nnplace/ilp_model.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nnplace {

enum class ViolationKind : std::uint8_t {
    StartMismatch,
    NotAnEdge,
    MatchingViolation,
    OrderViolation,
    NotMet,
    BlockingViolation,
    MissingCycle,
};

[[nodiscard]] std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
    ViolationKind kind = ViolationKind::NotMet;
    /// Cycle the violation was observed in.
    std::size_t cycle = 0;
    std::string detail;
};

struct VerificationReport {
    std::vector<Violation> violations;
    std::size_t swap_count = 0;
    std::size_t swap_delay = 0;
    std::size_t total_delay = 0;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
    [[nodiscard]] bool has(ViolationKind kind) const noexcept;
};

/// Replays the swap schedule from the instance's start placement and checks
/// matchings, interaction order and, for P3, activation and swap blocking.
/// The instance's formulation decides which rules apply.
[[nodiscard]] VerificationReport verify_solution(const ProblemInstance& instance, const RoutingSolution& solution);

}  // namespace nnplace
