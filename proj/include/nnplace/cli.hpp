// SPDX-License-Identifier: MIT

#pragma once

#include "nnplace/routing.hpp"
#include "nnplace/topology.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nnplace::cli {

enum class Mode : std::uint8_t { Solve, ExportLp, Verify };

enum ExitCode : int { kOk = 0, kUnsatisfiable = 1, kUsage = 2, kBudget = 3 };

struct RunConfig {
    Mode mode = Mode::Solve;
    std::string input;
    TopologyKind topology = TopologyKind::Path1D;
    Formulation formulation = Formulation::P2;
    std::size_t block_size = 1;
    /// "identity" or a path to a `qubit_name vertex_index` file.
    std::string placement = "identity";
    /// Seconds per block; defaults to 600, or 7200 when one block covers the circuit.
    std::optional<double> budget;
    std::optional<std::string> out;
    std::optional<std::string> report;
    std::optional<std::string> export_lp;
    std::optional<std::string> verify;
};

/// Executes one configuration; diagnostics go to `err`, summaries to `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (mode, flags, input) and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nnplace::cli
