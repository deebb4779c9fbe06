// SPDX-License-Identifier: MIT

#include "nnplace/cli.hpp"

#include "nnplace/ilp_model.hpp"
#include "nnplace/pipeline.hpp"
#include "nnplace/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace nnplace::cli {

namespace {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(fmt::format("cannot read {}", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError(fmt::format("cannot write {}", path));
    out << text;
    if (!out) throw InputError(fmt::format("failed writing {}", path));
}

/// A circuit, or a bare interaction list read from a `.int` file.
struct Workload {
    std::string name;
    std::vector<std::string> qubits;
    std::optional<QuantumCircuit> circuit;
    std::vector<Interaction> interactions;
};

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

/// `.variables a b c`, `.begin`, one interaction per line as `p:q` tokens, `.end`.
std::vector<Interaction> parse_interactions(const std::string& text, std::vector<std::string>& names) {
    std::map<std::string, QubitId> ids;
    std::vector<Interaction> out;
    bool body = false;
    bool done = false;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        auto fail = [&](const std::string& what) {
            return InputError(fmt::format("line {}: {}", lineno, what));
        };
        if (done) throw fail("content after .end");
        if (toks[0] == ".variables") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (!ids.emplace(toks[i], static_cast<QubitId>(names.size())).second) throw fail("duplicate qubit " + toks[i]);
                names.push_back(toks[i]);
            }
        } else if (toks[0] == ".begin") {
            body = true;
        } else if (toks[0] == ".end") {
            done = true;
        } else if (!body) {
            throw fail("unexpected " + toks[0]);
        } else {
            Interaction inter;
            for (const auto& t : toks) {
                const auto colon = t.find(':');
                if (colon == std::string::npos) throw fail("expected p:q, got " + t);
                auto a = ids.find(t.substr(0, colon));
                auto b = ids.find(t.substr(colon + 1));
                if (a == ids.end() || b == ids.end()) throw fail("undeclared qubit in " + t);
                if (a->second == b->second) throw fail("pair repeats a qubit: " + t);
                inter.pairs.emplace(a->second, b->second);
                inter.active_qubits.insert(a->second);
                inter.active_qubits.insert(b->second);
            }
            out.push_back(std::move(inter));
        }
    }
    if (!done) throw InputError("missing .end");
    return out;
}

Workload load(const std::string& path) {
    Workload w;
    w.name = std::filesystem::path(path).stem().string();
    const std::string text = read_file(path);
    if (std::filesystem::path(path).extension() == ".int") {
        w.interactions = parse_interactions(text, w.qubits);
        return w;
    }
    QuantumCircuit c = parse_real(text);
    if (auto v = validate(c); !v.empty()) {
        throw InputError(fmt::format("gate {} violates {}: {}", v.front().gate_index, to_string(v.front().rule),
                                     v.front().detail));
    }
    w.qubits = c.qubit_names();
    w.interactions = interactions(c, compute_levels(c));
    w.circuit = std::move(c);
    return w;
}

Placement load_placement(const std::string& source, const std::vector<std::string>& qubits, std::size_t vertices) {
    if (source == "identity") return Placement::identity(qubits.size(), vertices);
    std::map<std::string, QubitId> ids;
    for (std::size_t q = 0; q < qubits.size(); ++q) ids[qubits[q]] = static_cast<QubitId>(q);
    std::vector<VertexId> where(qubits.size(), kNoVertex);
    std::istringstream in(read_file(source));
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks.size() != 2) throw InputError("placement lines are `qubit_name vertex_index`: " + line);
        auto it = ids.find(toks[0]);
        if (it == ids.end()) throw InputError("placement names unknown qubit " + toks[0]);
        if (where[it->second] != kNoVertex) throw InputError("qubit placed twice: " + toks[0]);
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(toks[1], &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != toks[1].size()) throw InputError("bad vertex index " + toks[1]);
        where[it->second] = static_cast<VertexId>(v);
    }
    for (std::size_t q = 0; q < qubits.size(); ++q) {
        if (where[q] == kNoVertex) throw InputError("placement does not list qubit " + qubits[q]);
    }
    return {std::move(where), vertices};
}

std::vector<std::vector<Interaction>> blocks_of(const std::vector<Interaction>& inters, std::size_t b) {
    std::vector<std::vector<Interaction>> out;
    for (std::size_t lo = 0; lo < inters.size(); lo += b) {
        const std::size_t hi = std::min(lo + b, inters.size());
        out.emplace_back(inters.begin() + static_cast<std::ptrdiff_t>(lo), inters.begin() + static_cast<std::ptrdiff_t>(hi));
    }
    return out;
}

SolveOptions solve_options(const RunConfig& cfg, std::size_t levels) {
    SolveOptions opt;
    const double fallback = cfg.block_size >= levels ? 7200.0 : 600.0;
    opt.budget = std::chrono::duration<double>(cfg.budget.value_or(fallback));
    return opt;
}

RoutingSolution solve_block(const TopologyGraph& g, const Placement& p, const std::vector<Interaction>& inters,
                            Formulation f, const SolveOptions& opt) {
    return f == Formulation::P2 ? solve_p2(g, p, inters, opt) : solve_p3(g, p, inters, opt);
}

std::size_t greedy_horizon(const TopologyGraph& g, const Placement& p, const std::vector<Interaction>& inters,
                           Formulation f) {
    const auto sol = greedy_upper_bound(g, p, inters, f);
    if (f == Formulation::P2) return sol.met_cycle.empty() ? 0 : sol.met_cycle.back();
    return sol.level_cycle.empty() ? 0 : sol.level_cycle.back();
}

std::string lp_path(const std::string& base, std::size_t block, std::size_t blocks) {
    if (blocks == 1) return base;
    std::filesystem::path p(base);
    return (p.parent_path() / fmt::format("{}_b{}{}", p.stem().string(), block, p.extension().string())).string();
}

std::string schedule_text(const std::vector<RoutingSolution>& sols) {
    std::string out;
    std::size_t cycle = 0;
    for (std::size_t b = 0; b < sols.size(); ++b) {
        out += fmt::format("# block {}\n", b);
        for (const auto& step : sols[b].steps) {
            out += fmt::format("{}:", cycle++);
            for (const Edge& e : step.swaps) out += fmt::format(" {}-{}", e.u, e.v);
            out += '\n';
        }
    }
    return out;
}

int solve_mode(const RunConfig& cfg, const Workload& w, const TopologyGraph& g, const Placement& start,
               std::ostream& out) {
    const SolveOptions opt = solve_options(cfg, w.interactions.size());
    std::string json;
    bool optimal = true;
    std::string circuit_text;
    if (w.circuit) {
        RouteOptions ro{cfg.formulation, cfg.block_size, opt};
        RoutedCircuit r = route_circuit(*w.circuit, g, start, ro, w.name);
        optimal = r.all_optimal();
        json = report_json(r);
        circuit_text = write_real(r.merged);
        out << report_table({r});
    } else {
        std::vector<RoutingSolution> sols;
        Placement cur = start;
        std::size_t swaps = 0;
        std::size_t swap_delay = 0;
        std::size_t total = 0;
        const auto t0 = std::chrono::steady_clock::now();
        for (const auto& block : blocks_of(w.interactions, cfg.block_size)) {
            sols.push_back(solve_block(g, cur, block, cfg.formulation, opt));
            cur = sols.back().final_placement();
            swaps += sols.back().swap_count;
            swap_delay += sols.back().swap_delay;
            total += sols.back().total_delay;
            optimal = optimal && sols.back().optimal;
        }
        nlohmann::ordered_json j;
        j["benchmark"] = w.name;
        j["vars"] = w.qubits.size();
        j["gates"] = 0;
        j["levels"] = w.interactions.size();
        j["topology"] = std::string(to_string(g.kind()));
        j["vertices"] = g.num_vertices();
        j["formulation"] = std::string(to_string(cfg.formulation));
        j["block_size"] = cfg.block_size;
        j["blocks"] = sols.size();
        j["S"] = swaps;
        j["swap_delay"] = swap_delay;
        j["D"] = total;
        auto flags = nlohmann::ordered_json::array();
        for (const auto& s : sols) flags.push_back(s.optimal);
        j["block_optimal"] = flags;
        j["optimal"] = optimal;
        j["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        json = j.dump();
        circuit_text = schedule_text(sols);
        out << fmt::format("{}: S={} swap_delay={} D={}{}\n", w.name, swaps, swap_delay, total,
                           optimal ? "" : " (not proven optimal)");
    }
    if (cfg.out) write_file(*cfg.out, circuit_text);
    if (cfg.report) write_file(*cfg.report, json + "\n");
    return optimal ? kOk : kBudget;
}

int export_mode(const RunConfig& cfg, const Workload& w, const TopologyGraph& g, const Placement& start,
                std::ostream& out) {
    if (!cfg.export_lp) throw InputError("export-lp needs --export-lp <path>");
    const SolveOptions opt = solve_options(cfg, w.interactions.size());
    const auto blocks = blocks_of(w.interactions, cfg.block_size);
    std::vector<std::pair<std::string, std::string>> files;
    Placement cur = start;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        ProblemInstance inst{g, cur, blocks[b], cfg.formulation, greedy_horizon(g, cur, blocks[b], cfg.formulation)};
        IlpModel m = build_model(inst);
        files.emplace_back(lp_path(*cfg.export_lp, b, blocks.size()), export_lp(m));
        out << fmt::format("{}: {} variables, {} constraints, horizon {}\n", files.back().first, m.variables().size(),
                           m.constraints().size(), inst.horizon);
        if (b + 1 < blocks.size()) cur = solve_block(g, cur, blocks[b], cfg.formulation, opt).final_placement();
    }
    for (const auto& [path, text] : files) write_file(path, text);
    return kOk;
}

int verify_mode(const RunConfig& cfg, const Workload& w, const TopologyGraph& g, const Placement& start,
                std::ostream& out) {
    if (!cfg.verify) throw InputError("verify needs --verify <solution path>");
    if (w.interactions.empty()) throw InputError("nothing to verify: the input has no levels");
    const auto block = blocks_of(w.interactions, cfg.block_size).front();
    ProblemInstance inst{g, start, block, cfg.formulation, greedy_horizon(g, start, block, cfg.formulation)};
    const auto values = parse_solution_values(read_file(*cfg.verify));
    const RoutingSolution sol = decode_solution(inst, values);
    const auto rep = verify_solution(inst, sol);
    out << fmt::format("verdict: {}\n", rep.ok() ? "ok" : "violations");
    for (const auto& v : rep.violations) out << fmt::format("  {} at cycle {}: {}\n", to_string(v.kind), v.cycle, v.detail);
    out << fmt::format("swaps: {}\nswap_delay: {}\ntotal_delay: {}\n", rep.swap_count, rep.swap_delay, rep.total_delay);
    return rep.ok() ? kOk : kUnsatisfiable;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.block_size == 0) throw InputError("--block-size must be at least 1");
        if (cfg.budget && !(*cfg.budget > 0)) throw InputError("--budget must be positive");
        const Workload w = load(cfg.input);
        const TopologyGraph g = build_topology(cfg.topology, std::max<std::size_t>(w.qubits.size(), 1));
        const Placement start = load_placement(cfg.placement, w.qubits, g.num_vertices());
        switch (cfg.mode) {
        case Mode::Solve: return solve_mode(cfg, w, g, start, out);
        case Mode::ExportLp: return export_mode(cfg, w, g, start, out);
        case Mode::Verify: return verify_mode(cfg, w, g, start, out);
        }
        return kUsage;
    } catch (const Unsatisfiable& e) {
        err << "unsatisfiable: " << e.what() << '\n';
        return kUnsatisfiable;
    } catch (const ParseError& e) {
        err << fmt::format("{}:{}: {} ({})\n", cfg.input, e.line(), e.what(), to_string(e.kind()));
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact nearest-neighbor routing of reversible circuits"};
    RunConfig cfg;
    std::string mode;
    std::string topology = "1d";
    std::string formulation = "p2";
    app.add_option("mode", mode, "solve | export-lp | verify")
        ->required()
        ->check(CLI::IsMember({"solve", "export-lp", "verify"}));
    app.add_option("input", cfg.input, ".real circuit or .int interaction list")->required();
    app.add_option("--topology", topology, "Topology family")
        ->check(CLI::IsMember({"1d", "cycle", "mesh2d", "torus", "grid3d", "cbn", "full"}));
    app.add_option("--formulation", formulation, "p2 or p3")->check(CLI::IsMember({"p2", "p3"}));
    app.add_option("--block-size", cfg.block_size, "Levels per block")->check(CLI::PositiveNumber);
    app.add_option("--placement", cfg.placement, "identity or a `qubit_name vertex_index` file");
    app.add_option("--budget", cfg.budget, "Seconds per block")->check(CLI::PositiveNumber);
    app.add_option("--out", cfg.out, "Routed circuit output");
    app.add_option("--report", cfg.report, "JSON report output");
    app.add_option("--export-lp", cfg.export_lp, "LP output path (one file per block)");
    app.add_option("--verify", cfg.verify, "Solver solution with `name value` lines");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kUsage;
    }
    cfg.mode = mode == "solve" ? Mode::Solve : mode == "export-lp" ? Mode::ExportLp : Mode::Verify;
    cfg.topology = *topology_kind_from_string(topology);
    cfg.formulation = formulation == "p2" ? Formulation::P2 : Formulation::P3;
    return run(cfg, out, err);
}

}  // namespace nnplace::cli
