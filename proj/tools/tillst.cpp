#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tillst/automata/monitor.hpp"
#include "tillst/runtime/scheduler.hpp"
#include "tillst/syntax/ops.hpp"
#include "tillst/syntax/parser.hpp"
#include "tillst/temporal/solver.hpp"
#include "tillst/typecheck/checker.hpp"

namespace fs = std::filesystem;
using namespace tillst;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Loaded {
    syntax::Program prog;
    bool ok = false;
};

Loaded load(const std::string& file) {
    Loaded l;
    try {
        l.prog = syntax::parse_program(syntax::read_file(file));
        l.ok = true;
    } catch (const syntax::ParseError& e) {
        std::cerr << file << ":" << e.pos.str() << ": " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << file << ": " << e.what() << "\n";
    }
    return l;
}

int cmd_check(const std::string& file, const std::string& solver, const std::string& solver_bin, int timeout_ms) {
    auto l = load(file);
    if (!l.ok) return kUsage;

    std::unique_ptr<temporal::EntailmentBackend> backend;
    if (solver == "external") {
        std::string bin = solver_bin;
        if (bin.empty()) {
            auto found = temporal::find_solver_binary();
            if (!found) {
                std::cerr << "no external solver: set SOLVER_BIN or pass --solver-bin\n";
                return kUsage;
            }
            bin = *found;
        }
        temporal::ExternalSolverConfig cfg;
        cfg.binary = bin;
        cfg.timeout = std::chrono::milliseconds(timeout_ms);
        backend = std::make_unique<temporal::ExternalBackend>(cfg);
    } else {
        backend = std::make_unique<temporal::InternalBackend>();
    }

    bool all = true;
    try {
        for (const auto& r : typecheck::check_program(l.prog, *backend)) {
            if (r.accepted()) {
                std::cout << "accept " << r.name << "\n";
            } else {
                all = false;
                std::cout << "reject " << r.name << ": " << r.error->render() << "\n";
            }
        }
        automata::load_automata(l.prog);
    } catch (const automata::AutomatonError& e) {
        std::cout << "reject automaton: " << e.what() << "\n";
        all = false;
    } catch (const temporal::SolverTimeout& e) {
        std::cerr << "solver timeout: " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return all ? kOk : kFail;
}

int cmd_run(const std::string& file, const std::string& entry, std::optional<std::int64_t> horizon,
            const std::string& trace_out, std::uint64_t seed) {
    auto l = load(file);
    if (!l.ok) return kUsage;
    runtime::RunResult res;
    try {
        auto ctx = runtime::make_context(l.prog, seed);
        const syntax::SystemDecl* sys = l.prog.find_system(entry);
        if (!sys) {
            std::cerr << "unknown system '" << entry << "'\n";
            return kUsage;
        }
        runtime::RunOptions opts;
        auto built = runtime::build_system(ctx, *sys, opts);
        if (horizon) opts.horizon = built.start + *horizon;
        res = runtime::run_scheduler(ctx, built.config, built.start, opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }

    if (trace_out.empty() || trace_out == "-") {
        runtime::write_trace(std::cout, res.trace);
    } else {
        std::ofstream os(trace_out);
        if (!os) {
            std::cerr << "cannot write " << trace_out << "\n";
            return kUsage;
        }
        runtime::write_trace(os, res.trace);
    }
    if (res.failure) {
        std::cerr << res.failure->message() << "\n";
        return kFail;
    }
    std::cerr << (res.reached_horizon ? "horizon reached" : "terminated") << " at t0+" << res.sigma.end_time()
              << " after " << res.trace.size() << " events\n";
    return kOk;
}

int cmd_smt(const std::string& file, const std::string& out_dir) {
    auto l = load(file);
    if (!l.ok) return kUsage;
    std::vector<typecheck::Query> log;
    temporal::InternalBackend backend;
    try {
        typecheck::check_program(l.prog, backend, &log);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "cannot create " << out_dir << ": " << ec.message() << "\n";
        return kUsage;
    }
    nlohmann::ordered_json index = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < log.size(); ++i) {
        const auto& q = log[i];
        std::ostringstream name;
        name << std::setw(4) << std::setfill('0') << (i + 1) << ".smt2";
        std::ofstream os(fs::path(out_dir) / name.str());
        if (!os) {
            std::cerr << "cannot write " << name.str() << "\n";
            return kUsage;
        }
        os << temporal::emit_smtlib(q.g, q.f, q.p);
        index.push_back({{"file", name.str()},
                         {"decl", q.decl},
                         {"rule", q.rule},
                         {"pos", q.pos.str()},
                         {"judgment", typecheck::render_entailment(q.g, q.f, q.p)},
                         {"expected", q.holds ? "unsat" : "sat"}});
    }
    std::ofstream idx(fs::path(out_dir) / "index.json");
    if (!idx) {
        std::cerr << "cannot write index.json\n";
        return kUsage;
    }
    idx << index.dump(2) << "\n";
    std::cout << log.size() << " queries written to " << out_dir << "\n";
    return kOk;
}

int cmd_monitor(const std::string& file, const std::string& type_name, const std::string& trace_file,
                const std::string& channel, std::int64_t start) {
    auto l = load(file);
    if (!l.ok) return kUsage;
    const syntax::TypeDecl* td = l.prog.find_type(type_name);
    if (!td) {
        std::cerr << "unknown type '" << type_name << "'\n";
        return kUsage;
    }
    std::ifstream is(trace_file);
    if (!is) {
        std::cerr << "cannot read " << trace_file << "\n";
        return kUsage;
    }
    runtime::Trace trace;
    try {
        trace = runtime::read_trace(is);
    } catch (const std::exception& e) {
        std::cerr << trace_file << ": " << e.what() << "\n";
        return kUsage;
    }
    automata::TraceObligation obl{syntax::expand_type_refs(l.prog, td->type), start, {}};
    auto v = channel.empty() ? automata::monitor_trace(obl, trace) : automata::monitor_channel(obl, channel, trace);
    std::cout << v.str() << "\n";
    return v.conforms() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tillst: timed session type checker and simulator"};
    app.require_subcommand(1);

    std::string file, solver = "internal", solver_bin, entry, trace_out, out_dir, type_name, trace_in, channel;
    int timeout_ms = 5000;
    std::optional<std::int64_t> horizon;
    std::uint64_t seed = 0;
    std::int64_t start = 0;

    auto* check = app.add_subcommand("check", "type-check every declaration");
    check->add_option("file", file, "source file")->required();
    check->add_option("--solver", solver, "internal or external")->check(CLI::IsMember({"internal", "external"}));
    check->add_option("--solver-bin", solver_bin, "external solver binary");
    check->add_option("--timeout-ms", timeout_ms, "external solver timeout")->check(CLI::PositiveNumber);

    auto* run = app.add_subcommand("run", "run a system declaration");
    run->add_option("file", file, "source file")->required();
    run->add_option("--entry", entry, "system name")->required();
    run->add_option("--horizon", horizon, "ticks after the start to simulate");
    run->add_option("--trace", trace_out, "JSON-lines trace output (default stdout)");
    run->add_option("--seed", seed, "seed for extern values");

    auto* smt = app.add_subcommand("smt", "dump every entailment query as SMT-LIB2");
    smt->add_option("file", file, "source file")->required();
    smt->add_option("--out", out_dir, "output directory")->required();

    auto* mon = app.add_subcommand("monitor", "check a trace against a session type");
    mon->add_option("file", file, "source file")->required();
    mon->add_option("--type", type_name, "type declaration name")->required();
    mon->add_option("--trace", trace_in, "JSON-lines trace")->required();
    mon->add_option("--channel", channel, "only events on this channel, following transmitted channels");
    mon->add_option("--start", start, "ticks at which the obligation starts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    if (*check) return cmd_check(file, solver, solver_bin, timeout_ms);
    if (*run) return cmd_run(file, entry, horizon, trace_out, seed);
    if (*smt) return cmd_smt(file, out_dir);
    if (*mon) return cmd_monitor(file, type_name, trace_in, channel, start);
    return kUsage;
}
