#include <cerrno>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include "tillst/temporal/solver.hpp"

namespace tillst::temporal {

namespace {

std::string smt_time(const TimeExpr& e) {
    std::string base = e.is_closed() ? std::string(kInitName) : "|" + e.base()->name + "|";
    if (e.offset() == 0) return base;
    if (e.offset() > 0) return "(+ " + base + " " + std::to_string(e.offset()) + ")";
    return "(- " + base + " " + std::to_string(-e.offset()) + ")";
}

std::string smt_prop(const Prop& p) {
    switch (p.kind()) {
        case Prop::Kind::Top: return "true";
        case Prop::Kind::Bot: return "false";
        case Prop::Kind::Eq: return "(= " + smt_time(p.lhs()) + " " + smt_time(p.rhs()) + ")";
        case Prop::Kind::Leq: return "(<= " + smt_time(p.lhs()) + " " + smt_time(p.rhs()) + ")";
        case Prop::Kind::And: return "(and " + smt_prop(p.left()) + " " + smt_prop(p.right()) + ")";
        case Prop::Kind::Or: return "(or " + smt_prop(p.left()) + " " + smt_prop(p.right()) + ")";
        case Prop::Kind::Imp: return "(=> " + smt_prop(p.left()) + " " + smt_prop(p.right()) + ")";
    }
    return "true";
}

}  // namespace

std::string emit_smtlib(const TimeCtx& g, const PropCtx& f, const Prop& p) {
    std::set<TimeVar> vars(g.begin(), g.end());
    for (const Prop& q : f) free_vars(q, vars);
    free_vars(p, vars);
    for (const TimeVar& v : vars) {
        if (v.name == kInitName) throw Error("time variable name 'init' is reserved");
    }

    std::ostringstream out;
    out << "(set-logic QF_LIA)\n";
    out << "(declare-const " << kInitName << " Int)\n";
    for (const TimeVar& v : vars) out << "(declare-const |" << v.name << "| Int)\n";
    out << "(assert (= " << kInitName << " 0))\n";
    for (const Prop& q : f) out << "(assert " << smt_prop(q) << ")\n";
    out << "(assert (not " << smt_prop(p) << "))\n";
    out << "(check-sat)\n";
    return out.str();
}

SatAnswer run_external_solver(const ExternalSolverConfig& cfg, const std::string& script) {
    namespace fs = std::filesystem;
    std::string tmpl = (fs::temp_directory_path() / "tillst-XXXXXX.smt2").string();
    std::vector<char> path(tmpl.begin(), tmpl.end());
    path.push_back('\0');
    int fd = ::mkstemps(path.data(), 5);
    if (fd < 0) throw SolverFailure(std::string("cannot create query file: ") + std::strerror(errno));
    ::close(fd);
    std::string script_path(path.data());
    {
        std::ofstream f(script_path);
        f << script;
    }
    std::string out_path = script_path + ".out";

    std::vector<std::string> argv_s{cfg.binary};
    argv_s.insert(argv_s.end(), cfg.extra_args.begin(), cfg.extra_args.end());
    argv_s.push_back(script_path);
    std::vector<char*> argv;
    for (auto& s : argv_s) argv.push_back(s.data());
    argv.push_back(nullptr);

    pid_t pid = ::fork();
    if (pid < 0) {
        fs::remove(script_path);
        throw SolverFailure(std::string("fork failed: ") + std::strerror(errno));
    }
    if (pid == 0) {
        int out = ::open(out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
        if (out >= 0) {
            ::dup2(out, STDOUT_FILENO);
            ::dup2(out, STDERR_FILENO);
        }
        ::execvp(argv[0], argv.data());
        ::_exit(127);
    }

    auto deadline = std::chrono::steady_clock::now() + cfg.timeout;
    int status = 0;
    bool finished = false;
    while (true) {
        pid_t r = ::waitpid(pid, &status, WNOHANG);
        if (r == pid) {
            finished = true;
            break;
        }
        if (std::chrono::steady_clock::now() >= deadline) break;
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    if (!finished) {
        ::kill(pid, SIGKILL);
        ::waitpid(pid, &status, 0);
        fs::remove(script_path);
        fs::remove(out_path);
        throw SolverTimeout("solver exceeded " + std::to_string(cfg.timeout.count()) + " ms");
    }

    std::ifstream in(out_path);
    std::string tok;
    SatAnswer ans = SatAnswer::Unknown;
    bool seen = false;
    while (in >> tok) {
        if (tok == "sat") ans = SatAnswer::Sat;
        else if (tok == "unsat") ans = SatAnswer::Unsat;
        else if (tok == "unknown") ans = SatAnswer::Unknown;
        else continue;
        seen = true;
        break;
    }
    in.close();
    fs::remove(script_path);
    fs::remove(out_path);
    if (!seen) {
        if (WIFEXITED(status) && WEXITSTATUS(status) == 127) {
            throw SolverFailure("cannot execute solver '" + cfg.binary + "'");
        }
        throw SolverFailure("solver '" + cfg.binary + "' produced no sat/unsat answer");
    }
    return ans;
}

bool ExternalBackend::entails(const TimeCtx& g, const PropCtx& f, const Prop& p) {
    SatAnswer a = run_external_solver(cfg_, emit_smtlib(g, f, p));
    if (a == SatAnswer::Unknown) throw SolverFailure("solver answered unknown");
    return a == SatAnswer::Unsat;
}

std::optional<std::string> find_solver_binary() {
    if (const char* env = std::getenv("SOLVER_BIN"); env && *env) return std::string(env);
    const char* path = std::getenv("PATH");
    if (!path) return std::nullopt;
    std::stringstream ss(path);
    std::string dir;
    std::vector<std::string> dirs;
    while (std::getline(ss, dir, ':')) dirs.push_back(dir);
    for (const char* name : {"z3", "cvc5"}) {
        for (const auto& d : dirs) {
            std::filesystem::path cand = std::filesystem::path(d) / name;
            if (::access(cand.c_str(), X_OK) == 0) return cand.string();
        }
    }
    return std::nullopt;
}

}  // namespace tillst::temporal
