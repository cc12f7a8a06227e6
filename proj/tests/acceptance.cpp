// One line per acceptance criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"
#include "tillst/automata/monitor.hpp"
#include "tillst/runtime/scheduler.hpp"
#include "tillst/syntax/ops.hpp"
#include "tillst/temporal/solver.hpp"
#include "tillst/typecheck/checker.hpp"

using namespace tillst;
using runtime::Action;
using runtime::Trace;
using runtime::TraceEvent;

namespace {

// Pinned limits.
constexpr double kCorpusSeconds = 30.0;
constexpr double kAdequacySeconds = 1.0;
constexpr double kWholeSystemSeconds = 1.0;
constexpr std::size_t kMinTrajectories = 1000;
constexpr std::size_t kMinSolverInstances = 500;
constexpr std::size_t kOracleBudget = 20'000'000;  // partial assignments per instance
constexpr int kMaxPerturbation = 5;

struct Result {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

bool run_criterion(int n, const char* title, const std::function<Result()>& body) {
    auto t0 = Clock::now();
    Result r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3fs", seconds_since(t0));
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << n << ". " << title << " [" << buf << "] " << r.detail << std::endl;
    return r.pass;
}

// ---------------------------------------------------------------- 1

Result corpus_verdicts() {
    struct Expect {
        const char* file;
        const char* decl;
        bool accept;
    };
    const Expect table[] = {
        {"smart_home.tsl", "hub", true},          {"smart_home.tsl", "sensor", true},
        {"smart_home.tsl", "home", true},         {"keyless_entry.tsl", "key", true},
        {"keyless_entry.tsl", "car", true},       {"collision_detector.tsl", "radar", true},
        {"collision_detector.tsl", "cdx", true},  {"minimum.tsl", "unit_provider", true},
        {"minimum.tsl", "minimum", true},         {"p1_p2.tsl", "p1", true},
        {"p1_p2.tsl", "p2", true},                {"p3_deadline_miss.tsl", "p3", false},
        {"p4_window_miss.tsl", "p4", false},      {"unsound_forward.tsl", "late_forward", false},
        {"cut_permitted.tsl", "spawn_at_two", true}, {"cut_too_early.tsl", "spawn_at_zero", false},
    };
    auto t0 = Clock::now();
    std::map<std::string, std::map<std::string, std::optional<typecheck::ErrorKind>>> got;
    for (const auto& e : table) {
        if (got.count(e.file)) continue;
        for (const auto& r : typecheck::check_program(support::load(e.file)))
            got[e.file][r.name] = r.error ? std::optional(r.error->kind) : std::nullopt;
    }
    double secs = seconds_since(t0);

    Result res;
    int ok = 0;
    for (const auto& e : table) {
        auto& m = got[e.file];
        bool have = m.count(e.decl);
        bool accepted = have && !m[e.decl];
        if (have && accepted == e.accept) {
            ++ok;
        } else {
            res.pass = false;
            res.detail += std::string(" mismatch:") + e.file + ":" + e.decl;
        }
    }
    auto kind_is = [&](const char* f, const char* d, typecheck::ErrorKind k) { return got[f][d] == k; };
    bool kinds = kind_is("p3_deadline_miss.tsl", "p3", typecheck::ErrorKind::TimingViolation) &&
                 kind_is("p4_window_miss.tsl", "p4", typecheck::ErrorKind::TimingViolation);
    if (!kinds) {
        res.pass = false;
        res.detail += " deadline fixtures not rejected as timing violations";
    }

    auto late = syntax::parse_type("Unit<t where Leq<Shift<t0, 2>, t>>");
    auto any = syntax::parse_type("Unit<t where Leq<t0, t>>");
    bool cut2 = typecheck::cut_retype({}, {}, late, any, temporal::TimeExpr::init(2));
    bool cut0 = typecheck::cut_retype({}, {}, late, any, temporal::TimeExpr::init(0));
    if (!cut2 || cut0) {
        res.pass = false;
        res.detail += " cut retyping wrong";
    }
    if (secs >= kCorpusSeconds) {
        res.pass = false;
        res.detail += " too slow";
    }
    std::ostringstream os;
    os << ok << "/" << std::size(table) << " verdicts exact, cut at t0+2 " << (cut2 ? "accepts" : "rejects")
       << " and at t0 " << (cut0 ? "accepts" : "rejects") << ", checking took " << secs << "s (limit "
       << kCorpusSeconds << "s)";
    res.detail = os.str() + res.detail;
    return res;
}

// ---------------------------------------------------------------- 2

Result adequacy() {
    auto prog = support::load("adequacy.tsl");
    auto ctx = runtime::make_context(prog);
    auto t0 = Clock::now();
    Result res;
    std::ostringstream os;
    for (std::int64_t n : {0, 1, 5, 50, 1000}) {
        auto name = "close_" + std::to_string(n);
        auto r = runtime::run_system(ctx, "adequacy_" + std::to_string(n));
        bool close_ok = r.ok() && !r.trace.empty() && r.trace.back() == TraceEvent{n, Action::send_close(name)};
        bool replay_ok = runtime::replay(ctx, r.sigma);
        os << " n=" << n << (close_ok && replay_ok ? ":ok" : ":bad");
        if (!close_ok || !replay_ok) res.pass = false;
    }
    double secs = seconds_since(t0);
    if (secs >= kAdequacySeconds) res.pass = false;
    res.detail = "close at exactly init+n and replay holds for" + os.str();
    return res;
}

// ---------------------------------------------------------------- 3

Result whole_system() {
    Result res;
    std::ostringstream os;
    auto t0 = Clock::now();
    for (std::int64_t T : {0, 17}) {
        auto prog = support::load("smart_home.tsl");
        for (auto& s : prog.systems) s.start = temporal::TimeExpr::init(T);
        auto ctx = runtime::make_context(prog);
        auto temp = runtime::extern_value(ctx, "read_temp", {});
        auto gas = runtime::extern_value(ctx, "read_gas", {});
        auto ac = runtime::extern_value(ctx, "needAC", {temp, temp, gas});
        // the hub first takes both sensor channels, then the protocol runs as annotated
        Trace want{
            {T, Action::recv_chan("hub", "s1")},      {T, Action::recv_chan("hub", "s2")},
            {T, Action::recv_lbl("s1", "R")},         {T, Action::send_val("s1", temp)},
            {T, Action::recv_lbl("s2", "L")},         {T, Action::send_val("s2", temp)},
            {T, Action::send_close("s2")},            {T + 30, Action::send_val("s1", gas)},
            {T + 50, Action::send_close("s1")},       {T + 50, Action::send_val("hub", ac)},
            {T + 50, Action::send_close("hub")},
        };
        auto r = runtime::run_system(ctx, "main");
        auto find = [&](const Action& a) -> std::int64_t {
            for (const auto& e : r.trace)
                if (e.action == a) return e.time;
            return -1;
        };
        bool gas_ok = find(Action::send_val("s1", gas)) == T + 30;
        bool close_ok = find(Action::send_close("s1")) == T + 50;
        bool bool_ok = find(Action::send_val("hub", ac)) == T + 50 && find(Action::send_close("hub")) == T + 50;
        bool full = r.ok() && r.trace == want;
        bool rep = runtime::replay(ctx, r.sigma);
        os << " T=" << T << ": gas@" << find(Action::send_val("s1", gas)) << " close@"
           << find(Action::send_close("s1")) << " verdict@" << find(Action::send_close("hub")) << " "
           << r.trace.size() << " events" << (full ? " match" : " DIFFER") << (rep ? "" : " no-replay") << ";";
        if (!(gas_ok && close_ok && bool_ok && full && rep)) res.pass = false;
    }
    double secs = seconds_since(t0);
    if (secs >= kWholeSystemSeconds * 2) res.pass = false;  // two runs
    res.detail = "hub with two BME680 automata" + os.str() +
                 " the oracle lists nine protocol events plus the two channel handovers";
    return res;
}

// ---------------------------------------------------------------- 4

Result trajectories() {
    auto pool = support::harvest(2024);
    auto rep = support::check_trajectory_laws(pool, 7);
    Result res;
    res.pass = rep.ok() && rep.trajectories >= kMinTrajectories && rep.pairs >= kMinTrajectories;
    std::ostringstream os;
    os << rep.trajectories << " trajectories, " << rep.pairs << " interleaved pairs, " << rep.checks
       << " law instances; failures: computable " << rep.computable_fail << ", pointwise " << rep.pointwise_fail
       << ", split " << rep.split_fail << ", distribution " << rep.distrib_fail;
    for (const auto& n : rep.notes) os << " | " << n;
    res.detail = os.str();
    return res;
}

// ---------------------------------------------------------------- 5

Result solver() {
    auto bin = temporal::find_solver_binary();
    std::optional<temporal::ExternalSolverConfig> ext;
    if (bin) {
        ext.emplace();
        ext->binary = *bin;
    }
    std::size_t decided = 0, inconclusive = 0, disagree = 0, four = 0, holds = 0;
    std::size_t smt_run = 0, smt_disagree = 0;
    auto one = [&](const support::Instance& in) {
        bool internal = temporal::entails(in.g, in.f, in.p);
        support::BruteForce bf(in);
        auto d = bf.decide(kOracleBudget);
        if (d) {
            ++decided;
            four += in.g.size() == 4;
            holds += *d;
            if (*d != internal) ++disagree;
        } else {
            ++inconclusive;
        }
        if (ext) {
            ++smt_run;
            auto ans = temporal::run_external_solver(*ext, temporal::emit_smtlib(in.g, in.f, in.p));
            if ((ans == temporal::SatAnswer::Unsat) != internal || ans == temporal::SatAnswer::Unknown) ++smt_disagree;
        }
    };
    support::Generator mixed(1, 4, 20);
    for (int i = 0; i < 400; ++i) one(mixed.next());
    support::Generator wide(2, 4, 20, 4, 1);
    for (int i = 0; i < 250; ++i) one(wide.next());

    Result res;
    res.pass = disagree == 0 && decided >= kMinSolverInstances && smt_disagree == 0;
    std::ostringstream os;
    os << decided << " instances decided by the brute-force oracle (" << four << " with four variables, " << holds
       << " valid), " << disagree << " disagreements, " << inconclusive << " over the oracle budget; ";
    if (ext)
        os << "external solver agreed on " << (smt_run - smt_disagree) << "/" << smt_run << " exported scripts";
    else
        os << "no external solver available";
    res.detail = os.str();
    return res;
}

// ---------------------------------------------------------------- 6

Result monitor() {
    auto prog = support::load("smart_home.tsl");
    auto ctx = runtime::make_context(prog);
    auto r = runtime::run_system(ctx, "main");
    automata::TraceObligation obl{syntax::expand_type_refs(prog, prog.find_type("BME680")->type), 0, {}};
    Trace mine;
    for (const auto& e : r.trace)
        if (e.action.chan == "s1") mine.push_back(e);

    Result res;
    bool base = automata::monitor_trace(obl, mine).conforms() &&
                automata::monitor_channel(obl, "s1", r.trace).conforms() &&
                automata::monitor_channel(obl, "s2", r.trace).conforms();
    if (!base || mine.size() != 4) res.pass = false;

    // lower bounds of the heating branch, from the actual earlier times
    auto first_bad = [](const Trace& t) -> int {
        std::int64_t lo[4] = {0, t[0].time, t[1].time + 30, t[2].time + 20};
        for (int i = 0; i < 4; ++i)
            if (t[static_cast<std::size_t>(i)].time < lo[i]) return i;
        return -1;
    };
    int tried = 0, flagged = 0, wrong = 0;
    for (std::size_t idx : {2u, 3u}) {
        for (int d = -kMaxPerturbation; d <= kMaxPerturbation; ++d) {
            if (d == 0) continue;
            auto t = mine;
            t[idx].time += d;
            int want = first_bad(t);
            auto v = automata::monitor_trace(obl, t);
            ++tried;
            if (want < 0) {
                if (!v.conforms()) ++wrong;
            } else {
                ++flagged;
                if (v.conforms() || v.index != static_cast<std::size_t>(want) ||
                    v.reason != automata::Verdict::Reason::Time)
                    ++wrong;
            }
        }
    }
    if (wrong) res.pass = false;
    std::ostringstream os;
    os << "run trace " << (base ? "conforms" : "does NOT conform") << "; " << tried
       << " perturbations of the gas and close events, " << flagged << " outside a window, " << wrong
       << " misjudged";
    res.detail = os.str();
    return res;
}

}  // namespace

int main() {
    bool all = true;
    all &= run_criterion(1, "corpus verdicts", corpus_verdicts);
    all &= run_criterion(2, "adequacy", adequacy);
    all &= run_criterion(3, "whole-system run", whole_system);
    all &= run_criterion(4, "trajectory laws", trajectories);
    all &= run_criterion(5, "solver soundness", solver);
    all &= run_criterion(6, "monitor", monitor);
    std::cout << (all ? "all criteria pass" : "some criteria FAIL") << std::endl;
    return all ? 0 : 1;
}
