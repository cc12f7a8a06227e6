#include <algorithm>

#include "doctest.h"
#include "support.hpp"
#include "tillst/automata/monitor.hpp"
#include "tillst/runtime/scheduler.hpp"
#include "tillst/syntax/ops.hpp"
#include "tillst/syntax/parser.hpp"

using namespace tillst::automata;
using namespace tillst::runtime;
using tillst::syntax::kAcceptState;
using tillst::syntax::parse_program;
using tillst::syntax::parse_type;
using tillst::syntax::Value;
using AK = ActionTemplate::Kind;

namespace {

std::set<std::pair<AK, std::string>> enabled(const AutomatonDef& a, const std::string& s, std::int64_t entry,
                                             std::int64_t now) {
    std::set<std::pair<AK, std::string>> out;
    for (const auto& e : automaton_transitions(a, s, entry, now)) out.insert({e.action.kind, e.next});
    return out;
}

TraceObligation bme_obligation(std::int64_t start = 0) {
    auto p = support::load("smart_home.tsl");
    return {tillst::syntax::expand_type_refs(p, p.find_type("BME680")->type), start, {}};
}

Trace sensor_trace(std::int64_t t1) {
    auto temp = Value::opaque("sort_temp", 1);
    auto gas = Value::opaque("sort_gas", 2);
    return {{t1, Action::recv_lbl("s", "R")},
            {t1, Action::send_val("s", temp)},
            {t1 + 30, Action::send_val("s", gas)},
            {t1 + 50, Action::send_close("s")}};
}

// First event below its lower bound on the heating branch, measured from the
// actual times of the events before it; -1 if none.
int first_out_of_window(const Trace& t, std::int64_t start) {
    std::int64_t lower[4];
    lower[0] = start;
    for (int i = 0; i < 4; ++i) {
        if (i == 1) lower[1] = t[0].time;
        if (i == 2) lower[2] = t[1].time + 30;
        if (i == 3) lower[3] = t[2].time + 20;
        if (t[static_cast<std::size_t>(i)].time < lower[i]) return i;
    }
    return -1;
}

}  // namespace

TEST_SUITE("automata") {

TEST_CASE("builtin sensor shape") {
    auto a = builtin_bme680();
    CHECK(a.transitions.size() == 7);
    std::set<std::string> states = a.states;
    states.insert(kAcceptState);
    CHECK(states == std::set<std::string>{"S0", "S1", "S2", "S3", "S4", "S5", kAcceptState});
    CHECK(a.initial == "S0");
}

TEST_CASE("sensor guards") {
    auto a = builtin_bme680();
    CHECK(enabled(a, "S4", 100, 129).empty());
    CHECK(enabled(a, "S4", 100, 130) == std::set<std::pair<AK, std::string>>{{AK::SendVal, "S5"}});
    CHECK(enabled(a, "S5", 100, 119).empty());
    CHECK(enabled(a, "S5", 100, 120) == std::set<std::pair<AK, std::string>>{{AK::SendClose, kAcceptState}});
    for (std::int64_t t : {0, 1, 77}) {
        CHECK(enabled(a, "S0", 0, t) == std::set<std::pair<AK, std::string>>{{AK::RecvL, "S1"}, {AK::RecvR, "S2"}});
    }
    CHECK(enabled(a, kAcceptState, 0, 1000).empty());
    auto rel = guard_releases(a, "S4", 10);
    CHECK(std::find(rel.begin(), rel.end(), 40) != rel.end());

    auto gas = automaton_transitions(a, "S4", 0, 30);
    REQUIRE(gas.size() == 1);
    CHECK(gas[0].action.extern_fn == "read_gas");
}

TEST_CASE("lower-bound guards are monotone") {
    auto a = builtin_bme680();
    for (const auto& s : a.states)
        for (std::int64_t t = 0; t <= 60; ++t)
            for (const auto& e : enabled(a, s, 0, t))
                for (std::int64_t u = t; u <= 60; ++u) CHECK(enabled(a, s, 0, u).count(e));
}

TEST_CASE("surface declaration equals the builtin") {
    auto prog = support::load("smart_home.tsl");
    auto m = load_automata(prog);
    REQUIRE(m.count("bme680"));
    CHECK(m.at("bme680") == builtin_bme680());
}

TEST_CASE("automaton loading errors") {
    CHECK(load_automata(parse_program("")).empty());
    auto bad_target = parse_program("automaton m { state A init; A --[?L]--> B; }");
    CHECK_THROWS_AS(load_automata(bad_target), AutomatonError);
    auto dup_state = parse_program("automaton m { state A init; state A; A --[!cls]--> accept; }");
    CHECK_THROWS_AS(load_automata(dup_state), AutomatonError);
    auto load = [](const char* src) { return load_automata(parse_program(src)); };
    CHECK_THROWS(load("automaton m { state A; A --[!cls]--> accept; }"));
    CHECK_THROWS(load("automaton m { state A init; A --[-3, !cls]--> accept; }"));
    CHECK_THROWS(load("automaton m { state A init; A --[!cls]--> accept; }\nautomaton m { state B init; B --[!cls]--> accept; }"));
    auto ok = parse_program("automaton m { state A init; A --[5, !cls]--> accept; }");
    auto lm = load_automata(ok);
    REQUIRE(lm.count("m"));
    CHECK(lm.at("m").transitions.at(0).guard == 5);
}

TEST_CASE("monitor examples") {
    auto obl = bme_obligation();
    auto ok = monitor_trace(obl, sensor_trace(4));
    CHECK(ok.conforms());

    auto early = sensor_trace(4);
    early[2].time = 4 + 29;
    auto v = monitor_trace(obl, early);
    CHECK(v.kind == Verdict::Kind::Violation);
    CHECK(v.index == 2);
    CHECK(v.reason == Verdict::Reason::Time);

    auto unit = TraceObligation{parse_type("Unit<t where True>"), 0, {}};
    auto e = monitor_trace(unit, {});
    CHECK(e.kind == Verdict::Kind::Violation);
    CHECK(e.reason == Verdict::Reason::EndOfTrace);

    // wrong direction for the label
    auto shape = sensor_trace(0);
    shape[0].action = Action::send_lbl("s", "R");
    auto sv = monitor_trace(obl, shape);
    CHECK(sv.index == 0);
    CHECK(sv.reason == Verdict::Reason::Shape);

    auto extra = sensor_trace(0);
    extra.push_back({60, Action::send_close("s")});
    auto xv = monitor_trace(obl, extra);
    CHECK(xv.index == 4);
    CHECK(xv.reason == Verdict::Reason::AfterClose);

    auto truncated = sensor_trace(0);
    truncated.pop_back();
    CHECK(monitor_trace(obl, truncated).reason == Verdict::Reason::EndOfTrace);

    // the label arrives before the obligation starts
    CHECK(monitor_trace(bme_obligation(10), sensor_trace(4)).index == 0);
}

TEST_CASE("value sorts are checked") {
    auto obl = bme_obligation();
    auto t = sensor_trace(0);
    t[2].action.value = Value::opaque("sort_temp", 2);
    auto v = monitor_trace(obl, t);
    CHECK(v.index == 2);
    CHECK(v.reason == Verdict::Reason::Shape);
}

TEST_CASE("perturbed sensor traces fail at the first event outside its window") {
    auto obl = bme_obligation();
    for (std::int64_t t1 : {0, 3}) {
        auto base = sensor_trace(t1);
        REQUIRE(first_out_of_window(base, 0) == -1);
        for (std::size_t idx : {2u, 3u}) {
            for (std::int64_t d = -5; d <= 5; ++d) {
                if (d == 0) continue;
                auto t = base;
                t[idx].time += d;
                int want = first_out_of_window(t, 0);
                auto v = monitor_trace(obl, t);
                if (want < 0) {
                    CHECK_MESSAGE(v.conforms(), "event " << idx << " shifted by " << d);
                } else {
                    CHECK_MESSAGE(!v.conforms(), "event " << idx << " shifted by " << d);
                    CHECK(v.index == static_cast<std::size_t>(want));
                    CHECK(v.reason == Verdict::Reason::Time);
                }
            }
        }
    }
}

TEST_CASE("sensor channels of whole-system runs conform") {
    for (std::uint64_t seed : {0u, 1u, 2u, 3u}) {
        auto prog = support::load("smart_home.tsl");
        for (std::int64_t start : {0, 7}) {
            for (auto& s : prog.systems) s.start = tillst::temporal::TimeExpr::init(start);
            auto ctx = make_context(prog, seed);
            for (const char* sys : {"main", "soft"}) {
                auto res = run_system(ctx, sys);
                REQUIRE(res.ok());
                for (const char* ch : {"s1", "s2"}) {
                    auto v = monitor_channel(bme_obligation(start), ch, res.trace);
                    CHECK_MESSAGE(v.conforms(), sys << " " << ch << ": " << v.str());
                }
            }
        }
    }
}

TEST_CASE("channel monitoring follows transmitted channels") {
    auto prog = support::load("p1_p2.tsl");
    auto ctx = make_context(prog);
    auto res = run_system(ctx, "run_p1");
    REQUIRE(res.ok());
    auto a = tillst::syntax::expand_type_refs(prog, prog.find_type("A")->type);
    CHECK(monitor_channel({a, 0, {}}, "x", res.trace).conforms());
    // shifting the reply on x breaks the exact ten-tick gap
    auto bent = res.trace;
    for (auto& e : bent)
        if (e.action.chan == "x" && e.action.kind == Action::Kind::SendChan) e.time += 1;
    std::stable_sort(bent.begin(), bent.end(), [](const TraceEvent& l, const TraceEvent& r) { return l.time < r.time; });
    auto v = monitor_channel({a, 0, {}}, "x", bent);
    CHECK_FALSE(v.conforms());
    CHECK(v.reason == Verdict::Reason::Time);
}

}
