#include "tillst/automata/automaton.hpp"

namespace tillst::automata {

using K = ActionTemplate::Kind;

AutomatonDef builtin_bme680() {
    auto t = [](std::string from, std::int64_t guard, ActionTemplate act, std::string to) {
        return Transition{std::move(from), guard, std::move(act), std::move(to)};
    };
    AutomatonDef a;
    a.name = "bme680";
    a.states = {"S0", "S1", "S2", "S3", "S4", "S5"};
    a.initial = "S0";
    a.transitions = {
        t("S0", 0, {K::RecvL, {}}, "S1"),
        t("S0", 0, {K::RecvR, {}}, "S2"),
        t("S1", 0, {K::SendVal, "read_temp"}, "S3"),
        t("S3", 0, {K::SendClose, {}}, syntax::kAcceptState),
        t("S2", 0, {K::SendVal, "read_temp"}, "S4"),
        t("S4", 30, {K::SendVal, "read_gas"}, "S5"),
        t("S5", 20, {K::SendClose, {}}, syntax::kAcceptState),
    };
    return a;
}

std::vector<Enabled> automaton_transitions(const AutomatonDef& a, const std::string& state, std::int64_t entry,
                                           std::int64_t now) {
    std::vector<Enabled> out;
    if (state == syntax::kAcceptState) return out;
    for (const auto& tr : a.transitions) {
        if (tr.from == state && entry + tr.guard <= now) out.push_back({tr.action, tr.to});
    }
    return out;
}

std::vector<std::int64_t> guard_releases(const AutomatonDef& a, const std::string& state, std::int64_t entry) {
    std::set<std::int64_t> out;
    for (const auto& tr : a.transitions) {
        if (tr.from == state && tr.guard > 0) out.insert(entry + tr.guard);
    }
    return {out.begin(), out.end()};
}

AutomatonDef from_decl(const syntax::AutomatonDecl& d) {
    AutomatonDef a;
    a.name = d.name;
    a.initial = d.initial;
    for (const auto& s : d.states) {
        if (s == syntax::kAcceptState) throw AutomatonError(d.name + ": 'accept' is implicit and cannot be declared");
        if (!a.states.insert(s).second) throw AutomatonError(d.name + ": duplicate state '" + s + "'");
    }
    if (!a.states.count(a.initial)) throw AutomatonError(d.name + ": initial state '" + a.initial + "' not declared");
    for (const auto& tr : d.transitions) {
        if (!a.states.count(tr.from))
            throw AutomatonError(d.name + " " + tr.pos.str() + ": unknown source state '" + tr.from + "'");
        if (tr.to != syntax::kAcceptState && !a.states.count(tr.to))
            throw AutomatonError(d.name + " " + tr.pos.str() + ": unknown target state '" + tr.to + "'");
        if (tr.guard < 0) throw AutomatonError(d.name + " " + tr.pos.str() + ": negative guard");
        a.transitions.push_back({tr.from, tr.guard, tr.action, tr.to});
    }
    return a;
}

std::map<std::string, AutomatonDef> load_automata(const syntax::Program& prog) {
    std::map<std::string, AutomatonDef> out;
    for (const auto& d : prog.automata) {
        if (out.count(d.name)) throw AutomatonError("duplicate automaton '" + d.name + "'");
        out.emplace(d.name, from_decl(d));
    }
    return out;
}

}  // namespace tillst::automata
