#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tillst/syntax/ast.hpp"

namespace tillst::automata {

using syntax::ActionTemplate;

class AutomatonError : public Error {
public:
    using Error::Error;
};

struct Transition {
    std::string from;
    std::int64_t guard = 0;  // enabled once entry + guard <= now
    ActionTemplate action;
    std::string to;          // a state or syntax::kAcceptState

    bool operator==(const Transition&) const = default;
};

// A single-clock machine offering one channel. The clock is reset on entry
// to every state.
struct AutomatonDef {
    std::string name;
    std::set<std::string> states;
    std::string initial;
    std::vector<Transition> transitions;

    bool operator==(const AutomatonDef&) const = default;
};

// The BME680 gas/temperature sensor. Value payloads come from the externs
// read_temp and read_gas.
AutomatonDef builtin_bme680();

struct Enabled {
    ActionTemplate action;
    std::string next;
};

std::vector<Enabled> automaton_transitions(const AutomatonDef& a, const std::string& state, std::int64_t entry,
                                           std::int64_t now);

// Earliest instants after `entry` at which a transition out of `state` becomes enabled.
std::vector<std::int64_t> guard_releases(const AutomatonDef& a, const std::string& state, std::int64_t entry);

AutomatonDef from_decl(const syntax::AutomatonDecl& d);
std::map<std::string, AutomatonDef> load_automata(const syntax::Program& prog);

}  // namespace tillst::automata
