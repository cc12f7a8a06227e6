#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tillst/runtime/config.hpp"
#include "tillst/runtime/eval.hpp"
#include "tillst/runtime/trace.hpp"

namespace tillst::runtime {

// A labelled step of one member of a configuration. Receives are open: the
// partner supplies the channel, label or value. Channel sends marked fresh get
// their name when the step fires; `apply` also receives that name for spawns.
struct Transition {
    std::size_t atom = 0;  // index into atoms(omega)
    Action action;
    bool open = false;
    bool fresh = false;
    bool provider = false;  // taken by the provider of action.chan
    std::function<std::vector<Configuration>(const Action&, const Channel&)> apply;
};

std::vector<Transition> enumerate_transitions(const RunContext& ctx, const Configuration& omega, std::int64_t now);
std::vector<Transition> member_transitions(const RunContext& ctx, const Configuration& member, std::size_t index,
                                           std::int64_t now);

// Configuration after `t` fires with its payload filled in.
Configuration after(const Configuration& omega, const Transition& t, const Action& resolved,
                    const Channel& fresh = {});

// A silent reduction: a matched pair, or a lone forward or spawn.
struct Redex {
    Channel key;
    Transition first;                  // the provider for pairs
    std::optional<Transition> second;  // the client
    bool needs_fresh() const;
};

std::vector<Redex> redexes(const RunContext& ctx, const Configuration& omega, std::int64_t now);

struct Reduction {
    Configuration result;
    TraceEvent event;
};

// `fresh` is used only when the redex transmits a new channel.
Reduction fire(const Configuration& omega, const Redex& r, std::int64_t now, const Channel& fresh);

using FreshFn = std::function<Channel()>;
std::vector<Reduction> comm_step(const RunContext& ctx, const Configuration& omega, std::int64_t now,
                                 const FreshFn& fresh);

// ---- harness

// Earliest instant at or after the last exchange satisfying the next binder's predicate.
std::optional<std::int64_t> observer_next_time(const ObserverState& s);

// The client-visible deadline of a member at `now`, if it is a client form or
// harness due exactly then.
struct Due {
    Channel chan;
    std::int64_t time = 0;
    Action::Kind kind = Action::Kind::Silent;  // the client's action
};
std::optional<Due> due_client(const RunContext& ctx, const Configuration& member, std::int64_t now);

// Instants strictly after `now` at which some member may act.
std::vector<std::int64_t> pending_instants(const RunContext& ctx, const Configuration& omega, std::int64_t now);

}  // namespace tillst::runtime
