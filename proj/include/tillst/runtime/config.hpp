#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tillst/syntax/ast.hpp"

namespace tillst::runtime {

using syntax::ProcPtr;
using syntax::TypePtr;
using syntax::Value;

using Channel = std::string;

struct Action {
    enum class Kind { Silent, SendChan, RecvChan, SendLbl, RecvLbl, SendClose, RecvClose, SendVal, RecvVal };

    Kind kind = Kind::Silent;
    Channel chan;
    std::string arg;  // transmitted channel, label "L"/"R", or the silent step's note
    Value value;      // SendVal/RecvVal

    static Action silent(Channel a, std::string note = {}) { return {Kind::Silent, std::move(a), std::move(note), {}}; }
    static Action send_chan(Channel a, Channel b) { return {Kind::SendChan, std::move(a), std::move(b), {}}; }
    static Action recv_chan(Channel a, Channel b) { return {Kind::RecvChan, std::move(a), std::move(b), {}}; }
    static Action send_lbl(Channel a, std::string l) { return {Kind::SendLbl, std::move(a), std::move(l), {}}; }
    static Action recv_lbl(Channel a, std::string l) { return {Kind::RecvLbl, std::move(a), std::move(l), {}}; }
    static Action send_close(Channel a) { return {Kind::SendClose, std::move(a), {}, {}}; }
    static Action recv_close(Channel a) { return {Kind::RecvClose, std::move(a), {}, {}}; }
    static Action send_val(Channel a, Value v) { return {Kind::SendVal, std::move(a), {}, std::move(v)}; }
    static Action recv_val(Channel a, Value v) { return {Kind::RecvVal, std::move(a), {}, std::move(v)}; }

    bool is_send() const;
    bool is_recv() const;

    bool operator==(const Action&) const = default;
};

Action complementary(const Action& a);
std::string to_string(const Action& a);

// What a harness still expects from the channel it is a client of.
struct ObserverState {
    TypePtr type;                    // remaining protocol, earlier binders already substituted
    std::int64_t since = 0;          // time of the last exchange
    std::vector<Channel> supplies;   // channels to hand over on successive Lolli layers
};

struct Configuration {
    enum class Kind { Stop, Proc, FwdNode, Par, Automaton, Observer };

    Kind kind = Kind::Stop;
    Channel chan;    // provided channel; the client side for Observer
    Channel target;  // FwdNode: the channel whose provider takes over `chan`
    ProcPtr body;
    std::string machine, state;
    std::int64_t entry = 0;
    std::shared_ptr<const ObserverState> obs;
    std::vector<Configuration> kids;

    static Configuration stop() { return {}; }
    static Configuration proc(Channel a, ProcPtr p);
    static Configuration fwd(Channel provider, Channel client);
    static Configuration par(std::vector<Configuration> kids);
    static Configuration par(Configuration a, Configuration b);
    static Configuration automaton(Channel a, std::string machine, std::string state, std::int64_t entry);
    static Configuration observer(Channel a, ObserverState s);

    bool is_stop() const { return kind == Kind::Stop || (kind == Kind::Par && kids.empty()); }
};

// Flattened non-Par members.
std::vector<Configuration> atoms(const Configuration& c);

// Drops Stop and finished harnesses, merges forwards into their targets,
// flattens and sorts by channel. Idempotent.
Configuration congruence_normalize(const Configuration& c);

// Structural equality, process bodies compared modulo source positions.
bool same_config(const Configuration& a, const Configuration& b);
bool equivalent(const Configuration& a, const Configuration& b);

// Every channel name occurring anywhere in the configuration.
std::set<Channel> channel_names(const Configuration& c);
// Channels provided by Proc and Automaton members; duplicates are kept.
std::vector<Channel> providers(const Configuration& c);
bool providers_distinct(const Configuration& c);

std::string to_string(const Configuration& c);

}  // namespace tillst::runtime
