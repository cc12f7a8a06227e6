#include "tillst/runtime/scheduler.hpp"

#include <map>
#include <set>
#include <sstream>

#include "tillst/syntax/ops.hpp"

namespace tillst::runtime {

using AK = Action::Kind;
using CK = Configuration::Kind;
using PK = syntax::Process::Kind;
using TK = syntax::ActionTemplate::Kind;

const char* to_string(RunFailure::Kind k) {
    switch (k) {
        case RunFailure::Kind::TimingViolation: return "TimingViolation";
        case RunFailure::Kind::Deadlock: return "Deadlock";
        case RunFailure::Kind::StepLimit: return "StepLimit";
    }
    return "?";
}

std::string RunFailure::message() const {
    std::ostringstream os;
    os << to_string(kind) << " at t0+" << time;
    if (kind == Kind::TimingViolation) {
        os << ": client of '" << channel << "' due at t0+" << client_time;
        if (provider_predicate.empty()) {
            os << " finds no provider";
        } else {
            os << " but the provider requires " << provider_predicate << " (" << counterexample << ")";
        }
    } else if (kind == Kind::Deadlock) {
        os << ": no step possible and nothing pending";
        for (const auto& p : pending) os << "\n    " << p;
    } else {
        os << ": step budget exhausted";
    }
    return os.str();
}

namespace {

AK provider_kind(PK k) {
    switch (k) {
        case PK::Close: return AK::SendClose;
        case PK::LamRecv: return AK::RecvChan;
        case PK::PairSend: return AK::SendChan;
        case PK::InL:
        case PK::InR: return AK::SendLbl;
        case PK::Offer: return AK::RecvLbl;
        case PK::Prod: return AK::SendVal;
        case PK::QueryRecv: return AK::RecvVal;
        default: return AK::Silent;
    }
}

AK template_kind(TK k) {
    switch (k) {
        case TK::RecvL:
        case TK::RecvR: return AK::RecvLbl;
        case TK::SendL:
        case TK::SendR: return AK::SendLbl;
        case TK::SendVal: return AK::SendVal;
        case TK::RecvVal: return AK::RecvVal;
        case TK::SendClose: return AK::SendClose;
        case TK::RecvClose: return AK::RecvClose;
        case TK::SendChan: return AK::SendChan;
        case TK::RecvChan: return AK::RecvChan;
    }
    return AK::Silent;
}

// A due client that did not fire: a violation if its provider is missing or
// sits at the matching form with a false condition. Busy providers are not.
std::optional<RunFailure> check_due(const RunContext& ctx, const std::vector<Configuration>& ms, const Due& d) {
    RunFailure f;
    f.kind = RunFailure::Kind::TimingViolation;
    f.time = d.time;
    f.channel = d.chan;
    f.client_time = d.time;
    AK want = complementary(Action{d.kind, {}, {}, {}}).kind;
    for (const auto& m : ms) {
        if (m.chan != d.chan) continue;
        if (m.kind == CK::Proc) {
            auto body = settle(ctx, m.body);
            if (!syntax::is_provider_form(body->kind) || provider_kind(body->kind) != want) return std::nullopt;
            auto inst = temporal::subst(body->pred, body->binder, temporal::TimeExpr::init(d.time));
            if (temporal::eval_closed(inst)) return std::nullopt;
            f.provider_predicate = temporal::to_string(body->pred);
            f.counterexample = body->binder.name + " = t0+" + std::to_string(d.time);
            return f;
        }
        if (m.kind == CK::Automaton) {
            auto it = ctx.automata.find(m.machine);
            if (it == ctx.automata.end()) return std::nullopt;
            for (const auto& tr : it->second.transitions) {
                if (tr.from != m.state || template_kind(tr.action.kind) != want) continue;
                if (m.entry + tr.guard > d.time) {
                    f.provider_predicate = "t0+" + std::to_string(m.entry + tr.guard) + " <= t";
                    f.counterexample = "t = t0+" + std::to_string(d.time);
                    return f;
                }
            }
            return std::nullopt;
        }
    }
    return f;
}

}  // namespace

RunResult run_scheduler(const RunContext& ctx, const Configuration& omega, std::int64_t start,
                        const RunOptions& opts) {
    const std::int64_t horizon = opts.horizon.value_or(start + kDefaultHorizon);
    std::size_t counter = 0;
    auto fresh = [&] { return opts.fresh_prefix + std::to_string(++counter); };

    RunResult res;
    Configuration cur = congruence_normalize(omega);
    res.sigma = StepSequence::refl(start, cur);
    std::int64_t now = start;
    std::size_t steps = 0;

    while (now < horizon) {
        while (true) {
            auto rs = redexes(ctx, cur, now);
            if (rs.empty()) break;
            std::size_t k = opts.choose ? opts.choose(rs) : 0;
            const Redex& r = rs.at(k);
            auto red = fire(cur, r, now, r.needs_fresh() ? fresh() : Channel());
            cur = red.result;
            res.sigma.step_c(cur);
            res.trace.push_back(red.event);
            if (++steps > opts.max_steps) {
                res.failure = RunFailure{RunFailure::Kind::StepLimit, now, {}, 0, {}, {}, {}};
                res.final_config = cur;
                return res;
            }
        }
        if (cur.is_stop()) break;

        auto ms = atoms(cur);
        for (const auto& m : ms) {
            auto d = due_client(ctx, m, now);
            if (!d) continue;
            if (auto f = check_due(ctx, ms, *d)) {
                res.failure = *f;
                res.final_config = cur;
                return res;
            }
        }

        auto pend = pending_instants(ctx, cur, now);
        if (pend.empty()) {
            RunFailure f;
            f.kind = RunFailure::Kind::Deadlock;
            f.time = now;
            for (const auto& m : ms) f.pending.push_back(to_string(m));
            res.failure = f;
            res.final_config = cur;
            return res;
        }
        std::int64_t next = pend.front();
        if (next >= horizon) {
            res.sigma.step_t(horizon);
            res.reached_horizon = true;
            break;
        }
        res.sigma.step_t(next);
        now = next;
    }
    if (now >= horizon && !cur.is_stop()) res.reached_horizon = true;
    res.final_config = cur;
    return res;
}

Configuration harness(const Channel& chan, const syntax::TypePtr& type, std::int64_t start,
                      std::vector<Channel> supplies) {
    return Configuration::observer(chan, ObserverState{type, start, std::move(supplies)});
}

BuiltSystem build_system(const RunContext& ctx, const syntax::SystemDecl& sys, const RunOptions& opts) {
    if (!ctx.prog) throw SystemError("no program");
    const auto& prog = *ctx.prog;
    const syntax::ProcDecl* root = prog.find_proc(sys.root);
    if (!root) throw SystemError("system '" + sys.name + "': unknown root process '" + sys.root + "'");

    BuiltSystem out;
    out.start = temporal::eval_closed(sys.start);
    out.root = opts.channel_prefix + root->name;

    std::set<std::string> params;
    for (const auto& p : root->params) params.insert(p.name);
    std::map<std::string, Channel> bound;
    std::vector<Channel> supplies;
    std::set<Channel> used{out.root};
    std::vector<Configuration> members;

    for (const auto& a : sys.args) {
        Channel alias = opts.channel_prefix + (a.alias.empty() ? a.label : a.alias);
        if (!used.insert(alias).second)
            throw SystemError("system '" + sys.name + "': channel '" + alias + "' used twice");
        if (ctx.automata.count(a.component)) {
            const auto& def = ctx.automata.at(a.component);
            members.push_back(Configuration::automaton(alias, def.name, def.initial, out.start));
        } else if (const syntax::ProcDecl* d = prog.find_proc(a.component)) {
            if (!d->params.empty())
                throw SystemError("system '" + sys.name + "': component '" + d->name + "' takes parameters");
            members.push_back(Configuration::proc(alias, settle(ctx, d->body)));
        } else {
            throw SystemError("system '" + sys.name + "': unknown component '" + a.component + "'");
        }
        if (params.count(a.label)) {
            if (bound.count(a.label)) throw SystemError("system '" + sys.name + "': '" + a.label + "' bound twice");
            bound[a.label] = alias;
        } else {
            supplies.push_back(alias);
        }
    }

    syntax::ProcPtr body = root->body;
    for (std::size_t i = 0; i < root->params.size(); ++i) {
        const auto& p = root->params[i];
        if (!bound.count(p.name))
            throw SystemError("system '" + sys.name + "': parameter '" + p.name + "' of '" + root->name +
                              "' is not bound");
        body = syntax::subst_chan(body, p.name, "%param" + std::to_string(i));
    }
    for (std::size_t i = 0; i < root->params.size(); ++i)
        body = syntax::subst_chan(body, "%param" + std::to_string(i), bound.at(root->params[i].name));

    members.push_back(Configuration::proc(out.root, settle(ctx, body)));
    members.push_back(harness(out.root, syntax::expand_type_refs(prog, root->offered), out.start, supplies));
    out.config = congruence_normalize(Configuration::par(std::move(members)));
    return out;
}

RunResult run_system(const RunContext& ctx, const std::string& name, const RunOptions& opts) {
    const syntax::SystemDecl* sys = ctx.prog ? ctx.prog->find_system(name) : nullptr;
    if (!sys) throw SystemError("unknown system '" + name + "'");
    auto built = build_system(ctx, *sys, opts);
    return run_scheduler(ctx, built.config, built.start, opts);
}

}  // namespace tillst::runtime
