#include "tillst/runtime/lts.hpp"

#include <algorithm>
#include <set>

#include "tillst/syntax/ops.hpp"

namespace tillst::runtime {

using AK = Action::Kind;
using CK = Configuration::Kind;
using PK = syntax::Process::Kind;
using SK = syntax::SessionType::Kind;
using syntax::Process;
using temporal::TimeExpr;

namespace {

std::int64_t closed_time(const TimeExpr& t) {
    try {
        return temporal::eval_closed(t);
    } catch (const temporal::NonClosedTime&) {
        throw Error("internal: open time " + temporal::to_string(t) + " reached at runtime");
    }
}

bool holds_at(const temporal::Prop& p, const temporal::TimeVar& t, std::int64_t now) {
    try {
        return temporal::eval_closed(temporal::subst(p, t, TimeExpr::init(now)));
    } catch (const temporal::NonClosedTime&) {
        throw Error("internal: provider predicate " + temporal::to_string(p) + " still open at runtime");
    }
}

ProcPtr at_time(const ProcPtr& p, const temporal::TimeVar& t, std::int64_t now) {
    return p ? syntax::subst_time_in_process(p, t, TimeExpr::init(now)) : p;
}

Configuration mk_proc(const RunContext& ctx, const Channel& a, ProcPtr p) {
    return Configuration::proc(a, settle(ctx, std::move(p)));
}

// Spawned body with the callee's parameters renamed to the supplied channels.
ProcPtr instantiate(const RunContext& ctx, const Process& p) {
    const syntax::ProcDecl* d = ctx.prog ? ctx.prog->find_proc(p.callee) : nullptr;
    if (!d) throw Error(p.pos.str() + ": spawn of unknown process '" + p.callee + "'");
    if (d->params.size() != p.args.size()) throw Error(p.pos.str() + ": spawn arity mismatch for '" + p.callee + "'");
    ProcPtr body = d->body;
    std::vector<std::string> tmp;
    for (std::size_t i = 0; i < d->params.size(); ++i) {
        tmp.push_back("%arg" + std::to_string(i));
        body = syntax::subst_chan(body, d->params[i].name, tmp.back());
    }
    for (std::size_t i = 0; i < tmp.size(); ++i) body = syntax::subst_chan(body, tmp[i], p.args[i]);
    return body;
}

Transition step(std::size_t i, Action a, bool provider) {
    Transition t;
    t.atom = i;
    t.action = std::move(a);
    t.provider = provider;
    return t;
}

void proc_transitions(const RunContext& ctx, const Configuration& m, std::size_t i, std::int64_t now,
                      std::vector<Transition>& out) {
    ProcPtr body = settle(ctx, m.body);
    const Process& p = *body;
    const Channel a = m.chan;

    if (syntax::is_provider_form(p.kind)) {
        if (!holds_at(p.pred, p.binder, now)) return;
        ProcPtr k1 = at_time(p.first, p.binder, now);
        ProcPtr k2 = at_time(p.second, p.binder, now);
        auto one = [&](ProcPtr k) {
            return [&ctx, a, k](const Action&, const Channel&) { return std::vector{mk_proc(ctx, a, k)}; };
        };
        switch (p.kind) {
            case PK::Close: {
                auto t = step(i, Action::send_close(a), true);
                t.apply = [](const Action&, const Channel&) { return std::vector<Configuration>{}; };
                out.push_back(std::move(t));
                break;
            }
            case PK::LamRecv: {
                auto t = step(i, Action::recv_chan(a, {}), true);
                t.open = true;
                std::string var = p.var;
                t.apply = [&ctx, a, k1, var](const Action& r, const Channel&) {
                    return std::vector{mk_proc(ctx, a, syntax::subst_chan(k1, var, r.arg))};
                };
                out.push_back(std::move(t));
                break;
            }
            case PK::PairSend: {
                auto t = step(i, Action::send_chan(a, {}), true);
                t.fresh = true;
                t.apply = [&ctx, a, k1, k2](const Action& r, const Channel&) {
                    return std::vector{mk_proc(ctx, r.arg, k1), mk_proc(ctx, a, k2)};
                };
                out.push_back(std::move(t));
                break;
            }
            case PK::InL:
            case PK::InR: {
                auto t = step(i, Action::send_lbl(a, p.kind == PK::InL ? "L" : "R"), true);
                t.apply = one(k1);
                out.push_back(std::move(t));
                break;
            }
            case PK::Offer: {
                auto l = step(i, Action::recv_lbl(a, "L"), true);
                l.apply = one(k1);
                out.push_back(std::move(l));
                auto r = step(i, Action::recv_lbl(a, "R"), true);
                r.apply = one(k2);
                out.push_back(std::move(r));
                break;
            }
            case PK::Prod: {
                auto t = step(i, Action::send_val(a, eval_expr(ctx, *p.expr)), true);
                t.apply = one(k1);
                out.push_back(std::move(t));
                break;
            }
            case PK::QueryRecv: {
                auto t = step(i, Action::recv_val(a, {}), true);
                t.open = true;
                std::string var = p.var;
                t.apply = [&ctx, a, k1, var](const Action& r, const Channel&) {
                    return std::vector{mk_proc(ctx, a, syntax::subst_val(k1, var, r.value))};
                };
                out.push_back(std::move(t));
                break;
            }
            default: break;
        }
        return;
    }

    if (closed_time(p.at) != now) return;
    ProcPtr k1 = p.first, k2 = p.second;
    auto one = [&](ProcPtr k) {
        return [&ctx, a, k](const Action&, const Channel&) { return std::vector{mk_proc(ctx, a, k)}; };
    };
    const Channel x = p.chan;
    switch (p.kind) {
        case PK::Wait: {
            auto t = step(i, Action::recv_close(x), false);
            t.apply = one(k1);
            out.push_back(std::move(t));
            break;
        }
        case PK::AppSend: {
            auto t = step(i, Action::send_chan(x, {}), false);
            t.fresh = true;
            t.apply = [&ctx, a, k1, k2](const Action& r, const Channel&) {
                return std::vector{mk_proc(ctx, r.arg, k1), mk_proc(ctx, a, k2)};
            };
            out.push_back(std::move(t));
            break;
        }
        case PK::PairRecv: {
            auto t = step(i, Action::recv_chan(x, {}), false);
            t.open = true;
            std::string var = p.var;
            t.apply = [&ctx, a, k1, var](const Action& r, const Channel&) {
                return std::vector{mk_proc(ctx, a, syntax::subst_chan(k1, var, r.arg))};
            };
            out.push_back(std::move(t));
            break;
        }
        case PK::Case: {
            auto t = step(i, Action::recv_lbl(x, {}), false);
            t.open = true;
            t.apply = [&ctx, a, k1, k2](const Action& r, const Channel&) {
                return std::vector{mk_proc(ctx, a, r.arg == "L" ? k1 : k2)};
            };
            out.push_back(std::move(t));
            break;
        }
        case PK::SelectL:
        case PK::SelectR: {
            auto t = step(i, Action::send_lbl(x, p.kind == PK::SelectL ? "L" : "R"), false);
            t.apply = one(k1);
            out.push_back(std::move(t));
            break;
        }
        case PK::Cons: {
            auto t = step(i, Action::recv_val(x, {}), false);
            t.open = true;
            std::string var = p.var;
            t.apply = [&ctx, a, k1, var](const Action& r, const Channel&) {
                return std::vector{mk_proc(ctx, a, syntax::subst_val(k1, var, r.value))};
            };
            out.push_back(std::move(t));
            break;
        }
        case PK::Supply: {
            auto t = step(i, Action::send_val(x, eval_expr(ctx, *p.expr)), false);
            t.apply = one(k1);
            out.push_back(std::move(t));
            break;
        }
        case PK::Fwd: {
            auto t = step(i, Action::silent(a, "fwd:" + x), false);
            t.apply = [a, x](const Action&, const Channel&) { return std::vector{Configuration::fwd(a, x)}; };
            out.push_back(std::move(t));
            break;
        }
        case PK::Spawn: {
            auto t = step(i, Action::silent(a, "spawn:" + p.callee), false);
            t.fresh = true;
            ProcPtr callee = instantiate(ctx, p);
            std::string var = p.var;
            t.apply = [&ctx, a, k1, var, callee](const Action&, const Channel& c) {
                return std::vector{mk_proc(ctx, c, callee), mk_proc(ctx, a, syntax::subst_chan(k1, var, c))};
            };
            out.push_back(std::move(t));
            break;
        }
        default: break;
    }
}

void automaton_steps(const RunContext& ctx, const Configuration& m, std::size_t i, std::int64_t now,
                     std::vector<Transition>& out) {
    auto it = ctx.automata.find(m.machine);
    if (it == ctx.automata.end()) throw Error("unknown automaton '" + m.machine + "'");
    using TK = syntax::ActionTemplate::Kind;
    const Channel a = m.chan;
    for (const auto& en : automata::automaton_transitions(it->second, m.state, m.entry, now)) {
        Transition t;
        t.atom = i;
        t.provider = true;
        switch (en.action.kind) {
            case TK::RecvL: t.action = Action::recv_lbl(a, "L"); break;
            case TK::RecvR: t.action = Action::recv_lbl(a, "R"); break;
            case TK::SendL: t.action = Action::send_lbl(a, "L"); break;
            case TK::SendR: t.action = Action::send_lbl(a, "R"); break;
            case TK::SendVal: t.action = Action::send_val(a, extern_value(ctx, en.action.extern_fn, {})); break;
            case TK::RecvVal: t.action = Action::recv_val(a, {}); t.open = true; break;
            case TK::SendClose: t.action = Action::send_close(a); break;
            case TK::RecvClose: t.action = Action::recv_close(a); break;
            case TK::RecvChan: t.action = Action::recv_chan(a, {}); t.open = true; break;
            case TK::SendChan: continue;  // an automaton has no process to hand over
        }
        std::string machine = m.machine, next = en.next;
        t.apply = [a, machine, next, now](const Action&, const Channel&) {
            if (next == syntax::kAcceptState) return std::vector<Configuration>{};
            return std::vector{Configuration::automaton(a, machine, next, now)};
        };
        out.push_back(std::move(t));
    }
}

ObserverState advance(const ObserverState& s, const syntax::TypePtr& part, std::int64_t now,
                      std::size_t drop_supplies = 0) {
    ObserverState n;
    n.type = syntax::subst_time(part, s.type->binder, TimeExpr::init(now));
    n.since = now;
    n.supplies.assign(s.supplies.begin() + static_cast<std::ptrdiff_t>(drop_supplies), s.supplies.end());
    return n;
}

void observer_steps(const Configuration& m, std::size_t i, std::int64_t now, std::vector<Transition>& out) {
    const ObserverState& s = *m.obs;
    if (!s.type) return;
    auto nt = observer_next_time(s);
    if (!nt || *nt != now) return;
    const auto& ty = *s.type;
    const Channel x = m.chan;
    auto st = m.obs;
    Transition t;
    t.atom = i;
    switch (ty.kind) {
        case SK::Unit:
            t.action = Action::recv_close(x);
            t.apply = [](const Action&, const Channel&) { return std::vector<Configuration>{}; };
            break;
        case SK::Lolli: {
            if (s.supplies.empty()) throw Error("harness of '" + x + "' has no channel to pass on");
            t.action = Action::send_chan(x, s.supplies.front());
            t.apply = [x, st, now](const Action&, const Channel&) {
                return std::vector{Configuration::observer(x, advance(*st, st->type->parts[1], now, 1))};
            };
            break;
        }
        case SK::Tensor:
            t.action = Action::recv_chan(x, {});
            t.open = true;
            t.apply = [x, st, now](const Action& r, const Channel&) {
                ObserverState sub = advance(*st, st->type->parts[0], now);
                sub.supplies.clear();
                return std::vector{Configuration::observer(x, advance(*st, st->type->parts[1], now)),
                                   Configuration::observer(r.arg, std::move(sub))};
            };
            break;
        case SK::InChoice:
            t.action = Action::recv_lbl(x, {});
            t.open = true;
            t.apply = [x, st, now](const Action& r, const Channel&) {
                return std::vector{Configuration::observer(x, advance(*st, st->type->parts[r.arg == "L" ? 0 : 1], now))};
            };
            break;
        case SK::ExChoice:
            t.action = Action::send_lbl(x, "L");
            t.apply = [x, st, now](const Action&, const Channel&) {
                return std::vector{Configuration::observer(x, advance(*st, st->type->parts[0], now))};
            };
            break;
        case SK::Produce:
            t.action = Action::recv_val(x, {});
            t.open = true;
            t.apply = [x, st, now](const Action&, const Channel&) {
                return std::vector{Configuration::observer(x, advance(*st, st->type->parts[0], now))};
            };
            break;
        case SK::Request:
            t.action = Action::send_val(x, default_value(ty.payload));
            t.apply = [x, st, now](const Action&, const Channel&) {
                return std::vector{Configuration::observer(x, advance(*st, st->type->parts[0], now))};
            };
            break;
        case SK::Ref: throw Error("internal: unexpanded type reference in harness");
    }
    out.push_back(std::move(t));
}

AK client_kind(PK k) {
    switch (k) {
        case PK::Wait: return AK::RecvClose;
        case PK::AppSend: return AK::SendChan;
        case PK::PairRecv: return AK::RecvChan;
        case PK::Case: return AK::RecvLbl;
        case PK::SelectL:
        case PK::SelectR: return AK::SendLbl;
        case PK::Cons: return AK::RecvVal;
        case PK::Supply: return AK::SendVal;
        default: return AK::Silent;
    }
}

AK observer_kind(SK k) {
    switch (k) {
        case SK::Unit: return AK::RecvClose;
        case SK::Lolli: return AK::SendChan;
        case SK::Tensor: return AK::RecvChan;
        case SK::InChoice: return AK::RecvLbl;
        case SK::ExChoice: return AK::SendLbl;
        case SK::Produce: return AK::RecvVal;
        case SK::Request: return AK::SendVal;
        default: return AK::Silent;
    }
}

void collect_times(const temporal::TimeExpr& e, const temporal::TimeVar& t, std::int64_t& k, bool& has_t,
                   std::int64_t& c) {
    if (e.base() && *e.base() == t) {
        has_t = true;
        k = e.offset();
    } else {
        c = temporal::eval_closed(e);
    }
}

void candidates(const temporal::Prop& p, const temporal::TimeVar& t, std::set<std::int64_t>& out) {
    using PKind = temporal::Prop::Kind;
    switch (p.kind()) {
        case PKind::Top:
        case PKind::Bot: return;
        case PKind::And:
        case PKind::Or:
        case PKind::Imp:
            candidates(p.left(), t, out);
            candidates(p.right(), t, out);
            return;
        case PKind::Eq:
        case PKind::Leq: {
            std::int64_t k1 = 0, k2 = 0, c1 = 0, c2 = 0;
            bool t1 = false, t2 = false;
            collect_times(p.lhs(), t, k1, t1, c1);
            collect_times(p.rhs(), t, k2, t2, c2);
            if (t1 && !t2) {
                out.insert(c2 - k1);
                out.insert(c2 - k1 + 1);
            } else if (t2 && !t1) {
                out.insert(c1 - k2);
                out.insert(c1 - k2 + 1);
            }
            return;
        }
    }
}

}  // namespace

std::vector<Transition> member_transitions(const RunContext& ctx, const Configuration& m, std::size_t index,
                                           std::int64_t now) {
    std::vector<Transition> out;
    switch (m.kind) {
        case CK::Proc: proc_transitions(ctx, m, index, now, out); break;
        case CK::Automaton: automaton_steps(ctx, m, index, now, out); break;
        case CK::Observer: observer_steps(m, index, now, out); break;
        default: break;
    }
    return out;
}

std::vector<Transition> enumerate_transitions(const RunContext& ctx, const Configuration& omega, std::int64_t now) {
    std::vector<Transition> out;
    auto ms = atoms(omega);
    for (std::size_t i = 0; i < ms.size(); ++i) {
        auto ts = member_transitions(ctx, ms[i], i, now);
        for (auto& t : ts) out.push_back(std::move(t));
    }
    return out;
}

Configuration after(const Configuration& omega, const Transition& t, const Action& resolved, const Channel& fresh) {
    auto ms = atoms(omega);
    std::vector<Configuration> out;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (i == t.atom) {
            for (auto& c : t.apply(resolved, fresh)) out.push_back(std::move(c));
        } else {
            out.push_back(ms[i]);
        }
    }
    return Configuration::par(std::move(out));
}

bool Redex::needs_fresh() const { return first.fresh || (second && second->fresh); }

std::vector<Redex> redexes(const RunContext& ctx, const Configuration& omega, std::int64_t now) {
    auto ts = enumerate_transitions(ctx, omega, now);
    std::vector<Redex> out;
    for (const auto& t : ts) {
        if (t.action.kind == AK::Silent) out.push_back({t.action.chan, t, std::nullopt});
    }
    for (const auto& p : ts) {
        if (!p.provider) continue;
        for (const auto& c : ts) {
            if (c.provider || c.atom == p.atom || c.action.chan != p.action.chan) continue;
            if (c.action.kind != complementary(p.action).kind) continue;
            const Transition& s = p.action.is_send() ? p : c;
            const Transition& r = p.action.is_send() ? c : p;
            if (!r.open && !s.fresh && s.action.arg != r.action.arg) continue;
            out.push_back({p.action.chan, p, c});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Redex& a, const Redex& b) { return a.key < b.key; });
    return out;
}

Reduction fire(const Configuration& omega, const Redex& r, std::int64_t now, const Channel& fresh) {
    auto ms = atoms(omega);
    std::vector<Configuration> out;
    TraceEvent ev{now, r.first.action};
    std::vector<Configuration> made;
    if (!r.second) {
        for (auto& c : r.first.apply(r.first.action, fresh)) made.push_back(std::move(c));
    } else {
        const Transition& p = r.first;
        const Transition& c = *r.second;
        const Transition& s = p.action.is_send() ? p : c;
        Action payload = s.action;
        if (s.fresh) payload.arg = fresh;
        Action pa = p.action, ca = c.action;
        pa.arg = ca.arg = payload.arg;
        pa.value = ca.value = payload.value;
        ev.action = pa;
        for (auto& x : p.apply(pa, fresh)) made.push_back(std::move(x));
        for (auto& x : c.apply(ca, fresh)) made.push_back(std::move(x));
    }
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (i == r.first.atom || (r.second && i == r.second->atom)) continue;
        out.push_back(ms[i]);
    }
    for (auto& c : made) out.push_back(std::move(c));
    return {congruence_normalize(Configuration::par(std::move(out))), ev};
}

std::vector<Reduction> comm_step(const RunContext& ctx, const Configuration& omega, std::int64_t now,
                                 const FreshFn& fresh) {
    std::vector<Reduction> out;
    for (const auto& r : redexes(ctx, omega, now)) out.push_back(fire(omega, r, now, r.needs_fresh() ? fresh() : ""));
    return out;
}

std::optional<std::int64_t> observer_next_time(const ObserverState& s) {
    if (!s.type) return std::nullopt;
    const auto& ty = *s.type;
    std::set<std::int64_t> cs{s.since};
    candidates(ty.pred, ty.binder, cs);
    for (auto c : cs) {
        if (c >= s.since && holds_at(ty.pred, ty.binder, c)) return c;
    }
    return std::nullopt;
}

std::optional<Due> due_client(const RunContext& ctx, const Configuration& m, std::int64_t now) {
    if (m.kind == CK::Observer) {
        if (!m.obs->type) return std::nullopt;
        auto nt = observer_next_time(*m.obs);
        if (nt && *nt == now) return Due{m.chan, now, observer_kind(m.obs->type->kind)};
        return std::nullopt;
    }
    if (m.kind != CK::Proc) return std::nullopt;
    ProcPtr body = settle(ctx, m.body);
    if (!syntax::is_client_form(body->kind) || closed_time(body->at) != now) return std::nullopt;
    return Due{body->chan, now, client_kind(body->kind)};
}

std::vector<std::int64_t> pending_instants(const RunContext& ctx, const Configuration& omega, std::int64_t now) {
    std::set<std::int64_t> out;
    for (const auto& m : atoms(omega)) {
        if (m.kind == CK::Proc) {
            ProcPtr body = settle(ctx, m.body);
            if (syntax::is_client_form(body->kind) || body->kind == PK::Fwd || body->kind == PK::Spawn) {
                auto t = closed_time(body->at);
                if (t > now) out.insert(t);
            }
        } else if (m.kind == CK::Observer) {
            auto nt = observer_next_time(*m.obs);
            if (nt && *nt > now) out.insert(*nt);
        } else if (m.kind == CK::Automaton) {
            auto it = ctx.automata.find(m.machine);
            if (it == ctx.automata.end()) continue;
            for (auto t : automata::guard_releases(it->second, m.state, m.entry))
                if (t > now) out.insert(t);
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace tillst::runtime
