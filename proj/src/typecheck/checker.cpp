#include "tillst/typecheck/checker.hpp"

#include <algorithm>
#include <sstream>

#include "tillst/syntax/ops.hpp"
#include "tillst/syntax/printer.hpp"

namespace tillst::typecheck {

using syntax::Process;
using K = syntax::Process::Kind;
using TK = syntax::SessionType::Kind;

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::TimingViolation: return "TimingViolation";
        case ErrorKind::PredicateUnsatisfied: return "PredicateUnsatisfied";
        case ErrorKind::LinearityViolation: return "LinearityViolation";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::RetypeFailure: return "RetypeFailure";
        case ErrorKind::ExprTypeError: return "ExprTypeError";
        case ErrorKind::UnresolvedReference: return "UnresolvedReference";
    }
    return "?";
}

namespace {

std::string render_assignment(const Assignment& a) {
    std::string s;
    for (const auto& [v, n] : a) {
        if (!s.empty()) s += ", ";
        s += v.name + " = " + (n >= 0 ? "t0+" : "t0") + std::to_string(n);
    }
    return s.empty() ? "(no variables)" : s;
}

}  // namespace

TypingError::TypingError(ErrorKind k, SourcePos p, std::string j, std::string d, std::optional<Assignment> cex)
    : Error(std::string(to_string(k)) + ": " + d),
      kind(k),
      pos(p),
      judgment(std::move(j)),
      detail(std::move(d)),
      counterexample(std::move(cex)) {}

std::string TypingError::render() const {
    std::ostringstream o;
    o << to_string(kind);
    if (pos.known()) o << " at " << pos.str();
    o << ": " << detail;
    if (!judgment.empty()) o << "\n    judgment: " << judgment;
    if (counterexample) o << "\n    counterexample: " << render_assignment(*counterexample);
    return o.str();
}

std::string render_entailment(const TimeCtx& g, const PropCtx& f, const Prop& p) {
    std::string s;
    for (const auto& v : g) s += (s.empty() ? "" : ", ") + v.name;
    s += "; ";
    std::string fs;
    for (const auto& q : f) fs += (fs.empty() ? "" : ", ") + temporal::to_string(q);
    s += fs.empty() ? "." : fs;
    return s + " |- " + temporal::to_string(p);
}

Checker::Checker(const syntax::Program& prog, temporal::EntailmentBackend& backend, std::vector<Query>* log)
    : prog_(prog), backend_(backend), internal_(backend.name() == "internal"), log_(log) {}

TypePtr Checker::expand(const TypePtr& a) const { return syntax::expand_type_refs(prog_, a); }

bool Checker::ask(const TimeCtx& g, const PropCtx& f, const Prop& p, SourcePos pos, const char* rule) {
    bool holds = backend_.entails(g, f, p);
    if (log_) log_->push_back(Query{g, f, p, pos, decl_, rule, holds});
    return holds;
}

void Checker::require(const TimeCtx& g, const PropCtx& f, const Prop& p, SourcePos pos, const char* rule,
                      ErrorKind kind, const std::string& detail) {
    if (ask(g, f, p, pos, rule)) return;
    std::optional<Assignment> cex;
    if (internal_) cex = temporal::entailment_countermodel(g, f, p);
    throw TypingError(kind, pos, render_entailment(g, f, p), std::string(rule) + ": " + detail, cex);
}

namespace {

TimeVar choose_fresh(const TimeVar& preferred, const TimeCtx& g) {
    if (!g.count(preferred) && !temporal::is_reserved_time_name(preferred.name)) return preferred;
    return syntax::fresh_time_var(preferred, g);
}

bool provider_matches(K pk, TK tk) {
    switch (pk) {
        case K::Close: return tk == TK::Unit;
        case K::LamRecv: return tk == TK::Lolli;
        case K::PairSend: return tk == TK::Tensor;
        case K::InL: case K::InR: return tk == TK::InChoice;
        case K::Offer: return tk == TK::ExChoice;
        case K::Prod: return tk == TK::Produce;
        case K::QueryRecv: return tk == TK::Request;
        default: return false;
    }
}

bool client_matches(K pk, TK tk) {
    switch (pk) {
        case K::Wait: return tk == TK::Unit;
        case K::AppSend: return tk == TK::Lolli;
        case K::PairRecv: return tk == TK::Tensor;
        case K::Case: return tk == TK::InChoice;
        case K::SelectL: case K::SelectR: return tk == TK::ExChoice;
        case K::Cons: return tk == TK::Produce;
        case K::Supply: return tk == TK::Request;
        default: return false;
    }
}

std::string render_delta(const ChannelCtx& d) {
    std::string s;
    for (const auto& [x, a] : d) s += (s.empty() ? "" : ", ") + x + " : " + syntax::print_type(*a);
    return "{" + s + "}";
}

[[noreturn]] void shape_error(const Process& p, const SessionType& a, const std::string& what) {
    throw TypingError(ErrorKind::ShapeMismatch, p.pos, "",
                      std::string(syntax::keyword(p.kind)) + " " + what + " " + syntax::connective_name(a.kind) +
                          " (" + syntax::print_type(a) + ")");
}

}  // namespace

std::pair<ChannelCtx, ChannelCtx> Checker::split_context(const ChannelCtx& delta, const Process& p1,
                                                         const Process& p2) {
    auto f1 = syntax::free_channels(p1);
    auto f2 = syntax::free_channels(p2);
    ChannelCtx d1, d2;
    for (const auto& [x, a] : delta) {
        bool in1 = f1.count(x) > 0, in2 = f2.count(x) > 0;
        if (in1 && in2) {
            throw TypingError(ErrorKind::LinearityViolation, p1.pos, render_delta(delta),
                              "channel '" + x + "' is used by both parts of a split context");
        }
        if (!in1 && !in2) {
            throw TypingError(ErrorKind::LinearityViolation, p1.pos, render_delta(delta),
                              "channel '" + x + "' is never used");
        }
        (in1 ? d1 : d2).emplace(x, a);
    }
    return {d1, d2};
}

ValueType Checker::check_expr(const ValueCtx& gamma, const syntax::Expr& e) {
    using EK = syntax::Expr::Kind;
    using syntax::BinOp;
    auto fail = [&](const std::string& msg) -> ValueType {
        throw TypingError(ErrorKind::ExprTypeError, e.pos, syntax::print_expr(e), msg);
    };
    auto want = [&](const syntax::Expr& sub, const ValueType& t) {
        ValueType got = check_expr(gamma, sub);
        if (!(got == t)) {
            fail("expected " + syntax::to_string(t) + " but '" + syntax::print_expr(sub) + "' has type " +
                 syntax::to_string(got));
        }
    };
    switch (e.kind) {
        case EK::Lit: return e.lit.type();
        case EK::Var: {
            auto it = gamma.find(e.name);
            if (it == gamma.end()) return fail("unbound value variable '" + e.name + "'");
            return it->second;
        }
        case EK::Not: want(*e.args[0], ValueType::boolean()); return ValueType::boolean();
        case EK::Neg: want(*e.args[0], ValueType::integer()); return ValueType::integer();
        case EK::If: {
            want(*e.args[0], ValueType::boolean());
            ValueType a = check_expr(gamma, *e.args[1]);
            want(*e.args[2], a);
            return a;
        }
        case EK::Call: {
            const syntax::ExternDecl* d = prog_.find_extern(e.name);
            if (!d) return fail("unknown extern '" + e.name + "'");
            if (d->args.size() != e.args.size()) return fail("arity mismatch calling '" + e.name + "'");
            for (std::size_t i = 0; i < e.args.size(); ++i) want(*e.args[i], d->args[i]);
            return d->ret;
        }
        case EK::Binary: {
            switch (e.op) {
                case BinOp::Add: case BinOp::Sub: case BinOp::Mul: case BinOp::Div: case BinOp::Mod:
                    want(*e.args[0], ValueType::integer());
                    want(*e.args[1], ValueType::integer());
                    return ValueType::integer();
                case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge:
                    want(*e.args[0], ValueType::integer());
                    want(*e.args[1], ValueType::integer());
                    return ValueType::boolean();
                case BinOp::And: case BinOp::Or:
                    want(*e.args[0], ValueType::boolean());
                    want(*e.args[1], ValueType::boolean());
                    return ValueType::boolean();
                case BinOp::Eq: case BinOp::Ne: {
                    ValueType a = check_expr(gamma, *e.args[0]);
                    want(*e.args[1], a);
                    return ValueType::boolean();
                }
            }
        }
    }
    return fail("malformed expression");
}

// ---------------------------------------------------------------- retyping

bool Checker::retype(Variance var, const TimeCtx& g, const PropCtx& f, const TypePtr& a, const TypePtr& b,
                     const TimeExpr& at, std::string* why) {
    auto reason = [&](const std::string& s) {
        if (why && why->empty()) *why = s;
        return false;
    };
    if (a->kind != b->kind) {
        return reason(std::string("connective ") + syntax::connective_name(a->kind) + " vs " +
                      syntax::connective_name(b->kind));
    }
    if ((a->kind == TK::Produce || a->kind == TK::Request) && !(a->payload == b->payload)) {
        return reason("payload sort " + syntax::to_string(a->payload) + " vs " + syntax::to_string(b->payload));
    }
    TimeVar v = choose_fresh(b->binder, g);
    TypePtr ar = syntax::rename_binder(a, v);
    TypePtr br = syntax::rename_binder(b, v);
    TimeCtx g2 = g;
    g2.insert(v);
    PropCtx f2 = f;
    if (var == Variance::Cut) f2.push_back(Prop::leq(at, TimeExpr::var(v)));
    f2.push_back(br->pred);
    const char* rule = var == Variance::Fwd ? "fwd-retype" : "cut-retype";
    if (!ask(g2, f2, ar->pred, b->pos, rule)) {
        return reason(std::string(rule) + ": " + render_entailment(g2, f2, ar->pred));
    }
    if (var == Variance::Fwd) {
        Prop reach = Prop::leq(at, TimeExpr::var(v));
        if (!ask(g2, f2, reach, b->pos, rule)) return reason(std::string(rule) + ": " + render_entailment(g2, f2, reach));
    }
    TimeExpr now = TimeExpr::var(v);
    switch (a->kind) {
        case TK::Unit: return true;
        case TK::Lolli:
            return retype(var, g2, f2, br->parts[0], ar->parts[0], now, why) &&
                   retype(var, g2, f2, ar->parts[1], br->parts[1], now, why);
        case TK::Tensor: case TK::InChoice: case TK::ExChoice:
            return retype(var, g2, f2, ar->parts[0], br->parts[0], now, why) &&
                   retype(var, g2, f2, ar->parts[1], br->parts[1], now, why);
        case TK::Produce: case TK::Request:
            return retype(var, g2, f2, ar->parts[0], br->parts[0], now, why);
        case TK::Ref: return reason("unexpanded type reference");
    }
    return false;
}

bool Checker::fwd_retype(const TimeCtx& g, const PropCtx& f, const TypePtr& a, const TypePtr& b,
                         const TimeExpr& at, std::string* why) {
    return retype(Variance::Fwd, g, f, a, b, at, why);
}

bool Checker::cut_retype(const TimeCtx& g, const PropCtx& f, const TypePtr& a, const TypePtr& b,
                         const TimeExpr& at, std::string* why) {
    return retype(Variance::Cut, g, f, a, b, at, why);
}

// ---------------------------------------------------------------- processes

void Checker::check_process(const TimeCtx& g, const PropCtx& f, const ValueCtx& gamma, const ChannelCtx& delta,
                            const ProcPtr& p, const TimeExpr& at, const TypePtr& a) {
    if (is_provider_form(p->kind)) {
        provider(g, f, gamma, delta, *p, at, *a);
    } else if (p->kind == K::Spawn) {
        spawn(g, f, gamma, delta, *p, at, a);
    } else if (p->kind == K::If) {
        ValueType c = check_expr(gamma, *p->expr);
        if (!(c == ValueType::boolean())) {
            throw TypingError(ErrorKind::ExprTypeError, p->pos, syntax::print_expr(*p->expr),
                              "condition has type " + syntax::to_string(c));
        }
        check_process(g, f, gamma, delta, p->first, at, a);
        check_process(g, f, gamma, delta, p->second, at, a);
    } else {
        client(g, f, gamma, delta, *p, at, a);
    }
}

void Checker::provider(const TimeCtx& g, const PropCtx& f, const ValueCtx& gamma, const ChannelCtx& delta,
                       const Process& p, const TimeExpr& at, const SessionType& a) {
    if (!provider_matches(p.kind, a.kind)) shape_error(p, a, "cannot provide");

    TimeVar v = choose_fresh(p.binder, g);
    TimeExpr now = TimeExpr::var(v);
    auto self = std::make_shared<SessionType>(a);
    TypePtr ar = syntax::rename_binder(self, v);
    Prop q = temporal::subst(p.pred, p.binder, now);
    auto cont = [&](const syntax::ProcPtr& c) { return syntax::subst_time_in_process(c, p.binder, now); };
    TypePtr annot = p.annot ? syntax::subst_time(expand(p.annot), p.binder, now) : nullptr;

    TimeCtx g2 = g;
    g2.insert(v);
    PropCtx f2 = f;
    f2.push_back(ar->pred);
    require(g2, f2, Prop::leq(at, now), p.pos, syntax::keyword(p.kind), ErrorKind::TimingViolation,
            "provider may be asked to act before the current time " + temporal::to_string(at));
    require(g2, f2, q, p.pos, syntax::keyword(p.kind), ErrorKind::PredicateUnsatisfied,
            "the type's window is not covered by the process annotation");

    switch (p.kind) {
        case K::Close:
            if (!delta.empty()) {
                throw TypingError(ErrorKind::LinearityViolation, p.pos, render_delta(delta),
                                  "channels left unused at Close");
            }
            return;
        case K::LamRecv: {
            if (delta.count(p.var)) {
                throw TypingError(ErrorKind::LinearityViolation, p.pos, render_delta(delta),
                                  "bound channel '" + p.var + "' shadows a live channel");
            }
            if (annot && !syntax::alpha_equal(*annot, *ar->parts[0])) {
                throw TypingError(ErrorKind::ShapeMismatch, p.pos, "",
                                  "argument annotation " + syntax::print_type(*annot) + " differs from " +
                                      syntax::print_type(*ar->parts[0]));
            }
            ChannelCtx d2 = delta;
            d2[p.var] = ar->parts[0];
            check_process(g2, f2, gamma, d2, cont(p.first), now, ar->parts[1]);
            return;
        }
        case K::PairSend: {
            auto payload = cont(p.first);
            auto rest = cont(p.second);
            auto [d1, d2] = split_context(delta, *payload, *rest);
            check_process(g2, f2, gamma, d1, payload, now, ar->parts[0]);
            check_process(g2, f2, gamma, d2, rest, now, ar->parts[1]);
            return;
        }
        case K::InL: check_process(g2, f2, gamma, delta, cont(p.first), now, ar->parts[0]); return;
        case K::InR: check_process(g2, f2, gamma, delta, cont(p.first), now, ar->parts[1]); return;
        case K::Offer:
            check_process(g2, f2, gamma, delta, cont(p.first), now, ar->parts[0]);
            check_process(g2, f2, gamma, delta, cont(p.second), now, ar->parts[1]);
            return;
        case K::Prod: {
            ValueType t = check_expr(gamma, *p.expr);
            if (!(t == a.payload)) {
                throw TypingError(ErrorKind::ExprTypeError, p.pos, syntax::print_expr(*p.expr),
                                  "produced value has type " + syntax::to_string(t) + ", expected " +
                                      syntax::to_string(a.payload));
            }
            check_process(g2, f2, gamma, delta, cont(p.first), now, ar->parts[0]);
            return;
        }
        case K::QueryRecv: {
            ValueCtx gamma2 = gamma;
            gamma2[p.var] = a.payload;
            check_process(g2, f2, gamma2, delta, cont(p.first), now, ar->parts[0]);
            return;
        }
        default: return;
    }
}

void Checker::client(const TimeCtx& g, const PropCtx& f, const ValueCtx& gamma, const ChannelCtx& delta,
                     const Process& p, const TimeExpr& at, const TypePtr& a) {
    auto it = delta.find(p.chan);
    if (it == delta.end()) {
        throw TypingError(ErrorKind::LinearityViolation, p.pos, render_delta(delta),
                          "channel '" + p.chan + "' is not available");
    }
    const TypePtr& b = it->second;

    if (p.kind == K::Fwd) {
        require(g, f, Prop::eq(p.at, at), p.pos, "Fwd", ErrorKind::TimingViolation,
                "forward annotated at " + temporal::to_string(p.at) + " while the current time is " +
                    temporal::to_string(at));
        if (delta.size() != 1) {
            throw TypingError(ErrorKind::LinearityViolation, p.pos, render_delta(delta),
                              "Fwd needs exactly the forwarded channel in context");
        }
        std::string why;
        if (!fwd_retype(g, f, b, a, at, &why)) {
            throw TypingError(ErrorKind::RetypeFailure, p.pos, why,
                              "cannot forward " + syntax::print_type(*b) + " as " + syntax::print_type(*a));
        }
        return;
    }

    if (!client_matches(p.kind, b->kind)) shape_error(p, *b, "cannot use");

    const TimeExpr& t2 = p.at;
    require(g, f, Prop::leq(at, t2), p.pos, syntax::keyword(p.kind), ErrorKind::TimingViolation,
            "client time " + temporal::to_string(t2) + " precedes the current time " + temporal::to_string(at));
    require(g, f, temporal::subst(b->pred, b->binder, t2), p.pos, syntax::keyword(p.kind), ErrorKind::TimingViolation,
            "channel '" + p.chan + "' does not accept communication at " + temporal::to_string(t2));

    syntax::UrgentType u = syntax::urgency_instantiate(*b, t2);
    ChannelCtx rest = delta;
    rest.erase(p.chan);

    switch (p.kind) {
        case K::Wait: check_process(g, f, gamma, rest, p.first, t2, a); return;
        case K::AppSend: {
            if (syntax::free_channels(*p.first).count(p.chan)) {
                throw TypingError(ErrorKind::LinearityViolation, p.pos, render_delta(delta),
                                  "payload uses the channel '" + p.chan + "' it is sent on");
            }
            auto [d1, d2] = split_context(rest, *p.first, *p.second);
            check_process(g, f, gamma, d1, p.first, t2, u.parts[0]);
            d2[p.chan] = u.parts[1];
            check_process(g, f, gamma, d2, p.second, t2, a);
            return;
        }
        case K::PairRecv: {
            if (rest.count(p.var) || p.var == p.chan) {
                throw TypingError(ErrorKind::LinearityViolation, p.pos, render_delta(delta),
                                  "bound channel '" + p.var + "' shadows a live channel");
            }
            rest[p.chan] = u.parts[1];
            rest[p.var] = u.parts[0];
            check_process(g, f, gamma, rest, p.first, t2, a);
            return;
        }
        case K::Case: {
            ChannelCtx l = rest, r = rest;
            l[p.chan] = u.parts[0];
            r[p.chan] = u.parts[1];
            check_process(g, f, gamma, l, p.first, t2, a);
            check_process(g, f, gamma, r, p.second, t2, a);
            return;
        }
        case K::SelectL:
        case K::SelectR:
            rest[p.chan] = u.parts[p.kind == K::SelectL ? 0 : 1];
            check_process(g, f, gamma, rest, p.first, t2, a);
            return;
        case K::Cons: {
            ValueCtx gamma2 = gamma;
            gamma2[p.var] = b->payload;
            rest[p.chan] = u.parts[0];
            check_process(g, f, gamma2, rest, p.first, t2, a);
            return;
        }
        case K::Supply: {
            ValueType t = check_expr(gamma, *p.expr);
            if (!(t == b->payload)) {
                throw TypingError(ErrorKind::ExprTypeError, p.pos, syntax::print_expr(*p.expr),
                                  "supplied value has type " + syntax::to_string(t) + ", expected " +
                                      syntax::to_string(b->payload));
            }
            rest[p.chan] = u.parts[0];
            check_process(g, f, gamma, rest, p.first, t2, a);
            return;
        }
        default: return;
    }
}

void Checker::spawn(const TimeCtx& g, const PropCtx& f, const ValueCtx& gamma, const ChannelCtx& delta,
                    const Process& p, const TimeExpr& at, const TypePtr& a) {
    const syntax::ProcDecl* callee = prog_.find_proc(p.callee);
    if (!callee) {
        throw TypingError(ErrorKind::UnresolvedReference, p.pos, "", "unknown process '" + p.callee + "'");
    }
    if (std::find(spawn_stack_.begin(), spawn_stack_.end(), p.callee) != spawn_stack_.end()) {
        throw TypingError(ErrorKind::UnresolvedReference, p.pos, "",
                          "recursive spawn of '" + p.callee + "' is not supported");
    }
    require(g, f, Prop::eq(p.at, at), p.pos, "Spawn", ErrorKind::TimingViolation,
            "spawn annotated at " + temporal::to_string(p.at) + " while the current time is " +
                temporal::to_string(at));
    if (p.args.size() != callee->params.size()) {
        throw TypingError(ErrorKind::LinearityViolation, p.pos, render_delta(delta),
                          "'" + p.callee + "' takes " + std::to_string(callee->params.size()) + " channels");
    }
    ChannelCtx rest = delta;
    ChannelCtx callee_delta;
    for (std::size_t i = 0; i < p.args.size(); ++i) {
        auto it = rest.find(p.args[i]);
        if (it == rest.end()) {
            throw TypingError(ErrorKind::LinearityViolation, p.pos, render_delta(delta),
                              "channel '" + p.args[i] + "' is not available to pass");
        }
        TypePtr want = expand(callee->params[i].type);
        if (!syntax::alpha_equal(*it->second, *want)) {
            throw TypingError(ErrorKind::ShapeMismatch, p.pos, "",
                              "argument '" + p.args[i] + "' has type " + syntax::print_type(*it->second) +
                                  " but '" + p.callee + "' expects " + syntax::print_type(*want));
        }
        callee_delta[callee->params[i].name] = want;
        rest.erase(it);
    }
    if (rest.count(p.var)) {
        throw TypingError(ErrorKind::LinearityViolation, p.pos, render_delta(delta),
                          "bound channel '" + p.var + "' shadows a live channel");
    }
    TypePtr offered = expand(callee->offered);
    TypePtr bound = p.annot ? expand(p.annot) : offered;

    spawn_stack_.push_back(p.callee);
    check_process(g, f, ValueCtx{}, callee_delta, callee->body, at, offered);
    spawn_stack_.pop_back();

    std::string why;
    if (!cut_retype(g, f, offered, bound, at, &why)) {
        throw TypingError(ErrorKind::RetypeFailure, p.pos, why,
                          "cannot use " + syntax::print_type(*offered) + " as " + syntax::print_type(*bound) +
                              " from " + temporal::to_string(at));
    }
    rest[p.var] = bound;
    check_process(g, f, gamma, rest, p.first, at, a);
}

void Checker::check_decl(const syntax::ProcDecl& d) {
    decl_ = d.name;
    spawn_stack_ = {d.name};
    ChannelCtx delta;
    for (const auto& prm : d.params) {
        if (delta.count(prm.name)) {
            throw TypingError(ErrorKind::LinearityViolation, d.pos, "", "duplicate parameter '" + prm.name + "'");
        }
        delta[prm.name] = expand(prm.type);
    }
    check_process(TimeCtx{}, PropCtx{}, ValueCtx{}, delta, d.body, TimeExpr::init(), expand(d.offered));
}

bool fwd_retype(const TimeCtx& g, const PropCtx& f, const TypePtr& a, const TypePtr& b, const TimeExpr& at) {
    syntax::Program empty;
    temporal::InternalBackend backend;
    Checker c(empty, backend);
    return c.fwd_retype(g, f, a, b, at);
}

bool cut_retype(const TimeCtx& g, const PropCtx& f, const TypePtr& a, const TypePtr& b, const TimeExpr& at) {
    syntax::Program empty;
    temporal::InternalBackend backend;
    Checker c(empty, backend);
    return c.cut_retype(g, f, a, b, at);
}

std::vector<DeclResult> check_program(const syntax::Program& prog, temporal::EntailmentBackend& backend,
                                      std::vector<Query>* log) {
    std::vector<DeclResult> out;
    Checker c(prog, backend, log);
    for (const auto& d : prog.procs) {
        DeclResult r{d.name, std::nullopt};
        try {
            c.check_decl(d);
        } catch (const TypingError& e) {
            r.error = e;
        } catch (const syntax::UnknownName& e) {
            r.error = TypingError(ErrorKind::UnresolvedReference, d.pos, "", e.what());
        } catch (const syntax::CyclicTypeDef& e) {
            r.error = TypingError(ErrorKind::UnresolvedReference, d.pos, "", e.what());
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<DeclResult> check_program(const syntax::Program& prog) {
    temporal::InternalBackend backend;
    return check_program(prog, backend);
}

}  // namespace tillst::typecheck
