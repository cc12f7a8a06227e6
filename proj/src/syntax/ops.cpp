#include "tillst/syntax/ops.hpp"

#include <algorithm>

namespace tillst::syntax {

using temporal::subst;

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    std::string stem = base.substr(0, base.find('\''));
    for (int k = 1;; ++k) {
        std::string cand = stem + "'" + std::to_string(k);
        if (!avoid.count(cand)) return cand;
    }
}

TimeVar fresh_time_var(const TimeVar& base, const std::set<TimeVar>& avoid) {
    std::set<std::string> names;
    for (const auto& v : avoid) names.insert(v.name);
    return TimeVar{fresh_name(base.name, names)};
}

// ---------------------------------------------------------------- time vars

void free_time_vars(const SessionType& a, std::set<TimeVar>& out) {
    if (a.kind == SessionType::Kind::Ref) return;
    std::set<TimeVar> inner;
    temporal::free_vars(a.pred, inner);
    for (const auto& p : a.parts) free_time_vars(*p, inner);
    inner.erase(a.binder);
    out.insert(inner.begin(), inner.end());
}

void bound_time_vars(const SessionType& a, std::set<TimeVar>& out) {
    if (a.kind == SessionType::Kind::Ref) return;
    out.insert(a.binder);
    for (const auto& p : a.parts) bound_time_vars(*p, out);
}

void free_time_vars(const Process& p, std::set<TimeVar>& out) {
    std::set<TimeVar> inner;
    if (p.annot) free_time_vars(*p.annot, inner);
    if (p.first) free_time_vars(*p.first, inner);
    if (p.second) free_time_vars(*p.second, inner);
    if (is_provider_form(p.kind)) {
        temporal::free_vars(p.pred, inner);
        inner.erase(p.binder);
    } else if (p.kind != Process::Kind::If) {
        temporal::free_vars(p.at, inner);
    }
    out.insert(inner.begin(), inner.end());
}

TypePtr subst_time(const TypePtr& a, const TimeVar& v, const TimeExpr& by) {
    if (a->kind == SessionType::Kind::Ref) return a;
    if (a->binder == v) return a;
    std::set<TimeVar> fv;
    free_time_vars(*a, fv);
    if (!fv.count(v)) return a;
    TypePtr cur = a;
    if (!by.is_closed() && *by.base() == a->binder) {
        std::set<TimeVar> avoid = fv;
        avoid.insert(v);
        avoid.insert(*by.base());
        bound_time_vars(*a, avoid);
        cur = rename_binder(a, fresh_time_var(a->binder, avoid));
    }
    auto out = std::make_shared<SessionType>(*cur);
    out->pred = subst(cur->pred, v, by);
    for (auto& p : out->parts) p = subst_time(p, v, by);
    return out;
}

TypePtr rename_binder(const TypePtr& a, const TimeVar& fresh) {
    if (a->kind == SessionType::Kind::Ref || a->binder == fresh) return a;
    auto out = std::make_shared<SessionType>(*a);
    TimeExpr by = TimeExpr::var(fresh);
    out->binder = fresh;
    out->pred = subst(a->pred, a->binder, by);
    for (auto& p : out->parts) p = subst_time(p, a->binder, by);
    return out;
}

namespace {

ProcPtr rename_process_binder(const ProcPtr& p, const TimeVar& fresh);

ProcPtr subst_time_rec(const ProcPtr& p, const TimeVar& v, const TimeExpr& by) {
    if (!p) return p;
    auto out = std::make_shared<Process>(*p);
    if (is_provider_form(p->kind)) {
        if (p->binder == v) return p;
        if (!by.is_closed() && *by.base() == p->binder) {
            std::set<TimeVar> avoid;
            free_time_vars(*p, avoid);
            avoid.insert(v);
            avoid.insert(p->binder);
            auto renamed = rename_process_binder(p, fresh_time_var(p->binder, avoid));
            return subst_time_rec(renamed, v, by);
        }
        out->pred = subst(p->pred, v, by);
    } else if (p->kind != Process::Kind::If) {
        out->at = subst(p->at, v, by);
    }
    if (p->annot) out->annot = subst_time(p->annot, v, by);
    out->first = subst_time_rec(p->first, v, by);
    out->second = subst_time_rec(p->second, v, by);
    return out;
}

ProcPtr rename_process_binder(const ProcPtr& p, const TimeVar& fresh) {
    auto out = std::make_shared<Process>(*p);
    TimeExpr by = TimeExpr::var(fresh);
    out->binder = fresh;
    out->pred = subst(p->pred, p->binder, by);
    if (p->annot) out->annot = subst_time(p->annot, p->binder, by);
    out->first = subst_time_rec(p->first, p->binder, by);
    out->second = subst_time_rec(p->second, p->binder, by);
    return out;
}

}  // namespace

ProcPtr subst_time_in_process(const ProcPtr& p, const TimeVar& v, const TimeExpr& by) {
    return subst_time_rec(p, v, by);
}

// ---------------------------------------------------------------- expansion

namespace {

TypePtr expand_rec(const Program& prog, const TypePtr& a, std::vector<std::string>& stack) {
    if (a->kind == SessionType::Kind::Ref) {
        auto it = std::find(stack.begin(), stack.end(), a->ref);
        if (it != stack.end()) {
            std::string cycle;
            for (; it != stack.end(); ++it) cycle += *it + " -> ";
            throw CyclicTypeDef("cyclic type definition: " + cycle + a->ref);
        }
        const TypeDecl* d = prog.find_type(a->ref);
        if (!d) throw UnknownName("unknown type '" + a->ref + "'");
        stack.push_back(a->ref);
        TypePtr r = expand_rec(prog, d->type, stack);
        stack.pop_back();
        return r;
    }
    std::vector<TypePtr> parts;
    for (const auto& p : a->parts) parts.push_back(expand_rec(prog, p, stack));
    return ty::with_parts(*a, std::move(parts));
}

TypePtr freshen(const TypePtr& a, std::set<TimeVar>& enclosing, const std::set<TimeVar>& all) {
    TypePtr cur = a;
    if (enclosing.count(a->binder) || temporal::is_reserved_time_name(a->binder.name)) {
        std::set<TimeVar> avoid = all;
        avoid.insert(enclosing.begin(), enclosing.end());
        cur = rename_binder(a, fresh_time_var(a->binder, avoid));
    }
    bool added = enclosing.insert(cur->binder).second;
    std::set<TimeVar> all2 = all;
    all2.insert(cur->binder);
    std::vector<TypePtr> parts;
    for (const auto& p : cur->parts) parts.push_back(freshen(p, enclosing, all2));
    if (added) enclosing.erase(cur->binder);
    return ty::with_parts(*cur, std::move(parts));
}

}  // namespace

TypePtr expand_type_refs(const Program& prog, const TypePtr& a) {
    std::vector<std::string> stack;
    TypePtr e = expand_rec(prog, a, stack);
    std::set<TimeVar> all;
    bound_time_vars(*e, all);
    free_time_vars(*e, all);
    std::set<TimeVar> enclosing;
    free_time_vars(*e, enclosing);
    return freshen(e, enclosing, all);
}

UrgentType urgency_instantiate(const SessionType& a, const TimeExpr& at) {
    UrgentType u;
    u.kind = a.kind;
    u.payload = a.payload;
    for (const auto& p : a.parts) u.parts.push_back(subst_time(p, a.binder, at));
    return u;
}

// ---------------------------------------------------------------- channels

namespace {

bool binds_channel(const Process& p) {
    return p.kind == Process::Kind::LamRecv || p.kind == Process::Kind::PairRecv || p.kind == Process::Kind::Spawn;
}

bool binds_value(const Process& p) {
    return p.kind == Process::Kind::Cons || p.kind == Process::Kind::QueryRecv;
}

// The channel binder of `p` scopes over its `first` continuation, except for
// the payloads of AppSend/PairSend which are separate processes.
void collect_free_channels(const Process& p, std::set<std::string>& out) {
    if (!p.chan.empty()) out.insert(p.chan);
    for (const auto& a : p.args) out.insert(a);
    std::set<std::string> inner;
    if (p.first) collect_free_channels(*p.first, inner);
    if (binds_channel(p)) inner.erase(p.var);
    if (p.second) collect_free_channels(*p.second, inner);
    out.insert(inner.begin(), inner.end());
}

ProcPtr subst_chan_rec(const ProcPtr& p, const std::string& x, const std::string& a) {
    if (!p) return p;
    auto out = std::make_shared<Process>(*p);
    if (out->chan == x) out->chan = a;
    for (auto& arg : out->args) {
        if (arg == x) arg = a;
    }
    if (binds_channel(*p)) {
        if (p->var == x) {
            // shadowed in the bound scope
            out->second = subst_chan_rec(p->second, x, a);
            return out;
        }
        if (p->var == a) {
            std::set<std::string> avoid = free_channels(*p->first);
            avoid.insert(a);
            avoid.insert(x);
            std::string fresh = fresh_name(p->var, avoid);
            out->var = fresh;
            out->first = subst_chan_rec(subst_chan_rec(p->first, p->var, fresh), x, a);
            out->second = subst_chan_rec(p->second, x, a);
            return out;
        }
    }
    out->first = subst_chan_rec(p->first, x, a);
    out->second = subst_chan_rec(p->second, x, a);
    return out;
}

ProcPtr subst_val_rec(const ProcPtr& p, const std::string& x, const Value& v) {
    if (!p) return p;
    auto out = std::make_shared<Process>(*p);
    if (p->expr) out->expr = subst_val(p->expr, x, v);
    if (binds_value(*p) && p->var == x) return out;
    out->first = subst_val_rec(p->first, x, v);
    out->second = subst_val_rec(p->second, x, v);
    return out;
}

}  // namespace

std::set<std::string> free_channels(const Process& p) {
    std::set<std::string> out;
    collect_free_channels(p, out);
    return out;
}

ProcPtr subst_chan(const ProcPtr& p, const std::string& x, const std::string& a) {
    if (x == a) return p;
    return subst_chan_rec(p, x, a);
}

ExprPtr subst_val(const ExprPtr& e, const std::string& x, const Value& v) {
    if (!e) return e;
    if (e->kind == Expr::Kind::Var) return e->name == x ? ex::lit(v) : e;
    if (e->args.empty()) return e;
    auto out = std::make_shared<Expr>(*e);
    for (auto& a : out->args) a = subst_val(a, x, v);
    return out;
}

ProcPtr subst_val(const ProcPtr& p, const std::string& x, const Value& v) { return subst_val_rec(p, x, v); }

// ---------------------------------------------------------------- equality

namespace {

TypePtr canonical(const TypePtr& a, int depth) {
    if (a->kind == SessionType::Kind::Ref) return a;
    TypePtr r = rename_binder(a, TimeVar{"%" + std::to_string(depth)});
    std::vector<TypePtr> parts;
    for (const auto& p : r->parts) parts.push_back(canonical(p, depth + 1));
    return ty::with_parts(*r, std::move(parts));
}

bool same_type_rec(const SessionType& a, const SessionType& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == SessionType::Kind::Ref) return a.ref == b.ref;
    if (a.binder != b.binder || !(a.pred == b.pred) || !(a.payload == b.payload)) return false;
    if (a.parts.size() != b.parts.size()) return false;
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
        if (!same_type_rec(*a.parts[i], *b.parts[i])) return false;
    }
    return true;
}

}  // namespace

bool same_type(const TypePtr& a, const TypePtr& b) {
    if (!a || !b) return a == b;
    return a == b || same_type_rec(*a, *b);
}

bool alpha_equal(const SessionType& a, const SessionType& b) {
    auto ca = canonical(std::make_shared<SessionType>(a), 0);
    auto cb = canonical(std::make_shared<SessionType>(b), 0);
    return same_type_rec(*ca, *cb);
}

bool same_expr(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size()) return false;
    if (a.kind == Expr::Kind::Lit && !(a.lit == b.lit)) return false;
    if (a.kind == Expr::Kind::Binary && a.op != b.op) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!same_expr(*a.args[i], *b.args[i])) return false;
    }
    return true;
}

bool same_process(const ProcPtr& a, const ProcPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return same_process(*a, *b);
}

bool same_process(const Process& a, const Process& b) {
    if (&a == &b) return true;
    if (a.kind != b.kind) return false;
    if (is_provider_form(a.kind)) {
        if (a.binder != b.binder || !(a.pred == b.pred)) return false;
    } else if (a.kind != Process::Kind::If && !(a.at == b.at)) {
        return false;
    }
    if (a.chan != b.chan || a.var != b.var || a.callee != b.callee || a.args != b.args) return false;
    if (!same_type(a.annot, b.annot)) return false;
    if (static_cast<bool>(a.expr) != static_cast<bool>(b.expr)) return false;
    if (a.expr && !same_expr(*a.expr, *b.expr)) return false;
    return same_process(a.first, b.first) && same_process(a.second, b.second);
}

}  // namespace tillst::syntax
