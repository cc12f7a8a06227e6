#include "tillst/temporal/time.hpp"

namespace tillst::temporal {

TimeExpr normalize_time(const TimeExpr& e) { return e; }

std::int64_t eval_closed(const TimeExpr& e) {
    if (!e.is_closed()) throw NonClosedTime("time expression '" + to_string(e) + "' is not closed");
    return e.offset();
}

std::string to_string(const TimeExpr& e) {
    std::string base = e.is_closed() ? "t0" : e.base()->name;
    if (e.offset() == 0) return base;
    return base + (e.offset() > 0 ? "+" : "") + std::to_string(e.offset());
}

Prop Prop::eq(TimeExpr a, TimeExpr b) {
    Prop p(Kind::Eq);
    p.lhs_ = std::move(a);
    p.rhs_ = std::move(b);
    return p;
}

Prop Prop::leq(TimeExpr a, TimeExpr b) {
    Prop p(Kind::Leq);
    p.lhs_ = std::move(a);
    p.rhs_ = std::move(b);
    return p;
}

Prop Prop::conj(Prop a, Prop b) {
    Prop p(Kind::And);
    p.left_ = std::make_shared<const Prop>(std::move(a));
    p.right_ = std::make_shared<const Prop>(std::move(b));
    return p;
}

Prop Prop::disj(Prop a, Prop b) {
    Prop p(Kind::Or);
    p.left_ = std::make_shared<const Prop>(std::move(a));
    p.right_ = std::make_shared<const Prop>(std::move(b));
    return p;
}

Prop Prop::imp(Prop a, Prop b) {
    Prop p(Kind::Imp);
    p.left_ = std::make_shared<const Prop>(std::move(a));
    p.right_ = std::make_shared<const Prop>(std::move(b));
    return p;
}

Prop Prop::neq(TimeExpr a, TimeExpr b) { return negate(eq(std::move(a), std::move(b))); }

Prop Prop::lt(TimeExpr a, TimeExpr b) { return leq(a.shifted(1), std::move(b)); }

Prop Prop::in_range(TimeExpr lo, TimeExpr t, TimeExpr hi) {
    return conj(leq(std::move(lo), t), leq(t, std::move(hi)));
}

Prop Prop::all(const std::vector<Prop>& ps) {
    if (ps.empty()) return top();
    Prop acc = ps.back();
    for (auto it = ps.rbegin() + 1; it != ps.rend(); ++it) acc = conj(*it, acc);
    return acc;
}

bool Prop::operator==(const Prop& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case Kind::Top:
        case Kind::Bot:
            return true;
        case Kind::Eq:
        case Kind::Leq:
            return lhs_ == o.lhs_ && rhs_ == o.rhs_;
        default:
            return *left_ == *o.left_ && *right_ == *o.right_;
    }
}

std::string to_string(const Prop& p) {
    switch (p.kind()) {
        case Prop::Kind::Top: return "true";
        case Prop::Kind::Bot: return "false";
        case Prop::Kind::Eq: return to_string(p.lhs()) + " = " + to_string(p.rhs());
        case Prop::Kind::Leq: return to_string(p.lhs()) + " <= " + to_string(p.rhs());
        case Prop::Kind::And: return "(" + to_string(p.left()) + " /\\ " + to_string(p.right()) + ")";
        case Prop::Kind::Or: return "(" + to_string(p.left()) + " \\/ " + to_string(p.right()) + ")";
        case Prop::Kind::Imp:
            if (p.right().kind() == Prop::Kind::Bot) return "~" + to_string(p.left());
            return "(" + to_string(p.left()) + " -> " + to_string(p.right()) + ")";
    }
    return "?";
}

std::int64_t eval(const TimeExpr& e, const Assignment& a) {
    if (e.is_closed()) return e.offset();
    auto it = a.find(*e.base());
    if (it == a.end()) throw NonClosedTime("no value for time variable '" + e.base()->name + "'");
    return it->second + e.offset();
}

bool eval(const Prop& p, const Assignment& a) {
    switch (p.kind()) {
        case Prop::Kind::Top: return true;
        case Prop::Kind::Bot: return false;
        case Prop::Kind::Eq: return eval(p.lhs(), a) == eval(p.rhs(), a);
        case Prop::Kind::Leq: return eval(p.lhs(), a) <= eval(p.rhs(), a);
        case Prop::Kind::And: return eval(p.left(), a) && eval(p.right(), a);
        case Prop::Kind::Or: return eval(p.left(), a) || eval(p.right(), a);
        case Prop::Kind::Imp: return !eval(p.left(), a) || eval(p.right(), a);
    }
    return false;
}

bool eval_closed(const Prop& p) { return eval(p, Assignment{}); }

void free_vars(const TimeExpr& e, std::set<TimeVar>& out) {
    if (!e.is_closed()) out.insert(*e.base());
}

void free_vars(const Prop& p, std::set<TimeVar>& out) {
    if (p.is_atom()) {
        free_vars(p.lhs(), out);
        free_vars(p.rhs(), out);
    } else if (p.kind() == Prop::Kind::And || p.kind() == Prop::Kind::Or || p.kind() == Prop::Kind::Imp) {
        free_vars(p.left(), out);
        free_vars(p.right(), out);
    }
}

std::set<TimeVar> free_vars(const Prop& p) {
    std::set<TimeVar> out;
    free_vars(p, out);
    return out;
}

TimeExpr subst(const TimeExpr& e, const TimeVar& v, const TimeExpr& by) {
    if (e.is_closed() || *e.base() != v) return e;
    return by.shifted(e.offset());
}

Prop subst(const Prop& p, const TimeVar& v, const TimeExpr& by) {
    switch (p.kind()) {
        case Prop::Kind::Top:
        case Prop::Kind::Bot:
            return p;
        case Prop::Kind::Eq: return Prop::eq(subst(p.lhs(), v, by), subst(p.rhs(), v, by));
        case Prop::Kind::Leq: return Prop::leq(subst(p.lhs(), v, by), subst(p.rhs(), v, by));
        case Prop::Kind::And: return Prop::conj(subst(p.left(), v, by), subst(p.right(), v, by));
        case Prop::Kind::Or: return Prop::disj(subst(p.left(), v, by), subst(p.right(), v, by));
        case Prop::Kind::Imp: return Prop::imp(subst(p.left(), v, by), subst(p.right(), v, by));
    }
    return p;
}

bool is_reserved_time_name(const std::string& name) { return name == "t0" || name == kInitName; }

}  // namespace tillst::temporal
