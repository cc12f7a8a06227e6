#include "tillst/syntax/printer.hpp"

#include <sstream>

#include "tillst/syntax/ops.hpp"

namespace tillst::syntax {

std::string print_time(const TimeExpr& t) {
    std::string base = t.is_closed() ? "t0" : t.base()->name;
    if (t.offset() == 0) return base;
    return "Shift<" + base + ", " + std::to_string(t.offset()) + ">";
}

std::string print_prop(const Prop& p) {
    using K = Prop::Kind;
    switch (p.kind()) {
        case K::Top: return "True";
        case K::Bot: return "False";
        case K::Eq: return "Eq<" + print_time(p.lhs()) + ", " + print_time(p.rhs()) + ">";
        case K::Leq: return "Leq<" + print_time(p.lhs()) + ", " + print_time(p.rhs()) + ">";
        case K::And: return "And<" + print_prop(p.left()) + ", " + print_prop(p.right()) + ">";
        case K::Or: return "Or<" + print_prop(p.left()) + ", " + print_prop(p.right()) + ">";
        case K::Imp: return "Implies<" + print_prop(p.left()) + ", " + print_prop(p.right()) + ">";
    }
    return "True";
}

namespace {

std::string binder(const TimeVar& t, const Prop& p) { return t.name + " where " + print_prop(p); }

std::string value_type_src(const ValueType& v) { return to_string(v); }

std::string indent(int n) { return std::string(static_cast<std::size_t>(n) * 2, ' '); }

int precedence(BinOp op) {
    switch (op) {
        case BinOp::Or: return 1;
        case BinOp::And: return 2;
        case BinOp::Eq: case BinOp::Ne: case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge: return 3;
        case BinOp::Add: case BinOp::Sub: return 4;
        default: return 5;
    }
}

std::string value_src(const Value& v) {
    switch (v.kind) {
        case Value::Kind::Bool: return v.num ? "true" : "false";
        case Value::Kind::Int:
            return v.num < 0 ? "(-" + std::to_string(-v.num) + ")" : std::to_string(v.num);
        case Value::Kind::Opaque: return to_string(v);
    }
    return "0";
}

void proc(std::ostringstream& o, const Process& p, int d);

void block(std::ostringstream& o, const std::string& head, const Process& body, int d) {
    o << head << " =>\n";
    proc(o, body, d + 1);
    o << "\n" << indent(d) << "}";
}

void proc(std::ostringstream& o, const Process& p, int d) {
    using K = Process::Kind;
    o << indent(d);
    const std::string kw = keyword(p.kind);
    auto at = [&] { return "<" + print_time(p.at) + ">"; };
    auto bnd = [&] { return "<" + binder(p.binder, p.pred) + ">"; };
    auto seq = [&](const Process& cont) {
        o << ";\n";
        proc(o, cont, d);
    };
    switch (p.kind) {
        case K::Close: o << kw << bnd(); break;
        case K::Wait: o << kw << at() << "(" << p.chan << ")"; seq(*p.first); break;
        case K::LamRecv: {
            std::string head = kw + bnd() + " { " + p.var;
            if (p.annot) head += " : " + print_type(*p.annot);
            block(o, head, *p.first, d);
            break;
        }
        case K::AppSend:
            o << kw << at() << "(" << p.chan << " <= {\n";
            proc(o, *p.first, d + 1);
            o << "\n" << indent(d) << "})";
            seq(*p.second);
            break;
        case K::PairSend:
            o << kw << bnd() << " {\n";
            proc(o, *p.first, d + 1);
            o << "\n" << indent(d) << "}";
            seq(*p.second);
            break;
        case K::PairRecv: block(o, kw + at() + "(" + p.chan + ") { " + p.var, *p.first, d); break;
        case K::InL:
        case K::InR:
            o << kw << bnd();
            seq(*p.first);
            break;
        case K::Case:
        case K::Offer:
            o << kw << (p.kind == K::Case ? at() + "(" + p.chan + ")" : bnd()) << " { L =>\n";
            proc(o, *p.first, d + 1);
            o << "\n" << indent(d) << "} { R =>\n";
            proc(o, *p.second, d + 1);
            o << "\n" << indent(d) << "}";
            break;
        case K::SelectL:
        case K::SelectR:
            o << kw << at() << "(" << p.chan << ")";
            seq(*p.first);
            break;
        case K::Prod:
            o << kw << bnd() << " $ " << print_expr(*p.expr) << " $";
            seq(*p.first);
            break;
        case K::Cons: block(o, kw + at() + "(" + p.chan + ") { " + p.var, *p.first, d); break;
        case K::QueryRecv: block(o, kw + bnd() + " { " + p.var, *p.first, d); break;
        case K::Supply:
            o << kw << at() << "(" << p.chan << ") $ " << print_expr(*p.expr) << " $";
            seq(*p.first);
            break;
        case K::Fwd: o << kw << at() << "(" << p.chan << ")"; break;
        case K::Spawn: {
            std::string head = kw + at() + "(" + p.callee;
            for (const auto& a : p.args) head += ", " + a;
            head += ") { " + p.var;
            if (p.annot) head += " : " + print_type(*p.annot);
            block(o, head, *p.first, d);
            break;
        }
        case K::If:
            o << "if $ " << print_expr(*p.expr) << " $ then {\n";
            proc(o, *p.first, d + 1);
            o << "\n" << indent(d) << "} else {\n";
            proc(o, *p.second, d + 1);
            o << "\n" << indent(d) << "}";
            break;
    }
}

std::string expr_prec(const Expr& e, int ctx) {
    switch (e.kind) {
        case Expr::Kind::Lit: return value_src(e.lit);
        case Expr::Kind::Var: return e.name;
        case Expr::Kind::Call: {
            std::string s = e.name + "(";
            for (std::size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + expr_prec(*e.args[i], 0);
            return s + ")";
        }
        case Expr::Kind::Not: return "!" + expr_prec(*e.args[0], 6);
        case Expr::Kind::Neg: return "-" + expr_prec(*e.args[0], 6);
        case Expr::Kind::If:
            return "(if " + expr_prec(*e.args[0], 0) + " then " + expr_prec(*e.args[1], 0) + " else " +
                   expr_prec(*e.args[2], 0) + ")";
        case Expr::Kind::Binary: {
            int pr = precedence(e.op);
            // comparisons do not chain, so both sides of one sit one level up
            int lp = pr == 3 ? 4 : pr;
            std::string s = expr_prec(*e.args[0], lp) + " " + to_string(e.op) + " " + expr_prec(*e.args[1], pr + 1);
            return pr < ctx ? "(" + s + ")" : s;
        }
    }
    return "";
}

}  // namespace

std::string print_type(const SessionType& a) {
    using K = SessionType::Kind;
    switch (a.kind) {
        case K::Ref: return a.ref;
        case K::Unit: return "Unit<" + binder(a.binder, a.pred) + ">";
        case K::Produce:
        case K::Request:
            return std::string(connective_name(a.kind)) + "<" + value_type_src(a.payload) + ", " +
                   binder(a.binder, a.pred) + ", " + print_type(a.part(0)) + ">";
        default:
            return std::string(connective_name(a.kind)) + "<" + binder(a.binder, a.pred) + ", " +
                   print_type(a.part(0)) + ", " + print_type(a.part(1)) + ">";
    }
}

std::string print_expr(const Expr& e) { return expr_prec(e, 0); }

std::string print_process(const Process& p) {
    std::ostringstream o;
    proc(o, p, 0);
    return o.str();
}

std::string print_program(const Program& prog) {
    std::ostringstream o;
    for (const auto& s : prog.sorts) o << "sort " << s.name << ";\n";
    for (const auto& e : prog.externs) {
        o << "extern fn " << e.name << "(";
        for (std::size_t i = 0; i < e.args.size(); ++i) o << (i ? ", " : "") << value_type_src(e.args[i]);
        o << ") -> " << value_type_src(e.ret) << ";\n";
    }
    for (const auto& t : prog.types) o << "type " << t.name << " = " << print_type(*t.type) << "\n";
    for (const auto& p : prog.procs) {
        o << "fn " << p.name << "(";
        for (std::size_t i = 0; i < p.params.size(); ++i) {
            o << (i ? ", " : "") << p.params[i].name << ": " << print_type(*p.params[i].type);
        }
        o << ") -> " << print_type(*p.offered) << " {\n";
        proc(o, *p.body, 1);
        o << "\n}\n";
    }
    for (const auto& a : prog.automata) {
        o << "automaton " << a.name << " {\n";
        for (const auto& s : a.states) o << "  state " << s << (s == a.initial ? " init" : "") << ";\n";
        for (const auto& t : a.transitions) {
            o << "  " << t.from << " --[";
            if (t.guard != 0) o << t.guard << ", ";
            o << to_string(t.action) << "]--> " << t.to << ";\n";
        }
        o << "}\n";
    }
    for (const auto& s : prog.systems) {
        o << "system " << s.name << " = " << s.root << "(";
        for (std::size_t i = 0; i < s.args.size(); ++i) {
            const auto& a = s.args[i];
            o << (i ? ", " : "") << a.label << " = " << a.component;
            if (a.alias != a.label) o << " as " << a.alias;
        }
        o << ") @ " << print_time(s.start) << ";\n";
    }
    return o.str();
}

bool same_program(const Program& a, const Program& b) {
    auto eq_vec = [](const auto& x, const auto& y, auto eq) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!eq(x[i], y[i])) return false;
        }
        return true;
    };
    if (!eq_vec(a.sorts, b.sorts, [](const SortDecl& x, const SortDecl& y) { return x.name == y.name; })) return false;
    if (!eq_vec(a.externs, b.externs, [](const ExternDecl& x, const ExternDecl& y) {
            return x.name == y.name && x.args == y.args && x.ret == y.ret;
        }))
        return false;
    if (!eq_vec(a.types, b.types,
                [](const TypeDecl& x, const TypeDecl& y) { return x.name == y.name && same_type(x.type, y.type); }))
        return false;
    if (!eq_vec(a.procs, b.procs, [](const ProcDecl& x, const ProcDecl& y) {
            if (x.name != y.name || x.params.size() != y.params.size()) return false;
            for (std::size_t i = 0; i < x.params.size(); ++i) {
                if (x.params[i].name != y.params[i].name || !same_type(x.params[i].type, y.params[i].type)) {
                    return false;
                }
            }
            return same_type(x.offered, y.offered) && same_process(x.body, y.body);
        }))
        return false;
    if (!eq_vec(a.automata, b.automata, [](const AutomatonDecl& x, const AutomatonDecl& y) {
            if (x.name != y.name || x.initial != y.initial || x.states != y.states) return false;
            if (x.transitions.size() != y.transitions.size()) return false;
            for (std::size_t i = 0; i < x.transitions.size(); ++i) {
                const auto& s = x.transitions[i];
                const auto& t = y.transitions[i];
                if (s.from != t.from || s.to != t.to || s.guard != t.guard || !(s.action == t.action)) return false;
            }
            return true;
        }))
        return false;
    return eq_vec(a.systems, b.systems, [](const SystemDecl& x, const SystemDecl& y) {
        if (x.name != y.name || x.root != y.root || !(x.start == y.start) || x.args.size() != y.args.size()) {
            return false;
        }
        for (std::size_t i = 0; i < x.args.size(); ++i) {
            if (x.args[i].label != y.args[i].label || x.args[i].component != y.args[i].component ||
                x.args[i].alias != y.args[i].alias) {
                return false;
            }
        }
        return true;
    });
}

}  // namespace tillst::syntax
