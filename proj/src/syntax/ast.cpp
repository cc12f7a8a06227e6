#include "tillst/syntax/ast.hpp"

#include <algorithm>

namespace tillst::syntax {

std::string to_string(const ValueType& t) {
    switch (t.kind) {
        case ValueType::Kind::Bool: return "bool";
        case ValueType::Kind::Int: return "int";
        case ValueType::Kind::Named: return t.name;
    }
    return "?";
}

ValueType Value::type() const {
    switch (kind) {
        case Kind::Bool: return ValueType::boolean();
        case Kind::Int: return ValueType::integer();
        case Kind::Opaque: return ValueType::named(sort);
    }
    return ValueType::integer();
}

std::string to_string(const Value& v) {
    switch (v.kind) {
        case Value::Kind::Bool: return v.num ? "true" : "false";
        case Value::Kind::Int: return std::to_string(v.num);
        case Value::Kind::Opaque: return v.sort + ":" + std::to_string(v.num);
    }
    return "?";
}

namespace ty {

namespace {
TypePtr make(SessionType::Kind k, TimeVar t, Prop p, std::vector<TypePtr> parts) {
    auto s = std::make_shared<SessionType>();
    s->kind = k;
    s->binder = std::move(t);
    s->pred = std::move(p);
    s->parts = std::move(parts);
    return s;
}
}  // namespace

TypePtr unit(TimeVar t, Prop p) { return make(SessionType::Kind::Unit, std::move(t), std::move(p), {}); }

TypePtr binary(SessionType::Kind k, TimeVar t, Prop p, TypePtr a, TypePtr b) {
    return make(k, std::move(t), std::move(p), {std::move(a), std::move(b)});
}

TypePtr tensor(TimeVar t, Prop p, TypePtr a, TypePtr b) {
    return binary(SessionType::Kind::Tensor, std::move(t), std::move(p), std::move(a), std::move(b));
}
TypePtr lolli(TimeVar t, Prop p, TypePtr a, TypePtr b) {
    return binary(SessionType::Kind::Lolli, std::move(t), std::move(p), std::move(a), std::move(b));
}
TypePtr in_choice(TimeVar t, Prop p, TypePtr a, TypePtr b) {
    return binary(SessionType::Kind::InChoice, std::move(t), std::move(p), std::move(a), std::move(b));
}
TypePtr ex_choice(TimeVar t, Prop p, TypePtr a, TypePtr b) {
    return binary(SessionType::Kind::ExChoice, std::move(t), std::move(p), std::move(a), std::move(b));
}

TypePtr produce(ValueType v, TimeVar t, Prop p, TypePtr cont) {
    auto s = make(SessionType::Kind::Produce, std::move(t), std::move(p), {std::move(cont)});
    std::const_pointer_cast<SessionType>(s)->payload = std::move(v);
    return s;
}

TypePtr request(ValueType v, TimeVar t, Prop p, TypePtr cont) {
    auto s = make(SessionType::Kind::Request, std::move(t), std::move(p), {std::move(cont)});
    std::const_pointer_cast<SessionType>(s)->payload = std::move(v);
    return s;
}

TypePtr ref(std::string name) {
    auto s = std::make_shared<SessionType>();
    s->kind = SessionType::Kind::Ref;
    s->ref = std::move(name);
    return s;
}

TypePtr with_parts(const SessionType& a, std::vector<TypePtr> parts) {
    auto s = std::make_shared<SessionType>(a);
    s->parts = std::move(parts);
    return s;
}

}  // namespace ty

const char* connective_name(SessionType::Kind k) {
    switch (k) {
        case SessionType::Kind::Unit: return "Unit";
        case SessionType::Kind::Tensor: return "Tensor";
        case SessionType::Kind::Lolli: return "Lolli";
        case SessionType::Kind::InChoice: return "InChoice";
        case SessionType::Kind::ExChoice: return "ExChoice";
        case SessionType::Kind::Produce: return "Produce";
        case SessionType::Kind::Request: return "Request";
        case SessionType::Kind::Ref: return "TypeRef";
    }
    return "?";
}

const char* to_string(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::Mod: return "%";
        case BinOp::Eq: return "==";
        case BinOp::Ne: return "!=";
        case BinOp::Lt: return "<";
        case BinOp::Le: return "<=";
        case BinOp::Gt: return ">";
        case BinOp::Ge: return ">=";
        case BinOp::And: return "&&";
        case BinOp::Or: return "||";
    }
    return "?";
}

namespace ex {

namespace {
ExprPtr make(Expr::Kind k) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    return e;
}
}  // namespace

ExprPtr lit(Value v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Lit;
    e->lit = std::move(v);
    return e;
}

ExprPtr var(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Var;
    e->name = std::move(name);
    return e;
}

ExprPtr binary(BinOp op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Binary;
    e->op = op;
    e->args = {std::move(a), std::move(b)};
    return e;
}

ExprPtr not_(ExprPtr a) {
    auto e = std::const_pointer_cast<Expr>(make(Expr::Kind::Not));
    e->args = {std::move(a)};
    return e;
}

ExprPtr neg(ExprPtr a) {
    auto e = std::const_pointer_cast<Expr>(make(Expr::Kind::Neg));
    e->args = {std::move(a)};
    return e;
}

ExprPtr if_(ExprPtr c, ExprPtr a, ExprPtr b) {
    auto e = std::const_pointer_cast<Expr>(make(Expr::Kind::If));
    e->args = {std::move(c), std::move(a), std::move(b)};
    return e;
}

ExprPtr call(std::string name, std::vector<ExprPtr> args) {
    auto e = std::const_pointer_cast<Expr>(make(Expr::Kind::Call));
    e->name = std::move(name);
    e->args = std::move(args);
    return e;
}

}  // namespace ex

bool is_provider_form(Process::Kind k) {
    using K = Process::Kind;
    switch (k) {
        case K::Close: case K::LamRecv: case K::PairSend: case K::InL: case K::InR:
        case K::Offer: case K::Prod: case K::QueryRecv:
            return true;
        default:
            return false;
    }
}

bool is_client_form(Process::Kind k) {
    using K = Process::Kind;
    switch (k) {
        case K::Wait: case K::AppSend: case K::PairRecv: case K::Case: case K::SelectL:
        case K::SelectR: case K::Cons: case K::Supply:
            return true;
        default:
            return false;
    }
}

const char* keyword(Process::Kind k) {
    using K = Process::Kind;
    switch (k) {
        case K::Close: return "Close";
        case K::Wait: return "Wait";
        case K::LamRecv: return "Lam";
        case K::AppSend: return "App";
        case K::PairSend: return "SendCh";
        case K::PairRecv: return "RecvCh";
        case K::InL: return "SwitchL";
        case K::InR: return "SwitchR";
        case K::Case: return "Case";
        case K::Offer: return "Offer";
        case K::SelectL: return "SelectL";
        case K::SelectR: return "SelectR";
        case K::Prod: return "Prod";
        case K::Cons: return "Cons";
        case K::QueryRecv: return "Query";
        case K::Supply: return "Supply";
        case K::Fwd: return "Fwd";
        case K::Spawn: return "Spawn";
        case K::If: return "if";
    }
    return "?";
}

namespace pr {

namespace {
std::shared_ptr<Process> provider(Process::Kind k, TimeVar t, Prop p) {
    auto n = std::make_shared<Process>();
    n->kind = k;
    n->binder = std::move(t);
    n->pred = std::move(p);
    return n;
}

std::shared_ptr<Process> client(Process::Kind k, TimeExpr at, std::string chan) {
    auto n = std::make_shared<Process>();
    n->kind = k;
    n->at = std::move(at);
    n->chan = std::move(chan);
    return n;
}
}  // namespace

ProcPtr close(TimeVar t, Prop p) { return provider(Process::Kind::Close, std::move(t), std::move(p)); }

ProcPtr wait(TimeExpr at, std::string chan, ProcPtr cont) {
    auto n = client(Process::Kind::Wait, std::move(at), std::move(chan));
    n->first = std::move(cont);
    return n;
}

ProcPtr lam(TimeVar t, Prop p, std::string var, TypePtr annot, ProcPtr cont) {
    auto n = provider(Process::Kind::LamRecv, std::move(t), std::move(p));
    n->var = std::move(var);
    n->annot = std::move(annot);
    n->first = std::move(cont);
    return n;
}

ProcPtr app(TimeExpr at, std::string chan, ProcPtr payload, ProcPtr cont) {
    auto n = client(Process::Kind::AppSend, std::move(at), std::move(chan));
    n->first = std::move(payload);
    n->second = std::move(cont);
    return n;
}

ProcPtr send_ch(TimeVar t, Prop p, ProcPtr payload, ProcPtr cont) {
    auto n = provider(Process::Kind::PairSend, std::move(t), std::move(p));
    n->first = std::move(payload);
    n->second = std::move(cont);
    return n;
}

ProcPtr recv_ch(TimeExpr at, std::string chan, std::string var, ProcPtr cont) {
    auto n = client(Process::Kind::PairRecv, std::move(at), std::move(chan));
    n->var = std::move(var);
    n->first = std::move(cont);
    return n;
}

ProcPtr in_l(TimeVar t, Prop p, ProcPtr cont) {
    auto n = provider(Process::Kind::InL, std::move(t), std::move(p));
    n->first = std::move(cont);
    return n;
}

ProcPtr in_r(TimeVar t, Prop p, ProcPtr cont) {
    auto n = provider(Process::Kind::InR, std::move(t), std::move(p));
    n->first = std::move(cont);
    return n;
}

ProcPtr case_(TimeExpr at, std::string chan, ProcPtr l, ProcPtr r) {
    auto n = client(Process::Kind::Case, std::move(at), std::move(chan));
    n->first = std::move(l);
    n->second = std::move(r);
    return n;
}

ProcPtr offer(TimeVar t, Prop p, ProcPtr l, ProcPtr r) {
    auto n = provider(Process::Kind::Offer, std::move(t), std::move(p));
    n->first = std::move(l);
    n->second = std::move(r);
    return n;
}

ProcPtr select_l(TimeExpr at, std::string chan, ProcPtr cont) {
    auto n = client(Process::Kind::SelectL, std::move(at), std::move(chan));
    n->first = std::move(cont);
    return n;
}

ProcPtr select_r(TimeExpr at, std::string chan, ProcPtr cont) {
    auto n = client(Process::Kind::SelectR, std::move(at), std::move(chan));
    n->first = std::move(cont);
    return n;
}

ProcPtr prod(TimeVar t, Prop p, ExprPtr e, ProcPtr cont) {
    auto n = provider(Process::Kind::Prod, std::move(t), std::move(p));
    n->expr = std::move(e);
    n->first = std::move(cont);
    return n;
}

ProcPtr cons(TimeExpr at, std::string chan, std::string var, ProcPtr cont) {
    auto n = client(Process::Kind::Cons, std::move(at), std::move(chan));
    n->var = std::move(var);
    n->first = std::move(cont);
    return n;
}

ProcPtr query(TimeVar t, Prop p, std::string var, ProcPtr cont) {
    auto n = provider(Process::Kind::QueryRecv, std::move(t), std::move(p));
    n->var = std::move(var);
    n->first = std::move(cont);
    return n;
}

ProcPtr supply(TimeExpr at, std::string chan, ExprPtr e, ProcPtr cont) {
    auto n = client(Process::Kind::Supply, std::move(at), std::move(chan));
    n->expr = std::move(e);
    n->first = std::move(cont);
    return n;
}

ProcPtr fwd(TimeExpr at, std::string chan) { return client(Process::Kind::Fwd, std::move(at), std::move(chan)); }

ProcPtr spawn(TimeExpr at, std::string callee, std::vector<std::string> args, std::string var, TypePtr annot,
              ProcPtr cont) {
    auto n = std::make_shared<Process>();
    n->kind = Process::Kind::Spawn;
    n->at = std::move(at);
    n->callee = std::move(callee);
    n->args = std::move(args);
    n->var = std::move(var);
    n->annot = std::move(annot);
    n->first = std::move(cont);
    return n;
}

ProcPtr if_(ExprPtr c, ProcPtr then_p, ProcPtr else_p) {
    auto n = std::make_shared<Process>();
    n->kind = Process::Kind::If;
    n->expr = std::move(c);
    n->first = std::move(then_p);
    n->second = std::move(else_p);
    return n;
}

}  // namespace pr

std::string to_string(const ActionTemplate& a) {
    using K = ActionTemplate::Kind;
    switch (a.kind) {
        case K::RecvL: return "?L";
        case K::RecvR: return "?R";
        case K::SendL: return "!L";
        case K::SendR: return "!R";
        case K::SendVal: return "!val(" + a.extern_fn + ")";
        case K::RecvVal: return "?val";
        case K::SendClose: return "!cls";
        case K::RecvClose: return "?cls";
        case K::SendChan: return "!chan";
        case K::RecvChan: return "?chan";
    }
    return "?";
}

namespace {
template <class T>
const T* find_named(const std::vector<T>& v, const std::string& n) {
    auto it = std::find_if(v.begin(), v.end(), [&](const T& d) { return d.name == n; });
    return it == v.end() ? nullptr : &*it;
}
}  // namespace

const SortDecl* Program::find_sort(const std::string& n) const { return find_named(sorts, n); }
const ExternDecl* Program::find_extern(const std::string& n) const { return find_named(externs, n); }
const TypeDecl* Program::find_type(const std::string& n) const { return find_named(types, n); }
const ProcDecl* Program::find_proc(const std::string& n) const { return find_named(procs, n); }
const AutomatonDecl* Program::find_automaton(const std::string& n) const { return find_named(automata, n); }
const SystemDecl* Program::find_system(const std::string& n) const { return find_named(systems, n); }

}  // namespace tillst::syntax
