#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tillst/error.hpp"
#include "tillst/temporal/time.hpp"

namespace tillst::syntax {

using temporal::Prop;
using temporal::TimeExpr;
using temporal::TimeVar;

struct ValueType {
    enum class Kind { Bool, Int, Named };
    Kind kind = Kind::Int;
    std::string name;  // only for Named

    static ValueType boolean() { return {Kind::Bool, {}}; }
    static ValueType integer() { return {Kind::Int, {}}; }
    static ValueType named(std::string n) { return {Kind::Named, std::move(n)}; }

    bool operator==(const ValueType&) const = default;
};

std::string to_string(const ValueType& t);

struct Value {
    enum class Kind { Bool, Int, Opaque };
    Kind kind = Kind::Int;
    std::int64_t num = 0;  // bool as 0/1, int, or the opaque token
    std::string sort;      // only for Opaque

    static Value boolean(bool b) { return {Kind::Bool, b ? 1 : 0, {}}; }
    static Value integer(std::int64_t n) { return {Kind::Int, n, {}}; }
    static Value opaque(std::string sort, std::int64_t token) { return {Kind::Opaque, token, std::move(sort)}; }

    ValueType type() const;
    bool operator==(const Value&) const = default;
};

std::string to_string(const Value& v);

// ---------------------------------------------------------------- types

struct SessionType;
using TypePtr = std::shared_ptr<const SessionType>;

struct SessionType {
    enum class Kind { Unit, Tensor, Lolli, InChoice, ExChoice, Produce, Request, Ref };

    Kind kind = Kind::Unit;
    TimeVar binder;
    Prop pred;
    // Tensor/Lolli: argument then continuation. Choices: left then right.
    // Produce/Request: the continuation only.
    std::vector<TypePtr> parts;
    ValueType payload;
    std::string ref;
    SourcePos pos;

    const SessionType& part(std::size_t i) const { return *parts.at(i); }
};

namespace ty {
TypePtr unit(TimeVar t, Prop p);
TypePtr binary(SessionType::Kind k, TimeVar t, Prop p, TypePtr a, TypePtr b);
TypePtr tensor(TimeVar t, Prop p, TypePtr a, TypePtr b);
TypePtr lolli(TimeVar t, Prop p, TypePtr a, TypePtr b);
TypePtr in_choice(TimeVar t, Prop p, TypePtr a, TypePtr b);
TypePtr ex_choice(TimeVar t, Prop p, TypePtr a, TypePtr b);
TypePtr produce(ValueType v, TimeVar t, Prop p, TypePtr cont);
TypePtr request(ValueType v, TimeVar t, Prop p, TypePtr cont);
TypePtr ref(std::string name);
// Same node with different parts.
TypePtr with_parts(const SessionType& a, std::vector<TypePtr> parts);
}  // namespace ty

const char* connective_name(SessionType::Kind k);

// Top connective with the binder stripped; the components keep their timing.
struct UrgentType {
    SessionType::Kind kind = SessionType::Kind::Unit;
    ValueType payload;
    std::vector<TypePtr> parts;
};

// ---------------------------------------------------------------- expressions

enum class BinOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

const char* to_string(BinOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Lit, Var, Binary, Not, Neg, If, Call };

    Kind kind = Kind::Lit;
    Value lit;
    std::string name;  // Var name or Call target
    BinOp op = BinOp::Add;
    std::vector<ExprPtr> args;
    SourcePos pos;
};

namespace ex {
ExprPtr lit(Value v);
ExprPtr var(std::string name);
ExprPtr binary(BinOp op, ExprPtr a, ExprPtr b);
ExprPtr not_(ExprPtr a);
ExprPtr neg(ExprPtr a);
ExprPtr if_(ExprPtr c, ExprPtr a, ExprPtr b);
ExprPtr call(std::string name, std::vector<ExprPtr> args);
}  // namespace ex

// ---------------------------------------------------------------- processes

struct Process;
using ProcPtr = std::shared_ptr<const Process>;

struct Process {
    enum class Kind {
        Close, Wait,
        LamRecv, AppSend,
        PairSend, PairRecv,
        InL, InR, Case,
        Offer, SelectL, SelectR,
        Prod, Cons,
        QueryRecv, Supply,
        Fwd, Spawn,
        If,
    };

    Kind kind = Kind::Close;
    SourcePos pos;

    // Provider forms: the time binder and its predicate.
    TimeVar binder;
    Prop pred;

    // Client forms, Fwd and Spawn: the concrete time.
    TimeExpr at;

    std::string chan;    // channel acted on (client forms, Fwd)
    std::string var;     // bound channel or value variable
    TypePtr annot;       // optional type of the bound channel (LamRecv, PairRecv, Spawn)
    ExprPtr expr;        // Prod, Supply, If
    std::string callee;  // Spawn
    std::vector<std::string> args;  // Spawn channel arguments

    // Continuations. AppSend/PairSend: payload then continuation.
    // Case/Offer/If: left (then) and right (else). Otherwise first only.
    ProcPtr first, second;
};

bool is_provider_form(Process::Kind k);
bool is_client_form(Process::Kind k);
const char* keyword(Process::Kind k);

namespace pr {
ProcPtr close(TimeVar t, Prop p);
ProcPtr wait(TimeExpr at, std::string chan, ProcPtr cont);
ProcPtr lam(TimeVar t, Prop p, std::string var, TypePtr annot, ProcPtr cont);
ProcPtr app(TimeExpr at, std::string chan, ProcPtr payload, ProcPtr cont);
ProcPtr send_ch(TimeVar t, Prop p, ProcPtr payload, ProcPtr cont);
ProcPtr recv_ch(TimeExpr at, std::string chan, std::string var, ProcPtr cont);
ProcPtr in_l(TimeVar t, Prop p, ProcPtr cont);
ProcPtr in_r(TimeVar t, Prop p, ProcPtr cont);
ProcPtr case_(TimeExpr at, std::string chan, ProcPtr l, ProcPtr r);
ProcPtr offer(TimeVar t, Prop p, ProcPtr l, ProcPtr r);
ProcPtr select_l(TimeExpr at, std::string chan, ProcPtr cont);
ProcPtr select_r(TimeExpr at, std::string chan, ProcPtr cont);
ProcPtr prod(TimeVar t, Prop p, ExprPtr e, ProcPtr cont);
ProcPtr cons(TimeExpr at, std::string chan, std::string var, ProcPtr cont);
ProcPtr query(TimeVar t, Prop p, std::string var, ProcPtr cont);
ProcPtr supply(TimeExpr at, std::string chan, ExprPtr e, ProcPtr cont);
ProcPtr fwd(TimeExpr at, std::string chan);
ProcPtr spawn(TimeExpr at, std::string callee, std::vector<std::string> args, std::string var, TypePtr annot,
              ProcPtr cont);
ProcPtr if_(ExprPtr c, ProcPtr then_p, ProcPtr else_p);
}  // namespace pr

// ---------------------------------------------------------------- declarations

struct SortDecl {
    std::string name;
    SourcePos pos;
};

struct ExternDecl {
    std::string name;
    std::vector<ValueType> args;
    ValueType ret;
    SourcePos pos;
};

struct TypeDecl {
    std::string name;
    TypePtr type;
    SourcePos pos;
};

struct Param {
    std::string name;
    TypePtr type;
};

struct ProcDecl {
    std::string name;
    std::vector<Param> params;
    TypePtr offered;
    ProcPtr body;
    SourcePos pos;
};

struct ActionTemplate {
    enum class Kind { RecvL, RecvR, SendL, SendR, SendVal, RecvVal, SendClose, RecvClose, SendChan, RecvChan };
    Kind kind = Kind::SendClose;
    std::string extern_fn;  // SendVal only

    bool operator==(const ActionTemplate&) const = default;
};

std::string to_string(const ActionTemplate& a);

inline constexpr const char* kAcceptState = "accept";

struct TransitionDecl {
    std::string from;
    std::int64_t guard = 0;  // lower bound relative to the state's entry time
    ActionTemplate action;
    std::string to;
    SourcePos pos;
};

struct AutomatonDecl {
    std::string name;
    std::string initial;
    std::vector<std::string> states;
    std::vector<TransitionDecl> transitions;
    SourcePos pos;
};

// One component of a closed system. A label naming a parameter of the root
// binds that parameter; the others feed the root's successive Lolli layers.
struct SystemArg {
    std::string label;
    std::string component;  // an automaton or a parameterless proc
    std::string alias;      // channel name; defaults to the label
    SourcePos pos;
};

struct SystemDecl {
    std::string name;
    std::string root;
    std::vector<SystemArg> args;
    TimeExpr start;
    SourcePos pos;
};

struct Program {
    std::vector<SortDecl> sorts;
    std::vector<ExternDecl> externs;
    std::vector<TypeDecl> types;
    std::vector<ProcDecl> procs;
    std::vector<AutomatonDecl> automata;
    std::vector<SystemDecl> systems;

    const SortDecl* find_sort(const std::string& n) const;
    const ExternDecl* find_extern(const std::string& n) const;
    const TypeDecl* find_type(const std::string& n) const;
    const ProcDecl* find_proc(const std::string& n) const;
    const AutomatonDecl* find_automaton(const std::string& n) const;
    const SystemDecl* find_system(const std::string& n) const;
};

}  // namespace tillst::syntax
