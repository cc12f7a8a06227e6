#include "tillst/runtime/eval.hpp"

namespace tillst::runtime {

using syntax::BinOp;
using syntax::Expr;
using syntax::Value;
using syntax::ValueType;

RunContext make_context(const syntax::Program& prog, std::uint64_t seed) {
    RunContext ctx;
    ctx.prog = &prog;
    ctx.automata = automata::load_automata(prog);
    ctx.seed = seed;
    return ctx;
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
    // splitmix64 finalizer over the running state
    std::uint64_t z = h ^ (x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t mix(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) h = mix(h, c);
    return mix(h, s.size());
}

std::int64_t as_int(const Value& v, const Expr& e) {
    if (v.kind != Value::Kind::Int) throw ValueEvalError(e.pos.str() + ": expected an int value");
    return v.num;
}

bool as_bool(const Value& v, const Expr& e) {
    if (v.kind != Value::Kind::Bool) throw ValueEvalError(e.pos.str() + ": expected a bool value");
    return v.num != 0;
}

}  // namespace

Value extern_value(const RunContext& ctx, const std::string& fn, const std::vector<Value>& args) {
    const syntax::ExternDecl* d = ctx.prog ? ctx.prog->find_extern(fn) : nullptr;
    if (!d) throw ValueEvalError("extern '" + fn + "' is not declared");
    if (d->args.size() != args.size()) throw ValueEvalError("extern '" + fn + "' called with wrong arity");
    std::uint64_t h = mix(ctx.seed, fn);
    for (const auto& a : args) {
        h = mix(h, static_cast<std::uint64_t>(a.kind));
        h = mix(h, static_cast<std::uint64_t>(a.num));
        h = mix(h, a.sort);
    }
    switch (d->ret.kind) {
        case ValueType::Kind::Bool: return Value::boolean((h >> 7) & 1);
        case ValueType::Kind::Int: return Value::integer(static_cast<std::int64_t>(h % 1000));
        case ValueType::Kind::Named: return Value::opaque(d->ret.name, static_cast<std::int64_t>(h % 1000));
    }
    return {};
}

Value eval_expr(const RunContext& ctx, const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Lit: return e.lit;
        case Expr::Kind::Var: throw ValueEvalError(e.pos.str() + ": unbound value variable '" + e.name + "'");
        case Expr::Kind::Not: return Value::boolean(!as_bool(eval_expr(ctx, *e.args[0]), e));
        case Expr::Kind::Neg: return Value::integer(-as_int(eval_expr(ctx, *e.args[0]), e));
        case Expr::Kind::If:
            return as_bool(eval_expr(ctx, *e.args[0]), e) ? eval_expr(ctx, *e.args[1]) : eval_expr(ctx, *e.args[2]);
        case Expr::Kind::Call: {
            std::vector<Value> args;
            for (const auto& a : e.args) args.push_back(eval_expr(ctx, *a));
            return extern_value(ctx, e.name, args);
        }
        case Expr::Kind::Binary: break;
    }
    if (e.op == BinOp::And) {
        return Value::boolean(as_bool(eval_expr(ctx, *e.args[0]), e) && as_bool(eval_expr(ctx, *e.args[1]), e));
    }
    if (e.op == BinOp::Or) {
        return Value::boolean(as_bool(eval_expr(ctx, *e.args[0]), e) || as_bool(eval_expr(ctx, *e.args[1]), e));
    }
    Value a = eval_expr(ctx, *e.args[0]);
    Value b = eval_expr(ctx, *e.args[1]);
    if (e.op == BinOp::Eq) return Value::boolean(a == b);
    if (e.op == BinOp::Ne) return Value::boolean(!(a == b));
    std::int64_t x = as_int(a, e), y = as_int(b, e);
    switch (e.op) {
        case BinOp::Add: return Value::integer(static_cast<std::int64_t>(static_cast<std::uint64_t>(x) + static_cast<std::uint64_t>(y)));
        case BinOp::Sub: return Value::integer(static_cast<std::int64_t>(static_cast<std::uint64_t>(x) - static_cast<std::uint64_t>(y)));
        case BinOp::Mul: return Value::integer(static_cast<std::int64_t>(static_cast<std::uint64_t>(x) * static_cast<std::uint64_t>(y)));
        case BinOp::Div:
        case BinOp::Mod:
            if (y == 0) throw ValueEvalError(e.pos.str() + ": division by zero");
            return Value::integer(e.op == BinOp::Div ? x / y : x % y);
        case BinOp::Lt: return Value::boolean(x < y);
        case BinOp::Le: return Value::boolean(x <= y);
        case BinOp::Gt: return Value::boolean(x > y);
        case BinOp::Ge: return Value::boolean(x >= y);
        default: break;
    }
    throw ValueEvalError(e.pos.str() + ": bad operator");
}

Value default_value(const ValueType& t) {
    switch (t.kind) {
        case ValueType::Kind::Bool: return Value::boolean(false);
        case ValueType::Kind::Int: return Value::integer(0);
        case ValueType::Kind::Named: return Value::opaque(t.name, 0);
    }
    return {};
}

syntax::ProcPtr settle(const RunContext& ctx, syntax::ProcPtr p) {
    while (p && p->kind == syntax::Process::Kind::If) {
        Value c = eval_expr(ctx, *p->expr);
        if (c.kind != Value::Kind::Bool) throw ValueEvalError(p->pos.str() + ": condition is not a bool");
        p = c.num ? p->first : p->second;
    }
    return p;
}

}  // namespace tillst::runtime
