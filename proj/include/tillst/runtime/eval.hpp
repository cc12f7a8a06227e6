#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tillst/automata/automaton.hpp"
#include "tillst/syntax/ast.hpp"

namespace tillst::runtime {

class ValueEvalError : public Error {
public:
    using Error::Error;
};

// Everything a step needs besides the configuration itself.
struct RunContext {
    const syntax::Program* prog = nullptr;
    std::map<std::string, automata::AutomatonDef> automata;
    std::uint64_t seed = 0;
};

RunContext make_context(const syntax::Program& prog, std::uint64_t seed = 0);

// Externs are pure functions of the seed, their name and their arguments.
syntax::Value extern_value(const RunContext& ctx, const std::string& fn, const std::vector<syntax::Value>& args);
syntax::Value eval_expr(const RunContext& ctx, const syntax::Expr& e);

// Placeholder sent by a harness for a requested value.
syntax::Value default_value(const syntax::ValueType& t);

// Resolves conditionals at the head of a process.
syntax::ProcPtr settle(const RunContext& ctx, syntax::ProcPtr p);

}  // namespace tillst::runtime
