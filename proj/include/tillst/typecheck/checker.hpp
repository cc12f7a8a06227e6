#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tillst/syntax/ast.hpp"
#include "tillst/temporal/solver.hpp"

namespace tillst::typecheck {

using syntax::ProcPtr;
using syntax::SessionType;
using syntax::TypePtr;
using syntax::ValueType;
using temporal::Assignment;
using temporal::Prop;
using temporal::PropCtx;
using temporal::TimeCtx;
using temporal::TimeExpr;
using temporal::TimeVar;

enum class ErrorKind {
    TimingViolation,
    PredicateUnsatisfied,
    LinearityViolation,
    ShapeMismatch,
    RetypeFailure,
    ExprTypeError,
    UnresolvedReference,
};

const char* to_string(ErrorKind k);

class TypingError : public Error {
public:
    TypingError(ErrorKind kind, SourcePos pos, std::string judgment, std::string detail,
                std::optional<Assignment> counterexample = std::nullopt);

    ErrorKind kind;
    SourcePos pos;
    std::string judgment;
    std::string detail;
    std::optional<Assignment> counterexample;

    std::string render() const;
};

using ValueCtx = std::map<std::string, ValueType>;
using ChannelCtx = std::map<std::string, TypePtr>;

// One entailment question asked while checking, with the answer used.
struct Query {
    TimeCtx g;
    PropCtx f;
    Prop p;
    SourcePos pos;
    std::string decl;
    std::string rule;
    bool holds = false;
};

std::string render_entailment(const TimeCtx& g, const PropCtx& f, const Prop& p);

class Checker {
public:
    Checker(const syntax::Program& prog, temporal::EntailmentBackend& backend, std::vector<Query>* log = nullptr);

    // Checks a declaration at t0 with its parameters as the linear context.
    void check_decl(const syntax::ProcDecl& d);

    void check_process(const TimeCtx& g, const PropCtx& f, const ValueCtx& gamma, const ChannelCtx& delta,
                       const ProcPtr& p, const TimeExpr& at, const TypePtr& a);

    // `a` is the type of the forwarded channel, `b` the offered type.
    bool fwd_retype(const TimeCtx& g, const PropCtx& f, const TypePtr& a, const TypePtr& b, const TimeExpr& at,
                    std::string* why = nullptr);
    // `a` is the spawned process's offered type, `b` the type the client uses.
    bool cut_retype(const TimeCtx& g, const PropCtx& f, const TypePtr& a, const TypePtr& b, const TimeExpr& at,
                    std::string* why = nullptr);

    ValueType check_expr(const ValueCtx& gamma, const syntax::Expr& e);

    std::pair<ChannelCtx, ChannelCtx> split_context(const ChannelCtx& delta, const syntax::Process& p1,
                                                    const syntax::Process& p2);

    TypePtr expand(const TypePtr& a) const;

private:
    enum class Variance { Fwd, Cut };

    bool retype(Variance v, const TimeCtx& g, const PropCtx& f, const TypePtr& a, const TypePtr& b,
                const TimeExpr& at, std::string* why);
    bool ask(const TimeCtx& g, const PropCtx& f, const Prop& p, SourcePos pos, const char* rule);
    void require(const TimeCtx& g, const PropCtx& f, const Prop& p, SourcePos pos, const char* rule,
                 ErrorKind kind, const std::string& detail);

    void provider(const TimeCtx& g, const PropCtx& f, const ValueCtx& gamma, const ChannelCtx& delta,
                  const syntax::Process& p, const TimeExpr& at, const SessionType& a);
    void client(const TimeCtx& g, const PropCtx& f, const ValueCtx& gamma, const ChannelCtx& delta,
                const syntax::Process& p, const TimeExpr& at, const TypePtr& a);
    void spawn(const TimeCtx& g, const PropCtx& f, const ValueCtx& gamma, const ChannelCtx& delta,
               const syntax::Process& p, const TimeExpr& at, const TypePtr& a);

    const syntax::Program& prog_;
    temporal::EntailmentBackend& backend_;
    bool internal_;
    std::vector<Query>* log_;
    std::string decl_;
    std::vector<std::string> spawn_stack_;
};

// Checking with the internal solver, for callers that only need a verdict.
bool fwd_retype(const TimeCtx& g, const PropCtx& f, const TypePtr& a, const TypePtr& b, const TimeExpr& at);
bool cut_retype(const TimeCtx& g, const PropCtx& f, const TypePtr& a, const TypePtr& b, const TimeExpr& at);

struct DeclResult {
    std::string name;
    std::optional<TypingError> error;

    bool accepted() const { return !error.has_value(); }
};

std::vector<DeclResult> check_program(const syntax::Program& prog, temporal::EntailmentBackend& backend,
                                      std::vector<Query>* log = nullptr);
std::vector<DeclResult> check_program(const syntax::Program& prog);

}  // namespace tillst::typecheck
