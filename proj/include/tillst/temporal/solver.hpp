#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tillst/temporal/time.hpp"

namespace tillst::temporal {

class FormulaTooLarge : public Error {
public:
    using Error::Error;
};

class SolverTimeout : public Error {
public:
    using Error::Error;
};

class SolverFailure : public Error {
public:
    using Error::Error;
};

inline constexpr std::size_t kDefaultLiteralBudget = 1'000'000;

// x_u - x_v <= c, with index 0 reserved for the origin.
struct DiffConstraint {
    std::size_t u = 0;
    std::size_t v = 0;
    std::int64_t c = 0;
};

struct SolveOptions {
    std::size_t literal_budget = kDefaultLiteralBudget;
};

// Satisfiability over the integers with the origin fixed at 0. Returns a
// witness assignment for every variable in `g` and in the formulas.
std::optional<Assignment> solve_satisfiable(const TimeCtx& g, const PropCtx& f,
                                            const SolveOptions& opts = {});

// g; f |- p, i.e. f /\ ~p has no integer model.
bool entails(const TimeCtx& g, const PropCtx& f, const Prop& p, const SolveOptions& opts = {});

// A countermodel of the entailment when it fails.
std::optional<Assignment> entailment_countermodel(const TimeCtx& g, const PropCtx& f, const Prop& p,
                                                  const SolveOptions& opts = {});

// Feasibility of one conjunction of difference constraints over `n` nodes.
std::optional<std::vector<std::int64_t>> solve_difference_constraints(
    std::size_t n, const std::vector<DiffConstraint>& cs);

// QF_LIA script whose `unsat` answer means the entailment holds.
std::string emit_smtlib(const TimeCtx& g, const PropCtx& f, const Prop& p);

enum class SatAnswer { Sat, Unsat, Unknown };

struct ExternalSolverConfig {
    std::string binary;
    std::vector<std::string> extra_args;
    std::chrono::milliseconds timeout{5000};
};

// Runs the solver binary on a script file and reads its first sat/unsat answer.
SatAnswer run_external_solver(const ExternalSolverConfig& cfg, const std::string& script);

// Answers entailment queries; the type checker talks to this interface.
class EntailmentBackend {
public:
    virtual ~EntailmentBackend() = default;
    virtual bool entails(const TimeCtx& g, const PropCtx& f, const Prop& p) = 0;
    virtual std::string name() const = 0;
};

class InternalBackend : public EntailmentBackend {
public:
    explicit InternalBackend(SolveOptions opts = {}) : opts_(opts) {}
    bool entails(const TimeCtx& g, const PropCtx& f, const Prop& p) override;
    std::string name() const override { return "internal"; }

private:
    SolveOptions opts_;
};

class ExternalBackend : public EntailmentBackend {
public:
    explicit ExternalBackend(ExternalSolverConfig cfg) : cfg_(std::move(cfg)) {}
    bool entails(const TimeCtx& g, const PropCtx& f, const Prop& p) override;
    std::string name() const override { return "external"; }

private:
    ExternalSolverConfig cfg_;
};

// Locate a solver binary from SOLVER_BIN, then z3 or cvc5 on PATH.
std::optional<std::string> find_solver_binary();

}  // namespace tillst::temporal
