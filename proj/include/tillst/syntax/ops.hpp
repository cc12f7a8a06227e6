#pragma once

#include <set>
#include <string>

#include "tillst/syntax/ast.hpp"

namespace tillst::syntax {

class CyclicTypeDef : public Error {
public:
    using Error::Error;
};

class UnknownName : public Error {
public:
    using Error::Error;
};

// Replaces every type reference by its definition. Free time variables of a
// definition are captured by the binders around the use site. Binders that
// would shadow an enclosing binder are renamed.
TypePtr expand_type_refs(const Program& prog, const TypePtr& a);

UrgentType urgency_instantiate(const SessionType& a, const TimeExpr& at);

// ---- time substitution, capture-avoiding

TypePtr subst_time(const TypePtr& a, const TimeVar& v, const TimeExpr& by);
ProcPtr subst_time_in_process(const ProcPtr& p, const TimeVar& v, const TimeExpr& by);

// Rename the top binder of a type to `fresh` (which must not occur free in it).
TypePtr rename_binder(const TypePtr& a, const TimeVar& fresh);

void free_time_vars(const SessionType& a, std::set<TimeVar>& out);
void free_time_vars(const Process& p, std::set<TimeVar>& out);
void bound_time_vars(const SessionType& a, std::set<TimeVar>& out);

// ---- channels and values

std::set<std::string> free_channels(const Process& p);
ProcPtr subst_chan(const ProcPtr& p, const std::string& x, const std::string& a);
ProcPtr subst_val(const ProcPtr& p, const std::string& x, const Value& v);
ExprPtr subst_val(const ExprPtr& e, const std::string& x, const Value& v);

// ---- equality

bool alpha_equal(const SessionType& a, const SessionType& b);
// Structural equality ignoring source positions; binders compared by name.
bool same_process(const Process& a, const Process& b);
bool same_process(const ProcPtr& a, const ProcPtr& b);
bool same_expr(const Expr& a, const Expr& b);
bool same_type(const TypePtr& a, const TypePtr& b);

// A name based on `base` that is not in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);
TimeVar fresh_time_var(const TimeVar& base, const std::set<TimeVar>& avoid);

}  // namespace tillst::syntax
