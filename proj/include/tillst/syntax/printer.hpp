#pragma once

#include <string>

#include "tillst/syntax/ast.hpp"

namespace tillst::syntax {

// Source-form printing; parse_program(print_program(p)) reproduces p.
std::string print_time(const TimeExpr& t);
std::string print_prop(const Prop& p);
std::string print_type(const SessionType& a);
std::string print_expr(const Expr& e);
std::string print_process(const Process& p);
std::string print_program(const Program& prog);

// Structural equality of whole programs, positions ignored.
bool same_program(const Program& a, const Program& b);

}  // namespace tillst::syntax
