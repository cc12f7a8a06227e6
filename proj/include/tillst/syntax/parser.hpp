#pragma once

#include <set>
#include <string>

#include "tillst/syntax/ast.hpp"

namespace tillst::syntax {

class ParseError : public Error {
public:
    ParseError(SourcePos pos, std::string found, std::set<std::string> expected);

    SourcePos pos;
    std::string found;
    std::set<std::string> expected;
};

// Parses a whole `.tsl` file and checks that declaration names are unique and
// references resolve.
Program parse_program(const std::string& source);

// Single-construct entry points; `sorts` lists named sorts in scope.
TypePtr parse_type(const std::string& source, const std::set<std::string>& sorts = {});
ProcPtr parse_process(const std::string& source, const std::set<std::string>& sorts = {});
Prop parse_prop(const std::string& source);
TimeExpr parse_time(const std::string& source);

std::string read_file(const std::string& path);

}  // namespace tillst::syntax
