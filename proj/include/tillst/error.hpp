#pragma once

#include <stdexcept>
#include <string>

namespace tillst {

struct SourcePos {
    int line = 0;
    int column = 0;

    bool known() const { return line > 0; }
    std::string str() const { return std::to_string(line) + ":" + std::to_string(column); }
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tillst
