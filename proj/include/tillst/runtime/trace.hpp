#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tillst/runtime/config.hpp"

namespace tillst::runtime {

// One communication, recorded as the provider's half, or a silent step.
struct TraceEvent {
    std::int64_t time = 0;
    Action action;

    bool operator==(const TraceEvent&) const = default;
};

using Trace = std::vector<TraceEvent>;

class TraceFormatError : public Error {
public:
    using Error::Error;
};

// {"time":..,"dir":..,"kind":..,"channel":..,"payload":..}
std::string to_json_line(const TraceEvent& e);
TraceEvent from_json_line(const std::string& line);

void write_trace(std::ostream& os, const Trace& t);
Trace read_trace(std::istream& is);

syntax::Value parse_value(const std::string& s);

}  // namespace tillst::runtime
