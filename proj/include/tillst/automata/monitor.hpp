#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tillst/runtime/trace.hpp"
#include "tillst/syntax/ast.hpp"

namespace tillst::automata {

struct TraceObligation {
    syntax::TypePtr type;  // expanded
    std::int64_t current_time = 0;
    std::map<temporal::TimeVar, std::int64_t> bound;  // binders already consumed
};

struct Verdict {
    enum class Kind { Conforms, Violation };
    enum class Reason { None, Time, Shape, EndOfTrace, AfterClose };
    Kind kind = Kind::Conforms;
    std::size_t index = 0;
    Reason reason = Reason::None;
    std::string detail;

    bool conforms() const { return kind == Kind::Conforms; }
    std::string str() const;
};

const char* to_string(Verdict::Reason r);

// Events are the provider-side actions on one channel, in order. Silent
// events are skipped; transmitted channels are not followed.
Verdict monitor_trace(const TraceObligation& obl, const std::vector<runtime::TraceEvent>& events);

// Checks `chan` within a whole trace, following transmitted channels with
// their component obligations and forwards that take a channel over.
// Indices refer to the whole trace.
Verdict monitor_channel(const TraceObligation& obl, const std::string& chan, const runtime::Trace& trace);

}  // namespace tillst::automata
