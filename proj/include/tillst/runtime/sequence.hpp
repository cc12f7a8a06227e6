#pragma once

#include <cstdint>
#include <vector>

#include "tillst/runtime/config.hpp"
#include "tillst/runtime/eval.hpp"

namespace tillst::runtime {

class SequenceMismatch : public Error {
public:
    using Error::Error;
};

struct SeqNode {
    enum class Kind { StepT, StepC };
    Kind kind = Kind::StepT;
    std::int64_t from_time = 0, to_time = 0;  // equal for StepC
    Configuration from, to;                   // equal for StepT
};

// Refl(start_time, start) followed by the nodes in order.
struct StepSequence {
    std::int64_t start_time = 0;
    Configuration start;
    std::vector<SeqNode> nodes;

    static StepSequence refl(std::int64_t t, Configuration c) { return {t, std::move(c), {}}; }

    std::int64_t end_time() const { return nodes.empty() ? start_time : nodes.back().to_time; }
    const Configuration& end() const { return nodes.empty() ? start : nodes.back().to; }
    std::size_t comm_steps() const;

    void step_t(std::int64_t to);
    void step_c(Configuration to);
};

// Each StepC must be one comm_step of its source at its instant; clock steps
// must not go back.
bool replay(const RunContext& ctx, const StepSequence& s);

StepSequence seq_concat(const StepSequence& a, const StepSequence& b);
StepSequence seq_interleave(const StepSequence& a, const StepSequence& b);

}  // namespace tillst::runtime
