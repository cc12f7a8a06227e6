#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tillst/runtime/sequence.hpp"

namespace tillst::runtime {

class DomainError : public Error {
public:
    using Error::Error;
};

struct Breakpoint {
    std::int64_t time = 0;
    Configuration config;
};

// Piecewise-constant on [start, end); the value at T is the configuration of
// the last breakpoint at or before T. A trajectory built from a run carries
// the sequence that computes it.
struct Trajectory {
    std::int64_t start = 0;
    std::optional<std::int64_t> end;  // nullopt: unbounded
    std::vector<Breakpoint> points;
    std::optional<StepSequence> sigma;

    bool contains(std::int64_t t) const { return t >= start && (!end || t < *end); }
    bool empty() const { return end && *end <= start; }
};

// Value at T is the configuration after every reduction at instants <= T.
Trajectory trajectory_of(const StepSequence& s);

const Configuration& traj_at(const Trajectory& w, std::int64_t t);
Trajectory traj_concat(const Trajectory& a, const Trajectory& b);
// Left part on [start, T), right part on [T, end).
std::pair<Trajectory, Trajectory> traj_partition(const Trajectory& w, std::int64_t t);
Trajectory traj_interleave(const Trajectory& a, const Trajectory& b);

Trajectory traj_restrict(const Trajectory& w, std::int64_t start, std::optional<std::int64_t> end);

// Same domain and equivalent configurations at every instant.
bool traj_equiv(const Trajectory& a, const Trajectory& b);

// The carried sequence replays and computes exactly this trajectory.
bool computable(const RunContext& ctx, const Trajectory& w);

}  // namespace tillst::runtime
