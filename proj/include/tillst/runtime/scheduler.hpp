#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tillst/runtime/lts.hpp"
#include "tillst/runtime/sequence.hpp"

namespace tillst::runtime {

struct RunOptions {
    std::optional<std::int64_t> horizon;  // instants below it are processed; default start + 10^6
    std::string fresh_prefix = "#";
    std::string channel_prefix;           // prepended to a system's channel names
    std::size_t max_steps = 1'000'000;
    // Picks which enabled redex fires next; the default takes the first in channel order.
    std::function<std::size_t(const std::vector<Redex>&)> choose;
};

inline constexpr std::int64_t kDefaultHorizon = 1'000'000;

struct RunFailure {
    enum class Kind { TimingViolation, Deadlock, StepLimit };
    Kind kind = Kind::Deadlock;
    std::int64_t time = 0;
    // TimingViolation
    Channel channel;
    std::int64_t client_time = 0;
    std::string provider_predicate;  // as evaluated at the client's instant; empty if no provider
    std::string counterexample;
    // Deadlock
    std::vector<std::string> pending;

    std::string message() const;
};

const char* to_string(RunFailure::Kind k);

struct RunResult {
    Trace trace;
    Configuration final_config;
    StepSequence sigma;
    std::optional<RunFailure> failure;
    bool reached_horizon = false;

    bool ok() const { return !failure.has_value(); }
};

RunResult run_scheduler(const RunContext& ctx, const Configuration& omega, std::int64_t start,
                        const RunOptions& opts = {});

class SystemError : public Error {
public:
    using Error::Error;
};

// The closed composition named by a `system` declaration, with a harness on the root channel.
struct BuiltSystem {
    Configuration config;
    std::int64_t start = 0;
    Channel root;
};

BuiltSystem build_system(const RunContext& ctx, const syntax::SystemDecl& sys, const RunOptions& opts = {});
RunResult run_system(const RunContext& ctx, const std::string& name, const RunOptions& opts = {});

// Harness that drives `chan` as a client of `type` from `start`, handing over
// `supplies` on successive Lolli layers.
Configuration harness(const Channel& chan, const syntax::TypePtr& type, std::int64_t start,
                      std::vector<Channel> supplies = {});

}  // namespace tillst::runtime
