#include "tillst/runtime/sequence.hpp"

#include <algorithm>

#include "tillst/runtime/lts.hpp"

namespace tillst::runtime {

using NK = SeqNode::Kind;

std::size_t StepSequence::comm_steps() const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const SeqNode& n) { return n.kind == NK::StepC; }));
}

void StepSequence::step_t(std::int64_t to) {
    Configuration c = end();
    std::int64_t from = end_time();
    nodes.push_back({NK::StepT, from, to, c, c});
}

void StepSequence::step_c(Configuration to) {
    Configuration c = end();
    std::int64_t t = end_time();
    nodes.push_back({NK::StepC, t, t, std::move(c), std::move(to)});
}

namespace {

// The channel a step introduced, if any.
Channel introduced(const Configuration& from, const Configuration& to) {
    auto before = channel_names(from);
    for (const auto& n : channel_names(to))
        if (!before.count(n)) return n;
    return "#?";
}

}  // namespace

bool replay(const RunContext& ctx, const StepSequence& s) {
    std::int64_t t = s.start_time;
    Configuration cur = s.start;
    for (const auto& n : s.nodes) {
        if (n.from_time != t || !equivalent(n.from, cur)) return false;
        if (n.kind == NK::StepT) {
            if (n.to_time < n.from_time || !equivalent(n.to, n.from)) return false;
        } else {
            if (n.to_time != n.from_time) return false;
            Channel fresh = introduced(n.from, n.to);
            auto target = congruence_normalize(n.to);
            bool ok = false;
            try {
                for (const auto& r : comm_step(ctx, n.from, n.from_time, [&] { return fresh; })) {
                    if (same_config(r.result, target)) {
                        ok = true;
                        break;
                    }
                }
            } catch (const Error&) {
                return false;
            }
            if (!ok) return false;
        }
        t = n.to_time;
        cur = n.to;
    }
    return true;
}

StepSequence seq_concat(const StepSequence& a, const StepSequence& b) {
    if (a.end_time() > b.start_time) throw SequenceMismatch("second sequence starts before the first ends");
    if (!equivalent(a.end(), b.start)) throw SequenceMismatch("sequences do not meet in the same configuration");
    StepSequence out = a;
    if (a.end_time() < b.start_time) out.step_t(b.start_time);
    for (const auto& n : b.nodes) out.nodes.push_back(n);
    return out;
}

StepSequence seq_interleave(const StepSequence& a, const StepSequence& b) {
    std::int64_t t = std::min(a.start_time, b.start_time);
    Configuration x = a.start, y = b.start;
    StepSequence out = StepSequence::refl(t, Configuration::par(x, y));
    // Nodes merge by the instant they reach; the left side wins ties.
    auto key = [](const SeqNode& n) { return n.kind == NK::StepT ? n.to_time : n.from_time; };
    std::size_t i = 0, j = 0;
    while (i < a.nodes.size() || j < b.nodes.size()) {
        bool left = i < a.nodes.size() && (j == b.nodes.size() || key(a.nodes[i]) <= key(b.nodes[j]));
        const SeqNode& n = left ? a.nodes[i++] : b.nodes[j++];
        if (key(n) > t) {
            out.step_t(key(n));
            t = key(n);
        }
        if (n.kind == NK::StepT) continue;
        (left ? x : y) = n.to;
        out.step_c(Configuration::par(x, y));
    }
    std::int64_t end = std::max(a.end_time(), b.end_time());
    if (end > t) out.step_t(end);
    return out;
}

}  // namespace tillst::runtime
