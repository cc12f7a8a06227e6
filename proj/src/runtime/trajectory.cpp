#include "tillst/runtime/trajectory.hpp"

#include <algorithm>
#include <set>

namespace tillst::runtime {

using NK = SeqNode::Kind;

Trajectory trajectory_of(const StepSequence& s) {
    Trajectory w;
    w.start = s.start_time;
    w.points.push_back({s.start_time, s.start});
    for (const auto& n : s.nodes) {
        if (n.kind != NK::StepC) continue;
        if (w.points.back().time == n.from_time) {
            w.points.back().config = n.to;
        } else {
            w.points.push_back({n.from_time, n.to});
        }
    }
    w.sigma = s;
    return w;
}

const Configuration& traj_at(const Trajectory& w, std::int64_t t) {
    if (!w.contains(t)) throw DomainError("instant t0+" + std::to_string(t) + " outside the trajectory's domain");
    auto it = std::upper_bound(w.points.begin(), w.points.end(), t,
                               [](std::int64_t x, const Breakpoint& b) { return x < b.time; });
    if (it == w.points.begin()) throw DomainError("trajectory has no breakpoint at its start");
    return std::prev(it)->config;
}

Trajectory traj_restrict(const Trajectory& w, std::int64_t start, std::optional<std::int64_t> end) {
    Trajectory out;
    out.start = start;
    out.end = end;
    if (end && *end <= start) return out;
    if (!w.contains(start) || (end && w.end && *end > *w.end) || (!end && w.end))
        throw DomainError("restriction outside the trajectory's domain");
    out.points.push_back({start, traj_at(w, start)});
    for (const auto& b : w.points) {
        if (b.time > start && (!end || b.time < *end)) out.points.push_back(b);
    }
    return out;
}

namespace {

// The sequence cut at T: nodes strictly before T, and what happens from T on.
std::pair<StepSequence, StepSequence> split_sequence(const StepSequence& s, std::int64_t t) {
    StepSequence left = StepSequence::refl(s.start_time, s.start);
    std::size_t k = 0;
    for (; k < s.nodes.size(); ++k) {
        const auto& n = s.nodes[k];
        if (n.to_time >= t) break;
        left.nodes.push_back(n);
    }
    StepSequence right = StepSequence::refl(std::max(t, s.start_time), left.end());
    for (; k < s.nodes.size(); ++k) {
        auto n = s.nodes[k];
        if (n.kind == NK::StepT) {
            if (n.to_time <= t) continue;
            if (n.from_time < t) n.from_time = t;
        }
        right.nodes.push_back(n);
    }
    return {left, right};
}

}  // namespace

std::pair<Trajectory, Trajectory> traj_partition(const Trajectory& w, std::int64_t t) {
    if (t < w.start || (w.end && t > *w.end)) throw DomainError("partition point outside the domain");
    std::pair<Trajectory, Trajectory> out{traj_restrict(w, w.start, t), traj_restrict(w, t, w.end)};
    if (w.sigma) {
        auto [l, r] = split_sequence(*w.sigma, t);
        out.first.sigma = l;
        out.second.sigma = r;
    }
    return out;
}

Trajectory traj_concat(const Trajectory& a, const Trajectory& b) {
    if (!a.end || *a.end != b.start) throw DomainError("concatenated trajectories must have connected domains");
    Trajectory out;
    out.start = a.start;
    out.end = b.end;
    out.points = a.points;
    for (const auto& p : b.points) out.points.push_back(p);
    if (a.sigma && b.sigma) {
        try {
            out.sigma = seq_concat(*a.sigma, *b.sigma);
        } catch (const SequenceMismatch&) {
            out.sigma.reset();
        }
    }
    return out;
}

Trajectory traj_interleave(const Trajectory& a, const Trajectory& b) {
    if (a.start != b.start || a.end != b.end) throw DomainError("interleaved trajectories must share a domain");
    Trajectory out;
    out.start = a.start;
    out.end = a.end;
    std::set<std::int64_t> times;
    for (const auto& p : a.points) times.insert(p.time);
    for (const auto& p : b.points) times.insert(p.time);
    for (auto t : times) out.points.push_back({t, Configuration::par(traj_at(a, t), traj_at(b, t))});
    if (a.sigma && b.sigma) out.sigma = seq_interleave(*a.sigma, *b.sigma);
    return out;
}

namespace {

std::vector<Breakpoint> canonical(const Trajectory& w) {
    // a later breakpoint at the same instant overrides an earlier one
    std::vector<Breakpoint> pts;
    for (const auto& p : w.points) {
        if (!pts.empty() && pts.back().time == p.time) {
            pts.back().config = p.config;
        } else {
            pts.push_back(p);
        }
    }
    std::vector<Breakpoint> out;
    for (auto& p : pts) {
        Configuration c = congruence_normalize(p.config);
        if (out.empty() || !same_config(out.back().config, c)) out.push_back({p.time, std::move(c)});
    }
    return out;
}

}  // namespace

bool traj_equiv(const Trajectory& a, const Trajectory& b) {
    bool ea = a.empty(), eb = b.empty();
    if (ea || eb) return ea && eb;
    if (a.start != b.start || a.end != b.end) return false;
    auto x = canonical(a), y = canonical(b);
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].time != y[i].time || !same_config(x[i].config, y[i].config)) return false;
    }
    return true;
}

bool computable(const RunContext& ctx, const Trajectory& w) {
    if (!w.sigma) return false;
    if (!replay(ctx, *w.sigma)) return false;
    if (w.empty()) return true;
    // the sequence must have settled every instant of the domain it covers
    Trajectory r = trajectory_of(*w.sigma);
    if (w.sigma->start_time > w.start) return false;
    return traj_equiv(traj_restrict(r, w.start, w.end), traj_restrict(w, w.start, w.end));
}

}  // namespace tillst::runtime
