#pragma once

// Helpers shared by the unit tests and the acceptance binary: corpus access,
// a random formula generator and a brute-force entailment oracle that never
// touches the solver under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <optional>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tillst/runtime/scheduler.hpp"
#include "tillst/runtime/trajectory.hpp"
#include "tillst/syntax/parser.hpp"
#include "tillst/temporal/time.hpp"

namespace support {

using tillst::temporal::Assignment;
using tillst::temporal::Prop;
using tillst::temporal::PropCtx;
using tillst::temporal::TimeCtx;
using tillst::temporal::TimeExpr;
using tillst::temporal::TimeVar;

inline std::string corpus(const std::string& name) { return std::string(TILLST_CORPUS_DIR) + "/" + name; }

inline tillst::syntax::Program load(const std::string& name) {
    return tillst::syntax::parse_program(tillst::syntax::read_file(corpus(name)));
}

// ---------------------------------------------------------------- generator

struct Instance {
    TimeCtx g;
    PropCtx f;
    Prop p;
};

class Generator {
public:
    explicit Generator(std::uint64_t seed, int max_vars = 4, int max_offset = 20, int min_vars = 1, int max_depth = 2)
        : rng_(seed), min_vars_(min_vars), max_vars_(max_vars), max_offset_(max_offset), max_depth_(max_depth) {}

    Instance next() {
        Instance in;
        int n = pick(min_vars_, max_vars_);
        for (int i = 1; i <= n; ++i) vars_.push_back(TimeVar{"t" + std::to_string(i)});
        in.g.insert(vars_.begin(), vars_.end());
        int nf = pick(0, 3);
        for (int i = 0; i < nf; ++i) in.f.push_back(prop(pick(0, max_depth_)));
        in.p = prop(pick(0, max_depth_));
        vars_.clear();
        return in;
    }

private:
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    TimeExpr time() {
        int off = pick(-max_offset_, max_offset_);
        if (pick(0, 3) == 0) return TimeExpr::init(off);
        return TimeExpr::var(vars_[static_cast<std::size_t>(pick(0, static_cast<int>(vars_.size()) - 1))], off);
    }

    Prop prop(int depth) {
        int k = depth == 0 ? pick(0, 3) : pick(0, 9);
        switch (k) {
            case 0:
            case 1: return Prop::leq(time(), time());
            case 2: return Prop::eq(time(), time());
            case 3: return pick(0, 5) == 0 ? (pick(0, 1) ? Prop::top() : Prop::bot()) : Prop::lt(time(), time());
            case 4:
            case 5: return Prop::conj(prop(depth - 1), prop(depth - 1));
            case 6:
            case 7: return Prop::disj(prop(depth - 1), prop(depth - 1));
            case 8: return Prop::imp(prop(depth - 1), prop(depth - 1));
            default: return Prop::negate(prop(depth - 1));
        }
    }

    std::mt19937_64 rng_;
    int min_vars_, max_vars_, max_offset_, max_depth_;
    std::vector<TimeVar> vars_;
};

// ---------------------------------------------------------------- oracle

inline void offsets(const Prop& p, std::int64_t& sum) {
    using K = Prop::Kind;
    switch (p.kind()) {
        case K::Top:
        case K::Bot: return;
        case K::Eq:
        case K::Leq:
            sum += std::llabs(p.lhs().offset()) + std::llabs(p.rhs().offset());
            return;
        default:
            offsets(p.left(), sum);
            offsets(p.right(), sum);
    }
}

// Small-model radius: a satisfiable instance has a model inside [-B, B].
inline std::int64_t bound(const Instance& in) {
    std::int64_t s = 0;
    for (const auto& q : in.f) offsets(q, s);
    offsets(in.p, s);
    return s + static_cast<std::int64_t>(in.g.size()) + 1;
}

// Three-valued evaluation under a partial assignment.
enum class Tri { F, T, U };

inline Tri tri(const Prop& p, const Assignment& a) {
    using K = Prop::Kind;
    auto val = [&](const TimeExpr& e, std::int64_t& out) {
        if (e.is_closed()) {
            out = e.offset();
            return true;
        }
        auto it = a.find(*e.base());
        if (it == a.end()) return false;
        out = it->second + e.offset();
        return true;
    };
    switch (p.kind()) {
        case K::Top: return Tri::T;
        case K::Bot: return Tri::F;
        case K::Eq:
        case K::Leq: {
            std::int64_t x = 0, y = 0;
            if (!val(p.lhs(), x) || !val(p.rhs(), y)) return Tri::U;
            bool r = p.kind() == K::Eq ? x == y : x <= y;
            return r ? Tri::T : Tri::F;
        }
        case K::And: {
            Tri l = tri(p.left(), a), r = tri(p.right(), a);
            if (l == Tri::F || r == Tri::F) return Tri::F;
            return l == Tri::T && r == Tri::T ? Tri::T : Tri::U;
        }
        case K::Or: {
            Tri l = tri(p.left(), a), r = tri(p.right(), a);
            if (l == Tri::T || r == Tri::T) return Tri::T;
            return l == Tri::F && r == Tri::F ? Tri::F : Tri::U;
        }
        case K::Imp: {
            Tri l = tri(p.left(), a), r = tri(p.right(), a);
            if (l == Tri::F || r == Tri::T) return Tri::T;
            return l == Tri::T && r == Tri::F ? Tri::F : Tri::U;
        }
    }
    return Tri::U;
}

// Searches [-B, B]^n for a model of f /\ ~p; entailment holds iff none exists.
// The goal is flattened into an array so partial assignments evaluate fast.
class BruteForce {
public:
    explicit BruteForce(const Instance& in) : b_(bound(in)), vars_(in.g.begin(), in.g.end()) {
        PropCtx all = in.f;
        all.push_back(Prop::negate(in.p));
        root_ = compile(Prop::all(all));
        val_.assign(vars_.size(), 0);
        set_.assign(vars_.size(), false);
    }

    std::int64_t radius() const { return b_; }

    // Grid size before pruning.
    double grid() const { return std::pow(static_cast<double>(2 * b_ + 1), static_cast<double>(vars_.size())); }

    bool entails() {
        budget_ = static_cast<std::size_t>(-1);
        return !search(0);
    }

    // As entails(), or nullopt once more than `budget` partial assignments were visited.
    std::optional<bool> decide(std::size_t budget) {
        budget_ = budget;
        visited_ = 0;
        try {
            return !search(0);
        } catch (const Exhausted&) {
            return std::nullopt;
        }
    }

    std::size_t visited() const { return visited_; }
    const std::optional<Assignment>& countermodel() const { return model_; }

private:
    struct Exhausted {};
    struct Node {
        Prop::Kind kind;
        int l = -1, r = -1;           // children
        int x = -1, y = -1;           // atom variables, -1 for the origin
        std::int64_t xo = 0, yo = 0;  // atom offsets
    };

    int var_index(const TimeExpr& e) const {
        if (e.is_closed()) return -1;
        return static_cast<int>(std::find(vars_.begin(), vars_.end(), *e.base()) - vars_.begin());
    }

    int compile(const Prop& p) {
        using K = Prop::Kind;
        Node n{p.kind()};
        if (p.kind() == K::Eq || p.kind() == K::Leq) {
            n.x = var_index(p.lhs());
            n.y = var_index(p.rhs());
            n.xo = p.lhs().offset();
            n.yo = p.rhs().offset();
        } else if (p.kind() != K::Top && p.kind() != K::Bot) {
            n.l = compile(p.left());
            n.r = compile(p.right());
        }
        nodes_.push_back(n);
        return static_cast<int>(nodes_.size()) - 1;
    }

    Tri eval(int i) const {
        using K = Prop::Kind;
        const Node& n = nodes_[static_cast<std::size_t>(i)];
        switch (n.kind) {
            case K::Top: return Tri::T;
            case K::Bot: return Tri::F;
            case K::Eq:
            case K::Leq: {
                if ((n.x >= 0 && !set_[static_cast<std::size_t>(n.x)]) || (n.y >= 0 && !set_[static_cast<std::size_t>(n.y)]))
                    return Tri::U;
                std::int64_t a = (n.x >= 0 ? val_[static_cast<std::size_t>(n.x)] : 0) + n.xo;
                std::int64_t b = (n.y >= 0 ? val_[static_cast<std::size_t>(n.y)] : 0) + n.yo;
                return (n.kind == K::Eq ? a == b : a <= b) ? Tri::T : Tri::F;
            }
            case K::And: {
                Tri l = eval(n.l);
                if (l == Tri::F) return Tri::F;
                Tri r = eval(n.r);
                if (r == Tri::F) return Tri::F;
                return l == Tri::T && r == Tri::T ? Tri::T : Tri::U;
            }
            case K::Or: {
                Tri l = eval(n.l);
                if (l == Tri::T) return Tri::T;
                Tri r = eval(n.r);
                if (r == Tri::T) return Tri::T;
                return l == Tri::F && r == Tri::F ? Tri::F : Tri::U;
            }
            case K::Imp: {
                Tri l = eval(n.l);
                if (l == Tri::F) return Tri::T;
                Tri r = eval(n.r);
                if (r == Tri::T) return Tri::T;
                return l == Tri::T && r == Tri::F ? Tri::F : Tri::U;
            }
        }
        return Tri::U;
    }

    bool search(std::size_t k) {
        if (++visited_ > budget_) throw Exhausted{};
        Tri t = eval(root_);
        if (t == Tri::F) return false;
        if (t == Tri::T) {
            Assignment a;
            for (std::size_t i = 0; i < vars_.size(); ++i) a[vars_[i]] = set_[i] ? val_[i] : 0;
            model_ = a;
            return true;
        }
        if (k == vars_.size()) return false;
        set_[k] = true;
        for (std::int64_t v = -b_; v <= b_; ++v) {
            val_[k] = v;
            if (search(k + 1)) return true;
        }
        set_[k] = false;
        return false;
    }

    std::int64_t b_;
    std::vector<TimeVar> vars_;
    std::vector<Node> nodes_;
    int root_ = 0;
    std::vector<std::int64_t> val_;
    std::vector<bool> set_;
    std::optional<Assignment> model_;
    std::size_t budget_ = static_cast<std::size_t>(-1);
    std::size_t visited_ = 0;
};

// ---------------------------------------------------------------- trajectories

inline std::vector<std::string> corpus_files() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(TILLST_CORPUS_DIR))
        if (e.path().extension() == ".tsl") out.push_back(e.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

// Trajectories cut from scheduler runs. Items in one group share a context
// and a domain and use disjoint channel names, so any two can be interleaved.
struct TrajectoryPool {
    std::deque<tillst::syntax::Program> progs;
    std::deque<tillst::runtime::RunContext> ctxs;
    struct Item {
        std::size_t ctx = 0;
        std::size_t run = 0;
        tillst::runtime::Trajectory w;
    };
    std::vector<Item> items;
    std::map<std::pair<std::size_t, std::pair<std::int64_t, std::int64_t>>, std::vector<std::size_t>> groups;
};

inline TrajectoryPool harvest(std::uint64_t seed) {
    using namespace tillst::runtime;
    TrajectoryPool pool;
    std::mt19937_64 rng(seed);
    std::size_t run_id = 0;
    for (const auto& file : corpus_files()) {
        for (std::uint64_t ext_seed : {0u, 1u}) {
            for (std::int64_t shift : {0, 4, 9}) {
                auto& prog = pool.progs.emplace_back(load(file));
                if (prog.systems.empty()) {
                    pool.progs.pop_back();
                    continue;
                }
                for (auto& sys : prog.systems) sys.start = TimeExpr::init(shift);
                pool.ctxs.push_back(make_context(prog, ext_seed));
                std::size_t ci = pool.ctxs.size() - 1;
                const auto& ctx = pool.ctxs.back();
                for (const auto& sys : prog.systems) {
                    for (int variant = 0; variant < 3; ++variant) {
                        ++run_id;
                        RunOptions o;
                        o.channel_prefix = "r" + std::to_string(run_id) + ".";
                        o.fresh_prefix = "#r" + std::to_string(run_id) + ".";
                        std::uint64_t cs = rng();
                        auto crng = std::make_shared<std::mt19937_64>(cs);
                        if (variant > 0)
                            o.choose = [crng](const std::vector<Redex>& rs) {
                                return std::uniform_int_distribution<std::size_t>(0, rs.size() - 1)(*crng);
                            };
                        auto res = run_system(ctx, sys.name, o);
                        auto full = trajectory_of(res.sigma);
                        for (auto [lo, hi] : std::vector<std::pair<std::int64_t, std::int64_t>>{
                                 {0, 60}, {0, 1200}, {5, 40}, {2, 25}}) {
                            TrajectoryPool::Item it{ci, run_id, traj_restrict(full, shift + lo, shift + hi)};
                            it.w.sigma = res.sigma;
                            pool.groups[{ci, {lo, hi}}].push_back(pool.items.size());
                            pool.items.push_back(std::move(it));
                        }
                    }
                }
            }
        }
    }
    return pool;
}

struct LawReport {
    std::size_t trajectories = 0, pairs = 0, checks = 0;
    std::size_t computable_fail = 0, pointwise_fail = 0, split_fail = 0, distrib_fail = 0;
    std::vector<std::string> notes;

    bool ok() const { return computable_fail + pointwise_fail + split_fail + distrib_fail == 0; }
};

// Partition points worth trying: the ends and both sides of every breakpoint.
inline std::vector<std::int64_t> cut_points(const tillst::runtime::Trajectory& w) {
    std::set<std::int64_t> ts{w.start, *w.end};
    for (const auto& b : w.points)
        for (auto d : {-1, 0, 1})
            if (b.time + d >= w.start && b.time + d <= *w.end) ts.insert(b.time + d);
    return {ts.begin(), ts.end()};
}

inline LawReport check_trajectory_laws(const TrajectoryPool& pool, std::uint64_t seed) {
    using namespace tillst::runtime;
    LawReport rep;
    std::mt19937_64 rng(seed);
    auto note = [&](std::string s) {
        if (rep.notes.size() < 10) rep.notes.push_back(std::move(s));
    };
    auto same_at = [](const Configuration& a, const Configuration& b) {
        return same_config(congruence_normalize(a), congruence_normalize(b));
    };

    for (const auto& it : pool.items) {
        ++rep.trajectories;
        const auto& ctx = pool.ctxs[it.ctx];
        if (!computable(ctx, it.w)) {
            ++rep.computable_fail;
            note("not computable: run " + std::to_string(it.run));
        }
        for (auto t : cut_points(it.w)) {
            ++rep.checks;
            auto [l, r] = traj_partition(it.w, t);
            if (!traj_equiv(traj_concat(l, r), it.w)) {
                ++rep.split_fail;
                note("split at " + std::to_string(t) + " of run " + std::to_string(it.run));
            }
            if (!computable(ctx, l) || !computable(ctx, r)) {
                ++rep.computable_fail;
                note("partition not computable at " + std::to_string(t) + " of run " + std::to_string(it.run));
            }
        }
    }

    for (const auto& [key, members] : pool.groups) {
        const auto& ctx = pool.ctxs[key.first];
        for (std::size_t k = 0; k < members.size(); ++k) {
            std::size_t other = members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng)];
            if (other == members[k]) other = members[(k + 1) % members.size()];
            if (other == members[k]) continue;
            const auto& w1 = pool.items[members[k]].w;
            const auto& w2 = pool.items[other].w;
            ++rep.pairs;
            auto w12 = traj_interleave(w1, w2);
            if (!computable(ctx, w12)) {
                ++rep.computable_fail;
                note("interleaving not computable");
            }
            std::set<std::int64_t> ts;
            for (const Trajectory* w : std::initializer_list<const Trajectory*>{&w1, &w2, &w12})
                for (const auto& b : w->points) ts.insert(b.time);
            for (auto t : ts) {
                ++rep.checks;
                if (!same_at(traj_at(w12, t), Configuration::par(traj_at(w1, t), traj_at(w2, t)))) {
                    ++rep.pointwise_fail;
                    note("pointwise at " + std::to_string(t));
                }
            }
            for (auto t : cut_points(w12)) {
                ++rep.checks;
                auto [l12, r12] = traj_partition(w12, t);
                auto [l1, r1] = traj_partition(w1, t);
                auto [l2, r2] = traj_partition(w2, t);
                bool ok = traj_equiv(l12, traj_interleave(l1, l2)) && traj_equiv(r12, traj_interleave(r1, r2)) &&
                          traj_equiv(traj_interleave(traj_concat(l1, r1), traj_concat(l2, r2)),
                                     traj_concat(traj_interleave(l1, l2), traj_interleave(r1, r2)));
                if (!ok) {
                    ++rep.distrib_fail;
                    note("distribution at " + std::to_string(t));
                }
            }
        }
    }
    return rep;
}

}  // namespace support
