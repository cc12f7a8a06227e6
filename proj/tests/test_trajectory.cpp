#include "doctest.h"
#include "support.hpp"
#include "tillst/runtime/trajectory.hpp"

using namespace tillst::runtime;
using tillst::syntax::parse_process;

namespace {

Configuration proc(const char* chan, const char* src) { return Configuration::proc(chan, parse_process(src)); }

}  // namespace

TEST_SUITE("trajectory") {

TEST_CASE("value at an instant follows the last breakpoint") {
    auto a = proc("a", "Close <t where True>");
    auto b = proc("b", "Close <t where True>");
    Trajectory w{0, 10, {{0, a}, {4, b}}, std::nullopt};
    CHECK(same_config(traj_at(w, 0), a));
    CHECK(same_config(traj_at(w, 3), a));
    CHECK(same_config(traj_at(w, 4), b));
    CHECK(same_config(traj_at(w, 9), b));
    CHECK_THROWS_AS(traj_at(w, 10), DomainError);
    CHECK_THROWS_AS(traj_at(w, -1), DomainError);
}

TEST_CASE("trajectory of a run settles each instant") {
    tillst::syntax::Program empty;
    auto ctx = make_context(empty);
    auto res = run_scheduler(ctx,
                             Configuration::par(proc("a", "Close <t where Eq<t, Shift<t0, 5>>>"),
                                                harness("a", tillst::syntax::parse_type("Unit<t where Eq<t, Shift<t0, 5>>>"), 0)),
                             0);
    auto w = trajectory_of(res.sigma);
    CHECK_FALSE(w.end);
    CHECK_FALSE(traj_at(w, 4).is_stop());
    CHECK(congruence_normalize(traj_at(w, 5)).is_stop());
    CHECK(congruence_normalize(traj_at(w, 1'000'000)).is_stop());
    CHECK(computable(ctx, w));

    auto bounded = traj_restrict(w, 0, 8);
    bounded.sigma = res.sigma;
    CHECK(computable(ctx, bounded));
    // a trajectory that claims the close happened early is not computed by the run
    Trajectory wrong{0, 8, {{0, traj_at(w, 0)}, {3, Configuration::stop()}}, res.sigma};
    CHECK_FALSE(computable(ctx, wrong));
    Trajectory bare{0, 8, bounded.points, std::nullopt};
    CHECK_FALSE(computable(ctx, bare));
}

TEST_CASE("partition at the boundaries") {
    auto a = proc("a", "Close <t where True>");
    auto b = proc("b", "Close <t where True>");
    Trajectory w{2, 12, {{2, a}, {6, b}}, std::nullopt};
    auto [l, r] = traj_partition(w, 2);
    CHECK(l.empty());
    CHECK(traj_equiv(r, w));
    auto [l2, r2] = traj_partition(w, 12);
    CHECK(r2.empty());
    CHECK(traj_equiv(l2, w));
    auto [l3, r3] = traj_partition(w, 6);
    CHECK(*l3.end == 6);
    CHECK(r3.start == 6);
    CHECK(same_config(traj_at(r3, 6), b));
    CHECK(traj_equiv(traj_concat(l3, r3), w));

    CHECK_THROWS_AS(traj_partition(w, 1), DomainError);
    CHECK_THROWS_AS(traj_partition(w, 13), DomainError);
    CHECK_THROWS_AS(traj_concat(r3, l3), DomainError);
    Trajectory other{0, 12, {{0, a}}, std::nullopt};
    CHECK_THROWS_AS(traj_interleave(w, other), DomainError);
}

TEST_CASE("equivalence ignores redundant breakpoints") {
    auto a = proc("a", "Close <t where True>");
    Trajectory w1{0, 10, {{0, a}}, std::nullopt};
    Trajectory w2{0, 10, {{0, a}, {3, a}, {7, Configuration::par(Configuration::stop(), a)}}, std::nullopt};
    CHECK(traj_equiv(w1, w2));
    Trajectory w3{0, 11, {{0, a}}, std::nullopt};
    CHECK_FALSE(traj_equiv(w1, w3));
}

TEST_CASE("algebraic laws on harvested trajectories") {
    auto pool = support::harvest(2024);
    auto rep = support::check_trajectory_laws(pool, 99);
    CHECK(rep.trajectories >= 1000);
    CHECK(rep.pairs >= 1000);
    for (const auto& n : rep.notes) MESSAGE(n);
    CHECK(rep.computable_fail == 0);
    CHECK(rep.pointwise_fail == 0);
    CHECK(rep.split_fail == 0);
    CHECK(rep.distrib_fail == 0);
}

}
