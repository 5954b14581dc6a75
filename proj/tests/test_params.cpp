#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "blister/params.hpp"

using namespace blister;
using Catch::Approx;

TEST_CASE("construction rejects non-positive inputs") {
    CHECK_THROWS_AS(PhysicalParams(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PhysicalParams(1.0, -2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PhysicalParams(1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PhysicalParams(1.0, std::nan(""), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ReducedParams(1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ReducedParams(-1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("reduce maps the reference points") {
    // (alpha=1, theta_bar=1.25, L_bar=4*pi*sqrt(2/3)) -> (theta=1.25, L=2)
    const double Lbar = 4.0 * std::numbers::pi * std::sqrt(2.0 / 3.0);
    const ReducedParams r = reduce(PhysicalParams(1.0, 1.25, Lbar));
    CHECK(r.theta == Approx(1.25).epsilon(1e-14));
    CHECK(r.L == Approx(2.0).epsilon(1e-14));

    // (alpha=1, theta_bar=1, L_bar=2*pi*sqrt(2/3)) -> (theta=1, L=1, theta_tilde=0)
    const ReducedParams r2 = reduce(PhysicalParams(1.0, 1.0, 0.5 * Lbar));
    CHECK(r2.theta == Approx(1.0).epsilon(1e-14));
    CHECK(r2.L == Approx(1.0).epsilon(1e-14));
    CHECK(r2.theta_tilde == Approx(0.0).margin(1e-14));
    CHECK(r2.d_upper >= 0.0);

    // theta = theta_bar / alpha by definition
    const ReducedParams r3 = reduce(PhysicalParams(2.0, 2.0, 1.0));
    CHECK(r3.theta == 1.0);
}

TEST_CASE("unreduce inverts the rescaling") {
    const ReducedParams r(1.0, 1.25, 2.0);
    const PhysicalParams p = unreduce(r);
    CHECK(p.L_bar == Approx(4.0 * std::numbers::pi * std::sqrt(2.0 / 3.0)).epsilon(1e-14));
    CHECK(p.theta_bar == Approx(1.25).epsilon(1e-14));

    const ReducedParams r2(1.0, 1.0, 1.0);
    CHECK(unreduce(r2).theta_bar == 1.0);
}

TEST_CASE("reduce/unreduce round-trips to 1e-14 relative") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.05, 20.0);
    for (int i = 0; i < 100; ++i) {
        const PhysicalParams p(u(rng), u(rng), u(rng));
        const PhysicalParams q = unreduce(reduce(p));
        CHECK(q.alpha == Approx(p.alpha).epsilon(1e-14));
        CHECK(q.theta_bar == Approx(p.theta_bar).epsilon(1e-14));
        CHECK(q.L_bar == Approx(p.L_bar).epsilon(1e-14));
    }
}

TEST_CASE("reduced invariants hold on random parameters") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.05, 20.0);
    for (int i = 0; i < 200; ++i) {
        const ReducedParams r(u(rng), u(rng), u(rng));
        CHECK(r.theta_tilde < r.theta);
        CHECK(r.d_upper >= 0.0);
        CHECK(r.d_upper < r.theta);
    }
}
