#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "blister/auxiliary.hpp"
#include "blister/curves.hpp"

using namespace blister;
using Catch::Approx;

TEST_CASE("theta_star and the curve values at alpha = 1") {
    CHECK(theta_star(1.0) == 1.25);
    CHECK(theta_star(16.0) == Approx(0.3125).epsilon(1e-15));

    // All three boundary curves meet at the triple point with value 2.
    const double ts = theta_star(1.0);
    CHECK(curve_L01(ts) == Approx(2.0).margin(1e-13));
    CHECK(curve_L02(ts, 1.0) == Approx(2.0).margin(1e-13));
    CHECK(curve_L12(ts, 1.0) == Approx(2.0).margin(1e-13));

    CHECK(curve_Ld(1.0) == Approx((25.0 / 24.0) * std::sqrt(5.0 / 3.0)).epsilon(1e-15));
    CHECK(curve_L01(1.0) == Approx(std::pow(5.0, 2.5) / 16.0).epsilon(1e-15));
    CHECK(curve_L01(1.0) > curve_Ld(1.0));
}

TEST_CASE("curve domain preconditions") {
    CHECK_THROWS_AS(curve_Ld(0.0), std::invalid_argument);
    CHECK_THROWS_AS(curve_L01(-1.0), std::invalid_argument);
    // Below theta_star the right-hand curves are undefined (sqrt(alpha)*theta can be <= 1).
    CHECK_THROWS_AS(curve_L02(0.9, 1.0), std::domain_error);
    CHECK_THROWS_AS(curve_L12(1.2499, 1.0), std::domain_error);
}

TEST_CASE("curves overflow gracefully for tiny theta") {
    CHECK(std::isinf(curve_L01(1e-200)));
    CHECK(std::isinf(curve_Ld(1e-200)));
}

TEST_CASE("monotonicity of the boundary curves") {
    const double alpha = 1.0;
    const double ts = theta_star(alpha);

    std::vector<double> above, below;
    for (int i = 0; i < 50; ++i) {
        above.push_back(ts + 1e-6 + (4.0 - ts) * i / 49.0);
        below.push_back(0.05 + (ts - 0.1) * i / 49.0);
    }
    for (size_t i = 0; i + 1 < above.size(); ++i) {
        CHECK(curve_L12(above[i + 1], alpha) > curve_L12(above[i], alpha));
        CHECK(curve_L02(above[i + 1], alpha) < curve_L02(above[i], alpha));
    }
    for (size_t i = 0; i + 1 < below.size(); ++i) {
        CHECK(curve_L01(below[i + 1]) < curve_L01(below[i]));
    }
}

TEST_CASE("curve ordering above the triple point: L01 < L02 < L12") {
    for (double alpha : {0.5, 1.0, 3.0}) {
        const double ts = theta_star(alpha);
        for (int i = 1; i <= 50; ++i) {
            const double theta = ts * (1.0 + 3.0 * i / 50.0);
            const double l01 = curve_L01(theta);
            const double l02 = curve_L02(theta, alpha);
            const double l12 = curve_L12(theta, alpha);
            CHECK(l01 < l02);
            CHECK(l02 < l12);
        }
    }
}

TEST_CASE("tangency: f' and f'' both vanish at X = 2 theta/5 on L = Ld") {
    for (int i = 1; i <= 25; ++i) {
        const double theta = 0.2 + 3.8 * i / 25.0;
        const ReducedParams r(1.0, theta, curve_Ld(theta));
        const double Xd = 0.4 * theta;
        const double fp_scale = std::max(1.0, 2.0 * r.L * Xd);
        const double fs_scale = std::max(1.0, 2.0 * r.L);
        CHECK(std::abs(f_prime(Xd, r)) <= 1e-10 * fp_scale);
        CHECK(std::abs(f_second(Xd, r)) <= 1e-10 * fs_scale);
    }
}

TEST_CASE("f is increasing on (0, theta) when L < Ld") {
    for (double theta : {0.5, 1.0, 2.0}) {
        const ReducedParams r(1.0, theta, 0.9 * curve_Ld(theta));
        for (int i = 1; i < 40; ++i) {
            CHECK(f_prime(theta * i / 40.0, r) > 0.0);
        }
    }
}

TEST_CASE("theta_tilde equals alpha^{-1/2} along L02") {
    for (double alpha : {0.5, 1.0, 4.0}) {
        const double ts = theta_star(alpha);
        for (int i = 1; i <= 20; ++i) {
            const double theta = ts * (1.0 + 2.0 * i / 20.0);
            const ReducedParams r(alpha, theta, curve_L02(theta, alpha));
            CHECK(r.theta_tilde == Approx(1.0 / std::sqrt(alpha)).epsilon(1e-12));
        }
    }
}
