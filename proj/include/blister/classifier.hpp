#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blister/auxiliary.hpp"
#include "blister/curves.hpp"
#include "blister/params.hpp"

namespace blister {

/// Stratum of the (theta, L) phase diagram. The seven tags partition (0,inf)^2.
enum class Region {
    D0,          // trivial solution only
    D1,          // blister with support shorter than the film
    D2,          // fully delaminated blister
    Gamma01,     // trivial/blister tie curve
    Gamma02,     // trivial/fully-delaminated tie curve
    Gamma12,     // blister/fully-delaminated transition curve
    TriplePoint, // the single point where the three curves meet
};

inline const char* to_string(Region r) {
    switch (r) {
        case Region::D0: return "D0";
        case Region::D1: return "D1";
        case Region::D2: return "D2";
        case Region::Gamma01: return "Gamma01";
        case Region::Gamma02: return "Gamma02";
        case Region::Gamma12: return "Gamma12";
        case Region::TriplePoint: return "TriplePoint";
    }
    return "?";
}

/// Which branch supplies a nonzero minimizer of f on [0, d_upper].
enum class Branch {
    none,     // argmin = {0}
    interior, // the critical point X_m
    boundary, // the endpoint theta_tilde
};

inline const char* to_string(Branch b) {
    switch (b) {
        case Branch::none: return "none";
        case Branch::interior: return "interior";
        case Branch::boundary: return "boundary";
    }
    return "?";
}

/// Argmin structure of f on [0, d_upper]. `argmin` holds one or two abscissas in
/// increasing order (ties list 0 first); ties occur exactly on Gamma01, Gamma02
/// and at the triple point.
struct MinimizerResult {
    std::vector<double> argmin;
    double f_at_argmin = 0.0;
    Branch branch = Branch::none;          // label of the nonzero minimizer, if any
    std::optional<double> x_bar;           // min(d_upper, X_m) when X_m was computed
    Region region = Region::D0;
};

/// Locates the unique root X_m of f' in (2*theta/5, theta), present iff L > Ld(theta).
/// Bracketed bisection to width 1e-13*theta, then Newton polishing; the bracket is
/// guaranteed because f'(2theta/5) < 0 for L > Ld and f' -> +inf as X -> theta-.
inline std::optional<double> find_Xm(const ReducedParams& r) {
    const double theta = r.theta;
    const double L = r.L;
    if (L <= curve_Ld(theta)) return std::nullopt;

    auto fp = [&](double x) { return f_prime(x, r); };

    double lo = 0.4 * theta;
    double hi = theta * (1.0 - 1e-9);
    for (int k = 0; k < 200 && fp(hi) <= 0.0; ++k) {
        hi = theta - 0.5 * (theta - hi);
    }
    if (fp(lo) >= 0.0) {
        // L barely above Ld: the root has collapsed onto 2*theta/5 to rounding.
        lo = std::nextafter(lo, theta);
        if (fp(lo) >= 0.0) return lo;
    }

    while (hi - lo > 1e-13 * theta) {
        const double mid = 0.5 * (lo + hi);
        if (fp(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    double x = 0.5 * (lo + hi);
    const double target = 1e-12 * std::max(1.0, 2.0 * L * x);
    for (int it = 0; it < 8; ++it) {
        const double g = fp(x);
        if (std::abs(g) <= target) break;
        const double g2 = f_second(x, r);
        if (!(g2 > 0.0)) break;
        const double step = g / g2;
        const double next = x - step;
        if (!(next > lo - (hi - lo) && next < theta)) break;
        x = next;
    }
    return x;
}

struct XmSensitivities {
    double d_theta; // > 1 wherever defined
    double d_L;     // > 0 wherever defined
};

/// Closed-form partial derivatives of X_m(theta, L), from implicit differentiation
/// of f'(X_m) = 0. Requires L > Ld(theta).
inline XmSensitivities xm_sensitivities(const ReducedParams& r) {
    const auto xm = find_Xm(r);
    if (!xm) {
        throw std::domain_error("xm_sensitivities: no interior critical point (L <= Ld)");
    }
    const double num = 0.75 * std::pow(r.theta - *xm, -2.5);
    const double denom = num - 2.0 * r.L; // = f''(X_m) > 0
    return {num / denom, 2.0 * (*xm) / denom};
}

/// Assigns the phase-diagram stratum. Boundary strata are detected by relative
/// tolerance on L (exact membership is measure-zero in floating point); pass
/// tol = 0 for open-region-only semantics.
inline Region classify(const ReducedParams& r, double tol = 1e-9) {
    if (!(tol >= 0.0)) throw std::invalid_argument("classify: tol must be >= 0");
    const double ts = theta_star(r.alpha);
    const double L_star = curve_L01(ts);
    auto near = [tol](double v, double ref) { return std::abs(v - ref) <= tol * std::abs(ref); };

    if (near(r.theta, ts) && near(r.L, L_star)) return Region::TriplePoint;
    if (r.theta <= ts) {
        const double l01 = curve_L01(r.theta);
        if (near(r.L, l01)) return Region::Gamma01;
        return r.L < l01 ? Region::D0 : Region::D1;
    }
    const double l02 = curve_L02(r.theta, r.alpha);
    const double l12 = curve_L12(r.theta, r.alpha);
    if (near(r.L, l02)) return Region::Gamma02;
    if (near(r.L, l12)) return Region::Gamma12;
    if (r.L < l02) return Region::D0;
    if (r.L > l12) return Region::D1;
    return Region::D2;
}

namespace detail {

#ifndef NDEBUG
inline void check_argmin_against_grid(const MinimizerResult& m, const ReducedParams& r) {
    if (r.d_upper <= 0.0) return;
    const int n = 200;
    double grid_min = 0.0;
    for (int i = 1; i < n; ++i) {
        grid_min = std::min(grid_min, f_value(i * r.d_upper / n, r));
    }
    if (r.d_upper < r.theta) grid_min = std::min(grid_min, f_value(r.d_upper, r));
    assert(m.f_at_argmin <= grid_min + 1e-9 * std::max(1.0, std::abs(grid_min)));
}
#endif

} // namespace detail

/// Minimizes f on [0, d_upper] via the classification, not by numerical search:
/// {0} on D0; {X_m} on D1; {theta_tilde} on D2 and Gamma12; {0, X_m} on Gamma01;
/// {0, theta_tilde} on Gamma02 and at the triple point.
inline MinimizerResult minimize_aux(const ReducedParams& r, double tol = 1e-9) {
    MinimizerResult m;
    m.region = classify(r, tol);

    if (r.d_upper <= 0.0) {
        // Degenerate interval: the only admissible point is 0.
        m.argmin = {0.0};
        m.f_at_argmin = 0.0;
        m.branch = Branch::none;
        return m;
    }

    std::optional<double> xm;
    if (r.L > curve_Ld(r.theta)) {
        xm = find_Xm(r);
        if (xm) m.x_bar = std::min(r.d_upper, *xm);
    }
    if (!xm && (m.region == Region::D1 || m.region == Region::Gamma01)) {
        // Only reachable when tol is large enough to smear strata across Ld.
        throw std::domain_error("minimize_aux: tolerance too large for a consistent stratum");
    }

    switch (m.region) {
        case Region::D0:
            m.argmin = {0.0};
            m.f_at_argmin = 0.0;
            m.branch = Branch::none;
            break;
        case Region::D1:
            m.argmin = {*xm};
            m.f_at_argmin = f_value(*xm, r);
            m.branch = Branch::interior;
            break;
        case Region::D2:
        case Region::Gamma12:
            m.argmin = {r.theta_tilde};
            m.f_at_argmin = f_value(r.theta_tilde, r);
            m.branch = Branch::boundary;
            break;
        case Region::Gamma01:
            m.argmin = {0.0, *xm};
            m.f_at_argmin = std::min(0.0, f_value(*xm, r));
            m.branch = Branch::interior;
            break;
        case Region::Gamma02:
        case Region::TriplePoint:
            // At the triple point X_m = theta_tilde; the branch is labeled boundary.
            m.argmin = {0.0, r.theta_tilde};
            m.f_at_argmin = std::min(0.0, f_value(r.theta_tilde, r));
            m.branch = Branch::boundary;
            break;
    }

#ifndef NDEBUG
    detail::check_argmin_against_grid(m, r);
#endif
    return m;
}

} // namespace blister
