#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "blister/classifier.hpp"
#include "blister/params.hpp"

namespace blister {

/// Pointwise values of the closed-form minimizer and its derivatives.
struct ProfileSample {
    double zeta1;
    double zeta2;
    double zeta1_prime;
    double zeta2_prime;
    double zeta2_second;
};

/// Closed-form minimizer profile for a membrane strain constant K in [0, d_upper].
/// Normalization: blister centered at x = 0, inf zeta2 = 0, zeta1(-L_bar/2) = 0.
/// Immutable after construction; evaluation is pure.
struct BlisterProfile {
    PhysicalParams params;
    double K;    // membrane strain constant, >= 0
    double beta; // wavenumber sqrt(3(theta_bar - alpha K) / (2 alpha)), > 0
    double A;    // amplitude sqrt(K L_bar / (pi beta)), 0 iff K = 0
    double T;    // support width 2 pi / beta, or 0 when K = 0; T = L_bar iff K = theta_tilde

    double length() const { return params.L_bar; }
};

/// Builds the profile for a given strain constant. K must lie in [0, d_upper]
/// of the reduced parameters, which is equivalent to T <= L_bar.
inline BlisterProfile build_profile(double K, const PhysicalParams& p) {
    const ReducedParams r = reduce(p);
    if (!(K >= 0.0) || K > r.d_upper * (1.0 + 1e-12)) {
        throw std::domain_error("build_profile: K outside the admissible interval [0, d_upper]");
    }
    K = std::min(K, r.d_upper);
    const double beta = std::sqrt(3.0 * (p.theta_bar - p.alpha * K) / (2.0 * p.alpha));
    const double A = K > 0.0 ? std::sqrt(K * p.L_bar / (std::numbers::pi * beta)) : 0.0;
    const double T = K > 0.0 ? 2.0 * std::numbers::pi / beta : 0.0;
    return BlisterProfile{p, K, beta, A, T};
}

namespace detail {

// Piece-resolved evaluation; `inner` selects the bump piece regardless of x.
// Used by the quadrature to take one-sided values at the junctions +-T/2.
inline ProfileSample eval_piece(const BlisterProfile& bp, double x, bool inner) {
    const double K = bp.K;
    if (K == 0.0) return {0.0, 0.0, 0.0, 0.0, 0.0};
    const double Lbar = bp.length();
    const double beta = bp.beta;
    const double A = bp.A;
    if (inner) {
        const double c = std::cos(beta * x);
        const double s = std::sin(beta * x);
        const double slope = 0.5 * K * (1.0 - Lbar / bp.T);
        ProfileSample out;
        out.zeta1 = (K * Lbar / (8.0 * std::numbers::pi)) * std::sin(2.0 * beta * x) + slope * x;
        out.zeta1_prime = (K * Lbar * beta / (4.0 * std::numbers::pi)) * std::cos(2.0 * beta * x) + slope;
        out.zeta2 = A * (c + 1.0);
        out.zeta2_prime = -A * beta * s;
        out.zeta2_second = -A * beta * beta * c;
        return out;
    }
    ProfileSample out;
    out.zeta1 = x < 0.0 ? 0.5 * K * (x + 0.5 * Lbar) : 0.5 * K * (x - 0.5 * Lbar);
    out.zeta1_prime = 0.5 * K;
    out.zeta2 = out.zeta2_prime = out.zeta2_second = 0.0;
    return out;
}

} // namespace detail

/// Evaluates the profile at x, wrapped periodically into [-L_bar/2, L_bar/2).
/// Points with |x| <= T/2 take the bump piece (zeta2_second jumps there).
inline ProfileSample eval_profile(const BlisterProfile& bp, double x) {
    const double Lbar = bp.length();
    double w = std::remainder(x, Lbar);
    if (w >= 0.5 * Lbar) w -= Lbar;
    return detail::eval_piece(bp, w, std::abs(w) <= 0.5 * bp.T);
}

/// Film energy of the profile with strain K, by the closed form: 2 pi sqrt(2/3) f(K).
inline double closed_form_energy(double K, const ReducedParams& r) {
    if (!(K >= 0.0) || K > r.d_upper * (1.0 + 1e-12)) {
        throw std::domain_error("closed_form_energy: K outside [0, d_upper]");
    }
    return energy_scale() * f_value(std::min(K, r.d_upper), r);
}

/// Film energy by composite trapezoidal quadrature of the integrand
///   1_{zeta2>0} + 4a(zeta1' + zeta2'^2/2)^2 + (4a/3) zeta2''^2 - 2 theta_bar zeta2'^2
/// over one period. The mesh is the uniform n-interval grid with the junctions
/// +-T/2 inserted as extra nodes, and the integrand takes one-sided values there,
/// so the piecewise-smooth terms integrate at second order. The indicator term
/// contributes the support length T exactly.
inline double profile_energy_quadrature(const BlisterProfile& bp, int n) {
    if (n < 64) throw std::invalid_argument("profile_energy_quadrature: need n >= 64");
    if (bp.K == 0.0) return 0.0;

    const double alpha = bp.params.alpha;
    const double theta_bar = bp.params.theta_bar;
    const double Lbar = bp.length();
    const double half = 0.5 * Lbar;
    const double Thalf = 0.5 * bp.T;
    const double h = Lbar / n;

    auto integrand = [&](double x, bool inner) {
        const ProfileSample s = detail::eval_piece(bp, x, inner);
        const double strain = s.zeta1_prime + 0.5 * s.zeta2_prime * s.zeta2_prime;
        return 4.0 * alpha * strain * strain +
               (4.0 * alpha / 3.0) * s.zeta2_second * s.zeta2_second -
               2.0 * theta_bar * s.zeta2_prime * s.zeta2_prime;
    };

    // Trapezoid over [a, b] using the uniform nodes that fall strictly inside.
    auto segment = [&](double a, double b, bool inner) {
        if (!(b - a > 1e-15 * Lbar)) return 0.0;
        double sum = 0.0;
        double xp = a;
        double vp = integrand(a, inner);
        long first = static_cast<long>(std::ceil((a + half) / h));
        if (-half + first * h <= a + 1e-13 * Lbar) ++first;
        for (long i = first;; ++i) {
            const double x = -half + i * h;
            if (x >= b - 1e-13 * Lbar) break;
            const double v = integrand(x, inner);
            sum += 0.5 * (vp + v) * (x - xp);
            xp = x;
            vp = v;
        }
        sum += 0.5 * (vp + integrand(b, inner)) * (b - xp);
        return sum;
    };

    return bp.T + segment(-half, -Thalf, false) + segment(-Thalf, Thalf, true) +
           segment(Thalf, half, false);
}

/// Residual of the Euler-Lagrange equation zeta2'''' + beta^2 zeta2'' = 0 inside
/// the support, from the analytic derivatives; identically 0 in exact arithmetic.
inline double ode_residual(const BlisterProfile& bp, double x) {
    if (!(bp.K > 0.0)) throw std::domain_error("ode_residual: trivial profile has no support");
    if (!(std::abs(x) < 0.5 * bp.T)) throw std::domain_error("ode_residual: x outside the support");
    const double beta = bp.beta;
    const double zeta2_fourth = bp.A * beta * beta * beta * beta * std::cos(beta * x);
    const ProfileSample s = detail::eval_piece(bp, x, true);
    return zeta2_fourth + beta * beta * s.zeta2_second;
}

/// Infimum of support width and amplitude over all blisters with T < L_bar:
/// T* = 4 pi sqrt(2/3) alpha^{1/4}, A* = 4/sqrt(3) (independent of alpha).
struct SmallestBlister {
    double T_star;
    double A_star;
};

inline SmallestBlister smallest_blister(double alpha) {
    detail::require_positive_finite(alpha, "alpha");
    return {2.0 * energy_scale() * std::pow(alpha, 0.25), 4.0 / std::sqrt(3.0)};
}

/// Energy of a configuration of p equal bumps of strain K:
///   2 p pi sqrt(2 alpha / (3(theta_bar - alpha K))) - alpha K^2 L_bar,
/// admissible while p*T <= L_bar.
inline double p_branch_energy(double K, int p, const PhysicalParams& pp) {
    if (p < 1) throw std::invalid_argument("p_branch_energy: p must be >= 1");
    const ReducedParams r = reduce(pp);
    if (!(K > 0.0 && K < r.theta)) {
        throw std::domain_error("p_branch_energy: K outside (0, theta)");
    }
    const double beta = std::sqrt(3.0 * (pp.theta_bar - pp.alpha * K) / (2.0 * pp.alpha));
    const double T = 2.0 * std::numbers::pi / beta;
    if (p * T > pp.L_bar * (1.0 + 1e-12)) {
        throw std::domain_error("p_branch_energy: p blisters of width T do not fit in the film");
    }
    return 2.0 * p * std::numbers::pi *
               std::sqrt(2.0 * pp.alpha / (3.0 * (pp.theta_bar - pp.alpha * K))) -
           pp.alpha * K * K * pp.L_bar;
}

/// Optimal strain and energy of the p-bump local branch. Local-branch exploration
/// only: the p = 1 case reproduces the global result, p >= 2 candidates are
/// computed by the L -> L/p substitution.
struct PBranchOptimum {
    double K_p;
    double energy;
};

inline std::optional<PBranchOptimum> optimize_p_branch(int p, const PhysicalParams& pp) {
    if (p < 1) throw std::invalid_argument("optimize_p_branch: p must be >= 1");
    const ReducedParams r = reduce(pp);
    const ReducedParams sub(r.alpha, r.theta, r.L / p);
    const MinimizerResult m = minimize_aux(sub);
    double K = 0.0;
    for (double x : m.argmin) K = std::max(K, x);
    if (K <= 0.0) return std::nullopt; // no nontrivial branch
    return PBranchOptimum{K, p_branch_energy(K, p, pp)};
}

} // namespace blister
