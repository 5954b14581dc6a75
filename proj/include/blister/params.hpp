#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace blister {

namespace detail {

inline void require_positive_finite(double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be positive and finite, got " +
                                    std::to_string(v));
    }
}

} // namespace detail

/// Conversion factor between the reduced objective and the film energy,
/// and between reduced length L and film length: 2*pi*sqrt(2/3).
inline double energy_scale() {
    return 2.0 * std::numbers::pi * std::sqrt(2.0 / 3.0);
}

/// Raw model inputs. The delamination cost is normalized to 1 and is not a knob.
struct PhysicalParams {
    double alpha;     // elasticity coefficient, > 0
    double theta_bar; // thermal parameter, > 0
    double L_bar;     // film length, > 0

    PhysicalParams(double alpha_, double theta_bar_, double L_bar_)
        : alpha(alpha_), theta_bar(theta_bar_), L_bar(L_bar_) {
        detail::require_positive_finite(alpha, "alpha");
        detail::require_positive_finite(theta_bar, "theta_bar");
        detail::require_positive_finite(L_bar, "L_bar");
    }
};

/// Rescaled parameters. The admissible strain interval is [0, d_upper].
struct ReducedParams {
    double alpha;
    double theta;       // theta_bar / alpha
    double L;           // (1/2pi) * sqrt(3/2) * alpha * L_bar
    double theta_tilde; // theta - alpha^2 / L^2, always < theta
    double d_upper;     // max(theta_tilde, 0)

    ReducedParams(double alpha_, double theta_, double L_)
        : alpha(alpha_), theta(theta_), L(L_) {
        detail::require_positive_finite(alpha, "alpha");
        detail::require_positive_finite(theta, "theta");
        detail::require_positive_finite(L, "L");
        theta_tilde = theta - alpha * alpha / (L * L);
        d_upper = std::max(theta_tilde, 0.0);
    }
};

inline ReducedParams reduce(const PhysicalParams& p) {
    const double theta = p.theta_bar / p.alpha;
    const double L = (1.0 / (2.0 * std::numbers::pi)) * std::sqrt(3.0 / 2.0) * p.alpha * p.L_bar;
    return ReducedParams(p.alpha, theta, L);
}

inline PhysicalParams unreduce(const ReducedParams& r) {
    return PhysicalParams(r.alpha, r.alpha * r.theta, energy_scale() * r.L / r.alpha);
}

} // namespace blister
