#pragma once

#include <cmath>
#include <stdexcept>

#include "blister/params.hpp"

namespace blister {

// Phase-diagram boundary curves in the (theta, L) plane. L01 and Ld are defined
// for every theta > 0; L02 and L12 only for theta >= theta_star(alpha), which
// guarantees sqrt(alpha)*theta > 1. No upper range is enforced: for theta -> 0
// the theta^{-5/2} curves overflow to +inf, which callers may treat as "L below
// the curve for every finite L".

/// Abscissa of the triple point: theta* = (5/4) alpha^{-1/2}.
inline double theta_star(double alpha) {
    detail::require_positive_finite(alpha, "alpha");
    return 1.25 / std::sqrt(alpha);
}

/// Threshold below which f has no interior critical point: (25/24) sqrt(5/3) theta^{-5/2}.
inline double curve_Ld(double theta) {
    detail::require_positive_finite(theta, "theta");
    return (25.0 / 24.0) * std::sqrt(5.0 / 3.0) * std::pow(theta, -2.5);
}

/// Trivial/blister boundary: 5^{5/2}/16 * theta^{-5/2}.
inline double curve_L01(double theta) {
    detail::require_positive_finite(theta, "theta");
    return (std::pow(5.0, 2.5) / 16.0) * std::pow(theta, -2.5);
}

/// Trivial/fully-delaminated boundary: alpha^{5/4} (sqrt(alpha) theta - 1)^{-1/2}.
inline double curve_L02(double theta, double alpha) {
    detail::require_positive_finite(theta, "theta");
    if (theta < theta_star(alpha)) {
        throw std::domain_error("curve_L02: defined only for theta >= theta_star(alpha)");
    }
    return std::pow(alpha, 1.25) / std::sqrt(std::sqrt(alpha) * theta - 1.0);
}

/// Blister/fully-delaminated boundary: (2 alpha^3 theta + 2 alpha^2 sqrt(alpha (alpha theta^2 - 1)))^{1/2}.
inline double curve_L12(double theta, double alpha) {
    detail::require_positive_finite(theta, "theta");
    if (theta < theta_star(alpha)) {
        throw std::domain_error("curve_L12: defined only for theta >= theta_star(alpha)");
    }
    const double a3 = alpha * alpha * alpha;
    const double inner = alpha * (alpha * theta * theta - 1.0);
    return std::sqrt(2.0 * a3 * theta + 2.0 * alpha * alpha * std::sqrt(inner));
}

} // namespace blister
