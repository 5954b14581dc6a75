#pragma once

#include <cmath>
#include <stdexcept>

#include "blister/params.hpp"

namespace blister {

/// Scalar objective f(X) = (theta - X)^{-1/2} - L*X^2 for X in (0, theta), f(0) = 0.
/// f is deliberately discontinuous at 0: the right limit is theta^{-1/2} > 0.
inline double f_value(double X, const ReducedParams& r) {
    if (!(X >= 0.0 && X < r.theta)) {
        throw std::domain_error("f_value: X outside [0, theta)");
    }
    if (X == 0.0) return 0.0;
    return 1.0 / std::sqrt(r.theta - X) - r.L * X * X;
}

/// f'(X) = 1/2 (theta - X)^{-3/2} - 2*L*X on the open interval (0, theta).
inline double f_prime(double X, const ReducedParams& r) {
    if (!(X > 0.0 && X < r.theta)) {
        throw std::domain_error("f_prime: X outside (0, theta)");
    }
    return 0.5 * std::pow(r.theta - X, -1.5) - 2.0 * r.L * X;
}

/// f''(X) = 3/4 (theta - X)^{-5/2} - 2*L on the open interval (0, theta).
inline double f_second(double X, const ReducedParams& r) {
    if (!(X > 0.0 && X < r.theta)) {
        throw std::domain_error("f_second: X outside (0, theta)");
    }
    return 0.75 * std::pow(r.theta - X, -2.5) - 2.0 * r.L;
}

} // namespace blister
