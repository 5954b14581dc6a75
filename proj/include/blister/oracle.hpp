#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "blister/params.hpp"
#include "blister/profile.hpp"

namespace blister {

/// Periodic grid samples of (zeta1, zeta2). Node n wraps to node 0; zeta2 stays
/// pointwise nonnegative. n is restricted to powers of two for refinement studies.
struct DiscreteField {
    int n = 0;
    double h = 0.0;
    std::vector<double> zeta1;
    std::vector<double> zeta2;

    DiscreteField() = default;

    DiscreteField(int n_, double length) : n(n_), h(length / n_), zeta1(n_, 0.0), zeta2(n_, 0.0) {
        if (n_ < 128 || (n_ & (n_ - 1)) != 0) {
            throw std::invalid_argument("DiscreteField: n must be a power of two >= 128");
        }
    }
};

namespace detail {

inline double support_threshold_of(const std::vector<double>& z2, double factor) {
    double mx = 0.0;
    for (double v : z2) mx = std::max(mx, v);
    return factor * std::max(1.0, mx);
}

} // namespace detail

/// Trapezoidal sum of the full energy integrand on the periodic grid, with D+
/// forward difference for zeta1', centered difference for zeta2' and the 3-point
/// stencil for zeta2''.
inline double discrete_energy(const DiscreteField& fld, const PhysicalParams& p,
                              double support_threshold) {
    const int n = fld.n;
    const double h = fld.h;
    const auto& z1 = fld.zeta1;
    const auto& z2 = fld.zeta2;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const int ip = i + 1 == n ? 0 : i + 1;
        const int im = i == 0 ? n - 1 : i - 1;
        const double d1 = (z1[ip] - z1[i]) / h;
        const double c2 = (z2[ip] - z2[im]) / (2.0 * h);
        const double b2 = (z2[ip] - 2.0 * z2[i] + z2[im]) / (h * h);
        const double strain = d1 + 0.5 * c2 * c2;
        acc += (z2[i] > support_threshold ? 1.0 : 0.0) + 4.0 * p.alpha * strain * strain +
               (4.0 * p.alpha / 3.0) * b2 * b2 - 2.0 * p.theta_bar * c2 * c2;
    }
    return acc * h;
}

/// Energy with zeta1 eliminated (the descent objective): the membrane term
/// collapses to the nonlocal quartic (alpha/L_bar) (sum zeta2'^2 h)^2.
inline double reduced_discrete_energy(const std::vector<double>& zeta2, const PhysicalParams& p,
                                      double support_threshold) {
    const int n = static_cast<int>(zeta2.size());
    const double h = p.L_bar / n;
    double S = 0.0, B = 0.0;
    int supp = 0;
    for (int i = 0; i < n; ++i) {
        const int ip = i + 1 == n ? 0 : i + 1;
        const int im = i == 0 ? n - 1 : i - 1;
        const double c = (zeta2[ip] - zeta2[im]) / (2.0 * h);
        const double b = (zeta2[ip] - 2.0 * zeta2[i] + zeta2[im]) / (h * h);
        S += c * c;
        B += b * b;
        if (zeta2[i] > support_threshold) ++supp;
    }
    S *= h;
    B *= h;
    return supp * h + (p.alpha / p.L_bar) * S * S + (4.0 * p.alpha / 3.0) * B -
           2.0 * p.theta_bar * S;
}

/// Reconstructs the slaved horizontal displacement from zeta2:
/// zeta1' = K/2 - zeta2'^2/2 with K = (1/L_bar) sum zeta2'^2 h, zeta1[0] = 0.
inline std::vector<double> reconstruct_zeta1(const std::vector<double>& zeta2,
                                             const PhysicalParams& p) {
    const int n = static_cast<int>(zeta2.size());
    const double h = p.L_bar / n;
    std::vector<double> c(n);
    double S = 0.0;
    for (int i = 0; i < n; ++i) {
        const int ip = i + 1 == n ? 0 : i + 1;
        const int im = i == 0 ? n - 1 : i - 1;
        c[i] = (zeta2[ip] - zeta2[im]) / (2.0 * h);
        S += c[i] * c[i];
    }
    S *= h;
    const double K = S / p.L_bar;
    std::vector<double> z1(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        z1[i + 1] = z1[i] + h * (0.5 * K - 0.5 * c[i] * c[i]);
    }
    return z1;
}

enum class SeedKind { Zero, CosineScan, Noise };

struct SeedOutcome {
    std::string label;
    double energy = 0.0;
    bool converged = false;
    int iterations = 0;
};

struct OracleOptions {
    int max_iterations = 100000;
    double convergence_rtol = 1e-10; // on total energy over `convergence_window` iterations
    int convergence_window = 50;
    double support_threshold_factor = 1e-9; // threshold = factor * max(1, max zeta2)
    int cosine_width_count = 10;            // trial widths spanning [T*/2, L_bar]
    std::uint64_t noise_seed = 0x5eedULL;   // documented PRNG seed, bit-reproducible runs
    std::vector<SeedKind> seeds = {SeedKind::Zero, SeedKind::CosineScan, SeedKind::Noise};
    // Called after every accepted step with (smooth energy, zeta2); for tests.
    std::function<void(double, const std::vector<double>&)> on_iterate;
};

struct OracleResult {
    double energy = 0.0;     // reduced discrete energy of the best field
    double K_measured = 0.0; // (1/L_bar) sum (D+ zeta2)^2 h
    double T_measured = 0.0; // h * #{i : zeta2[i] > support threshold}
    DiscreteField field;     // best field, zeta1 reconstructed
    bool converged = false;
    int iterations = 0;
    double support_threshold = 0.0;
    std::vector<SeedOutcome> seed_outcomes;
};

namespace detail {

struct DescentOutcome {
    std::vector<double> z;
    double energy = 0.0;
    bool converged = false;
    int iterations = 0;
};

// Projected gradient descent on the reduced energy. The support is frozen during
// each line search: candidate steps keep nodes outside the current positivity set
// at zero, so the indicator term is constant within a search and the comparison
// reduces to the smooth part. Between iterations the support is re-evaluated; it
// can only shrink (nodes clamped to zero leave it), so the total energy decreases
// monotonically across accepted steps. Supports larger than the seed's are the
// width scan's job, not the descent's.
inline DescentOutcome descend(std::vector<double> z, const PhysicalParams& p,
                              const OracleOptions& opt) {
    const int n = static_cast<int>(z.size());
    const double h = p.L_bar / n;
    const double alpha = p.alpha;
    const double quartic_coef = alpha / p.L_bar;
    const double bend_coef = 4.0 * alpha / 3.0;

    for (double& v : z) v = std::max(v, 0.0);

    std::vector<double> c(n), b(n), grad(n), g_prev(n), z_prev(n), trial(n);

    auto smooth_parts = [&](const std::vector<double>& v, double& S, double& B) {
        S = 0.0;
        B = 0.0;
        for (int i = 0; i < n; ++i) {
            const int ip = i + 1 == n ? 0 : i + 1;
            const int im = i == 0 ? n - 1 : i - 1;
            const double ci = (v[ip] - v[im]) / (2.0 * h);
            const double bi = (v[ip] - 2.0 * v[i] + v[im]) / (h * h);
            S += ci * ci;
            B += bi * bi;
        }
        S *= h;
        B *= h;
    };
    auto smooth_energy = [&](double S, double B) {
        return quartic_coef * S * S + bend_coef * B - 2.0 * p.theta_bar * S;
    };
    auto indicator_of = [&](const std::vector<double>& v, double vmax) {
        const double thr = opt.support_threshold_factor * std::max(1.0, vmax);
        int supp = 0;
        for (double x : v) supp += x > thr ? 1 : 0;
        return supp * h;
    };

    double S, B;
    smooth_parts(z, S, B);
    double Es = smooth_energy(S, B);
    double zmax = 0.0;
    for (double v : z) zmax = std::max(zmax, v);
    double total = Es + indicator_of(z, zmax);

    // Initial step from the stiffest curvature, the bending operator's top
    // eigenvalue; afterwards the spectral (Barzilai-Borwein) estimate seeds each
    // backtracking search.
    const double step0 = 1.0 / (1.0 + 128.0 * alpha / (3.0 * h * h * h));
    double step = step0;
    const double step_min = 1e-18;
    bool have_prev = false;

    // Ring buffer of the last `window` total energies for the stagnation test.
    const int window = std::max(1, opt.convergence_window);
    std::vector<double> ring(window, total);

    DescentOutcome out;
    int iter = 0;
    for (; iter < opt.max_iterations; ++iter) {
        grad.swap(g_prev);
        for (int i = 0; i < n; ++i) {
            const int ip = i + 1 == n ? 0 : i + 1;
            const int im = i == 0 ? n - 1 : i - 1;
            c[i] = (z[ip] - z[im]) / (2.0 * h);
            b[i] = (z[ip] - 2.0 * z[i] + z[im]) / (h * h);
        }
        const double dS = 2.0 * quartic_coef * S - 2.0 * p.theta_bar;
        for (int i = 0; i < n; ++i) {
            const int ip = i + 1 == n ? 0 : i + 1;
            const int im = i == 0 ? n - 1 : i - 1;
            grad[i] = dS * (c[im] - c[ip]) + bend_coef * (2.0 / h) * (b[im] - 2.0 * b[i] + b[ip]);
        }

        if (have_prev) {
            double sy = 0.0, ss = 0.0;
            for (int i = 0; i < n; ++i) {
                const double si = z[i] - z_prev[i];
                ss += si * si;
                sy += si * (grad[i] - g_prev[i]);
            }
            if (sy > 0.0 && ss > 0.0) step = std::clamp(ss / sy, step0, 1e12 * step0);
        }

        bool accepted = false;
        double Es_new = 0.0, S_new = 0.0, B_new = 0.0, trial_max = 0.0;
        while (step >= step_min) {
            double move2 = 0.0;
            trial_max = 0.0;
            for (int i = 0; i < n; ++i) {
                // Support frozen: only currently positive nodes may move.
                const double t = z[i] > 0.0 ? std::max(z[i] - step * grad[i], 0.0) : 0.0;
                trial[i] = t;
                const double d = t - z[i];
                move2 += d * d;
                trial_max = std::max(trial_max, t);
            }
            smooth_parts(trial, S_new, B_new);
            Es_new = smooth_energy(S_new, B_new);
            if (Es_new <= Es - 1e-4 * move2 / step) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            out.converged = true; // stationary to line-search resolution
            break;
        }
        z_prev.swap(z);
        z.swap(trial);
        have_prev = true;
        S = S_new;
        B = B_new;
        Es = Es_new;
        step *= 1.25;
        total = Es + indicator_of(z, trial_max);
        if (opt.on_iterate) opt.on_iterate(Es, z);

        const double before = ring[iter % window];
        ring[iter % window] = total;
        if (iter + 1 >= window &&
            std::abs(before - total) <= opt.convergence_rtol * std::max(1.0, std::abs(total))) {
            out.converged = true;
            ++iter;
            break;
        }
    }

    out.z = std::move(z);
    out.energy = total;
    out.iterations = iter;
    return out;
}

} // namespace detail

/// Minimizes the reduced discrete energy over the periodic grid from each seed and
/// returns the best outcome. Seeds: the zero field, single cosine bumps of trial
/// widths spanning [T*/2, L_bar], and small positive noise. The profile structure
/// is used for seeding only, never inside the objective.
inline OracleResult oracle_minimize(const PhysicalParams& p, int n, const OracleOptions& opt = {}) {
    if (n < 128) throw std::invalid_argument("oracle_minimize: need n >= 128");
    DiscreteField proto(n, p.L_bar); // validates the power-of-two restriction
    const double h = proto.h;

    struct Seed {
        std::string label;
        std::vector<double> z;
    };
    std::vector<Seed> seeds;

    auto cosine_bump = [&](double width) {
        std::vector<double> z(n, 0.0);
        const double beta_w = 2.0 * std::numbers::pi / width;
        // Amplitude from the profile family when this width is admissible,
        // otherwise a small fixed bump.
        double amp = 0.1;
        const double Kw = (p.theta_bar - (2.0 * p.alpha / 3.0) * beta_w * beta_w) / p.alpha;
        if (Kw > 0.0) amp = std::sqrt(Kw * p.L_bar / (std::numbers::pi * beta_w));
        for (int i = 0; i < n; ++i) {
            const double x = -0.5 * p.L_bar + i * h;
            if (std::abs(x) < 0.5 * width) z[i] = amp * (std::cos(beta_w * x) + 1.0);
        }
        return z;
    };

    for (SeedKind kind : opt.seeds) {
        switch (kind) {
            case SeedKind::Zero:
                seeds.push_back({"zero", std::vector<double>(n, 0.0)});
                break;
            case SeedKind::CosineScan: {
                // Gradient descent shifts the contact points very slowly, so the
                // width scan has to land the support itself: a coarse family spans
                // [T*/2, L_bar], then the discrete objective is scanned over widths
                // at one-cell resolution and the best lattice width (with its two
                // neighbors) joins the seed set.
                const double w_hi = p.L_bar;
                const double w_lo =
                    std::min(0.5 * smallest_blister(p.alpha).T_star, 0.5 * w_hi);
                const int m = std::max(2, opt.cosine_width_count);
                for (int k = 0; k < m; ++k) {
                    const double w = w_lo * std::pow(w_hi / w_lo, double(k) / (m - 1));
                    seeds.push_back({"cosine_w=" + std::to_string(w), cosine_bump(w)});
                }
                double best_w = w_hi;
                double best_e = std::numeric_limits<double>::infinity();
                for (double w = w_lo; w < w_hi + 0.5 * h; w += h) {
                    const double wc = std::min(w, w_hi);
                    const std::vector<double> z = cosine_bump(wc);
                    const double e = reduced_discrete_energy(
                        z, p, detail::support_threshold_of(z, opt.support_threshold_factor));
                    if (e < best_e) {
                        best_e = e;
                        best_w = wc;
                    }
                }
                for (double w : {best_w - h, best_w, best_w + h}) {
                    const double wc = std::clamp(w, w_lo, w_hi);
                    seeds.push_back({"cosine_scan_w=" + std::to_string(wc), cosine_bump(wc)});
                }
                break;
            }
            case SeedKind::Noise: {
                std::mt19937_64 rng(opt.noise_seed);
                std::uniform_real_distribution<double> u(0.0, 0.02);
                std::vector<double> z(n);
                for (double& v : z) v = u(rng);
                seeds.push_back({"noise", std::move(z)});
                break;
            }
        }
    }
    if (seeds.empty()) throw std::invalid_argument("oracle_minimize: empty seed set");

    // Each descent run is single-threaded and deterministic, so independent seeds
    // can run concurrently; the winner is chosen by (energy, seed index), which
    // makes the result independent of scheduling. With an observer attached the
    // runs stay sequential so callbacks arrive in order.
    std::vector<detail::DescentOutcome> runs(seeds.size());
    const unsigned workers =
        opt.on_iterate ? 1u
                       : std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                                            static_cast<unsigned>(seeds.size()));
    if (workers <= 1) {
        for (size_t i = 0; i < seeds.size(); ++i) {
            runs[i] = detail::descend(std::move(seeds[i].z), p, opt);
        }
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < seeds.size(); i = next.fetch_add(1)) {
                    runs[i] = detail::descend(std::move(seeds[i].z), p, opt);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    OracleResult best;
    size_t best_idx = 0;
    for (size_t i = 0; i < runs.size(); ++i) {
        best.seed_outcomes.push_back(
            {seeds[i].label, runs[i].energy, runs[i].converged, runs[i].iterations});
        if (runs[i].energy < runs[best_idx].energy) best_idx = i;
    }
    best.energy = runs[best_idx].energy;
    best.converged = runs[best_idx].converged;
    best.iterations = runs[best_idx].iterations;
    best.field = DiscreteField(n, p.L_bar);
    best.field.zeta2 = std::move(runs[best_idx].z);

    best.field.zeta1 = reconstruct_zeta1(best.field.zeta2, p);
    best.support_threshold =
        detail::support_threshold_of(best.field.zeta2, opt.support_threshold_factor);
    int supp = 0;
    double Kf = 0.0;
    for (int i = 0; i < n; ++i) {
        const int ip = i + 1 == n ? 0 : i + 1;
        const double d = (best.field.zeta2[ip] - best.field.zeta2[i]) / h;
        Kf += d * d;
        if (best.field.zeta2[i] > best.support_threshold) ++supp;
    }
    best.K_measured = Kf * h / p.L_bar;
    best.T_measured = supp * h;
    return best;
}

} // namespace blister
