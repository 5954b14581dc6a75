#pragma once

#include <charconv>
#include <ostream>
#include <string>

#include <json.hpp>

#include "blister/classifier.hpp"
#include "blister/oracle.hpp"
#include "blister/profile.hpp"

namespace blister {

/// Shortest round-trip decimal form, locale-independent ('.' separator always).
inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

/// Metadata object for a profile: {alpha, theta_bar, L_bar, K, beta, A, T, branch}.
/// The branch label is "trivial" for the zero profile, otherwise the minimizer's
/// interior/boundary label.
inline nlohmann::json profile_to_json(const BlisterProfile& bp, Branch branch) {
    return nlohmann::json{
        {"alpha", bp.params.alpha},
        {"theta_bar", bp.params.theta_bar},
        {"L_bar", bp.params.L_bar},
        {"K", bp.K},
        {"beta", bp.beta},
        {"A", bp.A},
        {"T", bp.T},
        {"branch", bp.K > 0.0 ? to_string(branch) : "trivial"},
    };
}

/// Samples the profile to CSV columns x,zeta1,zeta2 (header row, LF endings,
/// newline-terminated rows, endpoints of the period included).
inline void write_profile_csv(std::ostream& os, const BlisterProfile& bp, int samples) {
    if (samples < 2) throw std::invalid_argument("write_profile_csv: need samples >= 2");
    os << "x,zeta1,zeta2\n";
    const double Lbar = bp.length();
    for (int i = 0; i < samples; ++i) {
        const double x = -0.5 * Lbar + Lbar * i / (samples - 1);
        const ProfileSample s = eval_profile(bp, x);
        os << format_double(x) << ',' << format_double(s.zeta1) << ',' << format_double(s.zeta2)
           << '\n';
    }
}

inline nlohmann::json oracle_result_to_json(const OracleResult& res) {
    nlohmann::json seeds = nlohmann::json::array();
    for (const auto& s : res.seed_outcomes) {
        seeds.push_back({{"seed", s.label},
                         {"energy", s.energy},
                         {"converged", s.converged},
                         {"iterations", s.iterations}});
    }
    return nlohmann::json{
        {"energy", res.energy},
        {"K_measured", res.K_measured},
        {"T_measured", res.T_measured},
        {"n", res.field.n},
        {"converged", res.converged},
        {"iterations", res.iterations},
        {"support_threshold", res.support_threshold},
        {"seed_outcomes", seeds},
    };
}

/// Same CSV schema as the profile, sampled at the grid nodes.
inline void write_field_csv(std::ostream& os, const DiscreteField& fld, double L_bar) {
    os << "x,zeta1,zeta2\n";
    for (int i = 0; i < fld.n; ++i) {
        const double x = -0.5 * L_bar + i * fld.h;
        os << format_double(x) << ',' << format_double(fld.zeta1[i]) << ','
           << format_double(fld.zeta2[i]) << '\n';
    }
}

} // namespace blister
