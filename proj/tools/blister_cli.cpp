// Command-line front end: classification, phase-diagram sweeps, profile emission,
// verification against quadrature or the direct minimizer, and the closed-form
// constants. Every command is deterministic given its flags; exit codes are
// 0 (success), 1 (verification failure), 2 (usage error).

#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "blister/blister.hpp"

using nlohmann::json;

namespace {

struct ParamArgs {
    double alpha = 1.0;
    double a = 0.0; // theta or theta_bar
    double b = 0.0; // L or L_bar
    bool reduced = false;
    bool physical = false;
};

void add_param_options(CLI::App* cmd, ParamArgs& args) {
    cmd->add_option("--alpha", args.alpha, "elasticity coefficient")->required();
    auto* red = cmd->add_flag("--reduced", args.reduced, "interpret inputs as (theta, L)");
    auto* phy = cmd->add_flag("--physical", args.physical, "interpret inputs as (theta_bar, L_bar)");
    red->excludes(phy);
    phy->excludes(red);
    cmd->add_option("--theta", args.a, "reduced thermal parameter (with --reduced)");
    cmd->add_option("--L", args.b, "reduced length (with --reduced)");
    cmd->add_option("--theta-bar", args.a, "thermal parameter (with --physical)");
    cmd->add_option("--L-bar", args.b, "film length (with --physical)");
}

blister::ReducedParams resolve_params(const ParamArgs& args) {
    if (args.reduced == args.physical) {
        throw CLI::ValidationError("params", "pass exactly one of --reduced / --physical");
    }
    if (args.reduced) return blister::ReducedParams(args.alpha, args.a, args.b);
    return blister::reduce(blister::PhysicalParams(args.alpha, args.a, args.b));
}

json minimizer_entry(double K, const blister::ReducedParams& r, blister::Branch branch) {
    const blister::PhysicalParams p = blister::unreduce(r);
    const auto bp = blister::build_profile(K, p);
    return json{
        {"K", bp.K},
        {"beta", bp.beta},
        {"A", bp.A},
        {"T", bp.T},
        {"branch", K > 0.0 ? blister::to_string(branch) : "trivial"},
        {"E_closed_form", blister::closed_form_energy(K, r)},
    };
}

int cmd_classify(const ParamArgs& args, double tol) {
    const blister::ReducedParams r = resolve_params(args);
    const auto m = blister::minimize_aux(r, tol);

    json out{
        {"alpha", r.alpha},
        {"theta", r.theta},
        {"L", r.L},
        {"theta_tilde", r.theta_tilde},
        {"region", blister::to_string(m.region)},
        {"argmin", m.argmin},
        {"f_at_argmin", m.f_at_argmin},
    };
    json f_values = json::array();
    for (double x : m.argmin) f_values.push_back(blister::f_value(x, r));
    out["f_values"] = f_values;

    json minimizers = json::array();
    for (double x : m.argmin) minimizers.push_back(minimizer_entry(x, r, m.branch));
    out["minimizers"] = minimizers;

    // Convenience mirror of the blister minimizer (the nonzero one when present).
    const json& principal = minimizers.back();
    for (const char* key : {"K", "beta", "A", "T", "branch", "E_closed_form"}) {
        out[key] = principal.at(key);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct SweepArgs {
    double alpha = 1.0;
    double theta_min = 0.0, theta_max = 0.0;
    double L_min = 0.0, L_max = 0.0;
    int theta_count = 0, L_count = 0;
    std::string theta_scale = "linear", L_scale = "linear";
    double tol = 1e-9;
    std::string out;
    std::string curves_out;
    int threads = 0;
};

std::vector<double> axis(double lo, double hi, int count, const std::string& scale) {
    if (count < 2 || !(lo < hi) || !(lo > 0.0)) {
        throw CLI::ValidationError("sweep", "axis needs count >= 2 and 0 < min < max");
    }
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i) {
        const double t = double(i) / (count - 1);
        xs[i] = scale == "log" ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }
    return xs;
}

int cmd_sweep(const SweepArgs& sw) {
    const auto thetas = axis(sw.theta_min, sw.theta_max, sw.theta_count, sw.theta_scale);
    const auto Ls = axis(sw.L_min, sw.L_max, sw.L_count, sw.L_scale);

    std::vector<std::string> rows(thetas.size() * Ls.size());
    const unsigned workers = sw.threads > 0
                                 ? unsigned(sw.threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t k = next.fetch_add(1); k < rows.size(); k = next.fetch_add(1)) {
            const double theta = thetas[k / Ls.size()];
            const double L = Ls[k % Ls.size()];
            const blister::ReducedParams r(sw.alpha, theta, L);
            const auto m = blister::minimize_aux(r, sw.tol);
            const double K = m.argmin.back();
            const auto bp = blister::build_profile(K, blister::unreduce(r));
            std::ostringstream os;
            os << blister::format_double(theta) << ',' << blister::format_double(L) << ','
               << blister::to_string(m.region) << ',' << blister::format_double(bp.K) << ','
               << blister::format_double(bp.T) << ',' << blister::format_double(bp.A) << ','
               << blister::format_double(blister::energy_scale() * m.f_at_argmin) << '\n';
            rows[k] = os.str();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    std::ofstream out(sw.out, std::ios::binary);
    if (!out) throw CLI::ValidationError("sweep", "cannot open output file " + sw.out);
    out << "theta,L,region,K,T,A,energy\n";
    for (const auto& row : rows) out << row;

    std::string curves_path = sw.curves_out;
    if (curves_path.empty()) {
        const size_t dot = sw.out.rfind('.');
        curves_path = dot == std::string::npos ? sw.out + "_curves"
                                               : sw.out.substr(0, dot) + "_curves" + sw.out.substr(dot);
    }
    std::ofstream curves(curves_path, std::ios::binary);
    if (!curves) throw CLI::ValidationError("sweep", "cannot open output file " + curves_path);
    const double ts = blister::theta_star(sw.alpha);
    curves << "theta,L_d,L01,L02,L12\n";
    for (double theta : thetas) {
        curves << blister::format_double(theta) << ','
               << blister::format_double(blister::curve_Ld(theta)) << ','
               << blister::format_double(blister::curve_L01(theta)) << ',';
        if (theta >= ts) {
            curves << blister::format_double(blister::curve_L02(theta, sw.alpha)) << ','
                   << blister::format_double(blister::curve_L12(theta, sw.alpha)) << '\n';
        } else {
            curves << ",\n";
        }
    }
    std::cerr << "wrote " << rows.size() << " rows to " << sw.out << " and curves to "
              << curves_path << "\n";
    return 0;
}

void write_profile_files(const std::string& prefix, const blister::BlisterProfile& bp,
                         blister::Branch branch, int samples) {
    std::ofstream csv(prefix + ".csv", std::ios::binary);
    if (!csv) throw CLI::ValidationError("profile", "cannot open " + prefix + ".csv");
    blister::write_profile_csv(csv, bp, samples);
    std::ofstream meta(prefix + ".json", std::ios::binary);
    if (!meta) throw CLI::ValidationError("profile", "cannot open " + prefix + ".json");
    meta << blister::profile_to_json(bp, bp.K > 0.0 ? branch : blister::Branch::none).dump(2)
         << "\n";
}

int cmd_profile(const ParamArgs& args, const std::string& K_arg, int samples,
                const std::string& prefix, double tol) {
    const blister::ReducedParams r = resolve_params(args);
    const blister::PhysicalParams p = blister::unreduce(r);

    if (K_arg != "auto") {
        double K = 0.0;
        try {
            K = std::stod(K_arg);
        } catch (const std::exception&) {
            throw CLI::ValidationError("profile", "--K expects 'auto' or a number");
        }
        const auto m = blister::minimize_aux(r, tol);
        write_profile_files(prefix, blister::build_profile(K, p), m.branch, samples);
        return 0;
    }

    const auto m = blister::minimize_aux(r, tol);
    if (m.argmin.size() == 2) {
        // Tie stratum: emit both global minimizers, preferring neither.
        write_profile_files(prefix + "_trivial", blister::build_profile(0.0, p),
                            blister::Branch::none, samples);
        write_profile_files(prefix + "_blister", blister::build_profile(m.argmin.back(), p),
                            m.branch, samples);
        std::cout << "two global minimizers on " << blister::to_string(m.region)
                  << "; wrote " << prefix << "_trivial.* and " << prefix << "_blister.*\n";
        return 0;
    }
    const double K = m.argmin.back();
    if (K == 0.0) {
        std::cout << "region " << blister::to_string(m.region)
                  << " admits only the trivial solution; emitting the zero profile\n";
    }
    write_profile_files(prefix, blister::build_profile(K, p), m.branch, samples);
    return 0;
}

int cmd_verify(const ParamArgs& args, int n, const std::string& level, double tol) {
    const blister::ReducedParams r = resolve_params(args);
    const blister::PhysicalParams p = blister::unreduce(r);
    const auto m = blister::minimize_aux(r, tol);
    const double K = m.argmin.back();
    const double E_closed = blister::energy_scale() * m.f_at_argmin;

    if (level == "quadrature") {
        const auto bp = blister::build_profile(K, p);
        const double Eq = blister::profile_energy_quadrature(bp, std::max(n, 64));
        const double Ecf = blister::closed_form_energy(K, r);
        const double rel = std::abs(Eq - Ecf) / std::max(1e-30, std::abs(Ecf));
        const bool pass = K == 0.0 ? Eq == 0.0 : rel <= 1e-6;
        std::cout << "quadrature check at K=" << K << ": E_quad=" << Eq << " E_closed=" << Ecf
                  << " rel=" << (K == 0.0 ? 0.0 : rel) << " -> " << (pass ? "PASS" : "FAIL")
                  << "\n";
        return pass ? 0 : 1;
    }

    // oracle level
    const auto res = blister::oracle_minimize(p, n);
    bool pass;
    std::cout << "oracle at n=" << n << ": energy=" << res.energy
              << " closed_form=" << E_closed << " T_measured=" << res.T_measured;
    if (E_closed < 0.0) {
        const double rel = std::abs(res.energy - E_closed) / std::abs(E_closed);
        const auto bp = blister::build_profile(K, p);
        const bool support_ok = std::abs(res.T_measured - bp.T) <= 2.0 * res.field.h;
        pass = rel <= 0.02 && support_ok;
        std::cout << " T_analytic=" << bp.T << " rel=" << rel;
    } else {
        pass = res.energy >= -1e-6;
    }
    std::cout << " -> " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

int cmd_smallest(double alpha) {
    const auto sb = blister::smallest_blister(alpha);
    const double ts = blister::theta_star(alpha);
    const double Lstar = blister::curve_L01(ts);
    json out{
        {"alpha", alpha},
        {"T_star", sb.T_star},
        {"A_star", sb.A_star},
        {"theta_star", ts},
        {"L_star", Lstar},
        {"triple_point", {{"theta", ts}, {"L", Lstar}}},
    };
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_local(const ParamArgs& args, int max_p, const std::string& out_path) {
    const blister::ReducedParams r = resolve_params(args);
    const blister::PhysicalParams p = blister::unreduce(r);
    std::ostringstream os;
    os << "p,nontrivial,K_p,energy\n";
    for (int q = 1; q <= max_p; ++q) {
        const auto opt = blister::optimize_p_branch(q, p);
        if (opt) {
            os << q << ",1," << blister::format_double(opt->K_p) << ','
               << blister::format_double(opt->energy) << '\n';
        } else {
            os << q << ",0,,\n";
        }
    }
    if (out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw CLI::ValidationError("local", "cannot open " + out_path);
        out << os.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"thin-film blister phase diagram and profile toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a key=value config file");
    app.get_config_formatter_base()->comment('#');

    ParamArgs cls_args;
    double cls_tol = 1e-9;
    auto* cls = app.add_subcommand("classify", "classify a parameter point and print JSON");
    cls->configurable();
    cls->fallthrough();
    add_param_options(cls, cls_args);
    cls->add_option("--tol", cls_tol, "relative tolerance for boundary strata");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "phase-diagram sweep to CSV");
    sweep->configurable();
    sweep->fallthrough();
    sweep->add_option("--alpha", sw.alpha, "elasticity coefficient")->required();
    sweep->add_option("--theta-min", sw.theta_min)->required();
    sweep->add_option("--theta-max", sw.theta_max)->required();
    sweep->add_option("--theta-count", sw.theta_count)->required();
    sweep->add_option("--L-min", sw.L_min)->required();
    sweep->add_option("--L-max", sw.L_max)->required();
    sweep->add_option("--L-count", sw.L_count)->required();
    sweep->add_option("--theta-scale", sw.theta_scale)->check(CLI::IsMember({"linear", "log"}));
    sweep->add_option("--L-scale", sw.L_scale)->check(CLI::IsMember({"linear", "log"}));
    sweep->add_option("--tol", sw.tol, "boundary tolerance");
    sweep->add_option("--out", sw.out, "output CSV path")->required();
    sweep->add_option("--curves-out", sw.curves_out, "boundary-curves CSV path");
    sweep->add_option("--threads", sw.threads, "worker threads (default: hardware)");

    ParamArgs prof_args;
    std::string prof_K = "auto";
    int prof_samples = 512;
    std::string prof_out;
    double prof_tol = 1e-9;
    auto* prof = app.add_subcommand("profile", "emit profile CSV + metadata JSON");
    prof->configurable();
    prof->fallthrough();
    add_param_options(prof, prof_args);
    prof->add_option("--K", prof_K, "strain constant, or 'auto' for the global minimizer");
    prof->add_option("--samples", prof_samples, "sample count")->check(CLI::Range(2, 1 << 22));
    prof->add_option("--out", prof_out, "output path prefix")->required();
    prof->add_option("--tol", prof_tol, "boundary tolerance");

    ParamArgs ver_args;
    int ver_n = 4096;
    std::string ver_level = "quadrature";
    double ver_tol = 1e-9;
    auto* ver = app.add_subcommand("verify", "check closed forms against quadrature or the oracle");
    ver->configurable();
    ver->fallthrough();
    add_param_options(ver, ver_args);
    ver->add_option("--n", ver_n, "grid / node count");
    ver->add_option("--level", ver_level)->check(CLI::IsMember({"quadrature", "oracle"}));
    ver->add_option("--tol", ver_tol, "boundary tolerance");

    double sm_alpha = 1.0;
    auto* sm = app.add_subcommand("smallest", "smallest-blister constants and the triple point");
    sm->configurable();
    sm->fallthrough();
    sm->add_option("--alpha", sm_alpha, "elasticity coefficient")->required();

    ParamArgs loc_args;
    int loc_max_p = 8;
    std::string loc_out;
    auto* loc = app.add_subcommand("local", "table of p-bump local branches");
    loc->configurable();
    loc->fallthrough();
    add_param_options(loc, loc_args);
    loc->add_option("--max-p", loc_max_p, "largest p to tabulate")->check(CLI::Range(1, 1024));
    loc->add_option("--out", loc_out, "output CSV path (default: stdout)");

    try {
        app.parse(argc, argv);
        if (cls->parsed()) return cmd_classify(cls_args, cls_tol);
        if (sweep->parsed()) return cmd_sweep(sw);
        if (prof->parsed()) return cmd_profile(prof_args, prof_K, prof_samples, prof_out, prof_tol);
        if (ver->parsed()) return cmd_verify(ver_args, ver_n, ver_level, ver_tol);
        if (sm->parsed()) return cmd_smallest(sm_alpha);
        if (loc->parsed()) return cmd_local(loc_args, loc_max_p, loc_out);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
