// Command-line front end: single solves with optional snapshot dumps,
// config-driven amplitude sweeps with CSV/JSON reports, the blow-up constant
// and bound-time table, and the self-check battery.

#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "semiwave/bounds.hpp"
#include "semiwave/harness.hpp"
#include "semiwave/marcher.hpp"
#include "semiwave/picard.hpp"

using namespace semiwave;

namespace {

double default_amp_f(DataFamily fam) { return fam == DataFamily::FPositiveGZero ? 1.0 : 0.0; }
double default_amp_g(DataFamily fam) { return fam == DataFamily::FPositiveGZero ? 0.0 : 1.0; }

int cmd_solve(double p, double a, double eps, const std::string& family, double R, double h,
              double tmax, double threshold, const std::string& dump) {
    const DataFamily fam = family_from_name(family);
    const auto datum = make_data(fam, R, default_amp_f(fam), default_amp_g(fam));
    Params P{p, a, eps, R};
    MarchOptions opt;
    opt.t_max = tmax;
    opt.threshold = threshold > 0.0 ? threshold : 1e6 * std::max(1.0, eps);
    opt.record_series = true;
    const auto r = march(datum, P, h, opt);

    std::printf("family      : %s\n", family_name(fam));
    std::printf("p, a, eps, R: %g %g %g %g\n", p, a, eps, R);
    std::printf("h, tmax     : %g %g\n", h, tmax);
    std::printf("threshold   : %g\n", opt.threshold);
    std::printf("status      : %s\n", status_name(r.status));
    if (r.status == SolveStatus::BlewUp) std::printf("T_blow      : %.10g\n", r.T_blow);
    std::printf("t_end       : %.10g\n", r.t_end);
    if (!r.series_max.empty()) std::printf("max|u| last : %.10g\n", r.series_max.back());
    if (!dump.empty()) {
        write_snapshot(r, dump);
        write_series_csv(r, dump + ".series.csv");
        std::printf("snapshot    : %s (+ %s.series.csv)\n", dump.c_str(), dump.c_str());
    }
    return 0;
}

int cmd_sweep(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) {
        std::fprintf(stderr, "cannot open config: %s\n", config_path.c_str());
        return 1;
    }
    const auto cfg = sweep_config_from_json(nlohmann::json::parse(in));
    const auto res = sweep(cfg);

    for (const auto& r : res.records)
        std::printf("eps=%-10.6g T_num=%-12.6g status=%s%s\n", r.eps, r.T_num,
                    status_name(r.status), r.unreliable ? " (unreliable)" : "");
    if (res.fit.valid)
        std::printf("fit: slope=%.6g intercept=%.6g r2=%.6g\n", res.fit.slope, res.fit.intercept,
                    res.fit.r_squared);
    std::printf("theoretical exponent: %.6g\n", res.theoretical_exponent);
    if (res.gauge_law && std::isfinite(res.gauge_spread))
        std::printf("gauge spread: %.6g\n", res.gauge_spread);
    std::printf("verdict: %s\n", res.verdict ? "pass" : "fail");

    const std::string csv = cfg.out_csv.empty() ? "sweep.csv" : cfg.out_csv;
    const std::string json = cfg.out_json.empty() ? "sweep.json" : cfg.out_json;
    write_report(res, csv, json);
    std::printf("wrote %s and %s\n", csv.c_str(), json.c_str());
    return 0;
}

int cmd_bounds(double p, double a, double eps, const std::string& family, double R, double amp_f,
               double amp_g) {
    const DataFamily fam = family_from_name(family);
    const auto datum = make_data(fam, R, amp_f, amp_g);
    Params P{p, a, eps, R};
    const IntegralCase ic = integral_case_of(datum);

    std::printf("family        : %s\n", family_name(fam));
    std::printf("p, a, eps, R  : %g %g %g %g\n", p, a, eps, R);
    std::printf("integral case : %s\n", ic == IntegralCase::NonZero ? "nonzero" : "zero");
    std::printf("lower shape   : %.10g  (unit-constant reference)\n",
                lifespan_lower_shape(ic, P, eps));
    if (a != 0.0)
        std::printf("exponent      : %.10g\n", theoretical_exponent(ic, P));
    else
        std::printf("gauge law     : %s\n", ic == IntegralCase::NonZero ? "phi" : "psi_p");

    try {
        const auto c = compute_constants(P, datum);
        std::printf("C0..C5        : %.10g %.10g %.10g %.10g %.10g %.10g\n", c.c0, c.c1, c.c2,
                    c.c3, c.c4, c.c5);
        if (std::isfinite(c.c7)) std::printf("C6, C7        : %.10g %.10g\n", c.c6, c.c7);
        std::printf("Sp, Sp'       : %.10g %.10g\n", c.sp, c.sp_prime);
        if (c.has_cg()) std::printf("Cg            : %.10g\n", c.cg);
        if (c.has_cf()) {
            std::printf("Cf, Cf'       : %.10g %.10g\n", c.cf, c.cf_prime);
            if (std::isfinite(c.cf_dprime)) std::printf("Cf''          : %.10g\n", c.cf_dprime);
        }
        const double eth = epsilon_threshold(ic, P, c);
        std::printf("eps threshold : %.10g\n", eth);
        const auto b = upper_bound_time(ic, P, c);
        std::printf("t0 upper bound: %.10g%s\n", b.t0,
                    b.at_domain_floor ? "  (condition already holds at 4R)" : "");
        if (eps > eth) std::printf("note: eps exceeds the case threshold; t0 is not informative\n");
    } catch (const std::exception& e) {
        std::printf("no upper-bound hypothesis applies: %s\n", e.what());
    }
    return 0;
}

int verify_huygens() {
    const auto dodd = make_data(DataFamily::GZeroOdd, 1.0, 0.5, 1.0);
    const auto dfz = make_data(DataFamily::FPositiveGZero, 1.0, 1.0, 0.0);
    bool ok = true;
    for (const auto* d : {&dodd, &dfz}) {
        const bool pass = huygens_check(*d, 10.0 * d->R, 10000);
        std::printf("huygens %-18s: %s\n", family_name(d->family), pass ? "ok" : "FAIL");
        ok = ok && pass;
    }
    return ok ? 0 : 1;
}

int verify_apriori(bool mixed, double a, double T) {
    Params P{2.0, a, 0.1, 1.0};
    bool ok = true;
    if (mixed) {
        for (int m : {0, 1}) {
            const double c1 = measure_annulus_constant(m, T, P);
            const double c2 = measure_annulus_constant(m, 2.0 * T, P);
            const bool pass = std::abs(c2 - c1) <= 0.2 * c1;
            std::printf("mixed-term m=%d: M(T)=%.6g M(2T)=%.6g change=%.2f%% %s\n", m, c1, c2,
                        100.0 * std::abs(c2 - c1) / c1, pass ? "ok" : "FAIL");
            ok = ok && pass;
        }
    } else {
        const double c1 = measure_cone_constant(T, P);
        const double c2 = measure_cone_constant(2.0 * T, P);
        const bool pass = std::abs(c2 - c1) <= 0.2 * c1;
        std::printf("power-term: C(T)=%.6g C(2T)=%.6g change=%.2f%% %s\n", c1, c2,
                    100.0 * std::abs(c2 - c1) / c1, pass ? "ok" : "FAIL");
        ok = pass;
    }
    return ok ? 0 : 1;
}

int verify_picard() {
    const double p = 2.0, a = 1.0, eps = 0.05, T = 5.0, h = 1.0 / 16.0;
    const auto datum = make_data(DataFamily::GZeroOdd, 1.0, 0.0, 1.0);
    Params P{p, a, eps, 1.0};
    const auto res = picard_iterate(datum, P, T, h);
    std::printf("picard: converged=%d sweeps=%zu ratio=%.4g\n", int(res.converged),
                res.deltas.size() + 1, res.contraction_ratio);
    bool ok = res.converged && res.contraction_ratio <= 0.5;

    const double M = measure_annulus_constant(1, T, P, 32);
    const double C = measure_cone_constant(T, P, 32);
    const auto cc = contraction_conditions(M, C, P, T);
    std::printf("picard: measured M=%.4g C=%.4g orbit_bounded=%d half_contraction=%d\n", M, C,
                int(cc.orbit_bounded), int(cc.half_contraction));
    // when both smallness conditions hold, convergence is mandatory
    if (cc.orbit_bounded && cc.half_contraction && !res.converged) ok = false;
    std::printf("picard: %s\n", ok ? "ok" : "FAIL");
    return ok ? 0 : 1;
}

int verify_holder() {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> vals(-3.0, 3.0);
    std::uniform_real_distribution<double> thetas(0.0, 1.0);
    Params P{2.0, -1.0, 0.1, 1.0};
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Field U = make_cone_grid(1.5, 1.0, 0.25);
        Field V = U;
        for (auto& v : U.values) v = vals(rng);
        for (auto& v : V.values) v = vals(rng);
        const double theta = thetas(rng);
        Field mix = U;
        for (std::size_t i = 0; i < mix.values.size(); ++i)
            mix.values[i] = std::pow(std::abs(U.values[i]), theta) *
                            std::pow(std::abs(V.values[i]), 1.0 - theta);
        const double lhs = weighted_norm(mix, P);
        const double rhs =
            std::pow(weighted_norm(U, P), theta) * std::pow(weighted_norm(V, P), 1.0 - theta);
        if (lhs > rhs * (1.0 + 1e-12)) ++violations;
    }
    std::printf("holder: %d violations in 1000 trials %s\n", violations,
                violations == 0 ? "ok" : "FAIL");
    return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semiwave: 1D weighted semilinear wave lab"};
    app.set_help_flag("--help", "print help");  // keep -h free for the grid spacing
    app.require_subcommand(1);

    double p = 2.0, a = 1.0, eps = 0.1, R = 1.0, h = 1.0 / 128.0, tmax = 10.0;
    double threshold = 0.0, amp_f = -1.0, amp_g = -1.0, T_check = 16.0;
    std::string family = "g-positive", dump, config_path, which;

    auto* solve = app.add_subcommand("solve", "run one march and report the outcome");
    solve->set_help_flag("--help");
    solve->add_option("--p", p)->required();
    solve->add_option("--a", a)->required();
    solve->add_option("--eps", eps)->required();
    solve->add_option("--family", family)->required();
    solve->add_option("--R", R)->required();
    solve->add_option("--h", h)->required();
    solve->add_option("--tmax", tmax)->required();
    solve->add_option("--threshold", threshold);
    solve->add_option("--dump", dump);

    auto* sweep_cmd = app.add_subcommand("sweep", "run an eps sweep from a JSON config");
    sweep_cmd->add_option("--config", config_path)->required();

    auto* bounds_cmd = app.add_subcommand("bounds", "print constants and bound times");
    bounds_cmd->add_option("--p", p)->required();
    bounds_cmd->add_option("--a", a)->required();
    bounds_cmd->add_option("--eps", eps)->required();
    bounds_cmd->add_option("--family", family)->required();
    bounds_cmd->add_option("--R", R)->required();
    bounds_cmd->add_option("--amp_f", amp_f);
    bounds_cmd->add_option("--amp_g", amp_g);

    auto* verify = app.add_subcommand("verify", "self-checks: pass/fail per property");
    verify->add_option("--which", which)
        ->required()
        ->check(CLI::IsMember({"huygens", "apriori-i0", "apriori-i", "picard", "holder"}));
    verify->add_option("--a", a);
    verify->add_option("--T", T_check);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(p, a, eps, family, R, h, tmax, threshold, dump);
        if (sweep_cmd->parsed()) return cmd_sweep(config_path);
        if (bounds_cmd->parsed()) {
            const DataFamily fam = family_from_name(family);
            if (amp_f < 0.0) amp_f = default_amp_f(fam);
            if (amp_g < 0.0) amp_g = default_amp_g(fam);
            return cmd_bounds(p, a, eps, family, R, amp_f, amp_g);
        }
        if (verify->parsed()) {
            if (which == "huygens") return verify_huygens();
            if (which == "apriori-i0") return verify_apriori(true, a, T_check);
            if (which == "apriori-i") return verify_apriori(false, a, T_check);
            if (which == "picard") return verify_picard();
            if (which == "holder") return verify_holder();
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
