#pragma once

// Amplitude sweeps and scaling-law fits: run the lifespan detector over a
// ladder of eps values, fit log T against log eps for the power-law regimes,
// and check gauge constancy for the log-corrected a = 0 laws. Reports go to
// CSV (flat) and JSON (full structure); both are byte-stable for a fixed
// config.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "semiwave/bounds.hpp"
#include "semiwave/marcher.hpp"

namespace semiwave {

struct SweepConfig {
    double p = 2.0;
    double a = 1.0;
    DataFamily family = DataFamily::GPositive;
    double R = 1.0;
    double amp_f = 0.0;
    double amp_g = 1.0;
    std::vector<double> eps_list;
    std::vector<double> h_list;
    double threshold = 0.0;  // 0 -> per-run default 1e6 * max(1, eps)
    double tol_abs = 0.15;   // slope tolerance for the verdict
    std::string out_csv;
    std::string out_json;
};

inline SweepConfig sweep_config_from_json(const nlohmann::json& j) {
    SweepConfig c;
    c.p = j.at("p").get<double>();
    c.a = j.at("a").get<double>();
    c.family = family_from_name(j.at("family").get<std::string>());
    c.R = j.at("R").get<double>();
    c.amp_f = j.value("amp_f", c.family == DataFamily::FPositiveGZero ? 1.0 : 0.0);
    c.amp_g = j.value("amp_g", c.family == DataFamily::FPositiveGZero ? 0.0 : 1.0);
    c.eps_list = j.at("eps_list").get<std::vector<double>>();
    c.h_list = j.at("h_list").get<std::vector<double>>();
    c.threshold = j.value("threshold", 0.0);
    c.tol_abs = j.value("tol_abs", 0.15);
    c.out_csv = j.value("out_csv", std::string{});
    c.out_json = j.value("out_json", std::string{});
    return c;
}

struct SweepRecord {
    double eps = 0.0;
    double T_num = std::numeric_limits<double>::quiet_NaN();
    SolveStatus status = SolveStatus::SurvivedToTmax;
    bool unreliable = false;
    double threshold = 0.0;
    double t_max = 0.0;
    std::vector<double> grids;
    std::vector<double> T_blow_per_grid;

    bool usable() const { return status == SolveStatus::BlewUp && !unreliable && std::isfinite(T_num); }
};

struct FitResult {
    double slope = std::numeric_limits<double>::quiet_NaN();
    double intercept = std::numeric_limits<double>::quiet_NaN();
    double r_squared = std::numeric_limits<double>::quiet_NaN();
    bool valid = false;
};

enum class GaugeKind { Identity, Phi, Psi };

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRecord> records;  // sorted by eps descending
    FitResult fit;
    double gauge_spread = std::numeric_limits<double>::quiet_NaN();  // a = 0 cases
    double theoretical_exponent = 0.0;
    bool gauge_law = false;  // a == 0: verdict by gauge constancy, not slope
    bool verdict = false;
    double tol_abs = 0.15;
    double gauge_spread_tol = 2.0;
};

// Ordinary least squares of log T against log eps over the usable records.
inline FitResult fit_exponent(const std::vector<SweepRecord>& records) {
    std::vector<double> xs, ys;
    for (const auto& r : records) {
        if (!r.usable()) continue;  // flagged entries stay in the report, out of the fit
        xs.push_back(std::log(r.eps));
        ys.push_back(std::log(r.T_num));
    }
    if (xs.size() < 4)
        throw std::invalid_argument("fit_exponent: need at least 4 usable records");

    const std::size_t n = xs.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    FitResult f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double pred = f.intercept + f.slope * xs[i];
        ss_res += (ys[i] - pred) * (ys[i] - pred);
    }
    f.r_squared = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    f.valid = true;
    return f;
}

inline double eval_gauge(GaugeKind g, double s, double p) {
    switch (g) {
        case GaugeKind::Identity: return s;
        case GaugeKind::Phi: return gauge_phi(s);
        case GaugeKind::Psi: return gauge_psi(s, p);
    }
    return s;
}

// q(eps) = gauge(T_num) * eps^exponent per usable record; returns max q / min q.
// The law T ~ gauge^{-1}(C eps^{-exponent}) holds exactly iff q is constant.
inline double fit_gauge_constancy(const std::vector<SweepRecord>& records, GaugeKind gauge,
                                  double exponent, double p) {
    double qmin = std::numeric_limits<double>::infinity();
    double qmax = 0.0;
    int used = 0;
    for (const auto& r : records) {
        if (!r.usable()) continue;
        const double q = eval_gauge(gauge, r.T_num, p) * std::pow(r.eps, exponent);
        qmin = std::min(qmin, q);
        qmax = std::max(qmax, q);
        ++used;
    }
    if (used < 4)
        throw std::invalid_argument("fit_gauge_constancy: need at least 4 usable records");
    return qmax / qmin;
}

namespace detail {

// Coarsen the configured ladder by a power of two when the expected lifespan
// is long, keeping the finest level count near a cost cap but never leaving
// the data support under-resolved (finest effective h stays <= R/8).
inline double grid_scale_for(double t_max, double h_finest, double R) {
    constexpr double level_cap = 24000.0;
    double scale = 1.0;
    while (t_max / (h_finest * scale) > level_cap && scale < 1e9) scale *= 2.0;
    double res_cap = 1.0;
    while (h_finest * res_cap * 2.0 <= R / 8.0) res_cap *= 2.0;
    return std::min(scale, res_cap);
}

inline SweepRecord run_one_eps(const SweepConfig& cfg, const InitialDatum& datum, double eps) {
    Params P{cfg.p, cfg.a, eps, cfg.R};
    const IntegralCase ic = integral_case_of(datum);

    SweepRecord rec;
    rec.eps = eps;
    rec.threshold = cfg.threshold > 0.0 ? cfg.threshold : 1e6 * std::max(1.0, eps);

    double t_max = std::max(3.0 * lifespan_lower_shape(ic, P, eps), 3.0 * cfg.R);
    // The shape carries a unit constant, so the window can truncate; extend it
    // deterministically until the run blows up or the retry budget is spent.
    for (int attempt = 0; attempt < 5; ++attempt) {
        const double scale = grid_scale_for(t_max, cfg.h_list.back(), cfg.R);
        std::vector<double> h_eff;
        for (double h : cfg.h_list) h_eff.push_back(h * scale);
        const LifespanReport rep = detect_lifespan(datum, P, h_eff, rec.threshold, t_max);
        rec.status = rep.status;
        rec.unreliable = rep.unreliable;
        rec.T_num = rep.T_extrapolated;
        rec.t_max = t_max;
        rec.grids = h_eff;
        rec.T_blow_per_grid = rep.T_blow_per_grid;
        if (rep.status != SolveStatus::SurvivedToTmax) break;
        t_max *= 2.0;
    }
    return rec;
}

}  // namespace detail

inline SweepResult sweep(const SweepConfig& cfg) {
    if (cfg.eps_list.size() < 4)
        throw std::invalid_argument("sweep: need at least 4 eps values");
    if (cfg.h_list.size() < 2) throw std::invalid_argument("sweep: need at least 2 grids");

    const InitialDatum datum = make_data(cfg.family, cfg.R, cfg.amp_f, cfg.amp_g);
    const IntegralCase ic = integral_case_of(datum);

    std::vector<double> eps_sorted = cfg.eps_list;
    std::sort(eps_sorted.rbegin(), eps_sorted.rend());

    // independent runs; ordered reduction keyed by eps keeps the result
    // identical regardless of scheduling
    std::vector<std::future<SweepRecord>> jobs;
    jobs.reserve(eps_sorted.size());
    for (double eps : eps_sorted)
        jobs.push_back(std::async(std::launch::async, detail::run_one_eps, std::cref(cfg),
                                  std::cref(datum), eps));

    SweepResult result;
    result.config = cfg;
    result.tol_abs = cfg.tol_abs;
    for (auto& j : jobs) result.records.push_back(j.get());

    Params P{cfg.p, cfg.a, eps_sorted.front(), cfg.R};
    result.gauge_law = (cfg.a == 0.0);
    result.theoretical_exponent = theoretical_exponent(ic, P);

    int usable = 0;
    for (const auto& r : result.records) usable += r.usable() ? 1 : 0;
    if (usable >= 4) {
        result.fit = fit_exponent(result.records);
        if (result.gauge_law) {
            const GaugeKind g = (ic == IntegralCase::NonZero) ? GaugeKind::Phi : GaugeKind::Psi;
            result.gauge_spread = fit_gauge_constancy(result.records, g,
                                                      -result.theoretical_exponent, cfg.p);
            result.verdict = result.gauge_spread <= result.gauge_spread_tol;
        } else {
            result.verdict = std::abs(result.fit.slope - result.theoretical_exponent) <=
                                 cfg.tol_abs &&
                             result.fit.r_squared >= 0.98;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace detail {

inline std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace detail

inline void write_report(const SweepResult& res, const std::string& csv_path,
                         const std::string& json_path) {
    using detail::fmt_double;
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("write_report: cannot open " + csv_path);
        out << "eps,h_finest,T_num,status,threshold,slope,theoretical_exponent,verdict\n";
        for (const auto& r : res.records) {
            out << fmt_double(r.eps) << ','
                << fmt_double(r.grids.empty() ? 0.0 : r.grids.back()) << ','
                << fmt_double(r.T_num) << ',' << status_name(r.status) << ','
                << fmt_double(r.threshold) << ",,,\n";
        }
        out << ",,,,," << fmt_double(res.fit.slope) << ','
            << fmt_double(res.theoretical_exponent) << ','
            << (res.verdict ? "pass" : "fail") << '\n';
    }
    if (!json_path.empty()) {
        nlohmann::ordered_json j;
        j["config"] = {{"p", res.config.p},
                       {"a", res.config.a},
                       {"family", family_name(res.config.family)},
                       {"R", res.config.R},
                       {"amp_f", res.config.amp_f},
                       {"amp_g", res.config.amp_g},
                       {"eps_list", res.config.eps_list},
                       {"h_list", res.config.h_list},
                       {"threshold", res.config.threshold},
                       {"tol_abs", res.config.tol_abs}};
        j["records"] = nlohmann::ordered_json::array();
        for (const auto& r : res.records) {
            nlohmann::ordered_json jr;
            jr["eps"] = r.eps;
            jr["T_num"] = std::isfinite(r.T_num) ? nlohmann::ordered_json(r.T_num)
                                                 : nlohmann::ordered_json(nullptr);
            jr["status"] = status_name(r.status);
            jr["unreliable"] = r.unreliable;
            jr["threshold"] = r.threshold;
            jr["t_max"] = r.t_max;
            jr["grids"] = r.grids;
            nlohmann::ordered_json tb = nlohmann::ordered_json::array();
            for (double v : r.T_blow_per_grid)
                tb.push_back(std::isfinite(v) ? nlohmann::ordered_json(v)
                                              : nlohmann::ordered_json(nullptr));
            jr["T_blow_per_grid"] = tb;
            j["records"].push_back(jr);
        }
        if (res.fit.valid) {
            j["fit"] = {{"slope", res.fit.slope},
                        {"intercept", res.fit.intercept},
                        {"r_squared", res.fit.r_squared}};
        } else {
            j["fit"] = nullptr;
        }
        if (res.gauge_law)
            j["gauge_spread"] = std::isfinite(res.gauge_spread)
                                    ? nlohmann::ordered_json(res.gauge_spread)
                                    : nlohmann::ordered_json(nullptr);
        j["theoretical_exponent"] = res.theoretical_exponent;
        j["verdict"] = res.verdict ? "pass" : "fail";
        j["tolerances"] = {{"tol_abs", res.tol_abs},
                           {"r_squared_min", 0.98},
                           {"gauge_spread_max", res.gauge_spread_tol}};

        std::ofstream out(json_path);
        if (!out) throw std::runtime_error("write_report: cannot open " + json_path);
        out << j.dump(2) << '\n';
    }
}

}  // namespace semiwave
