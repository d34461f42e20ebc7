#pragma once

// Explicit solver on the unit-CFL characteristic lattice:
//
//   u_j^{n+1} = u_{j+1}^n + u_{j-1}^n - u_j^{n-1} + h^2 |u_j^n|^p kernel(x_j)
//
// With dt = dx = h the linear part of the update is the exact lattice
// d'Alembert identity, so the scheme has no dispersion error; the source
// quadrature (midpoint over the characteristic diamond) is the only O(h^2)
// term. Blow-up is detected as a threshold crossing of max|u|, and the
// numerical lifespan is the crossing time extrapolated over a grid ladder.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "semiwave/data.hpp"
#include "semiwave/duhamel.hpp"
#include "semiwave/field.hpp"
#include "semiwave/freewave.hpp"
#include "semiwave/model.hpp"

namespace semiwave {

enum class SolveStatus { BlewUp, SurvivedToTmax, Diverged };

inline const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::BlewUp: return "BlewUp";
        case SolveStatus::SurvivedToTmax: return "SurvivedToTmax";
        case SolveStatus::Diverged: return "Diverged";
    }
    return "?";
}

struct MarchOptions {
    double t_max = 10.0;
    double threshold = 1e6;
    bool linear_only = false;    // drop the source entirely (free-wave mode)
    bool capture_field = false;  // keep every level (memory-guarded)
    bool record_series = true;   // per-level (t, max|u|)
};

struct MarchResult {
    SolveStatus status = SolveStatus::SurvivedToTmax;
    double T_blow = std::numeric_limits<double>::quiet_NaN();
    double h = 0.0;
    double t_end = 0.0;          // time of the last computed level
    double x_min = 0.0;
    int nx = 0;
    std::vector<double> last_level;
    std::vector<double> series_t, series_max;
    Field field;  // populated only when capture_field is set
};

// One interior update sweep: next <- diamond identity + source, on
// j in [jlo, jhi]; everything outside stays zero.
inline void advance_level(const std::vector<double>& prev, const std::vector<double>& cur,
                          std::vector<double>& next, const std::vector<double>& kern,
                          double h, double p, bool linear_only, int jlo, int jhi) {
    const double h2 = h * h;
    if (linear_only) {
        for (int j = jlo; j <= jhi; ++j) next[j] = cur[j + 1] + cur[j - 1] - prev[j];
    } else {
        for (int j = jlo; j <= jhi; ++j)
            next[j] = cur[j + 1] + cur[j - 1] - prev[j] + h2 * kern[j] * abs_power(cur[j], p);
    }
}

inline MarchResult march(const InitialDatum& datum, const Params& P, double h,
                         const MarchOptions& opt) {
    P.validate();
    if (!(h > 0.0)) throw std::invalid_argument("march: h must be > 0");
    if (!(opt.t_max > 0.0)) throw std::invalid_argument("march: t_max must be > 0");

    const double R = datum.R;
    const int nt = static_cast<int>(std::llround(opt.t_max / h)) + 1;
    const int m = static_cast<int>(std::ceil((opt.t_max + R) / h)) + 1;
    const int nx = 2 * m + 1;
    const double x_min = -m * h;

    MarchResult res;
    res.h = h;
    res.x_min = x_min;
    res.nx = nx;

    if (opt.capture_field) {
        if (static_cast<long long>(nx) * nt > 40'000'000LL)
            throw std::invalid_argument("march: capture_field grid too large");
        res.field.h = h;
        res.field.x_min = x_min;
        res.field.nx = nx;
        res.field.nt = nt;
        res.field.values.assign(static_cast<std::size_t>(nx) * nt, 0.0);
    }

    std::vector<double> kern(nx), prev(nx, 0.0), cur(nx, 0.0), next(nx, 0.0);
    for (int j = 0; j < nx; ++j) kern[j] = kernel(x_min + j * h, P.a);

    // level 0: eps*f; level 1: second-order Taylor start
    for (int j = 0; j < nx; ++j) prev[j] = P.eps * datum.f(x_min + j * h);
    for (int j = 0; j < nx; ++j) {
        const double x = x_min + j * h;
        const double f0 = P.eps * datum.f(x);
        double utt = P.eps * datum.f_dprime(x);
        if (!opt.linear_only) utt += kern[j] * abs_power(f0, P.p);
        cur[j] = f0 + h * P.eps * datum.g(x) + 0.5 * h * h * utt;
    }

    auto level_max = [](const std::vector<double>& v) {
        double mx = 0.0;
        for (double u : v) mx = std::max(mx, std::abs(u));
        return mx;
    };
    auto record = [&](int n, const std::vector<double>& v) {
        if (opt.record_series) {
            res.series_t.push_back(n * h);
            res.series_max.push_back(level_max(v));
        }
        if (opt.capture_field)
            std::copy(v.begin(), v.end(),
                      res.field.values.begin() + static_cast<std::size_t>(n) * nx);
    };
    record(0, prev);
    record(1, cur);

    const int support_cells = static_cast<int>(std::ceil(R / h));
    res.status = SolveStatus::SurvivedToTmax;
    res.t_end = (nt - 1) * h;

    for (int n = 1; n + 1 < nt; ++n) {
        const int reach = support_cells + n + 1;
        const int jlo = std::max(1, m - reach);
        const int jhi = std::min(nx - 2, m + reach);
        advance_level(prev, cur, next, kern, h, P.p, opt.linear_only, jlo, jhi);

        const double mx = level_max(next);
        record(n + 1, next);

        if (!std::isfinite(mx)) {
            res.status = SolveStatus::Diverged;
            res.t_end = (n + 1) * h;
            res.field.blowup_flag = true;
            res.field.blowup_index = n + 1;
            std::swap(prev, cur);
            std::swap(cur, next);
            break;
        }
        std::swap(prev, cur);
        std::swap(cur, next);
        if (!opt.linear_only && mx >= opt.threshold) {
            res.status = SolveStatus::BlewUp;
            res.T_blow = (n + 1) * h;
            res.t_end = (n + 1) * h;
            break;
        }
    }
    res.last_level = cur;
    return res;
}

// ---------------------------------------------------------------------------
// Lifespan extraction over a grid ladder
// ---------------------------------------------------------------------------

struct LifespanReport {
    Params params;
    DataFamily family;
    std::vector<double> grids;        // h values, coarse to fine as given
    std::vector<double> T_blow_per_grid;  // NaN where the run did not blow up
    std::vector<SolveStatus> status_per_grid;
    double T_extrapolated = std::numeric_limits<double>::quiet_NaN();
    double threshold = 0.0;
    double t_max = 0.0;
    SolveStatus status = SolveStatus::SurvivedToTmax;  // finest grid outcome
    bool unreliable = false;  // grid-to-grid crossing times disagree by >20%
};

inline LifespanReport detect_lifespan(const InitialDatum& datum, const Params& P,
                                      const std::vector<double>& h_list, double threshold,
                                      double t_max) {
    if (h_list.size() < 2)
        throw std::invalid_argument("detect_lifespan: need at least two grids");
    for (std::size_t i = 1; i < h_list.size(); ++i)
        if (!(h_list[i] < h_list[i - 1]))
            throw std::invalid_argument("detect_lifespan: h_list must decrease");
    const double data_scale = P.eps * std::max(std::abs(datum.amp_f), std::abs(datum.amp_g));
    if (!(threshold > 10.0 * data_scale))
        throw std::invalid_argument("detect_lifespan: threshold too close to the data scale");

    LifespanReport rep;
    rep.params = P;
    rep.family = datum.family;
    rep.grids = h_list;
    rep.threshold = threshold;
    rep.t_max = t_max;

    MarchOptions opt;
    opt.t_max = t_max;
    opt.threshold = threshold;
    opt.record_series = false;
    for (double h : h_list) {
        const MarchResult r = march(datum, P, h, opt);
        rep.status_per_grid.push_back(r.status);
        rep.T_blow_per_grid.push_back(r.T_blow);
    }
    rep.status = rep.status_per_grid.back();

    // consistency of the pair the extrapolation rests on
    {
        const std::size_t k = h_list.size();
        const double a = rep.T_blow_per_grid[k - 2];
        const double b = rep.T_blow_per_grid[k - 1];
        if (std::isfinite(a) && std::isfinite(b) &&
            std::abs(a - b) > 0.2 * std::max(std::abs(a), std::abs(b)))
            rep.unreliable = true;
    }

    // linear-in-h extrapolation from the two finest blow-up grids
    const std::size_t n = h_list.size();
    if (n >= 2 && std::isfinite(rep.T_blow_per_grid[n - 1]) &&
        std::isfinite(rep.T_blow_per_grid[n - 2])) {
        const double h1 = h_list[n - 1], h2 = h_list[n - 2];
        const double T1 = rep.T_blow_per_grid[n - 1], T2 = rep.T_blow_per_grid[n - 2];
        const double T0 = T1 - h1 * (T2 - T1) / (h2 - h1);
        if (std::isfinite(T0) && T0 > 0.0) {
            rep.T_extrapolated = T0;
        } else {
            rep.T_extrapolated = T1;
            rep.unreliable = true;
        }
    } else if (std::isfinite(rep.T_blow_per_grid.back())) {
        rep.T_extrapolated = rep.T_blow_per_grid.back();
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Snapshot dump (plain text): final level as "x t u" lines, and the max|u|
// time series as CSV next to it.
// ---------------------------------------------------------------------------

inline void write_snapshot(const MarchResult& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);
    char buf[128];
    for (int j = 0; j < r.nx; ++j) {
        std::snprintf(buf, sizeof buf, "%.10g %.10g %.10g\n", r.x_min + j * r.h, r.t_end,
                      r.last_level[j]);
        out << buf;
    }
}

inline void write_series_csv(const MarchResult& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_series_csv: cannot open " + path);
    out << "t,max_abs_u\n";
    char buf[96];
    for (std::size_t i = 0; i < r.series_t.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g\n", r.series_t[i], r.series_max[i]);
        out << buf;
    }
}

}  // namespace semiwave
