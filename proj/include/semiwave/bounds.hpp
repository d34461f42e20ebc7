#pragma once

// Explicit blow-up machinery: the constants of the iterated pointwise lower
// bounds, the doubly exponential coefficient sequences (tracked in log space),
// the sign functionals whose positivity forces divergence, and the closed-form
// lifespan bounds they yield for each weight regime and each initial-speed
// integral case.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "semiwave/data.hpp"
#include "semiwave/model.hpp"

namespace semiwave {

enum class IntegralCase { NonZero, Zero };

struct BlowupConstants {
    // parameter-only constants
    double c0, c1, c2, c3, c4, c5;
    double c6 = std::numeric_limits<double>::quiet_NaN();  // a < 0 only
    double c7 = std::numeric_limits<double>::quiet_NaN();  // a < 0 only
    double sp, sp_prime;

    // data-dependent constants
    double cg = std::numeric_limits<double>::quiet_NaN();        // needs int g > 0
    double cf = std::numeric_limits<double>::quiet_NaN();        // needs f >= 0 (not id. 0), g == 0
    double cf_prime = std::numeric_limits<double>::quiet_NaN();  // same hypothesis
    double cf_dprime = std::numeric_limits<double>::quiet_NaN(); // same, and a < 0

    bool has_cg() const { return std::isfinite(cg); }
    bool has_cf() const { return std::isfinite(cf); }
};

namespace detail {

// Adaptive Simpson, relative tolerance on the running total.
template <typename F>
double adaptive_simpson_rec(F&& f, double lo, double hi, double flo, double fmid, double fhi,
                            double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double fl = f(lmid);
    const double fr = f(rmid);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * fl + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * fr + fhi);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, lo, mid, flo, fl, fmid, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, mid, hi, fmid, fr, fhi, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(F&& f, double lo, double hi, double rel_tol) {
    const double flo = f(lo);
    const double fhi = f(hi);
    const double fmid = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    const double tol = rel_tol * std::max(std::abs(whole), 1e-30);
    return adaptive_simpson_rec(f, lo, hi, flo, fmid, fhi, whole, tol, 40);
}

}  // namespace detail

inline BlowupConstants compute_constants(const Params& P, const InitialDatum& datum) {
    P.validate();
    const double p = P.p, a = P.a, R = P.R;
    BlowupConstants c{};

    c.c0 = 0.125 * std::pow(1.0 / std::sqrt(2.0), std::max(0.0, -(1.0 + a)));
    c.c1 = 2.0 * c.c0 / std::pow(1.0 + R, 1.0 + a);
    c.c2 = (p - 1.0) * (p - 1.0) * c.c1;
    c.c3 = std::exp(-std::log(c.c2) / (p - 1.0));
    c.c5 = 2.0 * (p - 1.0) * (p - 1.0) * c.c0;
    c.c4 = std::exp(-std::log(c.c5) / (p - 1.0));
    if (a < 0.0) {
        c.c7 = 2.0 * (p - 1.0) * (p - 1.0) * c.c0 / (1.0 - a);
        c.c6 = std::exp(-std::log(c.c7) / (p - 1.0));
    }
    c.sp = p / ((p - 1.0) * (p - 1.0));
    c.sp_prime = c.sp + 1.0 / (p - 1.0);

    const bool g_positive = datum.integral_g > 0.0;
    const bool f_positive_g_zero = datum.g_identically_zero() && datum.amp_f > 0.0;
    if (!g_positive && !f_positive_g_zero)
        throw std::invalid_argument(
            "compute_constants: datum matches no blow-up hypothesis (needs either "
            "integral of g > 0, or f >= 0 not identically zero with g == 0)");

    if (g_positive) c.cg = 0.5 * datum.integral_g;
    if (f_positive_g_zero) {
        const double jf = detail::adaptive_simpson(
            [&](double beta) { return std::pow(datum.f(-beta), p); }, 0.0, R, 1e-10);
        c.cf = 2.0 * c.c0 / (std::pow(2.0, p) * std::pow(1.0 + R, 1.0 + a)) * jf;
        c.cf_prime = 2.0 * c.c0 / std::pow(2.0, p) * jf;
        if (a < 0.0) c.cf_dprime = c.cf_prime / (1.0 - a);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Iteration sequences (log-space; the coefficients are doubly exponential)
// ---------------------------------------------------------------------------

struct IterationSequences {
    std::vector<double> a;      // a_1 = 0, a_{n+1} = p a_n + 1
    std::vector<double> b;      // b_1 = 1, b_{n+1} = p b_n + 1
    std::vector<double> log_m;  // log M_n for the requested seed case
};

// Exponent-growth constant for the active weight regime.
inline double regime_iteration_constant(const Params& P, const BlowupConstants& c) {
    if (P.a > 0.0) return c.c2;
    if (P.a == 0.0) return c.c5;
    return c.c7;
}

inline IterationSequences sequences(const Params& P, const BlowupConstants& c, int n,
                                    IntegralCase ic) {
    if (n < 1) throw std::invalid_argument("sequences: n >= 1 required");
    const double p = P.p;
    const double logp = std::log(p);
    const double cit = regime_iteration_constant(P, c);
    if (!std::isfinite(cit))
        throw std::invalid_argument("sequences: iteration constant unavailable for this regime");

    IterationSequences s;
    s.a.resize(n);
    s.b.resize(n);
    s.log_m.resize(n);
    s.a[0] = 0.0;
    s.b[0] = 1.0;
    for (int k = 1; k < n; ++k) {
        s.a[k] = p * s.a[k - 1] + 1.0;
        s.b[k] = p * s.b[k - 1] + 1.0;
    }

    double log_m1;
    if (ic == IntegralCase::NonZero) {
        if (!c.has_cg())
            throw std::invalid_argument("sequences: nonzero-integral seed needs cg (int g > 0)");
        log_m1 = std::log(c.cg * P.eps);
    } else {
        double seed;
        if (P.a > 0.0) seed = c.cf;
        else if (P.a == 0.0) seed = c.cf_prime;
        else seed = c.cf_dprime;
        if (!std::isfinite(seed))
            throw std::invalid_argument("sequences: zero-integral seed constant unavailable");
        log_m1 = std::log(seed) + p * std::log(P.eps);
    }
    s.log_m[0] = log_m1;
    const double logc = std::log(cit);
    for (int k = 1; k < n; ++k) {
        // M_{n+1} = cit p^{-2n} M_n^p  (nonzero case) or p^{-2(n+1)} (zero case)
        const double shift = (ic == IntegralCase::NonZero) ? 2.0 * k : 2.0 * (k + 1);
        s.log_m[k] = logc - shift * logp + p * s.log_m[k - 1];
    }
    return s;
}

// ---------------------------------------------------------------------------
// Sign functionals on the blow-up domain
// ---------------------------------------------------------------------------

enum class KCase { K1, K2, K3, K4, K5, K6 };

// Domain: interior, right of the axis, strictly above the inner
// characteristic; the x <= R restriction applies to K1/K4.
inline void check_k_domain(KCase kc, double x, double t, double R) {
    const bool in_d = (x > 0.0) && (t - x > R);
    if (!in_d) throw std::domain_error("k_functional: point outside the blow-up domain");
    if ((kc == KCase::K1 || kc == KCase::K4) && !(x <= R))
        throw std::domain_error("k_functional: K1/K4 require x <= R");
}

inline double k_functional(KCase kc, double x, double t, const BlowupConstants& c,
                           const Params& P) {
    check_k_domain(kc, x, t, P.R);
    const double p = P.p, a = P.a, R = P.R;
    const double inv = 1.0 / (p - 1.0);
    const double logp = std::log(p);

    auto need = [&](double v, const char* what) {
        if (!std::isfinite(v)) throw std::invalid_argument(std::string("k_functional: ") + what);
        return v;
    };

    switch (kc) {
        case KCase::K1:
            return inv * std::log((t - x - R) * x) + inv * std::log(c.c2) - 2.0 * c.sp * logp +
                   std::log(need(c.cg, "cg unavailable") * P.eps);
        case KCase::K2:
            return inv * std::log((t - x - R) * std::log(1.0 + x)) + inv * std::log(c.c5) -
                   2.0 * c.sp * logp + std::log(need(c.cg, "cg unavailable") * P.eps);
        case KCase::K3:
            return inv * std::log((t - x - R) * std::pow(x, 1.0 - a) / (1.0 + t + x)) +
                   inv * std::log(need(c.c7, "c7 needs a < 0")) - 2.0 * c.sp * logp +
                   std::log(need(c.cg, "cg unavailable") * P.eps);
        case KCase::K4:
            return inv * std::log((t - x - R) * std::pow(x, p)) + inv * std::log(c.c2) -
                   2.0 * c.sp_prime * logp +
                   std::log(need(c.cf, "cf unavailable")) + p * std::log(P.eps);
        case KCase::K5:
            return inv * std::log((t - x - R) * std::pow(std::log(1.0 + x), p)) +
                   inv * std::log(c.c5) - 2.0 * c.sp_prime * logp +
                   std::log(need(c.cf_prime, "cf' unavailable")) + p * std::log(P.eps);
        case KCase::K6:
            return inv * std::log((t - x - R) *
                                  std::pow(std::pow(x, 1.0 - a) / (1.0 + t + x), p)) +
                   inv * std::log(need(c.c7, "c7 needs a < 0")) - 2.0 * c.sp_prime * logp +
                   std::log(need(c.cf_dprime, "cf'' unavailable")) + p * std::log(P.eps);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Lifespan bounds
// ---------------------------------------------------------------------------

namespace detail {

// LHS gauge g(t0) and RHS of the strict blow-up condition g(t0) > rhs, per
// integral case and weight regime.
struct BlowupCondition {
    std::function<double(double)> gauge;
    double rhs;
};

inline BlowupCondition blowup_condition(IntegralCase ic, const Params& P, const BlowupConstants& c) {
    const double p = P.p, a = P.a, R = P.R, eps = P.eps;
    BlowupCondition d;
    if (ic == IntegralCase::NonZero) {
        if (!c.has_cg())
            throw std::invalid_argument("bound: nonzero-integral case needs cg (int g > 0)");
        const double common =
            std::exp(2.0 * (p - 1.0) * c.sp * std::log(p)) * std::pow(c.cg, 1.0 - p) *
            std::pow(eps, -(p - 1.0));
        if (a > 0.0) {
            d.gauge = [](double t) { return t; };
            d.rhs = 2.0 / R / c.c2 * common;
        } else if (a == 0.0) {
            d.gauge = [](double t) { return gauge_phi(t); };
            d.rhs = 8.0 / c.c5 * common;
        } else {
            d.gauge = [a](double t) { return std::pow(t, 1.0 - a); };
            d.rhs = 5.0 * std::pow(2.0, 2.0 - a) / c.c7 * common;
        }
    } else {
        const double common = std::exp(2.0 * (p - 1.0) * c.sp_prime * std::log(p)) *
                              std::pow(eps, -p * (p - 1.0));
        if (a > 0.0) {
            if (!std::isfinite(c.cf)) throw std::invalid_argument("bound: cf unavailable");
            d.gauge = [](double t) { return t; };
            d.rhs = 2.0 * std::pow(R, -p) / c.c2 * std::pow(c.cf, 1.0 - p) * common;
        } else if (a == 0.0) {
            if (!std::isfinite(c.cf_prime))
                throw std::invalid_argument("bound: cf' unavailable");
            d.gauge = [p](double t) { return gauge_psi(t, p); };
            d.rhs = 4.0 * std::pow(2.0, p) / c.c5 * std::pow(c.cf_prime, 1.0 - p) * common;
        } else {
            if (!std::isfinite(c.cf_dprime))
                throw std::invalid_argument("bound: cf'' unavailable");
            // probe point t0 = 2 x0: the seed term scales like t0^{1-pa}
            // (exponent 1 + p(1-a) - p from the inequality chain)
            d.gauge = [p, a](double t) { return std::pow(t, 1.0 - p * a); };
            d.rhs = std::pow(5.0, p) * std::pow(2.0, 2.0 - p * a) / c.c7 *
                    std::pow(c.cf_dprime, 1.0 - p) * common;
        }
    }
    return d;
}

}  // namespace detail

struct BoundTime {
    double t0;
    bool at_domain_floor;  // the strict condition already holds at t0 = 4R
};

// Smallest t0 >= 4R with gauge(t0) strictly above the case threshold: solve
// the equality by bisection (the gauges are monotone), then nudge up on the
// ulp scale until the strict inequality holds.
inline BoundTime upper_bound_time(IntegralCase ic, const Params& P, const BlowupConstants& c) {
    const auto d = detail::blowup_condition(ic, P, c);
    const double floor_t = 4.0 * P.R;
    if (d.gauge(floor_t) > d.rhs) return {floor_t, true};

    double t0 = invert_gauge(d.gauge, d.rhs, 1e-13);
    t0 = std::max(t0, floor_t);
    for (int i = 0; i < 200 && !(d.gauge(t0) > d.rhs); ++i) {
        const double stepped = std::nextafter(t0, std::numeric_limits<double>::infinity());
        t0 = std::max(stepped, t0 * (1.0 + 1e-14));
    }
    return {t0, false};
}

// Amplitude at which the case bound time reaches the domain floor 4R: the
// largest eps for which the bound is informative.
inline double epsilon_threshold(IntegralCase ic, const Params& P, const BlowupConstants& c) {
    // the condition's rhs carries eps^{-(p-1)} (nonzero) or eps^{-p(p-1)} (zero);
    // strip it, then solve gauge(4R) = Q * eps^{-k}.
    const double p = P.p;
    const double k = (ic == IntegralCase::NonZero) ? (p - 1.0) : p * (p - 1.0);
    const auto d = detail::blowup_condition(ic, P, c);
    const double Q = d.rhs * std::pow(P.eps, k);  // eps-free coefficient
    return std::pow(Q / d.gauge(4.0 * P.R), 1.0 / k);
}

// Lower-bound shape with unit constant; a normalized reference for scaling
// comparisons, never an absolute bound.
inline double lifespan_lower_shape(IntegralCase ic, const Params& P, double eps) {
    const double p = P.p, a = P.a;
    if (ic == IntegralCase::NonZero) {
        if (a < 0.0) return std::pow(eps, -(p - 1.0) / (1.0 - a));
        if (a == 0.0) return invert_gauge([](double s) { return gauge_phi(s); },
                                          std::pow(eps, -(p - 1.0)), 1e-10);
        return std::pow(eps, -(p - 1.0));
    }
    if (a < 0.0) return std::pow(eps, -p * (p - 1.0) / (1.0 - p * a));
    if (a == 0.0) return invert_gauge([p](double s) { return gauge_psi(s, p); },
                                      std::pow(eps, -p * (p - 1.0)), 1e-10);
    return std::pow(eps, -p * (p - 1.0));
}

// Slope of log T against log eps implied by the case, for the power-law
// regimes (a != 0).
inline double theoretical_exponent(IntegralCase ic, const Params& P) {
    const double p = P.p, a = P.a;
    if (ic == IntegralCase::NonZero)
        return (a < 0.0) ? -(p - 1.0) / (1.0 - a) : -(p - 1.0);
    return (a < 0.0) ? -p * (p - 1.0) / (1.0 - p * a) : -p * (p - 1.0);
}

inline IntegralCase integral_case_of(const InitialDatum& d) {
    return d.integral_g != 0.0 ? IntegralCase::NonZero : IntegralCase::Zero;
}

}  // namespace semiwave
