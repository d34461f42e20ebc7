#pragma once

// Problem parameters, gauge functions, the regime-dependent weight and its
// growth envelopes, and the light-cone region classifier for
//
//     u_tt - u_xx = |u|^p / (1 + x^2)^{(1+a)/2},
//     u(x,0) = eps*f(x),  u_t(x,0) = eps*g(x),  supp(f,g) in {|x| <= R}.
//
// Everything here is a pure function of its inputs; all logarithms are natural.

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace semiwave {

struct Params {
    double p;    // nonlinearity exponent, p > 1
    double a;    // weight exponent, any real (a < -1 included)
    double eps;  // data amplitude, eps > 0
    double R;    // data support radius, R >= 1

    void validate() const {
        if (!(std::isfinite(p) && p > 1.0))
            throw std::invalid_argument("Params: require p > 1");
        if (!(std::isfinite(a)))
            throw std::invalid_argument("Params: require finite a");
        if (!(std::isfinite(eps) && eps > 0.0))
            throw std::invalid_argument("Params: require eps > 0");
        if (!(std::isfinite(R) && R >= 1.0))
            throw std::invalid_argument("Params: require R >= 1");
    }
};

// ---------------------------------------------------------------------------
// Gauge functions
// ---------------------------------------------------------------------------

// phi(s) = s log(2+s); strictly increasing on [0, inf), phi(0) = 0.
inline double gauge_phi(double s) {
    if (!(s >= 0.0)) throw std::domain_error("gauge_phi: s must be >= 0");
    return s * std::log(2.0 + s);
}

// psi_p(s) = s log^p(2+s); strictly increasing on [0, inf), psi_p(0) = 0.
inline double gauge_psi(double s, double p) {
    if (!(s >= 0.0)) throw std::domain_error("gauge_psi: s must be >= 0");
    if (!(p > 1.0)) throw std::domain_error("gauge_psi: p must be > 1");
    return s * std::pow(std::log(2.0 + s), p);
}

// Inverse of a strictly increasing gauge with gauge(0) = 0, by bracketing
// bisection with geometric upper-bracket expansion. Returns s with
// |gauge(s) - y| <= tol * max(1, y).
template <typename Gauge>
double invert_gauge(Gauge&& gauge, double y, double tol) {
    if (!std::isfinite(y)) throw std::domain_error("invert_gauge: y must be finite");
    if (!(y >= 0.0)) throw std::domain_error("invert_gauge: y must be >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("invert_gauge: tol must be > 0");
    if (y == 0.0) return 0.0;

    double lo = 0.0;
    double hi = 1.0;
    int expansions = 0;
    while (gauge(hi) < y) {
        lo = hi;
        hi *= 2.0;
        if (++expansions > 4000)
            throw std::runtime_error("invert_gauge: bracket expansion failed");
    }
    const double target = tol * std::max(1.0, y);
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double val = gauge(mid);
        if (std::abs(val - y) <= target) return mid;
        (val < y ? lo : hi) = mid;
    }
    return mid;
}

// ---------------------------------------------------------------------------
// Weight and growth envelopes
// ---------------------------------------------------------------------------

// Regime-dependent weight w(r,t). Strictly positive: t + r + 3R >= 3, so the
// log branch is safe.
inline double weight(double r, double t, const Params& P) {
    assert(r >= 0.0 && t >= 0.0);
    const double base = t + r + 3.0 * P.R;
    if (P.a < 0.0) return std::pow(base, P.a);
    if (P.a == 0.0) return 1.0 / std::log(base);
    return 1.0;
}

// Envelope multiplying the weighted bound of the mixed (linear-in-U) Duhamel
// term; enters the contraction conditions.
inline double envelope_d(double T, const Params& P) {
    assert(T >= 0.0);
    if (P.a < 0.0) return std::pow(T + 2.0 * P.R, -P.a);
    if (P.a == 0.0) return std::log(T + 3.0 * P.R);
    return 1.0;
}

// Envelope multiplying the weighted bound of the pure power Duhamel term.
inline double envelope_e(double T, const Params& P) {
    assert(T >= 0.0);
    if (P.a < 0.0) return std::pow(T + 2.0 * P.R, 1.0 - P.p * P.a);
    if (P.a == 0.0) return (T + P.R) * std::pow(std::log(T + 3.0 * P.R), P.p);
    return T + P.R;
}

// ---------------------------------------------------------------------------
// Space-time regions
// ---------------------------------------------------------------------------

enum class Region { Interior, Exterior, Origin, OutsideCone };

// Partition of {t >= 0} relative to the data support cone. Boundary ties are
// resolved in the fixed order Interior, Origin, Exterior, so overlapping
// boundary lines are assigned deterministically.
inline Region classify_region(double x, double t, double R) {
    if (!(t >= 0.0)) throw std::domain_error("classify_region: t must be >= 0");
    const double r = std::abs(x);
    if (t + r >= R && t - r >= R) return Region::Interior;
    if (t + r <= R) return Region::Origin;
    if (t + r >= R && std::abs(t - r) <= R) return Region::Exterior;
    return Region::OutsideCone;  // r > t + R
}

inline const char* region_name(Region r) {
    switch (r) {
        case Region::Interior: return "Interior";
        case Region::Exterior: return "Exterior";
        case Region::Origin: return "Origin";
        case Region::OutsideCone: return "OutsideCone";
    }
    return "?";
}

}  // namespace semiwave
