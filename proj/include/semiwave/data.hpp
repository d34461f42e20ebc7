#pragma once

// Compactly supported initial data families built on the quartic bump
//
//     B(x) = (1 - (x/R)^2)^4  for |x| <= R,  0 otherwise,
//
// which is C^3 across +-R, comfortably inside the required C^2 x C^1 class.
// Derivatives, the antiderivative of g, and the total integral of g are all
// stored in closed form so nothing downstream pays quadrature error for them.

#include <cmath>
#include <stdexcept>
#include <string>

#include "semiwave/model.hpp"

namespace semiwave {

enum class DataFamily { GPositive, GZeroOdd, FPositiveGZero };

inline const char* family_name(DataFamily f) {
    switch (f) {
        case DataFamily::GPositive: return "g-positive";
        case DataFamily::GZeroOdd: return "g-zero-odd";
        case DataFamily::FPositiveGZero: return "f-positive-g-zero";
    }
    return "?";
}

inline DataFamily family_from_name(const std::string& s) {
    if (s == "g-positive") return DataFamily::GPositive;
    if (s == "g-zero-odd") return DataFamily::GZeroOdd;
    if (s == "f-positive-g-zero") return DataFamily::FPositiveGZero;
    throw std::invalid_argument("unknown data family: " + s);
}

namespace detail {

// Bump and derivatives on the normalized coordinate u = x/R.
inline double bump(double u) {
    if (std::abs(u) >= 1.0) return 0.0;
    const double q = 1.0 - u * u;
    const double q2 = q * q;
    return q2 * q2;
}

inline double bump_d1(double u) {
    if (std::abs(u) >= 1.0) return 0.0;
    const double q = 1.0 - u * u;
    return -8.0 * u * q * q * q;
}

inline double bump_d2(double u) {
    if (std::abs(u) >= 1.0) return 0.0;
    const double q = 1.0 - u * u;
    return -8.0 * q * q * q + 48.0 * u * u * q * q;
}

// int_{-1}^{u} bump = P(u) + 128/315 with P the odd primitive below.
inline double bump_primitive(double u) {
    u = std::clamp(u, -1.0, 1.0);
    const double u2 = u * u;
    const double P = u * (1.0 + u2 * (-4.0 / 3.0 + u2 * (6.0 / 5.0 + u2 * (-4.0 / 7.0 + u2 / 9.0))));
    return P + 128.0 / 315.0;
}

// int_{-1}^{u} v*bump(v) dv = -(1-u^2)^5 / 10 (vanishes at both endpoints).
inline double odd_bump_primitive(double u) {
    u = std::clamp(u, -1.0, 1.0);
    const double q = 1.0 - u * u;
    const double q2 = q * q;
    return -q2 * q2 * q / 10.0;
}

}  // namespace detail

// One member of a data family: f = amp_f * B and a family-specific g, with
// exact derivatives and the exact running integral of g.
struct InitialDatum {
    DataFamily family;
    double R;
    double amp_f;
    double amp_g;
    double integral_g;  // exact: amp_g * 256R/315 for GPositive, 0 otherwise

    double f(double x) const { return amp_f * detail::bump(x / R); }
    double f_prime(double x) const { return amp_f * detail::bump_d1(x / R) / R; }
    double f_dprime(double x) const { return amp_f * detail::bump_d2(x / R) / (R * R); }

    double g(double x) const {
        const double u = x / R;
        switch (family) {
            case DataFamily::GPositive: return amp_g * detail::bump(u);
            case DataFamily::GZeroOdd: return amp_g * u * detail::bump(u);
            case DataFamily::FPositiveGZero: return 0.0;
        }
        return 0.0;
    }

    double g_prime(double x) const {
        const double u = x / R;
        switch (family) {
            case DataFamily::GPositive: return amp_g * detail::bump_d1(u) / R;
            case DataFamily::GZeroOdd:
                return amp_g * (detail::bump(u) + u * detail::bump_d1(u)) / R;
            case DataFamily::FPositiveGZero: return 0.0;
        }
        return 0.0;
    }

    // int_{-inf}^{x} g(y) dy, closed form; clamps to 0 left of the support and
    // to integral_g right of it.
    double g_antiderivative(double x) const {
        const double u = x / R;
        switch (family) {
            case DataFamily::GPositive: return amp_g * R * detail::bump_primitive(u);
            case DataFamily::GZeroOdd: return amp_g * R * detail::odd_bump_primitive(u);
            case DataFamily::FPositiveGZero: return 0.0;
        }
        return 0.0;
    }

    bool g_identically_zero() const {
        return family == DataFamily::FPositiveGZero || amp_g == 0.0;
    }
};

inline InitialDatum make_data(DataFamily family, double R, double amp_f, double amp_g) {
    if (!(std::isfinite(R) && R >= 1.0))
        throw std::invalid_argument("make_data: require R >= 1");
    if (!std::isfinite(amp_f) || !std::isfinite(amp_g))
        throw std::invalid_argument("make_data: amplitudes must be finite");
    if (family == DataFamily::GPositive && !(amp_g > 0.0))
        throw std::invalid_argument("make_data: g-positive requires amp_g > 0");
    if (family == DataFamily::FPositiveGZero && !(amp_f > 0.0))
        throw std::invalid_argument("make_data: f-positive-g-zero requires amp_f > 0");

    InitialDatum d;
    d.family = family;
    d.R = R;
    d.amp_f = amp_f;
    d.amp_g = (family == DataFamily::FPositiveGZero) ? 0.0 : amp_g;
    d.integral_g = (family == DataFamily::GPositive) ? amp_g * R * 256.0 / 315.0 : 0.0;
    return d;
}

// Samples f and g on R <= |x| <= 2R and reports whether every sample is
// exactly zero.
template <typename F, typename G>
bool check_support(F&& f, G&& g, double R, int n_samples) {
    if (n_samples < 1) throw std::invalid_argument("check_support: n_samples >= 1");
    for (int i = 0; i < n_samples; ++i) {
        const double r = R + (i + 0.5) * R / n_samples;
        if (f(r) != 0.0 || f(-r) != 0.0) return false;
        if (g(r) != 0.0 || g(-r) != 0.0) return false;
    }
    return true;
}

inline bool check_support(const InitialDatum& d, int n_samples) {
    return check_support([&](double x) { return d.f(x); }, [&](double x) { return d.g(x); },
                         d.R, n_samples);
}

}  // namespace semiwave
