#pragma once

// Exact d'Alembert solution of the free wave equation for the built-in data
// families, and the support check that underpins the zero-mean-speed cases:
// when the total integral of g vanishes, the free solution is confined to the
// annulus (t-R)_+ <= |x| <= t+R.

#include <cmath>
#include <stdexcept>

#include "semiwave/data.hpp"

namespace semiwave {

// u0(x,t) = 1/2 {f(x+t) + f(x-t)} + 1/2 int_{x-t}^{x+t} g(y) dy.
// The g-integral uses the closed-form antiderivative, so the only rounding is
// arithmetic.
inline double free_wave(double x, double t, const InitialDatum& d) {
    if (!(t >= 0.0)) throw std::domain_error("free_wave: t must be >= 0");
    return 0.5 * (d.f(x + t) + d.f(x - t)) +
           0.5 * (d.g_antiderivative(x + t) - d.g_antiderivative(x - t));
}

// Verifies the annulus confinement for zero-mean g: samples |x| < t - R over
// t in [R, t_max] and requires every value to vanish to 1e-12 of the data
// scale. Calling this with integral_g != 0 is a precondition error, not a
// failure return: the property simply does not hold then.
inline bool huygens_check(const InitialDatum& d, double t_max, int n_samples) {
    if (d.integral_g != 0.0)
        throw std::invalid_argument("huygens_check: requires integral of g to be zero");
    if (!(t_max > d.R)) throw std::invalid_argument("huygens_check: t_max must exceed R");
    if (n_samples < 1) throw std::invalid_argument("huygens_check: n_samples >= 1");

    const double scale =
        std::max({1.0, std::abs(d.amp_f), std::abs(d.amp_g) * d.R});
    const double tol = 1e-12 * scale;

    // Roughly square sampling of {(x,t): t in [R, t_max], |x| < t - R}.
    const int nt = std::max(2, static_cast<int>(std::sqrt(double(n_samples))));
    const int nx = (n_samples + nt - 1) / nt;
    for (int j = 0; j < nt; ++j) {
        const double t = d.R + (j + 0.5) * (t_max - d.R) / nt;
        const double half = t - d.R;
        if (half <= 0.0) continue;
        for (int i = 0; i < nx; ++i) {
            const double x = -half + (i + 0.5) * (2.0 * half) / nx;
            if (std::abs(free_wave(x, t, d)) > tol) return false;
        }
    }
    return true;
}

}  // namespace semiwave
