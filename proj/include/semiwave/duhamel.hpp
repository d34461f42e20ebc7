#pragma once

// The weighted Duhamel operator
//
//     L_a(v)(x,t) = 1/2 int_0^t ds int_{x-t+s}^{x+t-s} v(y,s) (1+y^2)^{-(1+a)/2} dy
//
// in two forms: direct quadrature (trapezoid in s, trapezoid in y with
// partial-cell end corrections) and an O(nx*nt) incremental scheme that
// marches the characteristic-diamond identity level by level. The direct form
// is the reference; the incremental form is what the fixed-point iteration
// uses. Also here: quadrature verifiers that measure the constants in the
// weighted a-priori bounds of L_a over the annulus- and cone-supported
// integrands.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "semiwave/field.hpp"
#include "semiwave/model.hpp"

namespace semiwave {

namespace detail {

// pow with fast paths for the handful of exponents the hot loops actually see.
inline double pow_fast(double x, double e) {
    if (e == 0.0) return 1.0;
    if (e == 1.0) return x;
    if (e == 2.0) return x * x;
    if (e == 3.0) return x * x * x;
    if (e == 4.0) {
        const double x2 = x * x;
        return x2 * x2;
    }
    if (e == 0.5) return std::sqrt(x);
    if (e == -0.5) return 1.0 / std::sqrt(x);
    if (e == -1.0) return 1.0 / x;
    if (e == -2.0) return 1.0 / (x * x);
    return std::pow(x, e);
}

}  // namespace detail

// |u|^p with fast paths for integer p.
inline double abs_power(double u, double p) {
    const double r = std::abs(u);
    if (p == 2.0) return r * r;
    if (p == 3.0) return r * r * r;
    return std::pow(r, p);
}

// Spatial kernel (1+y^2)^{-(1+a)/2}; finite and positive for every y and a.
inline double kernel(double y, double a) {
    return detail::pow_fast(1.0 + y * y, -0.5 * (1.0 + a));
}

namespace detail {

// Trapezoid of v(.,it)*kernel over [ylo, yhi]. Endpoints falling between
// nodes get partial-cell trapezoids with v linearly interpolated; dropping
// those fractional cells would cap the operator accuracy at O(h).
inline double integrate_row(const Field& v, int it, double ylo, double yhi, double a) {
    if (!(yhi > ylo)) return 0.0;
    const double h = v.h;
    const double x0 = v.x_min;

    auto value_at_node = [&](int j) -> double {
        if (j < 0 || j >= v.nx) return 0.0;
        return v.at(j, it) * kernel(v.x(j), a);
    };
    auto value_interp = [&](double y) -> double {
        const double s = (y - x0) / h;
        const int j = static_cast<int>(std::floor(s));
        if (j < 0 || j + 1 >= v.nx) return 0.0;
        const double th = s - j;
        const double vy = (1.0 - th) * v.at(j, it) + th * v.at(j + 1, it);
        return vy * kernel(y, a);
    };

    const double slack = 1e-12;
    int jlo = static_cast<int>(std::ceil((ylo - x0) / h - slack));
    int jhi = static_cast<int>(std::floor((yhi - x0) / h + slack));
    jlo = std::max(jlo, 0);
    jhi = std::min(jhi, v.nx - 1);

    if (jlo > jhi) {
        // interval contained in one cell
        return 0.5 * (value_interp(ylo) + value_interp(yhi)) * (yhi - ylo);
    }

    double total = 0.0;
    if (jhi > jlo) {
        double sum = 0.5 * (value_at_node(jlo) + value_at_node(jhi));
        for (int j = jlo + 1; j < jhi; ++j) sum += value_at_node(j);
        total += h * sum;
    }
    const double wl = std::max(0.0, v.x(jlo) - ylo);
    if (wl > 0.0) total += 0.5 * (value_interp(ylo) + value_at_node(jlo)) * wl;
    const double wr = std::max(0.0, yhi - v.x(jhi));
    if (wr > 0.0) total += 0.5 * (value_at_node(jhi) + value_interp(yhi)) * wr;
    return total;
}

}  // namespace detail

// L_a(v) at the grid node (ix, it) by direct quadrature.
inline double apply_la_at(const Field& v, double a, int ix, int it) {
    const double x = v.x(ix);
    const double t = v.t(it);
    if (it == 0) return 0.0;
    // trapezoid in s over the grid levels; the k = it term vanishes
    double sum = 0.5 * detail::integrate_row(v, 0, x - t, x + t, a);
    for (int k = 1; k < it; ++k) {
        const double half = t - v.t(k);
        sum += detail::integrate_row(v, k, x - half, x + half, a);
    }
    return 0.5 * v.h * sum;
}

// Full-grid direct quadrature, O(nx * nt^2 * cone width). Reference
// implementation; use on small grids.
inline Field apply_la(const Field& v, double a) {
    if (!v.all_finite()) throw std::runtime_error("apply_la: v has non-finite entries");
    Field out = v;
    std::fill(out.values.begin(), out.values.end(), 0.0);
    for (int it = 1; it < v.nt; ++it)
        for (int ix = 0; ix < v.nx; ++ix) out.at(ix, it) = apply_la_at(v, a, ix, it);
    return out;
}

// Incremental evaluation of the same operator: W solves the lattice diamond
// identity W(N) = W(E) + W(W) - W(S) + h^2 F with F = v*kernel at the diamond
// center and W == 0 at t = 0, which reproduces L_a(v) to O(h^2). One pass,
// O(nx*nt); coefficients of the unrolled recurrence are 0/1, so monotonicity
// and cone support are preserved exactly.
inline Field apply_la_incremental(const Field& v, double a) {
    if (!v.all_finite())
        throw std::runtime_error("apply_la_incremental: v has non-finite entries");
    Field W = v;
    std::fill(W.values.begin(), W.values.end(), 0.0);
    const int nx = v.nx;
    const double h2 = v.h * v.h;

    std::vector<double> kern(nx);
    for (int ix = 0; ix < nx; ++ix) kern[ix] = kernel(v.x(ix), a);

    if (v.nt < 2) return W;
    for (int ix = 1; ix + 1 < nx; ++ix) W.at(ix, 1) = 0.5 * h2 * v.at(ix, 0) * kern[ix];
    for (int n = 1; n + 1 < v.nt; ++n) {
        const double* vn = &v.values[static_cast<std::size_t>(n) * nx];
        const double* wn = &W.values[static_cast<std::size_t>(n) * nx];
        const double* wm = &W.values[static_cast<std::size_t>(n - 1) * nx];
        double* wp = &W.values[static_cast<std::size_t>(n + 1) * nx];
        for (int ix = 1; ix + 1 < nx; ++ix)
            wp[ix] = wn[ix + 1] + wn[ix - 1] - wm[ix] + h2 * vn[ix] * kern[ix];
    }
    return W;
}

// ---------------------------------------------------------------------------
// A-priori bound verification
// ---------------------------------------------------------------------------

namespace detail {

// 8-point Gauss-Legendre on [-1, 1].
inline constexpr std::array<double, 4> kGlNode = {
    0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
inline constexpr std::array<double, 4> kGlWeight = {
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

template <typename F>
double gauss8(F&& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double d = half * kGlNode[i];
        sum += kGlWeight[i] * (f(mid - d) + f(mid + d));
    }
    return sum * half;
}

template <typename F>
double gauss8_composite(F&& f, double lo, double hi, double target_len, int max_panels) {
    if (!(hi > lo)) return 0.0;
    int panels = static_cast<int>(std::ceil((hi - lo) / target_len));
    panels = std::clamp(panels, 1, max_panels);
    double sum = 0.0;
    const double step = (hi - lo) / panels;
    for (int k = 0; k < panels; ++k) sum += gauss8(f, lo + k * step, lo + (k + 1) * step);
    return sum;
}

}  // namespace detail

// int_0^t ds int w(|y|,s)^{-m} kernel(y,a) dy over the slice of the backward
// triangle from (x,t) that meets the annulus (s-R)_+ <= |y| <= s+R. This is
// the integrand behind the mixed-term a-priori bound.
inline double annulus_integral(double x, double t, int m, const Params& P) {
    if (!(t >= 0.0)) throw std::domain_error("annulus_integral: t >= 0 required");
    const double R = P.R;
    const double a = P.a;

    auto integrand = [&](double y, double s) {
        double wv = 1.0;
        if (m != 0) wv = detail::pow_fast(weight(std::abs(y), s, P), -double(m));
        return wv * kernel(y, a);
    };
    auto inner = [&](double s) {
        const double yl = x - t + s;
        const double yh = x + t - s;
        if (!(yh > yl)) return 0.0;
        const double lo_edge = std::max(s - R, 0.0);
        const double hi_edge = s + R;
        auto f = [&](double y) { return integrand(y, s); };
        double total = 0.0;
        // annulus split at y = 0 keeps |y| smooth on each piece
        total += detail::gauss8_composite(f, std::max(yl, -hi_edge), std::min(yh, -lo_edge),
                                          2.0 * R, 6);
        total += detail::gauss8_composite(f, std::max(yl, lo_edge), std::min(yh, hi_edge),
                                          2.0 * R, 6);
        return total;
    };

    // split the s-integral where the moving interval crosses annulus corners
    std::vector<double> bp = {0.0,
                              t,
                              R,
                              t - x,
                              t + x,
                              0.5 * (t - x - R),
                              0.5 * (t - x + R),
                              0.5 * (t + x - R),
                              0.5 * (t + x + R)};
    std::sort(bp.begin(), bp.end());
    double total = 0.0;
    double prev = 0.0;
    for (double b : bp) {
        const double cur = std::clamp(b, 0.0, t);
        if (cur > prev + 1e-14) {
            total += detail::gauss8_composite(inner, prev, cur, P.R, 6);
            prev = cur;
        }
    }
    if (t > prev + 1e-14) total += detail::gauss8_composite(inner, prev, t, P.R, 6);
    return total;
}

// Same triangle, cone-supported integrand |y| <= s+R with weight power -p.
inline double cone_integral(double x, double t, const Params& P) {
    if (!(t >= 0.0)) throw std::domain_error("cone_integral: t >= 0 required");
    const double R = P.R;
    const double a = P.a;

    auto inner = [&](double s) {
        const double yl = x - t + s;
        const double yh = x + t - s;
        if (!(yh > yl)) return 0.0;
        const double hi_edge = s + R;
        auto f = [&](double y) {
            return detail::pow_fast(weight(std::abs(y), s, P), -P.p) * kernel(y, a);
        };
        double total = 0.0;
        total += detail::gauss8_composite(f, std::max(yl, -hi_edge), std::min(yh, 0.0),
                                          2.0 * R, 8);
        total += detail::gauss8_composite(f, std::max(yl, 0.0), std::min(yh, hi_edge),
                                          2.0 * R, 8);
        return total;
    };

    std::vector<double> bp = {0.0,
                              t,
                              t - x,
                              t + x,
                              0.5 * (t - x - R),
                              0.5 * (t + x - R)};
    std::sort(bp.begin(), bp.end());
    double total = 0.0;
    double prev = 0.0;
    for (double b : bp) {
        const double cur = std::clamp(b, 0.0, t);
        if (cur > prev + 1e-14) {
            total += detail::gauss8_composite(inner, prev, cur, P.R, 8);
            prev = cur;
        }
    }
    if (t > prev + 1e-14) total += detail::gauss8_composite(inner, prev, t, P.R, 8);
    return total;
}

namespace detail {

// Deterministic stratified samples (cell centers) of the three regions,
// restricted to x >= 0; the integrals are even in x.
template <typename Fn>
void sample_origin_region(double R, int n_side, Fn&& visit) {
    for (int i = 0; i < n_side; ++i) {
        const double x = (i + 0.5) * R / n_side;
        for (int j = 0; j < n_side; ++j) {
            const double t = (j + 0.5) * R / n_side;
            if (x + t <= R) visit(x, t);
        }
    }
}

template <typename Fn>
void sample_exterior_region(double R, double T, int n_side, Fn&& visit) {
    // characteristic box: beta = t-x in [-R,R], alpha = t+x in [R, 2T - beta]
    for (int i = 0; i < n_side; ++i) {
        const double alpha = R + (i + 0.5) * 2.0 * T / n_side;
        for (int j = 0; j < n_side; ++j) {
            const double beta = -R + (j + 0.5) * 2.0 * R / n_side;
            if (alpha + beta <= 2.0 * T && alpha >= beta)
                visit(0.5 * (alpha - beta), 0.5 * (alpha + beta));
        }
    }
}

template <typename Fn>
void sample_interior_region(double R, double T, int n_side, Fn&& visit) {
    if (T <= R) return;
    for (int i = 0; i < n_side; ++i) {
        const double x = (i + 0.5) * (T - R) / n_side;
        for (int j = 0; j < n_side; ++j) {
            const double t = R + (j + 0.5) * (T - R) / n_side;
            if (t - x >= R) visit(x, t);
        }
    }
}

}  // namespace detail

// Measured constant for the mixed-term bound: the max over sampled exterior
// and origin points of  annulus_integral * w(|x|,t) / envelope_d(T)^m.
inline double measure_annulus_constant(int m, double T, const Params& P, int n_side = 64) {
    if (!(T > 0.0)) throw std::invalid_argument("measure_annulus_constant: T > 0 required");
    if (m != 0 && m != 1)
        throw std::invalid_argument("measure_annulus_constant: m must be 0 or 1");
    const double denom = detail::pow_fast(envelope_d(T, P), double(m));
    double best = 0.0;
    auto visit = [&](double x, double t) {
        const double val = annulus_integral(x, t, m, P) * weight(std::abs(x), t, P) / denom;
        best = std::max(best, val);
    };
    detail::sample_origin_region(P.R, n_side, visit);
    detail::sample_exterior_region(P.R, T, n_side, visit);
    return best;
}

// Measured constant for the power-term bound: max over sampled interior,
// exterior and origin points of  cone_integral * w(|x|,t) / envelope_e(T).
inline double measure_cone_constant(double T, const Params& P, int n_side = 64) {
    if (!(T > 0.0)) throw std::invalid_argument("measure_cone_constant: T > 0 required");
    const double denom = envelope_e(T, P);
    double best = 0.0;
    auto visit = [&](double x, double t) {
        const double val = cone_integral(x, t, P) * weight(std::abs(x), t, P) / denom;
        best = std::max(best, val);
    };
    detail::sample_origin_region(P.R, n_side, visit);
    detail::sample_exterior_region(P.R, T, n_side, visit);
    detail::sample_interior_region(P.R, T, n_side, visit);
    return best;
}

}  // namespace semiwave
