#pragma once

// Successive approximation U_{n+1} = L_a(|U_n + eps*u0|^p), U_1 == 0, in the
// weighted sup norm, together with the explicit smallness conditions under
// which the iteration is a half-contraction on the invariant ball.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "semiwave/duhamel.hpp"
#include "semiwave/field.hpp"
#include "semiwave/freewave.hpp"
#include "semiwave/model.hpp"

namespace semiwave {

namespace detail {

// like weighted_norm below, but maps non-finite entries to +inf instead of
// throwing; the iteration loop uses it to turn overflow into a divergence
// report
inline double weighted_norm_or_inf(const Field& U, const Params& P) {
    double best = 0.0;
    for (int it = 0; it < U.nt; ++it) {
        const double t = U.t(it);
        for (int ix = 0; ix < U.nx; ++ix) {
            const double v = U.at(ix, it);
            if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
            best = std::max(best, weight(std::abs(U.x(ix)), t, P) * std::abs(v));
        }
    }
    return best;
}

}  // namespace detail

// sup over grid nodes of w(|x|,t)|U(x,t)|.
inline double weighted_norm(const Field& U, const Params& P) {
    const double n = detail::weighted_norm_or_inf(U, P);
    if (!std::isfinite(n)) throw std::runtime_error("weighted_norm: non-finite entry");
    return n;
}

struct PicardResult {
    Field U;                     // final iterate
    Field source;                // eps * u0 on the same grid
    std::vector<double> norms;   // ||U_n|| starting at U_2
    std::vector<double> deltas;  // ||U_{n+1} - U_n||
    bool converged = false;
    double contraction_ratio = 0.0;  // max ratio of the last few deltas
    int diverged_at = -1;            // iterate index if the norm blew past the cap
};

struct PicardOptions {
    int n_max = 50;
    double tol = 1e-8;
    bool use_quadrature = false;  // direct-quadrature operator instead of incremental
    double norm_cap = 1e12;
};

inline PicardResult picard_iterate(const InitialDatum& datum, const Params& P, double T,
                                   double h, const PicardOptions& opt = {}) {
    P.validate();
    if (!(T > 0.0)) throw std::invalid_argument("picard_iterate: T > 0 required");
    if (opt.n_max < 2) throw std::invalid_argument("picard_iterate: n_max >= 2 required");

    const Field grid = make_cone_grid(T, datum.R, h);
    PicardResult res;
    res.source = map_grid(grid, [&](double x, double t, double) {
        return P.eps * free_wave(x, t, datum);
    });

    auto apply = [&](const Field& v) {
        return opt.use_quadrature ? apply_la(v, P.a) : apply_la_incremental(v, P.a);
    };

    Field U = grid;  // U_1 == 0
    for (int n = 2; n <= opt.n_max; ++n) {
        Field integrand = U;
        for (std::size_t i = 0; i < integrand.values.size(); ++i)
            integrand.values[i] = abs_power(U.values[i] + res.source.values[i], P.p);
        if (!integrand.all_finite()) {
            res.diverged_at = n;
            break;
        }
        Field next = apply(integrand);

        Field diff = next;
        for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= U.values[i];
        const double nrm = detail::weighted_norm_or_inf(next, P);
        const double del = detail::weighted_norm_or_inf(diff, P);
        if (!std::isfinite(nrm) || nrm > opt.norm_cap) {
            res.diverged_at = n;  // keep U at the last finite iterate
            break;
        }
        res.norms.push_back(nrm);
        res.deltas.push_back(del);
        U = std::move(next);

        if (n > 2 && del <= opt.tol * std::max(nrm, 1e-300)) {
            res.converged = true;
            break;
        }
    }

    // geometric ratio over the final recorded steps
    const std::size_t nd = res.deltas.size();
    for (std::size_t i = (nd > 3 ? nd - 3 : 1); i < nd; ++i) {
        if (res.deltas[i - 1] > 0.0)
            res.contraction_ratio = std::max(res.contraction_ratio, res.deltas[i] / res.deltas[i - 1]);
    }
    res.U = std::move(U);
    return res;
}

// The two explicit smallness conditions, evaluated with the measured
// operator constants M (mixed term) and C (power term):
//   orbit_bounded:     2^{p^2+2p} C M^p E(T) eps^{p^2} <= 2^p M eps^p
//   half_contraction:  3^{p-1} p C * 2 (2^{p+1} M eps^p)^{p-1} E(T)
//                        + 3^{p-1} p M eps^{p-1} D(T) <= 1/2
struct ContractionCheck {
    bool orbit_bounded;
    bool half_contraction;
    double lhs1, rhs1, lhs2;
};

inline ContractionCheck contraction_conditions(double M_meas, double C_meas, const Params& P,
                                               double T) {
    if (!(M_meas > 0.0 && C_meas > 0.0))
        throw std::invalid_argument("contraction_conditions: constants must be > 0");
    const double p = P.p;
    const double eps = P.eps;
    const double E = envelope_e(T, P);
    const double D = envelope_d(T, P);

    const double lhs1 =
        std::pow(2.0, p * p + 2.0 * p) * C_meas * std::pow(M_meas, p) * E * std::pow(eps, p * p);
    const double rhs1 = std::pow(2.0, p) * M_meas * std::pow(eps, p);

    const double ball = std::pow(2.0, p + 1.0) * M_meas * std::pow(eps, p);
    const double lhs2 = std::pow(3.0, p - 1.0) * p * C_meas * 2.0 * std::pow(ball, p - 1.0) * E +
                        std::pow(3.0, p - 1.0) * p * M_meas * std::pow(eps, p - 1.0) * D;

    return {lhs1 <= rhs1, lhs2 <= 0.5, lhs1, rhs1, lhs2};
}

}  // namespace semiwave
