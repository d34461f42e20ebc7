#pragma once

// Lattice container for space-time grid functions. The grid uses one spacing
// h for both x and t (the characteristic-compatible layout every solver here
// relies on), x = 0 is always a node, and the x-extent covers the full light
// cone of the data support plus a one-cell margin.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace semiwave {

struct Field {
    double h = 0.0;
    double x_min = 0.0;
    int nx = 0;
    int nt = 0;
    std::vector<double> values;  // indexed [it*nx + ix]

    bool blowup_flag = false;
    int blowup_index = -1;  // first time level with a non-finite entry, if any

    double x(int ix) const { return x_min + ix * h; }
    double t(int it) const { return it * h; }
    double t_max() const { return (nt - 1) * h; }

    double& at(int ix, int it) { return values[static_cast<std::size_t>(it) * nx + ix]; }
    double at(int ix, int it) const { return values[static_cast<std::size_t>(it) * nx + ix]; }

    bool same_grid(const Field& o) const {
        return h == o.h && x_min == o.x_min && nx == o.nx && nt == o.nt;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite() const {
        for (double v : values) {
            if (!std::isfinite(v)) return false;
        }
        return true;
    }
};

// Grid covering [0, t_max] x [-(t_max+R+h), t_max+R+h], zero-initialized.
inline Field make_cone_grid(double t_max, double R, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("make_cone_grid: h must be > 0");
    if (!(t_max > 0.0)) throw std::invalid_argument("make_cone_grid: t_max must be > 0");
    Field f;
    f.h = h;
    f.nt = static_cast<int>(std::llround(t_max / h)) + 1;
    if (f.nt < 2) f.nt = 2;
    const int m = static_cast<int>(std::ceil((t_max + R) / h)) + 1;
    f.x_min = -m * h;
    f.nx = 2 * m + 1;
    f.values.assign(static_cast<std::size_t>(f.nx) * f.nt, 0.0);
    return f;
}

template <typename F>
Field map_grid(const Field& grid, F&& fn) {
    Field out = grid;
    for (int it = 0; it < out.nt; ++it)
        for (int ix = 0; ix < out.nx; ++ix)
            out.at(ix, it) = fn(grid.x(ix), grid.t(it), grid.at(ix, it));
    return out;
}

}  // namespace semiwave
