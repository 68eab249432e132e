#pragma once

// Test-only reference implementations, independent of the library's
// multiplier paths.

#include <cmath>
#include <vector>

#include "leraylab/field.hpp"

namespace oracle {

using leray::Grid;
using leray::SpectralField;

// Second-order centered finite-difference Laplacian on the periodic grid.
inline std::vector<double> fd_laplacian(const Grid& g, const std::vector<double>& f) {
    const int n = g.n;
    const double h2 = g.spacing() * g.spacing();
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t flat = 0; flat < f.size(); ++flat) {
        const auto idx = g.unflatten(flat);
        double acc = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            auto ip = idx, im = idx;
            ip[d] = (idx[d] + 1) % n;
            im[d] = (idx[d] + n - 1) % n;
            acc += f[g.flatten(ip)] - 2.0 * f[flat] + f[g.flatten(im)];
        }
        out[flat] = acc / h2;
    }
    return out;
}

// Plane wave with integer mode vector m: cos(k.x + phase) as a real field.
inline SpectralField plane_wave(const Grid& g, const std::array<int, 3>& m, double phase = 0.0,
                                double amplitude = 1.0) {
    std::vector<double> vals(g.size());
    const double k0 = g.fundamental();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto idx = g.unflatten(i);
        double arg = phase;
        for (int d = 0; d < g.dim; ++d) arg += k0 * m[d] * idx[d] * g.spacing();
        vals[i] = amplitude * std::cos(arg);
    }
    return SpectralField::from_physical(g, leray::Rank::Scalar, {vals});
}

}  // namespace oracle
