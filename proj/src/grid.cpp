#include "leraylab/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace leray {

std::size_t Grid::size() const {
    std::size_t s = 1;
    for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
    return s;
}

double Grid::fundamental() const { return 2.0 * std::numbers::pi / box_length; }

double Grid::dealias_cutoff() const { return (n / 3.0) * fundamental(); }

std::array<int, 3> Grid::unflatten(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int d = dim - 1; d >= 0; --d) {
        idx[d] = static_cast<int>(flat % n);
        flat /= n;
    }
    return idx;
}

std::size_t Grid::flatten(const std::array<int, 3>& idx) const {
    std::size_t flat = 0;
    for (int d = 0; d < dim; ++d) flat = flat * n + static_cast<std::size_t>(idx[d]);
    return flat;
}

std::array<double, 3> Grid::wavevector(std::size_t flat) const {
    const auto idx = unflatten(flat);
    std::array<double, 3> k{0.0, 0.0, 0.0};
    for (int d = 0; d < dim; ++d) k[d] = wavenumbers[idx[d]];
    return k;
}

std::array<double, 3> Grid::coordinate(std::size_t flat) const {
    const auto idx = unflatten(flat);
    const double h = spacing();
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int d = 0; d < dim; ++d) x[d] = idx[d] * h - 0.5 * box_length;
    return x;
}

Grid make_grid(int dim, int n, double box_length) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("make_grid: dim must be 1, 2 or 3");
    if (n < 4) throw std::invalid_argument("make_grid: n must be >= 4");
    if (n % 2 != 0) throw std::invalid_argument("make_grid: n must be even");
    if (!(box_length > 0.0)) throw std::invalid_argument("make_grid: box_length must be positive");

    Grid g;
    g.dim = dim;
    g.n = n;
    g.box_length = box_length;
    g.wavenumbers.resize(n);
    const double k0 = g.fundamental();
    for (int m = 0; m < n; ++m) {
        const int freq = (m < n / 2) ? m : m - n;
        g.wavenumbers[m] = k0 * freq;
    }
    return g;
}

}  // namespace leray
