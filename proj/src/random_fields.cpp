#include "leraylab/random_fields.hpp"

#include <cmath>
#include <numbers>

#include "leraylab/operators.hpp"

namespace leray {

double Rng::uniform() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

SpectralField random_field(const Grid& grid, Rank rank, std::uint64_t seed,
                           double band_frac, double spectral_slope) {
    SpectralField f(grid, rank);
    Rng rng(seed);
    const double band = band_frac * grid.n;
    const double k0 = grid.fundamental();
    for (int c = 0; c < f.components(); ++c) {
        auto& a = f.comp(c);
        for (std::size_t flat = 0; flat < a.size(); ++flat) {
            const auto k = grid.wavevector(flat);
            const double mk = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) / k0;
            // Draw in a fixed order so the band mask does not change the
            // stream alignment between grids of equal size.
            const double re = rng.gaussian();
            const double im = rng.gaussian();
            if (flat == 0 || mk > band) continue;
            const double amp = spectral_slope == 0.0 ? 1.0 : std::pow(mk, spectral_slope);
            a[flat] = amp * Complex(re, im);
        }
    }
    f.enforce_hermitian();
    return f;
}

SpectralField random_divfree_field(const Grid& grid, std::uint64_t seed,
                                   double band_frac, double spectral_slope) {
    return leray_project(random_field(grid, Rank::Vector, seed, band_frac, spectral_slope));
}

namespace {

SpectralField apply_envelope(const SpectralField& f, double sigma_frac) {
    const Grid& grid = f.grid();
    const double sigma = sigma_frac * grid.box_length;
    std::vector<double> env(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto x = grid.coordinate(i);
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        env[i] = std::exp(-r2 / (2.0 * sigma * sigma));
    }
    return pointwise_scale(f, env);
}

}  // namespace

SpectralField random_concentrated_field(const Grid& grid, Rank rank, std::uint64_t seed,
                                        double band_frac, double sigma_frac) {
    return apply_envelope(random_field(grid, rank, seed, band_frac, 0.0), sigma_frac);
}

SpectralField random_shell_field(const Grid& grid, Rank rank, std::uint64_t seed, double m_lo,
                                 double m_hi, double sigma_frac) {
    SpectralField f(grid, rank);
    Rng rng(seed);
    const double k0 = grid.fundamental();
    for (int c = 0; c < f.components(); ++c) {
        auto& a = f.comp(c);
        for (std::size_t flat = 0; flat < a.size(); ++flat) {
            const auto k = grid.wavevector(flat);
            const double mk = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) / k0;
            const double re = rng.gaussian();
            const double im = rng.gaussian();
            if (flat == 0 || mk < m_lo || mk > m_hi) continue;
            a[flat] = Complex(re, im);
        }
    }
    f.enforce_hermitian();
    return apply_envelope(f, sigma_frac);
}

}  // namespace leray
