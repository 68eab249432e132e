#pragma once

#include <cstdint>
#include <random>

#include "leraylab/field.hpp"

namespace leray {

/// Deterministic Gaussian source: mt19937_64 plus a hand-rolled Box-Muller
/// so results do not depend on the standard library's distribution
/// implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform();   // (0, 1]
    double gaussian();  // standard normal

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Seeded Gaussian coefficients with Hermitian symmetry, band-limited to
/// |k| <= band_frac * n (integer-mode radius), zero mean.
/// spectral_slope scales the coefficient standard deviation by
/// |m|^spectral_slope (m in integer-mode units).
SpectralField random_field(const Grid& grid, Rank rank, std::uint64_t seed,
                           double band_frac = 0.25, double spectral_slope = 0.0);

/// random_field projected onto divergence-free vector fields.
SpectralField random_divfree_field(const Grid& grid, std::uint64_t seed,
                                   double band_frac = 0.25, double spectral_slope = 0.0);

/// Band-limited random field multiplied by a centered Gaussian envelope of
/// width sigma (physical concentration for torus-vs-whole-space checks).
/// The physical tails at the box edge are ~exp(-(L/2)^2 / (2 sigma^2)).
SpectralField random_concentrated_field(const Grid& grid, Rank rank, std::uint64_t seed,
                                        double band_frac = 0.125, double sigma_frac = 1.0 / 16.0);

/// Concentrated field whose spectrum starts in the integer-mode shell
/// [m_lo, m_hi] before the Gaussian envelope is applied.
SpectralField random_shell_field(const Grid& grid, Rank rank, std::uint64_t seed, double m_lo,
                                 double m_hi, double sigma_frac = 1.0 / 15.0);

}  // namespace leray
