#pragma once

#include <utility>

#include "leraylab/field.hpp"

namespace leray {

/// Dyadic cutoff pair. h_hat is a smooth radial bump equal to 1 on the
/// ball of radius 3/4 and supported in the ball of radius 4/3;
/// phi_hat(xi) = h_hat(xi/2) - h_hat(xi) lives on the annulus (3/4, 8/3).
double h_hat(double r);
double phi_hat(double r);
double phi_hat_prime(double r);  // radial derivative, analytic

enum class BlockVariant { HomogBlock, HomogLowpass, InhomogBlock };

struct DyadicFamily {
    Grid grid;
    int q_min = 0;   // lowest index whose annulus meets the grid spectrum
    int q_max = 0;   // highest index whose annulus fits under the dealias cutoff
    int q_ceil = 0;  // highest index with any support below the Nyquist corner

    /// Multiplier value of one block at a wave vector.
    double block_symbol(int q, BlockVariant variant, const std::array<double, 3>& k) const;
};

DyadicFamily build_dyadic_family(const Grid& grid);

/// Frequency cutoff application. Blocks with q outside
/// [q_min - 1, q_max + 1] are rejected for the homogeneous variants;
/// InhomogBlock accepts q >= -1 with Delta_{-1} = S_0.
SpectralField dyadic_block(const DyadicFamily& fam, const SpectralField& f, int q,
                           BlockVariant variant = BlockVariant::HomogBlock);

/// Internal variant without the range guard (used by norms and probes that
/// must reach edge blocks).
SpectralField dyadic_block_unchecked(const DyadicFamily& fam, const SpectralField& f, int q,
                                     BlockVariant variant = BlockVariant::HomogBlock);

/// Delta-tilde: sum of the three neighbouring homogeneous blocks.
SpectralField dyadic_block_wide(const DyadicFamily& fam, const SpectralField& f, int q);

/// Commutator [Delta_q, x (x)] v computed two ways:
///  - direct: Delta_q(x v) - x Delta_q(v) with the centered sawtooth
///    coordinate (one scalar output per (axis, component) pair);
///  - via_identity: the Fourier-side multiplier -i 2^{-q} (grad phi_hat)(2^{-q} k).
/// Output rank: components indexed axis*ncomp + comp.
struct CommutatorResult {
    std::vector<SpectralField> direct;        // one vector/scalar-shaped field per axis
    std::vector<SpectralField> via_identity;  // same shape
};
CommutatorResult commutator_x_block(const DyadicFamily& fam, const SpectralField& v, int q);

}  // namespace leray
