#pragma once

#include "leraylab/dyadic.hpp"

namespace leray {

/// Bony splitting fg = T_f g + T_g f + R(f, g) for mean-zero scalar
/// fields band-limited below the dealias cutoff:
///   T_f g = sum_q S_{q-1} f . Delta_q g     (low-high)
///   R(f,g) = sum_q Delta~_q f . Delta_q g   (comparable frequencies)
struct ParaproductParts {
    SpectralField low_high;   // T_f g
    SpectralField high_low;   // T_g f
    SpectralField remainder;  // R(f, g)
};

ParaproductParts paraproduct(const DyadicFamily& fam, const SpectralField& f, const SpectralField& g);

}  // namespace leray
