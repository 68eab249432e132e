#include "leraylab/paraproduct.hpp"

#include <cmath>
#include <stdexcept>

#include "leraylab/operators.hpp"

namespace leray {

ParaproductParts paraproduct(const DyadicFamily& fam, const SpectralField& f, const SpectralField& g) {
    if (f.rank() != Rank::Scalar || g.rank() != Rank::Scalar)
        throw std::invalid_argument("paraproduct: scalar fields expected");
    for (const SpectralField* h : {&f, &g}) {
        double amax = 0.0;
        for (const auto& z : h->comp(0)) amax = std::max(amax, std::abs(z));
        if (amax > 0.0 && std::abs(h->zero_mode(0)) > 1e-12 * amax)
            throw std::invalid_argument("paraproduct: inputs must be mean-zero");
        if (spectral_mass_above(*h, h->grid().dealias_cutoff() * (1.0 + 1e-12)) > 1e-20)
            throw std::invalid_argument("paraproduct: inputs must be band-limited below the dealias cutoff");
    }

    const Grid& grid = f.grid();
    ParaproductParts parts{SpectralField::zero(grid, Rank::Scalar), SpectralField::zero(grid, Rank::Scalar),
                           SpectralField::zero(grid, Rank::Scalar)};

    for (int q = fam.q_min; q <= fam.q_max + 1; ++q) {
        SpectralField f_low = dyadic_block_unchecked(fam, f, q - 1, BlockVariant::HomogLowpass);
        SpectralField g_low = dyadic_block_unchecked(fam, g, q - 1, BlockVariant::HomogLowpass);
        SpectralField f_blk = dyadic_block_unchecked(fam, f, q, BlockVariant::HomogBlock);
        SpectralField g_blk = dyadic_block_unchecked(fam, g, q, BlockVariant::HomogBlock);
        SpectralField f_wide = dyadic_block_wide(fam, f, q);

        parts.low_high += dealiased_product(f_low, g_blk);
        parts.high_low += dealiased_product(g_low, f_blk);
        parts.remainder += dealiased_product(f_wide, g_blk);
    }
    return parts;
}

}  // namespace leray
