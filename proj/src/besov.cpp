#include "leraylab/besov.hpp"

#include <cmath>
#include <stdexcept>

#include "leraylab/operators.hpp"

namespace leray {

BesovResult besov_norm_full(const DyadicFamily& fam, const SpectralField& f, const BesovSpec& spec) {
    if (spec.p < 1.0 || spec.r < 1.0) throw std::invalid_argument("besov_norm: p, r must be >= 1");
    if (spec.homogeneous) {
        double zmax = 0.0, amax = 0.0;
        for (int c = 0; c < f.components(); ++c) {
            zmax = std::max(zmax, std::abs(f.zero_mode(c)));
            for (const auto& z : f.comp(c)) amax = std::max(amax, std::abs(z));
        }
        if (amax > 0.0 && zmax > 1e-12 * amax)
            throw std::invalid_argument("besov_norm: homogeneous norm of a field with nonzero mean");
    }

    const int q_lo = spec.homogeneous ? fam.q_min : -1;
    const int q_hi = fam.q_max + 1;

    double sum = 0.0, vmax = 0.0;
    for (int q = q_lo; q <= q_hi; ++q) {
        const BlockVariant variant = spec.homogeneous ? BlockVariant::HomogBlock : BlockVariant::InhomogBlock;
        SpectralField block = dyadic_block_unchecked(fam, f, q, variant);
        const double term = std::pow(2.0, q * spec.s) * lp_norm(block, spec.p);
        if (std::isinf(spec.r))
            vmax = std::max(vmax, term);
        else
            sum += std::pow(term, spec.r);
    }
    BesovResult res;
    res.value = std::isinf(spec.r) ? vmax : std::pow(sum, 1.0 / spec.r);
    // mass above the top covered frequency (3/4) * 2^(q_hi + 1)
    res.truncation = spectral_mass_above(f, 0.75 * std::ldexp(1.0, q_hi + 1));
    return res;
}

double besov_norm(const DyadicFamily& fam, const SpectralField& f, const BesovSpec& spec) {
    return besov_norm_full(fam, f, spec).value;
}

double hdot_norm(const SpectralField& f, double s) {
    double sum = 0.0;
    for (int c = 0; c < f.components(); ++c) {
        const auto& a = f.comp(c);
        for (std::size_t flat = 1; flat < a.size(); ++flat) {
            const auto k = f.grid().wavevector(flat);
            const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
            sum += std::pow(k2, s) * std::norm(a[flat]);
        }
    }
    double vol = 1.0;
    for (int d = 0; d < f.grid().dim; ++d) vol *= f.grid().box_length;
    return std::sqrt(vol * sum);
}

double weighted_sobolev_norm(const SpectralField& f, double s, const WeightSpec& w) {
    if (s < 0.0) throw std::invalid_argument("weighted_sobolev_norm: s must be >= 0");
    const auto wvals = weight_values(f.grid(), 2.0 * w.beta);
    double hvol = 1.0;
    for (int d = 0; d < f.grid().dim; ++d) hvol *= f.grid().spacing();

    auto weighted_l2 = [&](const SpectralField& g) {
        const auto phys = g.to_physical();
        double sum = 0.0;
        for (std::size_t i = 0; i < g.modes(); ++i) {
            double mag2 = 0.0;
            for (const auto& comp : phys) mag2 += comp[i] * comp[i];
            sum += mag2 * wvals[i];
        }
        return std::sqrt(hvol * sum);
    };

    const double base = weighted_l2(f);
    const double high = weighted_l2(fractional_laplacian(f, s));
    return base + high;
}

}  // namespace leray
