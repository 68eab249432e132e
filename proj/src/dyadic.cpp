#include "leraylab/dyadic.hpp"

#include <cmath>
#include <stdexcept>

#include "leraylab/operators.hpp"

namespace leray {
namespace {

// The step of h_hat falls from 1 to 0 over [kInner, kOuter]. The zone sits
// inside the mandated band [3/4, 4/3] (so h_hat = 1 on B_{3/4} and
// supp phi_hat stays inside the annulus (3/4, 8/3)) but is placed early:
// that centers the per-block frequency distribution, which keeps the
// computed Hdot/Besov equivalence inside its bracket across s in [-1, 2].
constexpr double kInner = 0.76;  // h_hat == 1 inside this radius
constexpr double kOuter = 1.04;  // h_hat == 0 outside this radius
constexpr double kWidth = kOuter - kInner;

// Transition profile of the radial step. A Kaiser-shaped taper is used:
// among steps confined to a fixed band it is near-optimal for spatial
// kernel concentration, which controls how well whole-space identities
// survive periodization. (A bump built from exp(-1/t) has much heavier
// spatial tails; the x-commutator identity then fails at the 1e-2 level
// on desk-size grids.)
constexpr double kTaperBeta = 30.0;

double kaiser(double t) {  // window shape on [0, 1]
    const double u = 2.0 * t - 1.0;
    const double arg = 1.0 - u * u;
    if (arg <= 0.0) return 1.0;  // continuous continuation at the edge
    return std::cyl_bessel_i(0.0, kTaperBeta * std::sqrt(arg));
}

struct StepTable {
    static constexpr int kN = 4096;
    double cum[kN + 1];
    double total;
    StepTable() {
        // cumulative Simpson integral of the taper on [0, 1]
        cum[0] = 0.0;
        const double h = 1.0 / kN;
        for (int i = 1; i <= kN; ++i) {
            const double a = (i - 1) * h, b = i * h;
            cum[i] = cum[i - 1] + (h / 6.0) * (kaiser(a) + 4.0 * kaiser(0.5 * (a + b)) + kaiser(b));
        }
        total = cum[kN];
    }
    // integral fraction in [0, 1], cubic-corrected by one Simpson panel
    double eval(double t) const {
        if (t <= 0.0) return 0.0;
        if (t >= 1.0) return 1.0;
        const double x = t * kN;
        const int i = std::min(static_cast<int>(x), kN - 1);
        const double a = static_cast<double>(i) / kN, frac = t - a;
        const double h = frac;
        double part = 0.0;
        if (h > 0.0)
            part = (h / 6.0) * (kaiser(a) + 4.0 * kaiser(a + 0.5 * h) + kaiser(a + h));
        return (cum[i] + part) / total;
    }
};

const StepTable& step_table() {
    static const StepTable table;
    return table;
}

double step_raw(double t) { return step_table().eval(t); }

double step_raw_prime(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return kaiser(t) / step_table().total;
}

}  // namespace

double h_hat(double r) { return 1.0 - step_raw((r - kInner) / kWidth); }

double phi_hat(double r) { return h_hat(0.5 * r) - h_hat(r); }

double phi_hat_prime(double r) {
    const double hp_half = -step_raw_prime((0.5 * r - kInner) / kWidth) / kWidth;
    const double hp = -step_raw_prime((r - kInner) / kWidth) / kWidth;
    return 0.5 * hp_half - hp;
}

DyadicFamily build_dyadic_family(const Grid& grid) {
    DyadicFamily fam;
    fam.grid = grid;
    const double kfund = grid.fundamental();
    const double kdealias = grid.dealias_cutoff();
    double kcorner = 0.0;
    for (int d = 0; d < grid.dim; ++d) {
        const double kn = (grid.n / 2) * kfund;
        kcorner += kn * kn;
    }
    kcorner = std::sqrt(kcorner);

    fam.q_min = static_cast<int>(std::floor(std::log2(0.375 * kfund) + 1e-12)) + 1;
    fam.q_max = static_cast<int>(std::floor(std::log2(0.375 * kdealias) + 1e-12));
    fam.q_ceil = static_cast<int>(std::floor(std::log2(kcorner / kInner) + 1e-12));
    return fam;
}

double DyadicFamily::block_symbol(int q, BlockVariant variant, const std::array<double, 3>& k) const {
    const double kk = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    const double scaled = std::ldexp(kk, -q);  // |k| / 2^q
    switch (variant) {
        case BlockVariant::HomogBlock: return phi_hat(scaled);
        case BlockVariant::HomogLowpass: return h_hat(scaled);
        case BlockVariant::InhomogBlock: return q == -1 ? h_hat(kk) : phi_hat(scaled);
    }
    return 0.0;
}

SpectralField dyadic_block_unchecked(const DyadicFamily& fam, const SpectralField& f, int q,
                                     BlockVariant variant) {
    SpectralField out = f;
    for (int c = 0; c < out.components(); ++c) {
        auto& a = out.comp(c);
        for (std::size_t flat = 0; flat < a.size(); ++flat) {
            const auto k = f.grid().wavevector(flat);
            a[flat] *= fam.block_symbol(q, variant, k);
        }
    }
    return out;
}

SpectralField dyadic_block(const DyadicFamily& fam, const SpectralField& f, int q, BlockVariant variant) {
    if (variant == BlockVariant::InhomogBlock) {
        if (q < -1 || q > fam.q_max + 1)
            throw std::invalid_argument("dyadic_block: inhomogeneous index out of range");
    } else {
        if (q < fam.q_min - 1 || q > fam.q_max + 1)
            throw std::invalid_argument("dyadic_block: index outside representable range");
    }
    return dyadic_block_unchecked(fam, f, q, variant);
}

SpectralField dyadic_block_wide(const DyadicFamily& fam, const SpectralField& f, int q) {
    SpectralField out = f;
    for (int c = 0; c < out.components(); ++c) {
        auto& a = out.comp(c);
        for (std::size_t flat = 0; flat < a.size(); ++flat) {
            const auto k = f.grid().wavevector(flat);
            double s = 0.0;
            for (int dq = -1; dq <= 1; ++dq) s += fam.block_symbol(q + dq, BlockVariant::HomogBlock, k);
            a[flat] *= s;
        }
    }
    return out;
}

// The identity is a whole-space statement; on a torus the sawtooth wrap
// would pollute it through the (slowly decaying) spatial tails of the
// block kernel. The fields this op accepts are physically concentrated,
// so whole space is realized by zero-padding into a box kPad times larger,
// running both routes there, and restricting back. The returned fields
// live on the original grid.
constexpr int kCommutatorPad = 4;

CommutatorResult commutator_x_block(const DyadicFamily& fam, const SpectralField& v, int q) {
    (void)fam;
    const Grid& g = v.grid();
    const int K = kCommutatorPad;
    const Grid big = make_grid(g.dim, K * g.n, K * g.box_length);
    const int off = (K - 1) * g.n / 2;

    // pad physical values into the center of the enlarged box
    const auto v_phys = v.to_physical();
    std::vector<std::vector<double>> padded(v.components(), std::vector<double>(big.size(), 0.0));
    for (int c = 0; c < v.components(); ++c) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            auto idx = g.unflatten(i);
            std::array<int, 3> bidx{0, 0, 0};
            for (int d = 0; d < g.dim; ++d) bidx[d] = idx[d] + off;
            padded[c][big.flatten(bidx)] = v_phys[c][i];
        }
    }
    SpectralField vb = SpectralField::from_physical(big, v.rank(), padded);
    const DyadicFamily fam_big = build_dyadic_family(big);

    auto extract = [&](const SpectralField& f) {
        const auto phys = f.to_physical();
        std::vector<std::vector<double>> vals(f.components(), std::vector<double>(g.size()));
        for (int c = 0; c < f.components(); ++c) {
            for (std::size_t i = 0; i < g.size(); ++i) {
                auto idx = g.unflatten(i);
                std::array<int, 3> bidx{0, 0, 0};
                for (int d = 0; d < g.dim; ++d) bidx[d] = idx[d] + off;
                vals[c][i] = phys[c][big.flatten(bidx)];
            }
        }
        return SpectralField::from_physical(g, f.rank(), vals);
    };

    SpectralField vq = dyadic_block_unchecked(fam_big, vb, q, BlockVariant::HomogBlock);
    const auto vq_phys = vq.to_physical();
    const auto vb_phys = vb.to_physical();

    CommutatorResult res;
    for (int axis = 0; axis < g.dim; ++axis) {
        std::vector<double> coord(big.size());
        for (std::size_t i = 0; i < big.size(); ++i) coord[i] = big.coordinate(i)[axis];

        // direct: Delta_q(x v) - x Delta_q(v)
        std::vector<std::vector<double>> xv(v.components(), std::vector<double>(big.size()));
        for (int c = 0; c < v.components(); ++c)
            for (std::size_t i = 0; i < big.size(); ++i) xv[c][i] = coord[i] * vb_phys[c][i];
        SpectralField term1 = dyadic_block_unchecked(fam_big, SpectralField::from_physical(big, v.rank(), xv),
                                                     q, BlockVariant::HomogBlock);
        const auto t1_phys = term1.to_physical();
        std::vector<std::vector<double>> direct_vals(v.components(), std::vector<double>(big.size()));
        for (int c = 0; c < v.components(); ++c)
            for (std::size_t i = 0; i < big.size(); ++i)
                direct_vals[c][i] = t1_phys[c][i] - coord[i] * vq_phys[c][i];
        res.direct.push_back(extract(SpectralField::from_physical(big, v.rank(), direct_vals)));

        // via identity: multiplier -i 2^{-q} (d_axis phi_hat)(2^{-q} k)
        SpectralField ident = vb;
        const double scale = std::ldexp(1.0, -q);
        for (int c = 0; c < v.components(); ++c) {
            auto& a = ident.comp(c);
            a[0] = Complex(0.0, 0.0);
            for (std::size_t flat = 1; flat < a.size(); ++flat) {
                const auto k = big.wavevector(flat);
                const double kk = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
                const double dphi = phi_hat_prime(scale * kk) * (k[axis] / kk);
                a[flat] *= Complex(0.0, -scale * dphi);
            }
        }
        res.via_identity.push_back(extract(ident));
    }
    return res;
}

}  // namespace leray
