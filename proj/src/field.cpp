#include "leraylab/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "leraylab/fft.hpp"

namespace leray {

int component_count(Rank r, int dim) {
    switch (r) {
        case Rank::Scalar: return 1;
        case Rank::Vector: return dim;
        case Rank::Tensor: return dim * dim;
    }
    return 1;
}

std::string rank_name(Rank r) {
    switch (r) {
        case Rank::Scalar: return "scalar";
        case Rank::Vector: return "vector";
        case Rank::Tensor: return "tensor";
    }
    return "?";
}

SpectralField::SpectralField(Grid grid, Rank rank) : grid_(std::move(grid)), rank_(rank) {
    coeffs_.assign(component_count(rank_, grid_.dim), std::vector<Complex>(grid_.size(), Complex(0.0, 0.0)));
}

SpectralField SpectralField::zero(const Grid& grid, Rank rank) { return SpectralField(grid, rank); }

SpectralField SpectralField::from_physical(const Grid& grid, Rank rank,
                                           const std::vector<std::vector<double>>& values) {
    SpectralField f(grid, rank);
    if (values.size() != static_cast<std::size_t>(f.components()))
        throw std::invalid_argument("from_physical: component count mismatch");
    const double inv_n = 1.0 / static_cast<double>(grid.size());
    for (int c = 0; c < f.components(); ++c) {
        if (values[c].size() != grid.size())
            throw std::invalid_argument("from_physical: value array size mismatch");
        auto& a = f.coeffs_[c];
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = Complex(values[c][i], 0.0);
        fft_forward(grid, a);
        for (auto& z : a) z *= inv_n;
    }
    return f;
}

std::vector<double> SpectralField::to_physical(int c) const {
    std::vector<Complex> work = coeffs_[c];
    fft_backward(grid_, work);
    std::vector<double> out(work.size());
    for (std::size_t i = 0; i < work.size(); ++i) out[i] = work[i].real();
    return out;
}

std::vector<std::vector<double>> SpectralField::to_physical() const {
    std::vector<std::vector<double>> out;
    out.reserve(coeffs_.size());
    for (int c = 0; c < components(); ++c) out.push_back(to_physical(c));
    return out;
}

double SpectralField::hermitian_defect() const {
    const int n = grid_.n;
    double max_def = 0.0, max_mag = 0.0;
    for (const auto& a : coeffs_) {
        for (std::size_t flat = 0; flat < a.size(); ++flat) {
            auto idx = grid_.unflatten(flat);
            std::array<int, 3> neg{0, 0, 0};
            for (int d = 0; d < grid_.dim; ++d) neg[d] = (n - idx[d]) % n;
            const std::size_t nflat = grid_.flatten(neg);
            max_def = std::max(max_def, std::abs(a[flat] - std::conj(a[nflat])));
            max_mag = std::max(max_mag, std::abs(a[flat]));
        }
    }
    return max_mag > 0.0 ? max_def / max_mag : 0.0;
}

void SpectralField::enforce_hermitian() {
    const int n = grid_.n;
    for (auto& a : coeffs_) {
        for (std::size_t flat = 0; flat < a.size(); ++flat) {
            auto idx = grid_.unflatten(flat);
            std::array<int, 3> neg{0, 0, 0};
            for (int d = 0; d < grid_.dim; ++d) neg[d] = (n - idx[d]) % n;
            const std::size_t nflat = grid_.flatten(neg);
            if (nflat < flat) continue;
            const Complex avg = 0.5 * (a[flat] + std::conj(a[nflat]));
            a[flat] = avg;
            a[nflat] = std::conj(avg);
        }
    }
    hermitian_ = true;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    for (int c = 0; c < components(); ++c)
        for (std::size_t i = 0; i < coeffs_[c].size(); ++i) coeffs_[c][i] += o.coeffs_[c][i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    for (int c = 0; c < components(); ++c)
        for (std::size_t i = 0; i < coeffs_[c].size(); ++i) coeffs_[c][i] -= o.coeffs_[c][i];
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    for (auto& comp : coeffs_)
        for (auto& z : comp) z *= a;
    return *this;
}

double l2_norm(const SpectralField& f) {
    double sum = 0.0;
    for (int c = 0; c < f.components(); ++c)
        for (const auto& z : f.comp(c)) sum += std::norm(z);
    double vol = 1.0;
    for (int d = 0; d < f.grid().dim; ++d) vol *= f.grid().box_length;
    return std::sqrt(vol * sum);
}

double l2_distance(const SpectralField& a, const SpectralField& b) {
    SpectralField d = a;
    d -= b;
    return l2_norm(d);
}

double lp_norm(const SpectralField& f, double p) {
    const auto values = f.to_physical();
    const std::size_t npts = f.modes();
    double hvol = 1.0;
    for (int d = 0; d < f.grid().dim; ++d) hvol *= f.grid().spacing();

    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < npts; ++i) {
            double mag2 = 0.0;
            for (const auto& v : values) mag2 += v[i] * v[i];
            m = std::max(m, mag2);
        }
        return std::sqrt(m);
    }
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    double sum = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
        double mag2 = 0.0;
        for (const auto& v : values) mag2 += v[i] * v[i];
        sum += std::pow(mag2, 0.5 * p);
    }
    return std::pow(hvol * sum, 1.0 / p);
}

namespace {

double window_l2(const SpectralField& f, const SpectralField* g, double radius) {
    const auto va = f.to_physical();
    std::vector<std::vector<double>> vb;
    if (g) vb = g->to_physical();
    double hvol = 1.0;
    for (int d = 0; d < f.grid().dim; ++d) hvol *= f.grid().spacing();
    const double r2 = radius * radius;
    double sum = 0.0;
    for (std::size_t i = 0; i < f.modes(); ++i) {
        const auto x = f.grid().coordinate(i);
        const double rr = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        if (rr > r2) continue;
        for (int c = 0; c < f.components(); ++c) {
            const double v = g ? va[c][i] - vb[c][i] : va[c][i];
            sum += v * v;
        }
    }
    return std::sqrt(hvol * sum);
}

}  // namespace

double l2_norm_window(const SpectralField& f, double radius) { return window_l2(f, nullptr, radius); }

double l2_distance_window(const SpectralField& a, const SpectralField& b, double radius) {
    return window_l2(a, &b, radius);
}

SpectralField dealias(SpectralField f) {
    const Grid& g = f.grid();
    const double kcut = g.dealias_cutoff();
    for (int c = 0; c < f.components(); ++c) {
        auto& a = f.comp(c);
        for (std::size_t flat = 0; flat < a.size(); ++flat) {
            const auto k = g.wavevector(flat);
            for (int d = 0; d < g.dim; ++d) {
                if (std::abs(k[d]) > kcut) {
                    a[flat] = Complex(0.0, 0.0);
                    break;
                }
            }
        }
    }
    return f;
}

SpectralField dealiased_product(const SpectralField& a, const SpectralField& b) {
    if (a.rank() != Rank::Scalar || b.rank() != Rank::Scalar)
        throw std::invalid_argument("dealiased_product: scalar fields expected");
    SpectralField da = dealias(a), db = dealias(b);
    auto pa = da.to_physical(0);
    auto pb = db.to_physical(0);
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
    return dealias(SpectralField::from_physical(a.grid(), Rank::Scalar, {pa}));
}

double spectral_mass_above(const SpectralField& f, double kcut) {
    double above = 0.0, total = 0.0;
    const double kc2 = kcut * kcut;
    for (int c = 0; c < f.components(); ++c) {
        const auto& a = f.comp(c);
        for (std::size_t flat = 0; flat < a.size(); ++flat) {
            const auto k = f.grid().wavevector(flat);
            const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
            const double m = std::norm(a[flat]);
            total += m;
            if (k2 > kc2) above += m;
        }
    }
    return total > 0.0 ? above / total : 0.0;
}

double physical_mass_fraction(const SpectralField& f, double radius) {
    const auto values = f.to_physical();
    const double r2 = radius * radius;
    double inside = 0.0, total = 0.0;
    for (std::size_t i = 0; i < f.modes(); ++i) {
        const auto x = f.grid().coordinate(i);
        const double rr = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        double mag2 = 0.0;
        for (const auto& v : values) mag2 += v[i] * v[i];
        total += mag2;
        if (rr <= r2) inside += mag2;
    }
    return total > 0.0 ? inside / total : 1.0;
}

}  // namespace leray
