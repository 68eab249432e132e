#pragma once

#include <string>
#include <vector>

#include "leraylab/grid.hpp"

namespace leray {

enum class Rank { Scalar, Vector, Tensor };

int component_count(Rank r, int dim);

/// Field stored as full-spectrum Fourier coefficients, one array per
/// component. Tensor components are row-major: T(i,j) lives at i*dim+j.
/// Fields are immutable in spirit: operations return new values.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(Grid grid, Rank rank);

    static SpectralField zero(const Grid& grid, Rank rank);
    static SpectralField from_physical(const Grid& grid, Rank rank,
                                       const std::vector<std::vector<double>>& values);

    const Grid& grid() const { return grid_; }
    Rank rank() const { return rank_; }
    int components() const { return static_cast<int>(coeffs_.size()); }
    std::size_t modes() const { return grid_.size(); }

    std::vector<Complex>& comp(int c) { return coeffs_[c]; }
    const std::vector<Complex>& comp(int c) const { return coeffs_[c]; }

    /// Physical-space values of one component (imaginary parts discarded).
    std::vector<double> to_physical(int c) const;
    /// All components at once.
    std::vector<std::vector<double>> to_physical() const;

    bool hermitian_flag() const { return hermitian_; }
    void set_hermitian_flag(bool v) { hermitian_ = v; }
    /// Max relative deviation from conjugate symmetry c(-k) = conj(c(k)).
    double hermitian_defect() const;
    /// Symmetrize coefficients so the physical field is exactly real.
    void enforce_hermitian();

    Complex zero_mode(int c) const { return coeffs_[c][0]; }

    // in-place arithmetic (same grid/rank)
    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

private:
    Grid grid_;
    Rank rank_ = Rank::Scalar;
    bool hermitian_ = true;
    std::vector<std::vector<Complex>> coeffs_;
};

/// Coefficient l2 norm scaled by the volume factor (equals the physical
/// L2 norm by Parseval).
double l2_norm(const SpectralField& f);
double l2_distance(const SpectralField& a, const SpectralField& b);

/// Volume-weighted grid L^p norm of the pointwise Euclidean magnitude;
/// p = infinity is the grid max.
double lp_norm(const SpectralField& f, double p);

/// L2 norm restricted to the centered ball of the given radius.
double l2_norm_window(const SpectralField& f, double radius);
double l2_distance_window(const SpectralField& a, const SpectralField& b, double radius);

/// Zero every mode with any |k_axis| above n/3 times the fundamental.
SpectralField dealias(SpectralField f);

/// Pointwise product in physical space with 2/3-rule dealiasing applied to
/// inputs and output. Scalar*scalar only.
SpectralField dealiased_product(const SpectralField& a, const SpectralField& b);

/// Fraction of l2 mass at |k| above the given frequency.
double spectral_mass_above(const SpectralField& f, double kcut);

/// Fraction of physical l2 mass inside the centered ball of given radius.
double physical_mass_fraction(const SpectralField& f, double radius);

std::string rank_name(Rank r);

}  // namespace leray
