#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace leray {

using Complex = std::complex<double>;

/// Periodic box descriptor with per-axis wavenumber tables.
///
/// Modes are stored in FFT order: index m in [0,n) maps to the integer
/// frequency m for m < n/2 and m-n otherwise, scaled by 2*pi/L.
/// Physical grid points are x = j*h with h = L/n; the centered coordinate
/// (used by weights, windows and the sawtooth) is x - L/2.
struct Grid {
    int dim = 0;
    int n = 0;
    double box_length = 0.0;
    std::vector<double> wavenumbers;  // size n, shared by all axes

    std::size_t size() const;                      // n^dim
    double spacing() const { return box_length / n; }
    double fundamental() const;                    // 2*pi/L
    double dealias_cutoff() const;                 // (n/3)*(2*pi/L)
    double wavenumber(int mode_index) const { return wavenumbers[mode_index]; }

    /// Decompose a flat mode index into per-axis indices (row-major,
    /// last axis fastest).
    std::array<int, 3> unflatten(std::size_t flat) const;
    std::size_t flatten(const std::array<int, 3>& idx) const;

    /// Wave vector of a flat mode index; unused axes are zero.
    std::array<double, 3> wavevector(std::size_t flat) const;

    /// Centered physical coordinate of a flat grid-point index.
    std::array<double, 3> coordinate(std::size_t flat) const;

    bool operator==(const Grid& o) const {
        return dim == o.dim && n == o.n && box_length == o.box_length;
    }
};

Grid make_grid(int dim, int n, double box_length);

}  // namespace leray
