#pragma once

#include <functional>

#include "leraylab/field.hpp"

namespace leray {

/// Fourier multiplier: a scale factor per wave vector plus an explicit
/// choice for the k = 0 mode.
struct MultiplierSpec {
    std::function<Complex(const std::array<double, 3>&)> symbol;
    Complex zero_mode_value{0.0, 0.0};
};

/// Apply the multiplier to every component.
SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& m);

/// (-Delta)^{s/2}: coefficients scaled by |k|^s. The zero mode is dropped
/// for s > 0, untouched for s = 0 and must already vanish for s < 0.
SpectralField fractional_laplacian(const SpectralField& f, double s);

/// Riesz transform R_i, symbol -i k_i/|k|, zero mode -> 0.
SpectralField riesz_transform(const SpectralField& f, int axis);

SpectralField derivative(const SpectralField& f, int axis);  // i k_i multiplier

/// Gradient of a scalar (vector out) or of a vector (tensor out,
/// G(i,j) = d_i f_j).
SpectralField gradient(const SpectralField& f);

/// Divergence: vector -> scalar, tensor -> vector with
/// (div T)_j = sum_i d_i T(i,j).
SpectralField divergence(const SpectralField& f);

/// Leray projection I - k k^T/|k|^2 on vector fields; zero mode unchanged.
SpectralField leray_project(const SpectralField& f);

/// Relative spectral divergence ||div u|| / ||grad u||.
double relative_divergence(const SpectralField& u);

/// Dealiased conservative nonlinear term div(u (x) v). Warns (stderr) when
/// u is not divergence-free to 1e-8 relative.
SpectralField nonlinear_term(const SpectralField& u, const SpectralField& v);

/// Advective form u . grad v, dealiased (diagnostic companion of
/// nonlinear_term).
SpectralField advective_term(const SpectralField& u, const SpectralField& v);

/// Outer product u (x) v as a tensor field (dealiased pointwise products).
SpectralField outer_product(const SpectralField& u, const SpectralField& v);

/// Pressure from the div-div equation: laplacian P = -div div(u (x) u),
/// zero mean.
SpectralField pressure_from_velocity(const SpectralField& u);
SpectralField pressure_from_tensor(const SpectralField& T);

// --- physical-space constructions -------------------------------------

/// Centered sawtooth coordinate field for one axis (scalar field whose
/// values are x_axis - L/2 at grid points).
SpectralField coordinate_field(const Grid& grid, int axis);

/// Pointwise multiply a field by physical values (one shared scalar array).
SpectralField pointwise_scale(const SpectralField& f, const std::vector<double>& values);

/// Smooth radial window: 1 inside r_flat, 0 beyond r_zero, C-infinity
/// transition built from the standard exp(-1/t) step.
std::vector<double> radial_window_values(const Grid& grid, double r_flat, double r_zero);

/// <x - c>^m weight values, <y> = sqrt(e + |y|^2), centered at the box
/// center.
std::vector<double> weight_values(const Grid& grid, double m);

/// Smooth step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t);

/// x . grad v with the centered sawtooth coordinate (diagnostic; meaningful
/// for physically concentrated fields only).
SpectralField x_dot_grad(const SpectralField& v);

/// Band-limited dilation g(x) = f(c (x - C) + C) about the box center C,
/// evaluated by trigonometric interpolation. Points whose stretched
/// preimage leaves the principal box are set to zero (the periodic series
/// would otherwise wrap).
SpectralField dilate(const SpectralField& f, double c);

}  // namespace leray
