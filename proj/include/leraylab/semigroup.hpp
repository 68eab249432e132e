#pragma once

#include "leraylab/dyadic.hpp"
#include "leraylab/field.hpp"
#include "leraylab/report.hpp"

namespace leray {

/// e^{-t (-Delta)^alpha}: coefficientwise decay e^{-t |k|^{2 alpha}},
/// zero mode unchanged.
SpectralField heat_step(const SpectralField& f, double t, double alpha);

/// Oseen-type composite P e^{-t(-Delta)^alpha} div applied to a tensor;
/// output is divergence-free.
SpectralField oseen_apply(const SpectralField& T, double t, double alpha);

/// Measures the decay rate of ||Delta_q P e^{-t(-Delta)^alpha} f||_p over a
/// list of times and reports slope / (-2^{2 q alpha}) against the annulus
/// bracket [(3/4)^{2 alpha} - delta, (8/3)^{2 alpha} + delta].
VerificationReport kernel_annulus_decay_probe(const DyadicFamily& fam, const SpectralField& f, int q,
                                              double alpha, const std::vector<double>& t_list, double p,
                                              double delta = 0.1);

/// Fitted slope only (shared by the probe and the scaling property test).
double kernel_decay_slope(const DyadicFamily& fam, const SpectralField& f, int q, double alpha,
                          const std::vector<double>& t_list, double p);

struct DuhamelQuadrature {
    double s_min = 1e-2;    // in (1e-4, 0.5)
    int nodes = 8;          // Gauss-Legendre points per dyadic level, >= 4
    double grading = 0.0;   // substitution exponent near s = 0; 0 -> use 2 alpha
};

struct DuhamelResult {
    SpectralField v;
    double tail_estimate = 0.0;  // estimated magnitude of the neglected s < s_min piece
};

/// v = int_{s_min}^{1} e^{-(-Delta)^alpha (1-s)} P div( s^{1/alpha - 2}
/// G(. / s^{1/(2 alpha)}) ) ds with graded quadrature at both endpoints and
/// band-limited trigonometric interpolation for the dilation.
/// G must be physically concentrated (>= 99.9% of its l2 mass inside the
/// centered ball of radius 0.45 L) so the dilation stays representable.
DuhamelResult duhamel_map(const SpectralField& G, double alpha, const DuhamelQuadrature& quad);

/// Least-squares slope of y against x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace leray
