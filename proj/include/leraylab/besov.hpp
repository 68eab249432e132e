#pragma once

#include "leraylab/dyadic.hpp"
#include "leraylab/field.hpp"

namespace leray {

struct BesovSpec {
    double s = 0.0;
    double p = 2.0;  // in [1, inf]
    double r = 2.0;  // in [1, inf]
    bool homogeneous = true;
};

struct BesovResult {
    double value = 0.0;
    double truncation = 0.0;  // spectral l2 mass fraction above block coverage
};

/// || (2^{qs} ||Delta_q f||_p)_q ||_{l^r} over the representable block
/// range. Homogeneous norms require mean-zero input.
double besov_norm(const DyadicFamily& fam, const SpectralField& f, const BesovSpec& spec);
BesovResult besov_norm_full(const DyadicFamily& fam, const SpectralField& f, const BesovSpec& spec);

/// Homogeneous Sobolev norm sqrt(V sum |k|^{2s} |f_k|^2).
double hdot_norm(const SpectralField& f, double s);

struct WeightSpec {
    double beta = 0.0;  // weight is <x - center>^{2 beta}
};

/// (int |f|^2 w)^{1/2} + (int |Lambda^s f|^2 w)^{1/2} with w = <x>^{2 beta}
/// centered at the box center. Requires s >= 0.
double weighted_sobolev_norm(const SpectralField& f, double s, const WeightSpec& w);

}  // namespace leray
