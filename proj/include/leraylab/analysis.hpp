#pragma once

#include "leraylab/besov.hpp"
#include "leraylab/report.hpp"
#include "leraylab/solver.hpp"

namespace leray {

/// Classic Bernstein ratio ||grad Delta_q f||_p / (2^q ||Delta_q f||_p)
/// over seeded trials; bracketed at p = 2, bounded otherwise.
VerificationReport verify_bernstein(const Grid& grid, double p, int q, int trials, std::uint64_t seed);

/// ||Lambda^alpha |Delta_q f|^{p/2}||_2^{2/p} / (2^{2 alpha q / p} ||Delta_q f||_p)
/// over seeded trials; at p = 2 this sits in the exact annulus bracket
/// [(3/4)^alpha, (8/3)^alpha].
VerificationReport verify_new_bernstein(const Grid& grid, double alpha, double p, int q, int trials,
                                        std::uint64_t seed);

/// [<x>^beta, Lambda^s] f against the regime norm (||f||_2 for beta < s,
/// ||<x>^beta f||_2 otherwise) on concentrated fields.
VerificationReport verify_weighted_commutator(const Grid& grid, double s, double beta, int trials,
                                              std::uint64_t seed);

/// ||<x>^beta grad f||_2 vs ||<x>^beta Lambda f||_2, both directions.
VerificationReport verify_riesz_weight_equiv(const Grid& grid, double beta, int trials, std::uint64_t seed);

/// Max relative deviation of the dyadic x-commutator identity over seeded
/// concentrated fields.
VerificationReport verify_commutator_x(const Grid& grid, int trials, std::uint64_t seed, double tol = 1e-9);

struct CompactnessSplit {
    double lhs = 0.0;        // ||div(u (x) v)||_{B^0_{p,p}}
    double high_tail = 0.0;  // sup_{k >= N} 2^{5k/6} ||Delta_k u||_2
    double low_bulk = 0.0;   // 2^{5N/3} ||u||_{B^{5/6}_{2,inf}}
    double v_high = 0.0;     // ||v||_{B^{5/3}_{p,p}}
    double v_low = 0.0;      // ||v||_{B^0_{p,p}}
    double kappa = 0.0;      // implied constant
};

/// Splitting quantities behind the compactness estimate
/// ||div(u(x)v)||_{B^0} <= eps ||v||_{B^{5/3}} + C_eps ||v||_{B^0}.
/// Requires divergence-free u and p in [2, 9/2).
CompactnessSplit compactness_split(const DyadicFamily& fam, const SpectralField& u, const SpectralField& v,
                                   int N, double p);

/// Grid max of <x - c>^m |f| over the window of radius 0.35 L.
double weighted_sup(const SpectralField& f, double m);

struct DecayFit {
    double alpha = 0.0;
    double r_lo = 0.0, r_hi = 0.0;
    bool log_corrected = false;
    double exponent = 0.0;         // fitted m in |f| ~ r^{-m}
    double log_coefficient = 0.0;  // b in log|f| = c - m log r + b log log r
    double rms_residual = 0.0;
    double expected = 0.0;  // 4 alpha - 1
    std::vector<double> shell_r, shell_max, shell_mean;
};

enum class DecayModel { PurePower, LogCorrected };

/// Radial-shell decay fit of |f| (shell maxima fitted, means reported).
DecayFit decay_fit(const SpectralField& f, double r_lo, double r_hi, DecayModel model, int bins = 12,
                   double alpha = 0.0);

/// t-uniformity of C(t) = sup_win |u(x,t)| (|x|^{2a-1} + t^{1/(2a)}) and of
/// the same for the difference field with exponent 4a-1.
VerificationReport pointwise_selfsimilar_bound_check(const ProfileRun& run, const SpectralField& U0,
                                                     double alpha);

}  // namespace leray
