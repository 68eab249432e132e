#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leraylab/field.hpp"
#include "leraylab/report.hpp"
#include "leraylab/semigroup.hpp"

namespace leray {

/// Initial-data profile sigma on the sphere. The canonical choice is the
/// rotational field sigma(xhat) = A (-xhat_2, xhat_1, 0), giving
/// U0 = A (-x_2, x_1, 0)/|x|^{2 alpha}, divergence-free and homogeneous of
/// degree -(2 alpha - 1).
struct SigmaSpec {
    enum class Kind { RotationalCanonical, UserTable };
    Kind kind = Kind::RotationalCanonical;
    double amplitude = 1.0;
    // user_table: values on a (theta, phi) lattice, 3 components
    int n_theta = 0, n_phi = 0;
    std::vector<double> table;  // [(it*n_phi + ip)*3 + comp]

    std::array<double, 3> eval(const std::array<double, 3>& unit) const;
};

struct InitialData {
    SpectralField U0;  // windowed singular profile data
    SpectralField u0;  // its heat mollification e^{-(-Delta)^alpha} U0
};

/// Evaluates U0 = sigma(x/|x|)/|x|^{2 alpha - 1} with the centered
/// coordinate, zeroes the origin cell, applies the smooth radial window
/// (flat to 0.3 L, zero beyond 0.4 L) and returns U0 together with its
/// time-one mollification. Requires dim == 3 and alpha in [5/6, 1].
InitialData make_initial_data(const SigmaSpec& sigma, double alpha, const Grid& grid);

struct TimeStepper {
    enum class Scheme { IntegratingFactorRk2, ImexEuler };
    double dt = 2e-3;
    Scheme scheme = Scheme::IntegratingFactorRk2;
    double cfl_safety = 0.5;
    bool nonlinearity_enabled = true;  // diagnostic switch
};

struct StepDiagnostics {
    long step = 0;
    double time = 0.0;
    double l2_update = 0.0;
    double div_residual = 0.0;
    double max_velocity = 0.0;
};

struct Snapshot {
    double time = 0.0;
    SpectralField u;
};

struct ProfileRun {
    double alpha = 1.0;
    Grid grid;
    SigmaSpec sigma;
    std::vector<Snapshot> trajectory;
    std::vector<StepDiagnostics> residual_history;
    std::optional<SpectralField> profile_v;
    std::optional<SpectralField> profile_p;

    const Snapshot& at_time(double t) const;
};

struct SolverAbort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integrating-factor time stepping of the fractional Navier-Stokes system
/// with exact linear multiplier, dealiased nonlinearity and Leray
/// projection at every stage. Snapshots are stored at the requested times
/// (which must be multiples of dt).
ProfileRun evolve_fns(const SpectralField& u_init, double alpha, double t_end, const TimeStepper& ts,
                      const std::vector<double>& snapshot_times);

/// || lam^{2a-1} u(. /lam, t2) - u(., t1) ||_{L2(win)} / ||u(., t1)||_{L2(win)}
/// with lam = (t1/t2)^{1/(2 alpha)} and window radius 0.35 L.
double self_similarity_residual(const ProfileRun& run, double t1, double t2, double alpha);

/// v = u(., 1) - e^{-(-Delta)^alpha} U0 and the zero-mean pressure from the
/// div-div equation.
std::pair<SpectralField, SpectralField> profile_extract(const ProfileRun& run, const SpectralField& U0);

struct PicardResult {
    SpectralField v;
    SpectralField pressure;
    std::vector<double> update_history;  // l2 update per iteration
    bool converged = false;
    std::string reason;
};

/// Damped Picard iteration on the Duhamel representation:
///   v <- (1 - theta) v + theta D(-v(x)v - u0(x)v - v(x)u0 + f_total),
/// f_total = -u0(x)u0 + f_extra. Reports divergence ("amplitude too
/// large") when updates grow across three consecutive iterations.
PicardResult picard_profile_solve(const SpectralField& u0, const SpectralField* f_extra, double alpha,
                                  const DuhamelQuadrature& quad, double tol, int max_iter, double damping);

/// Per-block terms of the linearized estimate
///   c_p 2^{2 q alpha} ||v_q||_p <= ||grad P_q||_p + ||f_q||_p + C ||v~_q||_p
/// reported as the implied ratio; flags blocks where the implied constant
/// would exceed (8/3)^{2 alpha}.
VerificationReport linear_block_estimate_probe(const DyadicFamily& fam, const SpectralField& v,
                                               const SpectralField& P, const SpectralField& f, int q,
                                               double p, double alpha);

}  // namespace leray
