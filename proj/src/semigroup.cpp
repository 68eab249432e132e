#include "leraylab/semigroup.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "leraylab/operators.hpp"

namespace leray {
namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the
// Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

}  // namespace

SpectralField heat_step(const SpectralField& f, double t, double alpha) {
    if (t < 0.0) throw std::invalid_argument("heat_step: negative time");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("heat_step: alpha outside (0, 1]");
    SpectralField out = f;
    for (int c = 0; c < out.components(); ++c) {
        auto& a = out.comp(c);
        for (std::size_t flat = 1; flat < a.size(); ++flat) {
            const auto k = f.grid().wavevector(flat);
            const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
            a[flat] *= std::exp(-t * std::pow(k2, alpha));
        }
    }
    return out;
}

SpectralField oseen_apply(const SpectralField& T, double t, double alpha) {
    if (T.rank() != Rank::Tensor) throw std::invalid_argument("oseen_apply: tensor field expected");
    return heat_step(leray_project(divergence(T)), t, alpha);
}

double kernel_decay_slope(const DyadicFamily& fam, const SpectralField& f, int q, double alpha,
                          const std::vector<double>& t_list, double p) {
    SpectralField base = dyadic_block_unchecked(fam, f, q, BlockVariant::HomogBlock);
    if (base.rank() == Rank::Vector) base = leray_project(base);
    std::vector<double> ts, logs;
    for (double t : t_list) {
        const double nrm = lp_norm(heat_step(base, t, alpha), p);
        if (nrm < 1e-280) continue;  // underflow guard
        ts.push_back(t);
        logs.push_back(std::log(nrm));
    }
    if (ts.size() < 2) throw std::runtime_error("kernel_decay_slope: too few usable times");
    return least_squares_slope(ts, logs);
}

VerificationReport kernel_annulus_decay_probe(const DyadicFamily& fam, const SpectralField& f, int q,
                                              double alpha, const std::vector<double>& t_list, double p,
                                              double delta) {
    for (std::size_t i = 1; i < t_list.size(); ++i)
        if (!(t_list[i] > t_list[i - 1]) || !(t_list[0] > 0.0))
            throw std::invalid_argument("kernel_annulus_decay_probe: t_list must be increasing positive");

    const double slope = kernel_decay_slope(fam, f, q, alpha, t_list, p);
    const double ratio = slope / (-std::pow(2.0, 2.0 * q * alpha));

    VerificationReport rep;
    rep.name = "kernel_annulus_decay";
    rep.parameters = {{"q", double(q)}, {"alpha", alpha}, {"p", p}, {"delta", delta}};
    rep.measured.emplace_back("slope_ratio", ratio);
    rep.bound_lo = std::pow(0.75, 2.0 * alpha) - delta;
    rep.bound_hi = std::pow(8.0 / 3.0, 2.0 * alpha) + delta;
    rep.finalize();
    return rep;
}

DuhamelResult duhamel_map(const SpectralField& G, double alpha, const DuhamelQuadrature& quad) {
    if (G.rank() != Rank::Tensor) throw std::invalid_argument("duhamel_map: tensor field expected");
    if (!(alpha >= 5.0 / 6.0 && alpha <= 1.0))
        throw std::invalid_argument("duhamel_map: alpha outside [5/6, 1]");
    if (!(quad.s_min > 1e-4 && quad.s_min < 0.5))
        throw std::invalid_argument("duhamel_map: s_min outside (1e-4, 0.5)");
    if (quad.nodes < 4) throw std::invalid_argument("duhamel_map: need at least 4 nodes per level");
    if (physical_mass_fraction(G, 0.45 * G.grid().box_length) < 0.999)
        throw std::invalid_argument("duhamel_map: dilation not representable");

    const double grading = quad.grading > 0.0 ? quad.grading : 2.0 * alpha;
    std::vector<double> gx, gw;
    gauss_legendre(quad.nodes, gx, gw);

    // quadrature nodes (s, weight) in fixed order
    std::vector<std::pair<double, double>> nodes;
    // region A: [s_min, 1/2], dyadic levels, graded substitution s = sigma^grading
    for (double a = quad.s_min; a < 0.5; a = std::min(2.0 * a, 0.5)) {
        const double b = std::min(2.0 * a, 0.5);
        const double sa = std::pow(a, 1.0 / grading), sb = std::pow(b, 1.0 / grading);
        for (int i = 0; i < quad.nodes; ++i) {
            const double sigma = 0.5 * (sa + sb) + 0.5 * (sb - sa) * gx[i];
            const double s = std::pow(sigma, grading);
            const double w = 0.5 * (sb - sa) * gw[i] * grading * std::pow(sigma, grading - 1.0);
            nodes.emplace_back(s, w);
        }
        if (b >= 0.5) break;
    }
    // region B: [1/2, 1], dyadic levels in tau = 1 - s toward s = 1
    const int levels_b = 12;
    for (int m = 1; m <= levels_b; ++m) {
        const double tau_hi = std::ldexp(1.0, -m);          // 2^-m
        const double tau_lo = m == levels_b ? 0.0 : 0.5 * tau_hi;
        for (int i = 0; i < quad.nodes; ++i) {
            const double tau = 0.5 * (tau_lo + tau_hi) + 0.5 * (tau_hi - tau_lo) * gx[i];
            nodes.emplace_back(1.0 - tau, 0.5 * (tau_hi - tau_lo) * gw[i]);
        }
    }

    SpectralField acc = SpectralField::zero(G.grid(), Rank::Vector);
    double integrand_at_smin = 0.0, smallest_s = 2.0;
    for (const auto& [s, w] : nodes) {
        const double c = std::pow(s, -1.0 / (2.0 * alpha));
        SpectralField term = heat_step(leray_project(divergence(dilate(G, c))), 1.0 - s, alpha);
        const double prefac = std::pow(s, 1.0 / alpha - 2.0);
        acc += (w * prefac) * term;
        if (s < smallest_s) {
            smallest_s = s;
            integrand_at_smin = prefac * l2_norm(term);
        }
    }

    DuhamelResult res{leray_project(acc), 0.0};
    // neglected [0, s_min] piece, scaled by the analytic small-s power
    const double p_tail = 5.0 / (4.0 * alpha) - 2.0;
    res.tail_estimate = integrand_at_smin * quad.s_min / (p_tail + 1.0);
    return res;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("least_squares_slope: need matching arrays of size >= 2");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace leray
