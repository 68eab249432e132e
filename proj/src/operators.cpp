#include "leraylab/operators.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "leraylab/fft.hpp"

namespace leray {

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& m) {
    SpectralField out = f;
    for (int c = 0; c < out.components(); ++c) {
        auto& a = out.comp(c);
        a[0] *= m.zero_mode_value;
        for (std::size_t flat = 1; flat < a.size(); ++flat) {
            a[flat] *= m.symbol(f.grid().wavevector(flat));
        }
    }
    return out;
}

SpectralField fractional_laplacian(const SpectralField& f, double s) {
    if (s < -4.0 || s > 4.0) throw std::invalid_argument("fractional_laplacian: s outside [-4, 4]");
    if (s == 0.0) return f;
    if (s < 0.0) {
        double zmax = 0.0, amax = 0.0;
        for (int c = 0; c < f.components(); ++c) {
            zmax = std::max(zmax, std::abs(f.zero_mode(c)));
            for (const auto& z : f.comp(c)) amax = std::max(amax, std::abs(z));
        }
        if (amax > 0.0 && zmax > 1e-12 * amax)
            throw std::invalid_argument("fractional_laplacian: nonintegrable zero mode");
    }
    SpectralField out = f;
    for (int c = 0; c < out.components(); ++c) {
        auto& a = out.comp(c);
        a[0] = Complex(0.0, 0.0);
        for (std::size_t flat = 1; flat < a.size(); ++flat) {
            const auto k = f.grid().wavevector(flat);
            const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
            a[flat] *= std::pow(k2, 0.5 * s);
        }
    }
    return out;
}

SpectralField riesz_transform(const SpectralField& f, int axis) {
    if (axis < 0 || axis >= f.grid().dim) throw std::invalid_argument("riesz_transform: bad axis");
    SpectralField out = f;
    for (int c = 0; c < out.components(); ++c) {
        auto& a = out.comp(c);
        a[0] = Complex(0.0, 0.0);
        for (std::size_t flat = 1; flat < a.size(); ++flat) {
            const auto k = f.grid().wavevector(flat);
            const double kk = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
            a[flat] *= Complex(0.0, -k[axis] / kk);
        }
    }
    return out;
}

SpectralField derivative(const SpectralField& f, int axis) {
    SpectralField out = f;
    for (int c = 0; c < out.components(); ++c) {
        auto& a = out.comp(c);
        for (std::size_t flat = 0; flat < a.size(); ++flat) {
            const auto k = f.grid().wavevector(flat);
            a[flat] *= Complex(0.0, k[axis]);
        }
    }
    return out;
}

SpectralField gradient(const SpectralField& f) {
    const int dim = f.grid().dim;
    if (f.rank() == Rank::Scalar) {
        SpectralField out(f.grid(), Rank::Vector);
        for (int i = 0; i < dim; ++i) out.comp(i) = derivative(f, i).comp(0);
        return out;
    }
    if (f.rank() == Rank::Vector) {
        SpectralField out(f.grid(), Rank::Tensor);
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                SpectralField dj(f.grid(), Rank::Scalar);
                dj.comp(0) = f.comp(j);
                out.comp(i * dim + j) = derivative(dj, i).comp(0);
            }
        }
        return out;
    }
    throw std::invalid_argument("gradient: tensor input not supported");
}

SpectralField divergence(const SpectralField& f) {
    const int dim = f.grid().dim;
    if (f.rank() == Rank::Vector) {
        SpectralField out(f.grid(), Rank::Scalar);
        auto& a = out.comp(0);
        for (std::size_t flat = 0; flat < a.size(); ++flat) {
            const auto k = f.grid().wavevector(flat);
            Complex s(0.0, 0.0);
            for (int i = 0; i < dim; ++i) s += Complex(0.0, k[i]) * f.comp(i)[flat];
            a[flat] = s;
        }
        return out;
    }
    if (f.rank() == Rank::Tensor) {
        SpectralField out(f.grid(), Rank::Vector);
        for (int j = 0; j < dim; ++j) {
            auto& a = out.comp(j);
            for (std::size_t flat = 0; flat < a.size(); ++flat) {
                const auto k = f.grid().wavevector(flat);
                Complex s(0.0, 0.0);
                for (int i = 0; i < dim; ++i) s += Complex(0.0, k[i]) * f.comp(i * dim + j)[flat];
                a[flat] = s;
            }
        }
        return out;
    }
    throw std::invalid_argument("divergence: scalar input not supported");
}

SpectralField leray_project(const SpectralField& f) {
    if (f.rank() != Rank::Vector) throw std::invalid_argument("leray_project: vector field expected");
    const int dim = f.grid().dim;
    SpectralField out = f;
    for (std::size_t flat = 1; flat < f.modes(); ++flat) {
        const auto k = f.grid().wavevector(flat);
        const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        Complex kdotu(0.0, 0.0);
        for (int i = 0; i < dim; ++i) kdotu += k[i] * f.comp(i)[flat];
        kdotu /= k2;
        for (int i = 0; i < dim; ++i) out.comp(i)[flat] -= k[i] * kdotu;
    }
    return out;
}

double relative_divergence(const SpectralField& u) {
    const double dnorm = l2_norm(divergence(u));
    const double gnorm = l2_norm(gradient(u));
    return gnorm > 0.0 ? dnorm / gnorm : 0.0;
}

SpectralField outer_product(const SpectralField& u, const SpectralField& v) {
    if (u.rank() != Rank::Vector || v.rank() != Rank::Vector)
        throw std::invalid_argument("outer_product: vector fields expected");
    const int dim = u.grid().dim;
    SpectralField du = dealias(u), dv = dealias(v);
    const auto pu = du.to_physical();
    const auto pv = dv.to_physical();
    std::vector<std::vector<double>> prod(dim * dim, std::vector<double>(u.modes()));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (std::size_t m = 0; m < u.modes(); ++m) prod[i * dim + j][m] = pu[i][m] * pv[j][m];
    return dealias(SpectralField::from_physical(u.grid(), Rank::Tensor, prod));
}

SpectralField nonlinear_term(const SpectralField& u, const SpectralField& v) {
    const double rdiv = relative_divergence(u);
    if (rdiv > 1e-8)
        std::cerr << "nonlinear_term: warning: advecting field has relative divergence " << rdiv << "\n";
    return divergence(outer_product(u, v));
}

SpectralField advective_term(const SpectralField& u, const SpectralField& v) {
    const int dim = u.grid().dim;
    SpectralField du = dealias(u);
    const auto pu = du.to_physical();
    std::vector<std::vector<double>> out(dim, std::vector<double>(u.modes(), 0.0));
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) {
            SpectralField vj(v.grid(), Rank::Scalar);
            vj.comp(0) = v.comp(j);
            SpectralField divj = dealias(derivative(vj, i));
            const auto pd = divj.to_physical(0);
            for (std::size_t m = 0; m < u.modes(); ++m) out[j][m] += pu[i][m] * pd[m];
        }
    }
    return dealias(SpectralField::from_physical(u.grid(), Rank::Vector, out));
}

SpectralField pressure_from_tensor(const SpectralField& T) {
    if (T.rank() != Rank::Tensor) throw std::invalid_argument("pressure_from_tensor: tensor expected");
    const int dim = T.grid().dim;
    SpectralField p(T.grid(), Rank::Scalar);
    auto& a = p.comp(0);
    for (std::size_t flat = 1; flat < T.modes(); ++flat) {
        const auto k = T.grid().wavevector(flat);
        const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        Complex s(0.0, 0.0);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) s += k[i] * k[j] * T.comp(i * dim + j)[flat];
        a[flat] = -s / k2;
    }
    a[0] = Complex(0.0, 0.0);  // zero-mean gauge
    return p;
}

SpectralField pressure_from_velocity(const SpectralField& u) {
    return pressure_from_tensor(outer_product(u, u));
}

SpectralField coordinate_field(const Grid& grid, int axis) {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = grid.coordinate(i)[axis];
    return SpectralField::from_physical(grid, Rank::Scalar, {values});
}

SpectralField pointwise_scale(const SpectralField& f, const std::vector<double>& values) {
    auto phys = f.to_physical();
    for (auto& comp : phys)
        for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= values[i];
    return SpectralField::from_physical(f.grid(), f.rank(), phys);
}

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

std::vector<double> radial_window_values(const Grid& grid, double r_flat, double r_zero) {
    if (!(r_zero > r_flat)) throw std::invalid_argument("radial_window_values: need r_zero > r_flat");
    std::vector<double> w(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto x = grid.coordinate(i);
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        w[i] = 1.0 - smooth_step((r - r_flat) / (r_zero - r_flat));
    }
    return w;
}

std::vector<double> weight_values(const Grid& grid, double m) {
    std::vector<double> w(grid.size());
    const double e = std::exp(1.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto x = grid.coordinate(i);
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        w[i] = std::pow(e + r2, 0.5 * m);
    }
    return w;
}

SpectralField x_dot_grad(const SpectralField& v) {
    const Grid& g = v.grid();
    std::vector<std::vector<double>> out(v.components(), std::vector<double>(g.size(), 0.0));
    for (int ax = 0; ax < g.dim; ++ax) {
        std::vector<double> coord(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) coord[i] = g.coordinate(i)[ax];
        SpectralField dax = derivative(v, ax);
        const auto phys = dax.to_physical();
        for (int c = 0; c < v.components(); ++c)
            for (std::size_t i = 0; i < g.size(); ++i) out[c][i] += coord[i] * phys[c][i];
    }
    return SpectralField::from_physical(g, v.rank(), out);
}

SpectralField dilate(const SpectralField& f, double c) {
    if (c == 1.0) return f;
    if (!(c > 0.0)) throw std::invalid_argument("dilate: scale must be positive");
    const Grid& g = f.grid();
    const int n = g.n;
    const int dim = g.dim;
    const double h = g.spacing();
    const double C = 0.5 * g.box_length;

    // Per-axis evaluation matrix E[m*n + j] = exp(i k_j (c x_m + (1-c) C)).
    std::vector<Complex> E(static_cast<std::size_t>(n) * n);
    for (int m = 0; m < n; ++m) {
        const double y = c * (m * h) + (1.0 - c) * C;
        for (int j = 0; j < n; ++j) {
            const double phase = g.wavenumbers[j] * y;
            E[static_cast<std::size_t>(m) * n + j] = Complex(std::cos(phase), std::sin(phase));
        }
    }
    // Points whose stretched preimage leaves the principal box wrap around
    // in the series; mask them to zero.
    std::vector<char> axis_mask(n);
    for (int m = 0; m < n; ++m) axis_mask[m] = std::abs(c * (m * h - C)) < C ? 1 : 0;

    const std::size_t total = g.size();
    SpectralField out(g, f.rank());
    std::vector<Complex> work(total), next(total);

    for (int comp = 0; comp < f.components(); ++comp) {
        work = f.comp(comp);
        // Apply E along each axis in turn. Axis `ax` has stride
        // n^(dim-1-ax) in the row-major layout.
        for (int ax = 0; ax < dim; ++ax) {
            std::size_t stride = 1;
            for (int d = ax + 1; d < dim; ++d) stride *= n;
            const std::size_t block = stride * n;
            for (std::size_t base = 0; base < total; base += block) {
                for (std::size_t off = 0; off < stride; ++off) {
                    for (int m = 0; m < n; ++m) {
                        Complex acc(0.0, 0.0);
                        const Complex* row = &E[static_cast<std::size_t>(m) * n];
                        for (int j = 0; j < n; ++j) acc += row[j] * work[base + off + j * stride];
                        next[base + off + m * stride] = acc;
                    }
                }
            }
            std::swap(work, next);
        }
        // `work` now holds physical values at the stretched points.
        std::vector<double> phys(total);
        for (std::size_t i = 0; i < total; ++i) {
            const auto idx = g.unflatten(i);
            bool keep = true;
            for (int d = 0; d < dim; ++d) keep = keep && axis_mask[idx[d]];
            phys[i] = keep ? work[i].real() : 0.0;
        }
        SpectralField tmp = SpectralField::from_physical(g, Rank::Scalar, {phys});
        out.comp(comp) = tmp.comp(0);
    }
    return out;
}

}  // namespace leray
