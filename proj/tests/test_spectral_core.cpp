#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "leraylab/operators.hpp"
#include "leraylab/random_fields.hpp"
#include "oracles.hpp"

using namespace leray;
constexpr double kPi = std::numbers::pi;

TEST_CASE("make_grid wavenumber tables") {
    Grid g = make_grid(1, 8, 2.0 * kPi);
    // axis frequencies are exactly {-4..3} in FFT order
    CHECK(g.wavenumbers[0] == 0.0);
    CHECK(g.wavenumbers[3] == 3.0);
    CHECK(g.wavenumbers[4] == -4.0);
    CHECK(g.wavenumbers[7] == -1.0);

    Grid g3 = make_grid(3, 64, 2.0 * kPi);
    CHECK(g3.size() == 64u * 64u * 64u);
    CHECK(g3.wavenumbers[32] == -32.0);
    CHECK(g3.wavenumbers[31] == 31.0);

    CHECK_THROWS(make_grid(3, 7, 2.0 * kPi));
    CHECK_THROWS(make_grid(3, 2, 2.0 * kPi));
    CHECK_THROWS(make_grid(3, 64, -1.0));
    CHECK_THROWS(make_grid(4, 8, 1.0));
}

TEST_CASE("transform round trip and Parseval") {
    for (int dim : {1, 2, 3}) {
        const int n = dim == 3 ? 16 : 32;
        Grid g = make_grid(dim, n, 2.0 * kPi);
        for (Rank r : {Rank::Scalar, Rank::Vector, Rank::Tensor}) {
            SpectralField f = random_field(g, r, 7 + dim);
            const auto phys = f.to_physical();
            SpectralField f2 = SpectralField::from_physical(g, r, phys);
            CHECK(l2_distance(f, f2) <= 1e-13 * l2_norm(f));

            // Parseval: grid L2 equals the coefficient norm
            double hvol = 1.0, sum = 0.0;
            for (int d = 0; d < dim; ++d) hvol *= g.spacing();
            for (const auto& comp : phys)
                for (double v : comp) sum += v * v;
            CHECK(std::abs(std::sqrt(hvol * sum) - l2_norm(f)) <= 1e-12 * l2_norm(f));
        }
    }
}

TEST_CASE("fractional laplacian multiplier") {
    Grid g = make_grid(3, 32, 2.0 * kPi);

    SUBCASE("plane wave eigenfunction") {
        const double alpha = 0.9;
        SpectralField w = oracle::plane_wave(g, {2, 1, -1}, 0.3);
        SpectralField lw = fractional_laplacian(w, 2.0 * alpha);
        const double expect = std::pow(6.0, alpha);  // |k|^2 = 6
        CHECK(l2_distance(lw, expect * w) <= 1e-12 * l2_norm(lw));
    }
    SUBCASE("s = 0 is the identity") {
        SpectralField f = random_field(g, Rank::Scalar, 11);
        SpectralField f0 = fractional_laplacian(f, 0.0);
        CHECK(l2_distance(f, f0) == 0.0);
    }
    SUBCASE("s = 2 matches the finite-difference oracle to O(h^2)") {
        // fixed smooth low-mode field; error ratio under refinement ~ 4
        double errs[2];
        int idx = 0;
        for (int n : {32, 64}) {
            Grid gn = make_grid(3, n, 2.0 * kPi);
            SpectralField f = oracle::plane_wave(gn, {2, 1, 0}, 0.2) + oracle::plane_wave(gn, {1, -1, 1}, 0.9);
            SpectralField lf = fractional_laplacian(f, 2.0);
            const auto fd = oracle::fd_laplacian(gn, f.to_physical(0));
            std::vector<double> neg(fd.size());
            for (std::size_t i = 0; i < fd.size(); ++i) neg[i] = -fd[i];
            SpectralField fdf = SpectralField::from_physical(gn, Rank::Scalar, {neg});
            errs[idx++] = l2_distance(lf, fdf) / l2_norm(lf);
        }
        CHECK(errs[0] / errs[1] > 3.0);
        CHECK(errs[0] / errs[1] < 5.0);
    }
    SUBCASE("negative s requires zero mean") {
        SpectralField f = random_field(g, Rank::Scalar, 13);
        f.comp(0)[0] = Complex(1.0, 0.0);
        CHECK_THROWS_AS(fractional_laplacian(f, -1.0), std::invalid_argument);
        f.comp(0)[0] = Complex(0.0, 0.0);
        CHECK_NOTHROW(fractional_laplacian(f, -1.0));
    }
    SUBCASE("exponent additivity on mean-zero fields") {
        SpectralField f = random_field(g, Rank::Scalar, 17);
        SpectralField a = fractional_laplacian(fractional_laplacian(f, 0.7), 0.5);
        SpectralField b = fractional_laplacian(f, 1.2);
        CHECK(l2_distance(a, b) <= 1e-12 * l2_norm(b));
    }
}

TEST_CASE("leray projection") {
    Grid g = make_grid(3, 32, 2.0 * kPi);

    SUBCASE("kills gradients") {
        SpectralField phi = random_field(g, Rank::Scalar, 19);
        SpectralField gphi = gradient(phi);
        SpectralField proj = leray_project(gphi);
        CHECK(l2_norm(proj) <= 1e-12 * l2_norm(gphi));
    }
    SUBCASE("fixes divergence-free fields and is idempotent") {
        SpectralField u = random_divfree_field(g, 23);
        SpectralField pu = leray_project(u);
        CHECK(l2_distance(u, pu) <= 1e-13 * l2_norm(u));
        SpectralField ppu = leray_project(pu);
        CHECK(l2_distance(pu, ppu) <= 1e-13 * l2_norm(pu));
    }
    SUBCASE("output is spectrally divergence-free") {
        SpectralField f = random_field(g, Rank::Vector, 29);
        SpectralField pf = leray_project(f);
        CHECK(l2_norm(divergence(pf)) <= 1e-12 * l2_norm(gradient(pf)));
    }
    SUBCASE("fixes curls in dim 3") {
        SpectralField a = random_field(g, Rank::Vector, 31);
        SpectralField curl(g, Rank::Vector);
        SpectralField d0 = derivative(a, 0), d1 = derivative(a, 1), d2 = derivative(a, 2);
        for (std::size_t i = 0; i < g.size(); ++i) {
            curl.comp(0)[i] = d1.comp(2)[i] - d2.comp(1)[i];
            curl.comp(1)[i] = d2.comp(0)[i] - d0.comp(2)[i];
            curl.comp(2)[i] = d0.comp(1)[i] - d1.comp(0)[i];
        }
        CHECK(l2_distance(curl, leray_project(curl)) <= 1e-12 * l2_norm(curl));
    }
}

TEST_CASE("riesz transform") {
    Grid g = make_grid(3, 32, 2.0 * kPi);

    SUBCASE("plane wave symbol -i k_i/|k|") {
        // cos(k.x) -> (k_i/|k|) sin(k.x)
        const std::array<int, 3> m{3, 0, 4};
        SpectralField c = oracle::plane_wave(g, m, 0.0);
        SpectralField s = oracle::plane_wave(g, m, -0.5 * kPi);  // sin(k.x)
        SpectralField r0 = riesz_transform(c, 0);
        CHECK(l2_distance(r0, (3.0 / 5.0) * s) <= 1e-12 * l2_norm(r0));
    }
    SUBCASE("constant field maps to zero") {
        SpectralField f(g, Rank::Scalar);
        f.comp(0)[0] = Complex(2.5, 0.0);
        CHECK(l2_norm(riesz_transform(f, 1)) == 0.0);
    }
    SUBCASE("assembled identity sum_i R_i d_i f = Lambda f") {
        SpectralField f = random_field(g, Rank::Scalar, 37);
        SpectralField acc(g, Rank::Scalar);
        for (int i = 0; i < 3; ++i) acc += riesz_transform(derivative(f, i), i);
        SpectralField lf = fractional_laplacian(f, 1.0);
        CHECK(l2_distance(acc, lf) <= 1e-12 * l2_norm(lf));
    }
}

TEST_CASE("nonlinear term") {
    Grid g = make_grid(3, 32, 2.0 * kPi);

    SUBCASE("zero input") {
        SpectralField z = SpectralField::zero(g, Rank::Vector);
        CHECK(l2_norm(nonlinear_term(z, z)) == 0.0);
    }
    SUBCASE("single-mode convolution oracle") {
        // u = A cos(k1.x) e1 div-free (k1 perp e1), v = B cos(k2.x) e2;
        // div(u x v) has only modes k1 +- k2, both inside the dealias cutoff.
        SpectralField u(g, Rank::Vector), v(g, Rank::Vector);
        const std::array<int, 3> k1{0, 2, 0}, k2{3, 1, 0};
        u.comp(0) = oracle::plane_wave(g, k1).comp(0);
        v.comp(1) = oracle::plane_wave(g, k2).comp(0);
        SpectralField got = nonlinear_term(u, v);
        // oracle: only (div T)_1 = d_0(u_0 v_1) survives; the product
        // cos(k1.x) cos(k2.x) has coefficients 1/4 at +-k1 +- k2
        SpectralField expect = SpectralField::zero(g, Rank::Vector);
        auto put = [&](std::array<int, 3> m, Complex val) {
            std::array<int, 3> idx{(m[0] + g.n) % g.n, (m[1] + g.n) % g.n, (m[2] + g.n) % g.n};
            const auto kv = g.wavevector(g.flatten(idx));
            expect.comp(1)[g.flatten(idx)] += Complex(0.0, kv[0]) * val;
        };
        put({3, 3, 0}, Complex(0.25, 0.0));
        put({-3, -3, 0}, Complex(0.25, 0.0));
        put({-3, 1, 0}, Complex(0.25, 0.0));
        put({3, -1, 0}, Complex(0.25, 0.0));
        CHECK(l2_distance(got, expect) <= 1e-12 * std::max(l2_norm(expect), 1.0));
    }
    SUBCASE("conservative and advective forms agree for div-free u") {
        SpectralField u = random_divfree_field(g, 41, 0.15);
        SpectralField v = random_field(g, Rank::Vector, 43, 0.15);
        SpectralField cons = nonlinear_term(u, v);
        SpectralField adv = advective_term(u, v);
        CHECK(l2_distance(cons, adv) <= 1e-10 * l2_norm(cons));
    }
}

TEST_CASE("determinism: bit-identical repeated evaluation") {
    Grid g = make_grid(3, 16, 2.0 * kPi);
    SpectralField u = random_divfree_field(g, 47);
    SpectralField a = nonlinear_term(u, u);
    SpectralField b = nonlinear_term(u, u);
    for (int c = 0; c < a.components(); ++c)
        CHECK(std::memcmp(a.comp(c).data(), b.comp(c).data(), a.comp(c).size() * sizeof(Complex)) == 0);
}

TEST_CASE("hermitian flag") {
    Grid g = make_grid(2, 16, 2.0 * kPi);
    SpectralField f = random_field(g, Rank::Scalar, 53);
    CHECK(f.hermitian_defect() <= 1e-13);
    f.comp(0)[1] += Complex(0.0, 0.5);  // break symmetry
    CHECK(f.hermitian_defect() > 1e-6);
}
