#include "doctest.h"

#include <cmath>
#include <random>

#include "iwave/dispersion.hpp"
#include "iwave/dno.hpp"

using namespace iwave;

namespace {
physical_params dno_params() {
    physical_params p;
    p.rho_plus = 1.0;
    p.rho_minus = 2.0;
    p.d_plus = 1.0;
    p.d_minus = 1.4;
    p.sigma = 1.0;
    p.g = 9.81;
    p.c = 1.0;
    return p;
}

/** Band-limited random smooth field: modes 1..kmax with decaying weights. */
interface_field random_smooth(int M, double L, unsigned seed, int kmax = 6, double amp = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    interface_field f(M, L);
    for (int k = 1; k <= kmax; k++) {
        double a = amp * u(rng) / k, b = amp * u(rng) / k;
        for (int j = 0; j < M; j++) {
            double th = 2.0 * M_PI * k * (f.x(j) + 0.5 * L) / L;
            f.v[j] += a * std::cos(th) + b * std::sin(th);
        }
    }
    return f;
}
} // namespace

TEST_SUITE_BEGIN("dno");

TEST_CASE("flat symbols: limits and inverse relation") {
    physical_params p = dno_params();
    for (layer_side s : {layer_side::upper, layer_side::lower}) {
        double d = (s == layer_side::upper) ? p.d_plus : p.d_minus;
        for (double k : {1e-5, 1e-4}) CHECK(flat_symbol_G(k, s, p) / (k * k) == doctest::Approx(d).epsilon(1e-7));
        CHECK(flat_symbol_G(40.0, s, p) / 40.0 == doctest::Approx(1.0).epsilon(1e-12));
        // composed check against the inverse-symbol form m_pm = -k coth(d k)
        for (double k : {0.3, 1.0, 4.0})
            CHECK(-k * k / flat_symbol_G(k, s, p) == doctest::Approx(-k_coth_ak(k, d)).epsilon(1e-13));
        CHECK(flat_symbol_G(0.0, s, p) == 0.0);
    }
    for (double k : {1e-5, 1e-4})
        CHECK(flat_symbol_B(k, p) / (k * k) ==
              doctest::Approx(p.rho_plus * p.d_minus + p.rho_minus * p.d_plus).epsilon(1e-7));
    physical_params q = p;
    q.rho_plus = 1e-12;
    for (double k : {0.5, 2.0})
        CHECK(flat_symbol_B(k, q) == doctest::Approx(q.rho_minus * flat_symbol_G(k, layer_side::upper, q)).epsilon(1e-9));
    for (double k : {0.3, 1.7})
        CHECK(-k * k / flat_symbol_B(k, p) ==
              doctest::Approx(-k / (p.rho_plus * std::tanh(p.d_minus * k) + p.rho_minus * std::tanh(p.d_plus * k)))
                  .epsilon(1e-13));
}

TEST_CASE("flat harmonic extension matches separation of variables") {
    physical_params p = dno_params();
    int M = 64;
    double L = 2.0 * M_PI;
    interface_field eta(M, L); // flat
    for (layer_side s : {layer_side::upper, layer_side::lower}) {
        layer_solver ls(eta, s, p, 64);
        double d = (s == layer_side::upper) ? p.d_plus : p.d_minus;
        for (int mode : {1, 3, 7}) {
            double k = 2.0 * M_PI * mode / L;
            interface_field xi = interface_field::sample(M, L, [&](double x) { return std::cos(k * x); });
            strip_solution sol = ls.extend(xi);
            double worst = 0.0;
            for (int i = 0; i < sol.Nz; i++) {
                // y - wall = z * h: depth below interface (1-z) d
                double depth = (1.0 - ls.zgrid().z[i]) * d;
                for (int j = 0; j < M; j++) {
                    double exact = std::cos(k * xi.x(j)) * std::cosh(k * (d - depth)) / std::cosh(k * d);
                    worst = std::max(worst, std::fabs(sol.at(i, j) - exact));
                }
            }
            CHECK(worst < 1e-10);
        }
    }
}

TEST_CASE("constants extend to constants and are annihilated") {
    physical_params p = dno_params();
    int M = 64;
    double L = 7.0;
    interface_field eta = random_smooth(M, L, 41, 4, 0.05);
    layer_solver ls(eta, layer_side::lower, p, 48);
    interface_field one(M, L);
    for (double& v : one.v) v = 1.0;
    strip_solution sol = ls.extend(one);
    for (int i = 0; i < sol.Nz; i++)
        for (int j = 0; j < M; j++) CHECK(sol.at(i, j) == doctest::Approx(1.0).epsilon(1e-11));
    interface_field g = ls.dno(one);
    CHECK(max_abs(g) < 1e-11);
}

TEST_CASE("flat dno reproduces the symbol mode by mode") {
    physical_params p = dno_params();
    int M = 64;
    double L = 2.0 * M_PI;
    interface_field eta(M, L);
    for (layer_side s : {layer_side::upper, layer_side::lower}) {
        layer_solver ls(eta, s, p, 96);
        for (int mode = 1; mode <= M / 4; mode++) {
            double k = 2.0 * M_PI * mode / L;
            interface_field xi = interface_field::sample(M, L, [&](double x) { return std::cos(k * x); });
            interface_field g = ls.dno(xi);
            double sym = flat_symbol_G(k, s, p);
            double worst = 0.0;
            for (int j = 0; j < M; j++) worst = std::max(worst, std::fabs(g.v[j] - sym * xi.v[j]));
            CHECK(worst <= 1e-10 * std::max(1.0, sym));
        }
    }
}

TEST_CASE("dno output is mean-free and self-adjoint on small eta") {
    physical_params p = dno_params();
    int M = 128;
    double L = 9.0;
    interface_field eta = random_smooth(M, L, 17, 5, 0.04);
    two_layer_context ctx(eta, p, 48);
    std::mt19937 rng(99);
    for (int t = 0; t < 4; t++) {
        interface_field xi = random_smooth(M, L, 100 + t, 6);
        interface_field ze = random_smooth(M, L, 200 + t, 6);
        for (layer_side s : {layer_side::upper, layer_side::lower}) {
            interface_field gx = ctx.G(s, xi), gz = ctx.G(s, ze);
            CHECK(std::fabs(gx.mean()) <= 1e-12 * std::max(1.0, max_abs(gx)));
            double lhs = inner(gx, ze), rhs = inner(xi, gz);
            CHECK(std::fabs(lhs - rhs) <= 1e-9 * std::max(1.0, std::fabs(lhs)));
            CHECK(inner(gx, xi) >= -1e-10); // positive semi-definite pairing
        }
    }
}

TEST_CASE("variable-eta dno converges under z refinement") {
    physical_params p = dno_params();
    int M = 64;
    double L = 8.0;
    interface_field eta = random_smooth(M, L, 5, 4, 0.08);
    interface_field xi = random_smooth(M, L, 6, 5);
    layer_solver ref(eta, layer_side::lower, p, 96);
    interface_field g_ref = ref.dno(xi);
    layer_solver a(eta, layer_side::lower, p, 16), b(eta, layer_side::lower, p, 32);
    double ea = max_abs(a.dno(xi) - g_ref), eb = max_abs(b.dno(xi) - g_ref);
    CHECK(ea > eb * 10.0); // spectral-in-z decay, far better than algebraic
    CHECK(eb < 1e-8);
}

TEST_CASE("G inverse round trip on mean-free data") {
    physical_params p = dno_params();
    int M = 64;
    double L = 8.0;
    interface_field eta = random_smooth(M, L, 9, 4, 0.05);
    layer_solver ls(eta, layer_side::upper, p, 48);
    interface_field data = random_smooth(M, L, 10, 5);
    data.remove_mean();
    interface_field u = ls.dno_inverse(data);
    CHECK(std::fabs(u.mean()) < 1e-12);
    interface_field back = ls.dno(u);
    CHECK(max_abs(back - data) <= 1e-10 * std::max(1.0, max_abs(data)));
}

TEST_CASE("B and A: flat symbols, orderings, one-layer degeneration") {
    physical_params p = dno_params();
    int M = 64;
    double L = 2.0 * M_PI;
    interface_field eta0(M, L);
    two_layer_context flat(eta0, p, 64);
    for (int mode : {1, 2, 5}) {
        double k = 2.0 * M_PI * mode / L;
        interface_field xi = interface_field::sample(M, L, [&](double x) { return std::sin(k * x); });
        interface_field a = flat.A(xi, true);
        double sym = flat_symbol_A(k, p);
        for (int j = 0; j < M; j++) CHECK(a.v[j] == doctest::Approx(sym * xi.v[j]).epsilon(1e-8));
    }
    // orderings agree on small eta
    interface_field eta = random_smooth(M, L, 3, 4, 0.04);
    two_layer_context ctx(eta, p, 48);
    interface_field xi = random_smooth(M, L, 4, 5);
    interface_field a1 = ctx.A(xi, true), a2 = ctx.A(xi, false);
    CHECK(max_abs(a1 - a2) <= 1e-8 * std::max(1.0, max_abs(a1)));
    // B and A pairings: self-adjoint, positive semi-definite, mean-free
    interface_field ze = random_smooth(M, L, 5, 5);
    CHECK(std::fabs(inner(ctx.B(xi), ze) - inner(xi, ctx.B(ze))) <= 1e-9 * std::max(1.0, std::fabs(inner(ctx.B(xi), ze))));
    CHECK(inner(ctx.B(xi), xi) >= -1e-10);
    CHECK(inner(a1, xi) >= -1e-10);
    CHECK(std::fabs(ctx.B(xi).mean()) <= 1e-12 * std::max(1.0, max_abs(ctx.B(xi))));
    CHECK(std::fabs(a1.mean()) <= 1e-12 * std::max(1.0, max_abs(a1)));
    // rho+ -> 0: A -> G_- / rho_-
    physical_params q = p;
    q.rho_plus = 1e-8;
    two_layer_context ctxq(eta, q, 48);
    interface_field aq = ctxq.A(xi, true);
    interface_field gm = ctxq.G(layer_side::lower, xi);
    CHECK(max_abs(aq - (1.0 / q.rho_minus) * gm) <= 1e-4 * std::max(1.0, max_abs(aq)));
}

TEST_CASE("first shape derivative matches central differences") {
    physical_params p = dno_params();
    int M = 64;
    double L = 8.0;
    double h = 1e-4;
    for (int t = 0; t < 3; t++) {
        interface_field eta = random_smooth(M, L, 300 + t, 4, 0.05);
        interface_field etad = random_smooth(M, L, 400 + t, 4, 1.0);
        interface_field xi = random_smooth(M, L, 500 + t, 5);
        interface_field ze = random_smooth(M, L, 600 + t, 5);
        for (layer_side s : {layer_side::upper, layer_side::lower}) {
            double lhs = shape_derivative_pairing(eta, etad, xi, ze, s, p, 48);
            layer_solver lp(eta + h * etad, s, p, 48), lm(eta - h * etad, s, p, 48);
            double fd = (inner(ze, lp.dno(xi)) - inner(ze, lm.dno(xi))) / (2.0 * h);
            CHECK(std::fabs(lhs - fd) <= 1e-6 * std::max(std::fabs(fd), 1e-6));
        }
    }
}

TEST_CASE("first shape derivative: zero direction and bilinearity") {
    physical_params p = dno_params();
    int M = 64;
    double L = 8.0;
    interface_field eta = random_smooth(M, L, 21, 4, 0.05);
    interface_field zero(M, L);
    interface_field xi = random_smooth(M, L, 22, 5);
    interface_field ze = random_smooth(M, L, 23, 5);
    CHECK(shape_derivative_pairing(eta, zero, xi, ze, layer_side::upper, p, 48) == 0.0);
    double v1 = shape_derivative_pairing(eta, ze, xi, ze, layer_side::lower, p, 48);
    double v2 = shape_derivative_pairing(eta, ze, 3.0 * xi, ze, layer_side::lower, p, 48);
    CHECK(v2 == doctest::Approx(3.0 * v1).epsilon(1e-11));
}

TEST_CASE("second shape derivative matches central differences") {
    physical_params p = dno_params();
    int M = 64;
    double L = 8.0;
    double h = 1e-3;
    for (int t = 0; t < 2; t++) {
        interface_field eta = random_smooth(M, L, 700 + t, 4, 0.04);
        interface_field etad = random_smooth(M, L, 800 + t, 4, 1.0);
        interface_field xi = random_smooth(M, L, 900 + t, 5);
        for (layer_side s : {layer_side::upper, layer_side::lower}) {
            double lhs = second_shape_derivative_pairing(eta, etad, xi, s, p, 48);
            layer_solver l0(eta, s, p, 48), lp(eta + h * etad, s, p, 48), lm(eta - h * etad, s, p, 48);
            double f0 = inner(xi, l0.dno(xi)), fp = inner(xi, lp.dno(xi)), fm = inner(xi, lm.dno(xi));
            double fd = (fp - 2.0 * f0 + fm) / (h * h);
            CHECK(std::fabs(lhs - fd) <= 1e-4 * std::max(std::fabs(fd), 1e-6));
        }
    }
}

TEST_CASE("second shape derivative: flat single mode against depth perturbation") {
    physical_params p = dno_params();
    int M = 64;
    double L = 2.0 * M_PI;
    interface_field eta(M, L);
    interface_field one(M, L);
    for (double& v : one.v) v = 1.0;
    for (int mode : {1, 3}) {
        double k = 2.0 * M_PI * mode / L;
        interface_field xi = interface_field::sample(M, L, [&](double x) { return std::cos(k * x); });
        // d^2/dt^2 <xi, G_{d(t)} xi> with depth d+ - t (upper) or d- + t (lower)
        for (layer_side s : {layer_side::upper, layer_side::lower}) {
            double d = (s == layer_side::upper) ? p.d_plus : p.d_minus;
            double sech = 1.0 / std::cosh(d * k), th = std::tanh(d * k);
            double exact = -L * k * k * k * sech * sech * th;
            double got = second_shape_derivative_pairing(eta, one, xi, s, p, 64);
            CHECK(got == doctest::Approx(exact).epsilon(1e-8));
        }
    }
    interface_field zero(M, L);
    interface_field xi = random_smooth(M, L, 31, 4);
    CHECK(second_shape_derivative_pairing(eta, zero, xi, layer_side::upper, p, 48) == 0.0);
}

TEST_CASE("hilbert transform flat symbols") {
    physical_params p = dno_params();
    int M = 64;
    double L = 2.0 * M_PI;
    double k = 3.0;
    interface_field xi = interface_field::sample(M, L, [&](double x) { return std::cos(k * x); });
    interface_field hp = hilbert_flat(xi, layer_side::upper, p);
    interface_field hm = hilbert_flat(xi, layer_side::lower, p);
    for (int j = 0; j < M; j++) {
        CHECK(hp.v[j] == doctest::Approx(std::tanh(k * p.d_plus) * std::sin(k * xi.x(j))).epsilon(1e-11));
        CHECK(hm.v[j] == doctest::Approx(-std::tanh(k * p.d_minus) * std::sin(k * xi.x(j))).epsilon(1e-11));
    }
}

TEST_CASE("wall contact and resolution guard") {
    physical_params p = dno_params();
    int M = 64;
    double L = 8.0;
    interface_field eta(M, L);
    for (int j = 0; j < M; j++) eta.v[j] = 1.1 * p.d_plus; // above the upper wall
    CHECK_THROWS_AS(layer_solver(eta, layer_side::upper, p, 32), config_error);
    // sawtooth-like field: spectral tail dominates
    interface_field rough(M, L);
    for (int j = 0; j < M; j++) rough.v[j] = 0.05 * ((j % 2 == 0) ? 1.0 : -1.0);
    CHECK_THROWS_AS(layer_solver(rough, layer_side::upper, p, 32), numerical_error);
}

TEST_SUITE_END();
