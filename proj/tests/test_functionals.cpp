#include "doctest.h"

#include <cmath>

#include "iwave/functionals.hpp"

using namespace iwave;

namespace {
physical_params base_params() {
    physical_params p;
    p.rho_plus = 1.0;
    p.rho_minus = 2.0;
    p.d_plus = 1.0;
    p.d_minus = 2.0;
    p.c = 1.0;
    p.g = 2.02;       // alpha0 = 1, epsilon = 0.1 irrotational
    p.sigma = 8.0 / 3.0; // beta = beta0 + 0.5
    return p;
}

interface_field smooth_field(int M, double L, unsigned seed, double amp) {
    std::vector<double> coeff = {1.0, 0.6, -0.4, 0.25};
    interface_field f(M, L);
    for (int k = 1; k <= 4; k++) {
        double a = amp * coeff[k - 1] * std::cos(0.7 * seed + k);
        double b = amp * coeff[k - 1] * std::sin(1.3 * seed + 2 * k);
        for (int j = 0; j < M; j++) {
            double th = 2.0 * M_PI * k * (f.x(j) + 0.5 * L) / L;
            f.v[j] += a * std::cos(th) + b * std::sin(th);
        }
    }
    return f;
}
} // namespace

TEST_SUITE_BEGIN("functionals");

TEST_CASE("energy of the zero state is zero") {
    physical_params p = base_params();
    int M = 64;
    double L = 8.0;
    interface_field z(M, L);
    two_layer_context ctx(z, p, 32);
    discrete_state s{z, z, z};
    CHECK(energy(s, ctx) == 0.0);
    CHECK(momentum(s, p) == 0.0);
}

TEST_CASE("flat single-mode energy has the closed form") {
    physical_params p = base_params();
    int M = 64;
    double L = 2.0 * M_PI;
    double k = 2.0;
    interface_field z(M, L);
    interface_field xim = interface_field::sample(M, L, [&](double x) { return std::cos(k * x); });
    two_layer_context ctx(z, p, 64);
    discrete_state s{z, z, xim};
    double expect = 0.5 * p.rho_minus * k * std::tanh(p.d_minus * k) * (L / 2.0);
    CHECK(energy(s, ctx) == doctest::Approx(expect).epsilon(1e-11));
}

TEST_CASE("the two energy forms agree on recovered states") {
    physical_params p = base_params();
    p.omega_plus = 0.3;
    p.omega_minus = -0.2;
    int M = 64;
    double L = 9.0;
    interface_field eta = smooth_field(M, L, 3, 0.04);
    interface_field xt = smooth_field(M, L, 8, 0.5);
    xt.remove_mean();
    two_layer_context ctx(eta, p, 48);
    discrete_state s = state_from_tilde(eta, xt, ctx);
    // xi_tilde identity holds pointwise
    interface_field xt2 = s.xi_tilde(p);
    CHECK(max_abs(xt2 - xt) <= 1e-9 * std::max(1.0, max_abs(xt)));
    double e1 = energy(s, ctx);
    double e2 = energy_tilde_form(eta, xt, ctx);
    CHECK(std::fabs(e1 - e2) <= 1e-8 * std::max(1.0, std::fabs(e1)));
}

TEST_CASE("momentum is translation invariant") {
    physical_params p = base_params();
    p.omega_plus = 0.2;
    int M = 64;
    double L = 9.0;
    discrete_state s{smooth_field(M, L, 1, 0.05), smooth_field(M, L, 2, 0.4), smooth_field(M, L, 5, 0.4)};
    s.xi_plus.remove_mean();
    s.xi_minus.remove_mean();
    double P0 = momentum(s, p);
    // exact grid shift
    int shift = 13;
    discrete_state sh = s;
    for (int j = 0; j < M; j++) {
        sh.eta.v[(j + shift) % M] = s.eta.v[j];
        sh.xi_plus.v[(j + shift) % M] = s.xi_plus.v[j];
        sh.xi_minus.v[(j + shift) % M] = s.xi_minus.v[j];
    }
    CHECK(momentum(sh, p) == doctest::Approx(P0).epsilon(1e-12));
    // fractional spectral shift
    discrete_state sf{s.eta.shifted(0.37), s.xi_plus.shifted(0.37), s.xi_minus.shifted(0.37)};
    CHECK(std::fabs(momentum(sf, p) - P0) <= 1e-12 * std::max(1.0, std::fabs(P0)));
}

TEST_CASE("energy is translation invariant") {
    physical_params p = base_params();
    p.omega_minus = 0.15;
    int M = 64;
    double L = 9.0;
    interface_field eta = smooth_field(M, L, 4, 0.04);
    discrete_state s{eta, smooth_field(M, L, 6, 0.3), smooth_field(M, L, 7, 0.3)};
    s.xi_plus.remove_mean();
    s.xi_minus.remove_mean();
    two_layer_context ctx(eta, p, 48);
    double E0 = energy(s, ctx);
    double a = 0.41;
    discrete_state sf{eta.shifted(a), s.xi_plus.shifted(a), s.xi_minus.shifted(a)};
    two_layer_context ctx2(sf.eta, p, 48);
    CHECK(std::fabs(energy(sf, ctx2) - E0) <= 1e-9 * std::max(1.0, std::fabs(E0)));
}

TEST_CASE("momentum is odd under the (c, omega, xi) reversal") {
    physical_params p = base_params();
    p.omega_plus = 0.25;
    p.omega_minus = -0.1;
    int M = 64;
    double L = 9.0;
    discrete_state s{smooth_field(M, L, 11, 0.05), smooth_field(M, L, 12, 0.4), smooth_field(M, L, 13, 0.4)};
    s.xi_plus.remove_mean();
    s.xi_minus.remove_mean();
    double P0 = momentum(s, p);
    physical_params q = p;
    q.c = -p.c;
    q.omega_plus = -p.omega_plus;
    q.omega_minus = -p.omega_minus;
    discrete_state sq{s.eta, -1.0 * s.xi_plus, -1.0 * s.xi_minus};
    CHECK(momentum(sq, q) == doctest::Approx(-P0).epsilon(1e-12));
}

TEST_CASE("steady traces: flat interface gives zero traces") {
    physical_params p = base_params();
    int M = 64;
    double L = 8.0;
    interface_field z(M, L);
    two_layer_context ctx(z, p, 32);
    discrete_state s = steady_traces(z, ctx);
    CHECK(max_abs(s.xi_plus) < 1e-13);
    CHECK(max_abs(s.xi_minus) < 1e-13);
}

TEST_CASE("steady traces match the flat-symbol linearization for small eta") {
    physical_params p = base_params();
    int M = 128;
    double L = 2.0 * M_PI * 3.0;
    double delta = 1e-4;
    double k = 2.0 * M_PI * 2.0 / L;
    interface_field eta = interface_field::sample(M, L, [&](double x) { return delta * std::cos(k * x); });
    two_layer_context ctx(eta, p, 48);
    discrete_state s = steady_traces(eta, ctx);
    // first order: xi_pm = +- c G_pm(0)^{-1} eta' -> +- c (-k delta sin(kx)) / (k tanh(d k))
    for (int j = 0; j < M; j++) {
        double xp = -p.c * delta * std::sin(k * eta.x(j)) / std::tanh(p.d_plus * k);
        double xm = p.c * delta * std::sin(k * eta.x(j)) / std::tanh(p.d_minus * k);
        CHECK(std::fabs(s.xi_plus.v[j] - xp) <= 2e-3 * std::fabs(p.c) * delta / std::tanh(p.d_plus * k));
        CHECK(std::fabs(s.xi_minus.v[j] - xm) <= 2e-3 * std::fabs(p.c) * delta / std::tanh(p.d_minus * k));
    }
    CHECK(std::fabs(s.xi_plus.mean()) < 1e-12);
    CHECK(std::fabs(s.xi_minus.mean()) < 1e-12);
}

TEST_CASE("steady traces satisfy the kinematic identity with vorticity") {
    physical_params p = base_params();
    p.omega_plus = 0.3;
    p.omega_minus = -0.2;
    p = with_epsilon(p, 0.1);
    nondim_params np = nondim(p);
    int M = 256;
    double decay = 2.0 * p.d_plus * std::sqrt(np.beta - np.beta0) / np.epsilon;
    double L = 20.0 * decay;
    interface_field eta(M, L);
    double amp = p.d_plus * np.epsilon * np.epsilon / np.frak_B;
    for (int j = 0; j < M; j++) {
        double sech = 1.0 / std::cosh(eta.x(j) / decay);
        eta.v[j] = amp * sech * sech;
    }
    two_layer_context ctx(eta, p, 48);
    discrete_state s = steady_traces(eta, ctx); // throws on kinematic violation
    interface_field lhs = ctx.G(layer_side::lower, s.xi_minus) + ctx.G(layer_side::upper, s.xi_plus);
    interface_field etap = eta.derivative();
    double jw = jump(p.omega_plus, p.omega_minus);
    double worst = 0.0;
    for (int j = 0; j < M; j++) worst = std::max(worst, std::fabs(lhs.v[j] - jw * eta.v[j] * etap.v[j]));
    CHECK(worst <= 1e-9);
}

TEST_CASE("dprime: -P tracks m(c) at leading order") {
    physical_params p = base_params();
    p.omega_plus = 0.2;
    p.omega_minus = -0.1;
    dprime_report rep = dprime_check(p, {0.1, 0.05, 0.025});
    REQUIRE(rep.rows.size() == 3);
    for (const auto& r : rep.rows) {
        CHECK(r.rel_err < 0.25);
        CHECK(r.minus_P * r.m > 0.0); // sign agreement
    }
    CHECK(rep.rows[0].rel_err > rep.rows[1].rel_err);
    CHECK(rep.rows[1].rel_err > rep.rows[2].rel_err);
    CHECK(rep.fitted_order >= 0.8);
}

TEST_CASE("dprime: irrotational m reduces to the closed formula") {
    physical_params p = base_params();
    nondim_params np = nondim(p);
    double expect = -(8.0 / 3.0) * (np.varrho + 1.0 / np.d_ratio) * p.c * std::pow(np.epsilon, 3) * p.rho_minus *
                    p.d_plus * p.d_plus * std::sqrt(np.beta - np.beta0) / (np.frak_B * np.frak_B);
    CHECK(m_of_c(p) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_SUITE_END();
