#include "doctest.h"

#include <cmath>

#include "iwave/cheb.hpp"
#include "iwave/fft.hpp"

using namespace iwave;

TEST_SUITE_BEGIN("fft_cheb");

TEST_CASE("fft round trip and Parseval") {
    int M = 64;
    std::vector<double> f(M);
    for (int j = 0; j < M; j++) f[j] = std::sin(2.0 * M_PI * j / M) + 0.3 * std::cos(6.0 * M_PI * j / M) + 0.1;
    cvec a = fft_forward(f);
    std::vector<double> g = fft_inverse_real(a);
    for (int j = 0; j < M; j++) CHECK(g[j] == doctest::Approx(f[j]).epsilon(1e-13));
    double sum_f = 0.0, sum_a = 0.0;
    for (double v : f) sum_f += v * v;
    for (auto& z : a) sum_a += std::norm(z);
    CHECK(sum_a / M == doctest::Approx(sum_f).epsilon(1e-12));
}

TEST_CASE("spectral derivative of trigonometric data is exact") {
    int M = 128;
    double L = 7.0;
    std::vector<double> f(M), fx_exact(M);
    for (int j = 0; j < M; j++) {
        double x = L * j / M;
        f[j] = std::sin(2.0 * M_PI * 3.0 * x / L) + 0.5 * std::cos(2.0 * M_PI * 5.0 * x / L);
        fx_exact[j] = (2.0 * M_PI * 3.0 / L) * std::cos(2.0 * M_PI * 3.0 * x / L) -
                      0.5 * (2.0 * M_PI * 5.0 / L) * std::sin(2.0 * M_PI * 5.0 * x / L);
    }
    std::vector<double> fx = spectral_derivative(f, L);
    for (int j = 0; j < M; j++) CHECK(fx[j] == doctest::Approx(fx_exact[j]).epsilon(1e-11));
}

TEST_CASE("chebyshev differentiation is exact on polynomials") {
    cheb_grid cz(12);
    std::vector<double> f(cz.n), fp_exact(cz.n);
    for (int i = 0; i < cz.n; i++) {
        double z = cz.z[i];
        f[i] = 2.0 + z - 3.0 * z * z + 0.5 * z * z * z;
        fp_exact[i] = 1.0 - 6.0 * z + 1.5 * z * z;
    }
    std::vector<double> fp = cz.derivative(f);
    for (int i = 0; i < cz.n; i++) CHECK(fp[i] == doctest::Approx(fp_exact[i]).epsilon(1e-12));
}

TEST_CASE("clenshaw-curtis integrates polynomials and smooth functions") {
    cheb_grid cz(16);
    std::vector<double> f(cz.n);
    for (int i = 0; i < cz.n; i++) f[i] = std::pow(cz.z[i], 5);
    CHECK(cz.integrate(f) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    for (int i = 0; i < cz.n; i++) f[i] = std::exp(cz.z[i]);
    CHECK(cz.integrate(f) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("chebyshev boundary derivative of cosh profile is spectrally accurate") {
    // relevant to the flat Dirichlet-Neumann path: phi(z) = cosh(a z)/cosh(a)
    cheb_grid cz(96);
    double a = 18.0;
    std::vector<double> f(cz.n);
    for (int i = 0; i < cz.n; i++) f[i] = std::cosh(a * cz.z[i]) / std::cosh(a);
    std::vector<double> fp = cz.derivative(f);
    CHECK(fp[cz.n - 1] == doctest::Approx(a * std::tanh(a)).epsilon(1e-11));
    CHECK(std::fabs(fp[0]) < 1e-9 * a);
}

TEST_SUITE_END();
