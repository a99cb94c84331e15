#ifndef IWAVE_GRID_HPP
#define IWAVE_GRID_HPP

#include <cmath>
#include <vector>

#include "iwave/errors.hpp"
#include "iwave/fft.hpp"

namespace iwave {

/** Scalar field sampled on a uniform periodic grid of M points (a power of
 * two) over one period L, x_j = -L/2 + j L/M. */
struct interface_field {
    int M = 0;
    double L = 0.0;
    std::vector<double> v;

    interface_field() = default;
    interface_field(int M_, double L_) : M(M_), L(L_), v(M_, 0.0) {
        if (!is_power_of_two(M_)) throw config_error("grid: M must be a power of two");
        if (!(L_ > 0.0)) throw config_error("grid: period must be positive");
    }

    double x(int j) const { return -0.5 * L + L * j / M; }

    template <typename F>
    static interface_field sample(int M_, double L_, F&& f) {
        interface_field g(M_, L_);
        for (int j = 0; j < M_; j++) g.v[j] = f(g.x(j));
        return g;
    }

    double mean() const {
        double s = 0.0;
        for (double t : v) s += t;
        return s / M;
    }

    void remove_mean() {
        double m = mean();
        for (double& t : v) t -= m;
    }

    interface_field derivative() const {
        interface_field g(M, L);
        g.v = spectral_derivative(v, L);
        return g;
    }

    /** Trapezoid rule; spectrally accurate for smooth periodic integrands. */
    double integrate() const {
        double s = 0.0;
        for (double t : v) s += t;
        return s * (L / M);
    }

    /** Fraction of spectral mass in the top quarter of the wavenumber range. */
    double spectral_tail() const {
        cvec a = fft_forward(v);
        double total = 0.0, tail = 0.0;
        for (int m = 1; m < M; m++) {
            int k = (m <= M / 2) ? m : M - m;
            double e = std::norm(a[m]);
            total += e;
            if (k > M / 4) tail += e;
        }
        return total > 0.0 ? tail / total : 0.0;
    }

    /** Translate by a (not necessarily a grid multiple) via the spectrum. */
    interface_field shifted(double a) const {
        cvec c = fft_forward(v);
        for (int m = 0; m < M; m++) {
            double k = fourier_wavenumber(m, M, L);
            c[m] *= std::exp(std::complex<double>(0.0, -k * a));
        }
        interface_field g(M, L);
        g.v = fft_inverse_real(std::move(c));
        return g;
    }
};

inline double inner(const interface_field& f, const interface_field& g) {
    if (f.M != g.M || f.L != g.L) throw config_error("grid: mismatched grids");
    double s = 0.0;
    for (int j = 0; j < f.M; j++) s += f.v[j] * g.v[j];
    return s * (f.L / f.M);
}

inline interface_field operator*(double a, const interface_field& f) {
    interface_field g = f;
    for (double& t : g.v) t *= a;
    return g;
}

inline interface_field operator+(const interface_field& f, const interface_field& g) {
    interface_field h = f;
    for (int j = 0; j < f.M; j++) h.v[j] += g.v[j];
    return h;
}

inline interface_field operator-(const interface_field& f, const interface_field& g) {
    interface_field h = f;
    for (int j = 0; j < f.M; j++) h.v[j] -= g.v[j];
    return h;
}

inline interface_field pointwise(const interface_field& f, const interface_field& g) {
    interface_field h = f;
    for (int j = 0; j < f.M; j++) h.v[j] *= g.v[j];
    return h;
}

inline double max_abs(const interface_field& f) {
    double m = 0.0;
    for (double t : f.v) m = std::max(m, std::fabs(t));
    return m;
}

} // namespace iwave

#endif
