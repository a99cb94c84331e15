#ifndef IWAVE_CHEB_HPP
#define IWAVE_CHEB_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "iwave/linalg.hpp"

namespace iwave {

/** Chebyshev-Lobatto collocation on [0,1] with points in increasing order,
 * z_j = (1 - cos(pi j/(N-1)))/2.  Differentiation matrix and Clenshaw-Curtis
 * weights are exact (to rounding) on polynomials of degree <= N-1. */
struct cheb_grid {
    int n;
    std::vector<double> z;
    matrix D;
    std::vector<double> w;

    explicit cheb_grid(int n_) : n(n_) {
        if (n < 4) throw std::invalid_argument("cheb_grid: need at least 4 points");
        z.resize(n);
        for (int j = 0; j < n; j++) z[j] = 0.5 * (1.0 - std::cos(M_PI * j / (n - 1)));

        // Trefethen's formula on x = cos(theta) in [-1,1], flipped to increasing
        // order and scaled to [0,1] (factor -2: x = 1 - 2z).
        int N = n - 1;
        std::vector<double> x(n), c(n);
        for (int j = 0; j <= N; j++) {
            x[j] = std::cos(M_PI * j / N);
            c[j] = (j == 0 || j == N) ? 2.0 : 1.0;
            if (j % 2 == 1) c[j] = -c[j];
        }
        matrix Dx(n, n);
        for (int i = 0; i <= N; i++) {
            double rowsum = 0.0;
            for (int j = 0; j <= N; j++) {
                if (i != j) {
                    Dx(i, j) = (c[i] / c[j]) / (x[i] - x[j]);
                    rowsum += Dx(i, j);
                }
            }
            Dx(i, i) = -rowsum; // negative sum trick
        }
        // z_j = (1 - x_j)/2 is increasing in j; d/dz = -2 d/dx.
        D = matrix(n, n);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) D(i, j) = -2.0 * Dx(i, j);

        // Clenshaw-Curtis weights on [-1,1], halved for [0,1].
        w.assign(n, 0.0);
        for (int j = 0; j <= N; j++) {
            double s = 1.0;
            for (int k = 1; k <= N / 2; k++) {
                double b = (2 * k == N) ? 1.0 : 2.0;
                s -= b * std::cos(2.0 * k * M_PI * j / N) / (4.0 * k * k - 1.0);
            }
            double wj = 2.0 * s / N;
            if (j == 0 || j == N) wj *= 0.5;
            w[j] = 0.5 * wj;
        }
    }

    double integrate(const std::vector<double>& f) const {
        double s = 0.0;
        for (int j = 0; j < n; j++) s += w[j] * f[j];
        return s;
    }

    std::vector<double> derivative(const std::vector<double>& f) const { return matvec(D, f); }
};

} // namespace iwave

#endif
