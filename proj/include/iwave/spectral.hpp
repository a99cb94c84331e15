#ifndef IWAVE_SPECTRAL_HPP
#define IWAVE_SPECTRAL_HPP

#include <cmath>
#include <string>
#include <vector>

#include "iwave/dispersion.hpp"
#include "iwave/errors.hpp"
#include "iwave/linalg.hpp"
#include "iwave/params.hpp"

namespace iwave {
namespace spectral {

/** Symbol of the flat-state augmented-potential Hessian Q_c(0),
 *   q(xi) = -g[rho] (1 - bracket(xi)/alpha),
 *   bracket(xi) = sum_pm (rho_pm/rho_-) d+ xi coth(d_pm xi) - beta d+^2 xi^2 + shear,
 * with bracket(0) = alpha0.  xi is the dimensional wavenumber. */
inline double qc0_bracket(double xi, const physical_params& p) {
    nondim_params np = nondim(p);
    double t_plus = np.varrho * p.d_plus * k_coth_ak(xi, p.d_plus);
    double t_minus = p.d_plus * k_coth_ak(xi, p.d_minus);
    return t_plus + t_minus - np.beta * p.d_plus * p.d_plus * xi * xi + np.shear;
}

inline double qc0_symbol(double xi, const physical_params& p) {
    nondim_params np = nondim(p);
    double gj = p.g * jump(p.rho_plus, p.rho_minus);
    return -gj * (1.0 - qc0_bracket(xi, p) / np.alpha);
}

/** Essential-spectrum edge tau_* = min_xi q(xi).  For beta >= beta0 the
 * minimum sits at xi = 0 (xi coth inequality), giving -g[rho](1 - alpha0/alpha);
 * below the critical Bond number an interior maximum of the bracket wins and
 * is located by grid scan plus golden-section refinement. */
inline double tau_star(const physical_params& p) {
    nondim_params np = nondim(p);
    if (!(np.alpha > 0.0)) throw config_error("spectral: tau_star requires alpha > 0");
    double gj = p.g * jump(p.rho_plus, p.rho_minus);
    if (np.beta >= np.beta0) return -gj * (1.0 - np.alpha0 / np.alpha);

    // maximize the bracket over xi >= 0
    double xi_max = 50.0 / p.d_plus;
    int n = 20001;
    double best = -1e300, xb = 0.0;
    for (int i = 0; i < n; i++) {
        double xi = xi_max * i / (n - 1);
        double v = qc0_bracket(xi, p);
        if (v > best) {
            best = v;
            xb = xi;
        }
    }
    double a = std::max(0.0, xb - xi_max / (n - 1));
    double b = std::min(xi_max, xb + xi_max / (n - 1));
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = qc0_bracket(x1, p), f2 = qc0_bracket(x2, p);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + b); it++) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = qc0_bracket(x2, p);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = qc0_bracket(x1, p);
        }
    }
    double bracket_max = std::max(f1, f2);
    return -gj * (1.0 - bracket_max / np.alpha);
}

/** Eigenpairs of the limiting rescaled operator.
 *
 * The two rescalings used around the critical point (epsilon x/d+ for the
 * spectral bound, epsilon x/(d+ sqrt(beta-beta0)) for the momentum slope)
 * both send Q~_0 = -(beta-beta0) dxx + 1 - 3 frak_B eta~ to the same
 * canonical operator once the x-scale absorbing sqrt(beta-beta0) is applied
 * and eta~ = sech^2(x/2)/frak_B is inserted:
 *     Lcan = -dyy + 1 - 3 sech^2(y/2).
 * Substituting u = y/2 exhibits a Poschl-Teller potential,
 *     Lcan = (1/4)(-duu + 4 - 12 sech^2 u),
 * whose bound states are known exactly: point spectrum {-5/4, 0, 3/4},
 * essential spectrum [1, inf).  The collocation below is the independent
 * numerical route to those numbers. */
struct spectrum_result {
    std::string operator_name;
    std::vector<double> eigenvalues; // below the essential edge, ascending
    std::vector<std::vector<double>> eigenvectors;
    std::vector<double> x; // collocation grid
    double essential_edge = 0.0;
    double L = 0.0;
    int M = 0;
};

inline spectrum_result limiting_spectrum(double L = 80.0, int M = 1024) {
    if (L < 80.0) throw config_error("spectral: need L >= 80 (sech^2 tail below 1e-16)");
    if (M < 256) throw config_error("spectral: need M >= 256 collocation points");
    // potential tail check at the box edge
    double tail = 1.0 / std::cosh(0.25 * L);
    if (tail * tail > 1e-14) throw numerical_error("spectral", "potential not localized in the box", tail * tail);

    spectrum_result res;
    res.operator_name = "limiting";
    res.essential_edge = 1.0;
    res.L = L;
    res.M = M;
    res.x.resize(M);
    for (int j = 0; j < M; j++) res.x[j] = -0.5 * L + L * j / M;

    // periodic spectral second-derivative matrix, scaled to period L
    matrix H(M, M);
    double scale = std::pow(2.0 * M_PI / L, 2);
    double hstep = 2.0 * M_PI / M;
    for (int i = 0; i < M; i++) {
        for (int j = 0; j < M; j++) {
            double d2;
            if (i == j) {
                d2 = -M * M / 12.0 - 1.0 / 6.0;
            } else {
                int k = i - j;
                double s = std::sin(0.5 * hstep * k);
                d2 = -((k % 2 == 0) ? 1.0 : -1.0) / (2.0 * s * s);
            }
            H(i, j) = -scale * d2;
        }
        double sech = 1.0 / std::cosh(0.5 * res.x[i]);
        H(i, i) += 1.0 - 3.0 * sech * sech;
    }
    sym_eig_result se = sym_eig(H, true);
    for (int j = 0; j < M; j++) {
        if (se.values[j] < res.essential_edge) {
            res.eigenvalues.push_back(se.values[j]);
            std::vector<double> v(M);
            for (int i = 0; i < M; i++) v[i] = se.vectors(i, j);
            res.eigenvectors.push_back(std::move(v));
        }
    }
    return res;
}

/** Leading-order magnitude of the negative eigenvalue of the full linearized
 * augmented potential: tau^2 = (eps^2 c^2 rho_-/d+) tau~^2 with tau~^2 = 5/4. */
inline double scaled_spectrum_estimate(const physical_params& p) {
    nondim_params np = nondim(p);
    return np.epsilon * np.epsilon * p.c * p.c * p.rho_minus / p.d_plus * 1.25;
}

} // namespace spectral
} // namespace iwave

#endif
