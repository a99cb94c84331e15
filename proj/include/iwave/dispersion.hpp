#ifndef IWAVE_DISPERSION_HPP
#define IWAVE_DISPERSION_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "iwave/errors.hpp"
#include "iwave/params.hpp"

namespace iwave {

/** k coth(a k) with the removable singularity at k = 0 evaluated by series.
 * Below |a k| = 1e-4 the three-term expansion 1/a + a k^2/3 - a^3 k^4/45 is
 * accurate to ~1e-26 relative; the direct form loses digits there. */
inline double k_coth_ak(double k, double a) {
    double u = a * k;
    if (std::fabs(u) < 1e-4) return 1.0 / a + a * k * k / 3.0 - a * a * a * k * k * k * k / 45.0;
    return k / std::tanh(u);
}

namespace dispersion {

/** Residual of the nondimensional dispersion relation,
 *   varrho k coth(k) + k coth(k d) + shear - alpha - beta k^2.
 * Even in k; residual(0) = alpha0 - alpha. */
inline double residual(double k, const nondim_params& np) {
    return np.varrho * k_coth_ak(k, 1.0) + k_coth_ak(k, np.d_ratio) + np.shear - np.alpha - np.beta * k * k;
}

/** Analytic second derivative of the residual at k = 0: 2(beta0 - beta). */
inline double residual_dd0(const nondim_params& np) { return 2.0 * (np.beta0 - np.beta); }

struct curve {
    std::vector<double> k_samples;
    std::vector<double> residuals;
    std::vector<double> roots;
};

/** Nonnegative real roots of the dispersion relation on [0, k_max]: sign
 * changes on a seed grid refined by bisection to |residual| <= 1e-12.
 * k = 0 is reported when it is a root.  Roots closer than 1e-8 are merged.
 * A seed triple whose parabola dips across zero with no adjacent sign change
 * indicates a near-tangency the grid cannot separate and is reported as a
 * grid-too-coarse fault. */
inline std::vector<double> find_roots(const nondim_params& np, double k_max, int n_seeds = 512) {
    if (!(k_max > 0.0)) throw config_error("dispersion: k_max must be positive");
    if (n_seeds < 8) throw config_error("dispersion: need at least 8 seeds");
    std::vector<double> roots;
    if (std::fabs(residual(0.0, np)) <= 1e-12) roots.push_back(0.0);

    double h = k_max / n_seeds;
    // tangency heuristic on interior seed triples of equal sign
    {
        std::vector<double> r(n_seeds + 1);
        for (int i = 0; i <= n_seeds; i++) r[i] = residual(std::max(i * h, h * 1e-6), np);
        for (int i = 1; i < n_seeds; i++) {
            if ((r[i - 1] < 0.0) != (r[i] < 0.0) || (r[i] < 0.0) != (r[i + 1] < 0.0)) continue;
            double curv = r[i - 1] - 2.0 * r[i] + r[i + 1];
            if (curv == 0.0 || std::fabs(r[i]) >= std::fabs(r[i - 1]) || std::fabs(r[i]) >= std::fabs(r[i + 1]))
                continue;
            double slope = 0.5 * (r[i + 1] - r[i - 1]);
            double tstar = -slope / curv;                    // extremum in seed units
            double vmin = r[i] - 0.5 * slope * slope / curv; // parabola extremum value
            if (std::fabs(tstar) <= 1.5 && (vmin < 0.0) != (r[i] < 0.0))
                throw numerical_error("dispersion",
                                      "seed grid too coarse: possible tangential roots near k = " +
                                          std::to_string(i * h),
                                      std::fabs(vmin));
        }
    }
    double prev = residual(h * 1e-6, np); // start just off 0 to skip the trivial root
    double kprev = h * 1e-6;
    for (int i = 1; i <= n_seeds; i++) {
        double k = i * h;
        double val = residual(k, np);
        if (prev == 0.0) {
            roots.push_back(kprev);
        } else if (val == 0.0) {
            roots.push_back(k);
        } else if ((prev < 0.0) != (val < 0.0)) {
            double a = kprev, b = k, fa = prev;
            for (int it = 0; it < 200; it++) {
                double m = 0.5 * (a + b);
                double fm = residual(m, np);
                if (std::fabs(fm) <= 1e-12 || 0.5 * (b - a) < 1e-15) {
                    a = b = m;
                    break;
                }
                if ((fa < 0.0) != (fm < 0.0)) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev = val;
        kprev = k;
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots)
        if (out.empty() || r - out.back() > 1e-8) out.push_back(r);
    return out;
}

inline curve sample(const nondim_params& np, double k_max, int n_samples) {
    curve cv;
    cv.k_samples.resize(n_samples);
    cv.residuals.resize(n_samples);
    for (int i = 0; i < n_samples; i++) {
        double k = k_max * i / (n_samples - 1);
        cv.k_samples[i] = k;
        cv.residuals[i] = residual(k, np);
    }
    cv.roots = find_roots(np, k_max);
    return cv;
}

struct double_root_report {
    double residual0;     // residual at k = 0
    double residual_dd;   // analytic second derivative at k = 0
    bool fourth_order;    // true when beta = beta0 as well (0^2 degenerates further)
};

/** Certificate of the k = 0 double root at criticality alpha = alpha0.
 * residual(0) = 0 and residual''(0) = 2(beta0 - beta); the second derivative
 * vanishes exactly at the critical Bond number. */
inline double_root_report double_root_certificate(const nondim_params& np) {
    if (std::fabs(np.alpha - np.alpha0) > 1e-12)
        throw config_error("dispersion: double-root certificate requires alpha = alpha0");
    double_root_report rep;
    rep.residual0 = residual(0.0, np);
    rep.residual_dd = residual_dd0(np);
    rep.fourth_order = std::fabs(rep.residual_dd) <= 1e-12;
    return rep;
}

} // namespace dispersion
} // namespace iwave

#endif
