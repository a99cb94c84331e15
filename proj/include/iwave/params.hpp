#ifndef IWAVE_PARAMS_HPP
#define IWAVE_PARAMS_HPP

#include <cmath>
#include <string>

#include "iwave/errors.hpp"

namespace iwave {

/** Trace jump across the interface, upper minus lower.  Every jump in the
 * formulas goes through here; the convention is fixed once. */
inline double jump(double upper, double lower) { return upper - lower; }

/** Absolute tolerance below which beta - beta0 is treated as critical and
 * frak_B as degenerate. */
constexpr double k_critical_tol = 1e-12;

/** Dimensional inputs: densities, layer depths, layer vorticities, surface
 * tension, gravity, wave speed.  SI units throughout; the single source of
 * truth for every derived quantity. */
struct physical_params {
    double rho_plus = 1.0;   // upper-layer density
    double rho_minus = 2.0;  // lower-layer density
    double d_plus = 1.0;     // upper-layer depth
    double d_minus = 1.0;    // lower-layer depth
    double omega_plus = 0.0; // upper-layer vorticity
    double omega_minus = 0.0;
    double sigma = 1.0; // surface tension coefficient
    double g = 9.81;    // gravity
    double c = 1.0;     // wave speed

    void validate() const {
        if (!(rho_plus > 0.0)) throw config_error("params: rho_plus must be positive");
        if (!(rho_minus >= rho_plus)) throw config_error("params: need rho_minus >= rho_plus (stable stratification)");
        if (!(d_plus > 0.0) || !(d_minus > 0.0)) throw config_error("params: layer depths must be positive");
        if (!(sigma > 0.0)) throw config_error("params: sigma must be positive");
        if (!(g > 0.0)) throw config_error("params: g must be positive");
        if (c == 0.0) throw config_error("params: c must be nonzero");
        for (double v : {rho_plus, rho_minus, d_plus, d_minus, omega_plus, omega_minus, sigma, g, c})
            if (!std::isfinite(v)) throw config_error("params: all fields must be finite");
    }
};

/** Dimensionless parameter set derived from physical_params.  epsilon is the
 * amplitude parameter sqrt(alpha - alpha0), zero if alpha <= alpha0. */
struct nondim_params {
    double alpha = 0.0;   // inverse square Froude number
    double beta = 0.0;    // Bond number
    double varrho = 0.0;  // density ratio rho_plus/rho_minus
    double d_ratio = 0.0; // depth ratio d_minus/d_plus
    double alpha0 = 0.0;  // critical alpha (k=0 double root)
    double beta0 = 0.0;   // critical Bond number
    double beta_star = 0.0;
    double epsilon = 0.0;
    double frak_A = 0.0;
    double frak_B = 0.0;
    double coeff_K = 0.0; // cubic coefficient of the reduced system

    // shear combinations retained for the dispersion relation and spectra
    double shear = 0.0;    // omega_plus d_plus varrho / c - omega_minus d_plus / c
    double c = 0.0;        // wave speed carried along for derived operators
    double d_plus = 0.0;   // reference depth carried along

    bool supercritical_alpha() const { return alpha > alpha0; }
    bool supercritical_beta() const { return beta - beta0 > k_critical_tol; }
    bool degenerate_B() const { return std::fabs(frak_B) <= k_critical_tol; }
};

inline std::pair<double, double> critical_pair(const physical_params& p) {
    p.validate();
    double varrho = p.rho_plus / p.rho_minus;
    double d = p.d_minus / p.d_plus;
    double beta0 = (varrho + d) / 3.0;
    double alpha0 = varrho + 1.0 / d + p.omega_plus * p.d_plus * varrho / p.c - p.omega_minus * p.d_plus / p.c;
    return {beta0, alpha0};
}

inline nondim_params nondim(const physical_params& p) {
    p.validate();
    nondim_params np;
    np.varrho = p.rho_plus / p.rho_minus;
    np.d_ratio = p.d_minus / p.d_plus;
    np.alpha = -p.g * jump(p.rho_plus, p.rho_minus) * p.d_plus / (p.rho_minus * p.c * p.c);
    np.beta = p.sigma / (p.d_plus * p.rho_minus * p.c * p.c);
    np.shear = p.omega_plus * p.d_plus * np.varrho / p.c - p.omega_minus * p.d_plus / p.c;
    np.beta0 = (np.varrho + np.d_ratio) / 3.0;
    np.alpha0 = np.varrho + 1.0 / np.d_ratio + np.shear;
    np.beta_star = np.beta - np.beta0;
    np.epsilon = np.alpha > np.alpha0 ? std::sqrt(np.alpha - np.alpha0) : 0.0;

    double rr = np.varrho, d = np.d_ratio, c = p.c, dp = p.d_plus;
    double wp = p.omega_plus, wm = p.omega_minus;
    np.frak_A = rr + 1.0 / d + wp * rr * dp / (2.0 * c) - wm * dp / (2.0 * c);
    np.frak_B = rr - 1.0 / (d * d) + wp * dp * rr / c + wm * dp / (c * d) + wp * wp * dp * dp * rr / (3.0 * c * c) -
                wm * wm * dp * dp / (3.0 * c * c);
    np.coeff_K = np.beta_star > 0.0 ? -std::pow(np.beta_star, 1.5) * np.frak_B : 0.0;
    np.c = c;
    np.d_plus = dp;
    return np;
}

/** Which alpha0 enters epsilon_c = sqrt(alpha_c - alpha0) when c varies:
 * pointwise re-evaluates the shear term at each c, frozen keeps alpha0 fixed
 * at the base speed.  Pointwise is the default reading. */
enum class alpha0_mode { pointwise, frozen };

/** Closed-form derivatives with respect to c at fixed (rho, d, omega, sigma, g). */
struct family_derivatives {
    double d_alpha_c = 0.0;
    double d_beta_c = 0.0;
    double d_alpha0 = 0.0;
    double d_epsilon = 0.0;
    double d_frak_A = 0.0;
    double d_frak_B = 0.0;
};

inline family_derivatives derivatives_in_c(const physical_params& p, alpha0_mode mode = alpha0_mode::pointwise) {
    nondim_params np = nondim(p);
    if (!np.supercritical_alpha())
        throw config_error("params: derivatives_in_c requires alpha > alpha0 (epsilon_c' singular at criticality)");
    family_derivatives fd;
    double c = p.c, dp = p.d_plus, rr = np.varrho, d = np.d_ratio;
    double wp = p.omega_plus, wm = p.omega_minus;
    fd.d_alpha_c = -2.0 * np.alpha / c;
    fd.d_beta_c = -2.0 * np.beta / c;
    fd.d_alpha0 = (wm * dp - wp * dp * rr) / (c * c);
    double da0 = (mode == alpha0_mode::pointwise) ? fd.d_alpha0 : 0.0;
    fd.d_epsilon = (fd.d_alpha_c - da0) / (2.0 * np.epsilon);
    fd.d_frak_A = (wm * dp - wp * rr * dp) / (2.0 * c * c);
    fd.d_frak_B = -wp * dp * rr / (c * c) - wm * dp / (c * c * d) - 2.0 * wp * wp * dp * dp * rr / (3.0 * c * c * c) +
                  2.0 * wm * wm * dp * dp / (3.0 * c * c * c);
    return fd;
}

} // namespace iwave

#endif
