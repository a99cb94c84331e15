#ifndef IWAVE_PROFILE_HPP
#define IWAVE_PROFILE_HPP

#include <cmath>
#include <string>
#include <vector>

#include "iwave/errors.hpp"
#include "iwave/params.hpp"
#include "iwave/reduced.hpp"

namespace iwave {

enum class wave_polarity { elevation, depression, degenerate };

inline wave_polarity polarity(const nondim_params& np) {
    if (np.degenerate_B()) return wave_polarity::degenerate;
    return np.frak_B > 0.0 ? wave_polarity::elevation : wave_polarity::depression;
}

inline std::string to_string(wave_polarity p) {
    switch (p) {
        case wave_polarity::elevation: return "elevation";
        case wave_polarity::depression: return "depression";
        default: return "degenerate";
    }
}

/** Leading-order solitary wave, eta(x) = d+ eps^2 sech^2(x/decay_scale)/frak_B
 * with decay_scale = 2 d+ sqrt(beta - beta0)/eps. */
struct wave_profile {
    std::vector<double> x;
    std::vector<double> eta;
    double epsilon = 0.0;
    wave_polarity pol = wave_polarity::degenerate;
    double decay_scale = 0.0;
    double amplitude = 0.0; // eta(0)
};

inline std::vector<double> default_profile_grid(const physical_params& p, int n_points = 4096) {
    nondim_params np = nondim(p);
    if (!np.supercritical_beta()) throw config_error("profile: requires beta > beta0");
    if (!(np.epsilon > 0.0)) throw config_error("profile: requires alpha > alpha0");
    double decay = 2.0 * p.d_plus * std::sqrt(np.beta - np.beta0) / np.epsilon;
    std::vector<double> x(n_points);
    for (int i = 0; i < n_points; i++) x[i] = -10.0 * decay + 20.0 * decay * i / (n_points - 1);
    return x;
}

inline wave_profile leading_order(const physical_params& p, const std::vector<double>& x_grid) {
    nondim_params np = nondim(p);
    if (!np.supercritical_beta()) throw config_error("profile: requires beta > beta0");
    if (!(np.epsilon > 0.0 && np.epsilon <= 0.5))
        throw config_error("profile: requires epsilon in (0, 0.5]; got epsilon = " + std::to_string(np.epsilon));
    wave_profile wp;
    wp.epsilon = np.epsilon;
    wp.pol = polarity(np);
    wp.x = x_grid;
    wp.eta.resize(x_grid.size());
    wp.decay_scale = 2.0 * p.d_plus * std::sqrt(np.beta - np.beta0) / np.epsilon;
    if (wp.pol == wave_polarity::degenerate) {
        // no leading-order wave; flat profile reported rather than an error
        wp.amplitude = 0.0;
        return wp;
    }
    double amp = p.d_plus * np.epsilon * np.epsilon / np.frak_B;
    for (size_t i = 0; i < x_grid.size(); i++) {
        double s = 1.0 / std::cosh(x_grid[i] / wp.decay_scale);
        wp.eta[i] = amp * s * s;
    }
    wp.amplitude = amp;
    return wp;
}

/** Reconstruct eta from the reduced homoclinic through the rescaling chain
 * q = beta_star^2 eps^2 Q, eta = q/sqrt(beta_star) (e1 direction), X = eps
 * (x/d+)/sqrt(beta_star).  Algebraically identical to leading_order. */
inline wave_profile profile_from_reduced(const reduced_system& sys, const physical_params& p,
                                         const std::vector<double>& x_grid) {
    nondim_params np = nondim(p);
    if (!np.supercritical_beta()) throw config_error("profile: requires beta > beta0");
    if (!(np.epsilon > 0.0 && np.epsilon <= 0.5)) throw config_error("profile: requires epsilon in (0, 0.5]");
    if (sys.K == 0.0) throw config_error("profile: degenerate reduced system (K = 0)");
    wave_profile wp;
    wp.epsilon = np.epsilon;
    wp.pol = sys.K < 0.0 ? wave_polarity::elevation : wave_polarity::depression;
    wp.x = x_grid;
    wp.eta.resize(x_grid.size());
    wp.decay_scale = 2.0 * p.d_plus * std::sqrt(np.beta_star) / np.epsilon;
    double bs = np.beta_star, eps = np.epsilon;
    for (size_t i = 0; i < x_grid.size(); i++) {
        double X = eps * (x_grid[i] / p.d_plus) / std::sqrt(bs);
        reduced_state s = homoclinic(X, sys);
        double q = bs * bs * eps * eps * s.Q;
        wp.eta[i] = p.d_plus * q / std::sqrt(bs); // eta in units of d+, times d+
    }
    wp.amplitude = p.d_plus * bs * bs * eps * eps * (-1.0 / sys.K) / std::sqrt(bs);
    return wp;
}

} // namespace iwave

#endif
