#ifndef IWAVE_REDUCED_HPP
#define IWAVE_REDUCED_HPP

#include <cmath>
#include <vector>

#include "iwave/errors.hpp"
#include "iwave/params.hpp"

namespace iwave {

/** State of the truncated center-manifold system in the rescaled variables. */
struct reduced_state {
    double Q = 0.0;
    double P = 0.0;
    double X = 0.0;
};

/** Truncated reduced system Q_X = P, P_X = Q + (3K/2) Q^2.
 * The (q,p) <-> (Q,P) rescaling constants are kept so profiles can be
 * reconstructed losslessly: q = beta_star^2 eps^2 Q, p = eps^3 beta_star^{3/2} P,
 * X = eps x / sqrt(beta_star). */
struct reduced_system {
    double K = 1.0;
    double epsilon = 0.0;      // diagnostic only; the truncated system is eps-free
    double beta_star = 0.0;    // rescaling metadata

    static reduced_system from_params(const nondim_params& np) {
        reduced_system sys;
        sys.K = np.coeff_K;
        sys.epsilon = np.epsilon;
        sys.beta_star = np.beta_star;
        return sys;
    }
};

inline void vector_field(const reduced_state& s, const reduced_system& sys, double& dQ, double& dP) {
    dQ = s.P;
    dP = s.Q + 1.5 * sys.K * s.Q * s.Q;
}

/** Explicit homoclinic orbit: Q = -sech^2(X/2)/K, P = sech^2(X/2) tanh(X/2)/K. */
inline reduced_state homoclinic(double X, const reduced_system& sys) {
    if (sys.K == 0.0) throw config_error("reduced: homoclinic requires K != 0");
    double s = 1.0 / std::cosh(0.5 * X);
    double t = std::tanh(0.5 * X);
    return {-s * s / sys.K, s * s * t / sys.K, X};
}

/** H = P^2/2 - Q^2/2 - (K/2) Q^3; conserved by the flow, identically zero on
 * the homoclinic. */
inline double reduced_hamiltonian(const reduced_state& s, const reduced_system& sys) {
    return 0.5 * s.P * s.P - 0.5 * s.Q * s.Q - 0.5 * sys.K * s.Q * s.Q * s.Q;
}

/** Fixed-step RK4 trajectory from s0 over [s0.X, s0.X + X_span] (X_span may be
 * negative).  Aborts if |Q| + |P| exceeds 1e6. */
inline std::vector<reduced_state> integrate(const reduced_state& s0, const reduced_system& sys, double X_span,
                                            double step) {
    if (!(step > 0.0)) throw config_error("reduced: step must be positive");
    int n = static_cast<int>(std::ceil(std::fabs(X_span) / step));
    double h = X_span / n;
    std::vector<reduced_state> traj;
    traj.reserve(n + 1);
    reduced_state s = s0;
    traj.push_back(s);
    for (int i = 0; i < n; i++) {
        double k1q, k1p, k2q, k2p, k3q, k3p, k4q, k4p;
        vector_field(s, sys, k1q, k1p);
        vector_field({s.Q + 0.5 * h * k1q, s.P + 0.5 * h * k1p, 0.0}, sys, k2q, k2p);
        vector_field({s.Q + 0.5 * h * k2q, s.P + 0.5 * h * k2p, 0.0}, sys, k3q, k3p);
        vector_field({s.Q + h * k3q, s.P + h * k3p, 0.0}, sys, k4q, k4p);
        s.Q += h * (k1q + 2.0 * k2q + 2.0 * k3q + k4q) / 6.0;
        s.P += h * (k1p + 2.0 * k2p + 2.0 * k3p + k4p) / 6.0;
        s.X = s0.X + (i + 1) * h;
        if (std::fabs(s.Q) + std::fabs(s.P) > 1e6)
            throw numerical_error("reduced", "trajectory blow-up", std::fabs(s.Q) + std::fabs(s.P));
        traj.push_back(s);
    }
    return traj;
}

} // namespace iwave

#endif
