#ifndef IWAVE_FUNCTIONALS_HPP
#define IWAVE_FUNCTIONALS_HPP

#include <cmath>
#include <vector>

#include "iwave/dno.hpp"
#include "iwave/errors.hpp"
#include "iwave/grid.hpp"
#include "iwave/params.hpp"
#include "iwave/profile.hpp"
#include "iwave/stability.hpp"

namespace iwave {

/** Interface state (eta, xi+, xi-) with the trace potentials mean-free;
 * xi_tilde = -[rho xi] is derived, never stored independently. */
struct discrete_state {
    interface_field eta, xi_plus, xi_minus;

    interface_field xi_tilde(const physical_params& p) const {
        interface_field t(eta.M, eta.L);
        for (int j = 0; j < eta.M; j++) t.v[j] = -jump(p.rho_plus * xi_plus.v[j], p.rho_minus * xi_minus.v[j]);
        return t;
    }
};

/** Energy in the trace variables (production path, no B^{-1} solves):
 * E = 1/2 int rho- xi- G- xi- + rho+ xi+ G+ xi+ - 2 [rho xi omega] eta eta'
 *     - g [rho] eta^2 - eta^3 [rho omega^2]/3 + 2 sigma (sqrt(1+eta'^2) - 1). */
inline double energy(const discrete_state& s, const two_layer_context& ctx) {
    const physical_params& p = ctx.params();
    interface_field Gm = ctx.G(layer_side::lower, s.xi_minus);
    interface_field Gp = ctx.G(layer_side::upper, s.xi_plus);
    interface_field etap = s.eta.derivative();
    double gj = p.g * jump(p.rho_plus, p.rho_minus);
    double jw2 = jump(p.rho_plus * p.omega_plus * p.omega_plus, p.rho_minus * p.omega_minus * p.omega_minus);
    double acc = 0.0;
    for (int j = 0; j < s.eta.M; j++) {
        double e = p.rho_minus * s.xi_minus.v[j] * Gm.v[j] + p.rho_plus * s.xi_plus.v[j] * Gp.v[j];
        double jxw = jump(p.rho_plus * s.xi_plus.v[j] * p.omega_plus, p.rho_minus * s.xi_minus.v[j] * p.omega_minus);
        e -= 2.0 * jxw * s.eta.v[j] * etap.v[j];
        e -= gj * s.eta.v[j] * s.eta.v[j];
        e -= s.eta.v[j] * s.eta.v[j] * s.eta.v[j] * jw2 / 3.0;
        e += 2.0 * p.sigma * (std::sqrt(1.0 + etap.v[j] * etap.v[j]) - 1.0);
        acc += e;
    }
    return 0.5 * acc * (s.eta.L / s.eta.M);
}

/** Energy in the (eta, xi_tilde) variables (verification path; exercises A
 * and B^{-1}).  Equal to energy() on states whose xi_pm are recovered from
 * xi_tilde. */
inline double energy_tilde_form(const interface_field& eta, const interface_field& xi_tilde,
                                const two_layer_context& ctx) {
    const physical_params& p = ctx.params();
    interface_field etap = eta.derivative();
    double jw = jump(p.omega_plus, p.omega_minus);
    interface_field eep(eta.M, eta.L);
    for (int j = 0; j < eta.M; j++) eep.v[j] = jw * eta.v[j] * etap.v[j];
    interface_field Axi = ctx.A(xi_tilde);
    // composition order fixed by the trace recovery xi+ = -B^{-1} G_- xi_tilde + ...
    interface_field GmBinv_xi = ctx.B_inverse(ctx.G(layer_side::lower, xi_tilde));
    interface_field Binv_eep = ctx.B_inverse(eep);
    double gj = p.g * jump(p.rho_plus, p.rho_minus);
    double jw2 = jump(p.rho_plus * p.omega_plus * p.omega_plus, p.rho_minus * p.omega_minus * p.omega_minus);
    double acc = 0.0;
    for (int j = 0; j < eta.M; j++) {
        double e = xi_tilde.v[j] * Axi.v[j];
        e += 2.0 * p.rho_plus * eep.v[j] * GmBinv_xi.v[j];
        e -= p.rho_plus * p.rho_minus * eep.v[j] * Binv_eep.v[j];
        e -= gj * eta.v[j] * eta.v[j];
        e += 2.0 * xi_tilde.v[j] * p.omega_minus * eta.v[j] * etap.v[j];
        e -= eta.v[j] * eta.v[j] * eta.v[j] * jw2 / 3.0;
        e += 2.0 * p.sigma * (std::sqrt(1.0 + etap.v[j] * etap.v[j]) - 1.0);
        acc += e;
    }
    return 0.5 * acc * (eta.L / eta.M);
}

/** Recover the per-layer traces from (eta, xi_tilde):
 * xi_pm = -+ B^{-1} G_mp xi_tilde + rho_mp B^{-1} ([omega] eta eta'). */
inline discrete_state state_from_tilde(const interface_field& eta, const interface_field& xi_tilde,
                                       const two_layer_context& ctx) {
    const physical_params& p = ctx.params();
    interface_field etap = eta.derivative();
    double jw = jump(p.omega_plus, p.omega_minus);
    interface_field eep(eta.M, eta.L);
    for (int j = 0; j < eta.M; j++) eep.v[j] = jw * eta.v[j] * etap.v[j];
    interface_field Binv_eep = ctx.B_inverse(eep);
    discrete_state s;
    s.eta = eta;
    s.xi_plus = -1.0 * ctx.B_inverse(ctx.G(layer_side::lower, xi_tilde)) + p.rho_minus * Binv_eep;
    s.xi_minus = ctx.B_inverse(ctx.G(layer_side::upper, xi_tilde)) + p.rho_plus * Binv_eep;
    s.xi_plus.remove_mean();
    s.xi_minus.remove_mean();
    return s;
}

/** Total momentum P = -int (eta' xi_tilde - [rho omega] eta^2 / 2) dx. */
inline double momentum(const discrete_state& s, const physical_params& p) {
    interface_field etap = s.eta.derivative();
    interface_field xt = s.xi_tilde(p);
    double jrw = jump(p.rho_plus * p.omega_plus, p.rho_minus * p.omega_minus);
    double acc = 0.0;
    for (int j = 0; j < s.eta.M; j++)
        acc += etap.v[j] * xt.v[j] - 0.5 * jrw * s.eta.v[j] * s.eta.v[j];
    return -acc * (s.eta.L / s.eta.M);
}

/** Traveling-wave traces xi_pm = +- G_pm^{-1}(c eta' + omega_pm eta eta');
 * the kinematic identity G- xi- + G+ xi+ = [omega] eta eta' is checked. */
inline discrete_state steady_traces(const interface_field& eta, const two_layer_context& ctx, double tol = 1e-12) {
    const physical_params& p = ctx.params();
    interface_field etap = eta.derivative();
    interface_field data_p(eta.M, eta.L), data_m(eta.M, eta.L);
    for (int j = 0; j < eta.M; j++) {
        data_p.v[j] = p.c * etap.v[j] + p.omega_plus * eta.v[j] * etap.v[j];
        data_m.v[j] = p.c * etap.v[j] + p.omega_minus * eta.v[j] * etap.v[j];
    }
    discrete_state s;
    s.eta = eta;
    s.xi_plus = ctx.G_inverse(layer_side::upper, data_p, tol);
    s.xi_minus = -1.0 * ctx.G_inverse(layer_side::lower, data_m, tol);

    interface_field kin = ctx.G(layer_side::lower, s.xi_minus) + ctx.G(layer_side::upper, s.xi_plus);
    double jw = jump(p.omega_plus, p.omega_minus);
    for (int j = 0; j < eta.M; j++) kin.v[j] -= jw * eta.v[j] * etap.v[j];
    kin.remove_mean();
    double rn = max_abs(kin);
    // the residual floor scales with the recovered traces, which the inverse
    // symbol amplifies far above the input data on long domains
    double scale = std::max({max_abs(data_p) + max_abs(data_m), max_abs(s.xi_plus) + max_abs(s.xi_minus), 1e-300});
    if (rn > 1e-9 * scale)
        throw numerical_error("functionals", "steady traces violate the kinematic identity", rn / scale);
    return s;
}

struct dprime_row {
    double eps = 0.0;
    double minus_P = 0.0;
    double m = 0.0;
    double rel_err = 0.0;
};

struct dprime_report {
    std::vector<dprime_row> rows;
    double fitted_order = 0.0;
};

/** Rescale gravity so the amplitude parameter equals eps at fixed
 * (rho, d, omega, sigma, c). */
inline physical_params with_epsilon(const physical_params& p, double eps) {
    nondim_params np = nondim(p);
    double a1 = -jump(p.rho_plus, p.rho_minus) * p.d_plus / (p.rho_minus * p.c * p.c); // alpha = g a1
    double g = (eps * eps + np.alpha0) / a1;
    if (!(g > 0.0)) throw config_error("functionals: cannot reach requested epsilon (alpha0 too negative)");
    physical_params q = p;
    q.g = g;
    return q;
}

/** Momentum identity d'(c) = -P(U_c): compare -P on the leading-order wave
 * with m(c) across an epsilon sweep and fit the convergence order of the
 * relative error.  The period grows like decay/eps so the excised zero mode
 * (a 1/L periodization deficit in the momentum) stays subordinate to the
 * O(eps) error being measured. */
inline dprime_report dprime_check(const physical_params& p_base, const std::vector<double>& eps_list, int Nz = 48) {
    dprime_report rep;
    for (double eps : eps_list) {
        physical_params p = with_epsilon(p_base, eps);
        nondim_params np = nondim(p);
        if (!np.supercritical_beta()) throw config_error("functionals: dprime_check requires beta > beta0");
        if (np.degenerate_B()) throw config_error("functionals: degenerate frak_B");
        double decay = 2.0 * p.d_plus * std::sqrt(np.beta - np.beta0) / np.epsilon;
        double widths = std::max(20.0, 2.0 / np.epsilon);
        double L = widths * decay;
        int M = 256;
        while (M < 8.0 * widths) M *= 2;
        interface_field eta(M, L);
        double amp = p.d_plus * np.epsilon * np.epsilon / np.frak_B;
        for (int j = 0; j < M; j++) {
            double s = 1.0 / std::cosh(eta.x(j) / decay);
            eta.v[j] = amp * s * s;
        }
        two_layer_context ctx(eta, p, Nz);
        discrete_state s = steady_traces(eta, ctx);
        dprime_row row;
        row.eps = np.epsilon;
        row.minus_P = -momentum(s, p);
        row.m = m_of_c(p);
        row.rel_err = std::fabs(row.minus_P - row.m) / std::fabs(row.m);
        rep.rows.push_back(row);
    }
    // least-squares slope of log(rel_err) vs log(eps)
    int n = static_cast<int>(rep.rows.size());
    if (n >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& r : rep.rows) {
            double lx = std::log(r.eps), ly = std::log(std::max(r.rel_err, 1e-300));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        rep.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return rep;
}

} // namespace iwave

#endif
