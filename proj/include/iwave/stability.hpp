#ifndef IWAVE_STABILITY_HPP
#define IWAVE_STABILITY_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "iwave/errors.hpp"
#include "iwave/params.hpp"
#include "iwave/profile.hpp"

namespace iwave {

enum class verdict_t { stable, unstable, inconclusive };

inline std::string to_string(verdict_t v) {
    switch (v) {
        case verdict_t::stable: return "stable";
        case verdict_t::unstable: return "unstable";
        default: return "inconclusive";
    }
}

/** Leading-order slope of the moment of instability,
 *   m(c) = -(8/3) A c eps^3 rho_- d+^2 sqrt(beta-beta0) / B^2.
 * The 8/3 is int sech^4(x/2) dx from the squared profile; it makes the
 * momentum identity -P(U_c) = m(c) + O(eps^4) hold on the nose.  Requires a
 * valid wave: beta supercritical, eps > 0, frak_B nondegenerate. */
inline double m_of_c(const physical_params& p) {
    nondim_params np = nondim(p);
    if (!np.supercritical_beta()) throw config_error("stability: m(c) requires beta > beta0");
    if (!(np.epsilon > 0.0)) throw config_error("stability: m(c) requires alpha > alpha0");
    if (np.degenerate_B()) throw config_error("stability: degenerate frak_B, no leading-order wave");
    double e3 = np.epsilon * np.epsilon * np.epsilon;
    return -(8.0 / 3.0) * np.frak_A * p.c * e3 * p.rho_minus * p.d_plus * p.d_plus * std::sqrt(np.beta - np.beta0) /
           (np.frak_B * np.frak_B);
}

struct m_prime_result {
    double value = 0.0;
    double bracket = 0.0;  // square-bracket factor whose sign decides the verdict
    double scale = 0.0;    // |prefactor| * l1 norm of the bracket terms, for the tolerance
};

/** Analytic derivative of m with respect to c, assembled from the closed-form
 * family derivatives.  The prefactor carries the rho_- d+^2 factor of m itself
 * so that the value agrees with finite differences of m_of_c. */
inline m_prime_result m_prime(const physical_params& p, alpha0_mode mode = alpha0_mode::pointwise) {
    nondim_params np = nondim(p);
    if (!np.supercritical_beta()) throw config_error("stability: m'(c) requires beta > beta0");
    if (!(np.epsilon > 0.0)) throw config_error("stability: m'(c) requires alpha > alpha0");
    if (np.degenerate_B()) throw config_error("stability: degenerate frak_B, no leading-order wave");
    family_derivatives fd = derivatives_in_c(p, mode);

    double A = np.frak_A, B = np.frak_B, eps = np.epsilon, c = p.c;
    double db = np.beta - np.beta0;
    double e2 = eps * eps, e3 = e2 * eps;
    double t1 = fd.d_frak_A * e3 * c * db;
    double t2 = A * e3 * db;
    double t3 = 3.0 * A * c * e2 * fd.d_epsilon * db;
    double t4 = A * c * e3 * fd.d_beta_c / 2.0;
    double t5 = -2.0 * A * B * fd.d_frak_B * c * e3 * db;
    double B2 = B * B;
    m_prime_result r;
    r.bracket = B2 * (t1 + t2 + t3 + t4) + t5;
    double pref = -(8.0 / 3.0) * p.rho_minus * p.d_plus * p.d_plus / (B2 * B2 * std::sqrt(db));
    r.value = pref * r.bracket;
    r.scale = std::fabs(pref) *
              (std::fabs(B2 * t1) + std::fabs(B2 * t2) + std::fabs(B2 * t3) + std::fabs(B2 * t4) + std::fabs(t5));
    return r;
}

/** Central finite difference of m_of_c in c; the permanent self-test path. */
inline double m_prime_fd(const physical_params& p, double h_rel = 1e-6) {
    double h = h_rel * std::fabs(p.c);
    physical_params pp = p, pm = p;
    pp.c += h;
    pm.c -= h;
    return (m_of_c(pp) - m_of_c(pm)) / (2.0 * h);
}

/** FD step that keeps eps^2(c +/- h) within ~1% of eps^2(c), so the central
 * difference stays in the linear response region even when |d(eps^2)/dc| is
 * large (near-degenerate construction points). */
inline double m_prime_fd_step(const physical_params& p) {
    nondim_params np = nondim(p);
    family_derivatives fd = derivatives_in_c(p);
    double de2 = std::fabs(fd.d_alpha_c - fd.d_alpha0);
    double h = 1e-6 * std::fabs(p.c);
    if (de2 > 0.0) h = std::min(h, 0.01 * np.epsilon * np.epsilon / de2);
    return h / std::fabs(p.c);
}

struct stability_report {
    double m = 0.0;
    double m_prime = 0.0;
    double bracket = 0.0;
    verdict_t verdict = verdict_t::inconclusive;
    wave_polarity pol = wave_polarity::degenerate;
    bool degenerate = false;
    physical_params inputs;
};

/** Full classification at one parameter point.  The verdict tolerance is
 * 1e-12 of the bracket scale so that inconclusive is scale-invariant. */
inline stability_report classify(const physical_params& p, alpha0_mode mode = alpha0_mode::pointwise) {
    stability_report rep;
    rep.inputs = p;
    nondim_params np = nondim(p);
    rep.pol = polarity(np);
    if (rep.pol == wave_polarity::degenerate) {
        rep.degenerate = true;
        return rep;
    }
    rep.m = m_of_c(p);
    m_prime_result mp = m_prime(p, mode);
    rep.m_prime = mp.value;
    rep.bracket = mp.bracket;
    double tol = 1e-12 * mp.scale;
    if (mp.value > tol)
        rep.verdict = verdict_t::stable;
    else if (mp.value < -tol)
        rep.verdict = verdict_t::unstable;
    else
        rep.verdict = verdict_t::inconclusive;

    // consistency fault if the closed form disagrees with finite differences;
    // only meaningful in the pointwise reading (finite differences of m_of_c
    // re-evaluate alpha0 at each c by construction)
    if (mode == alpha0_mode::pointwise) {
        double fdv = m_prime_fd(p, m_prime_fd_step(p));
        double denom = std::max(std::fabs(mp.value), std::fabs(fdv));
        if (denom > 0.0 && std::fabs(mp.value - fdv) / denom > 1e-4)
            throw numerical_error("stability", "m'(c) analytic/finite-difference mismatch",
                                  std::fabs(mp.value - fdv) / denom);
    }
    return rep;
}

/** The four tabulated single-layer-vorticity regime cases (stable pair and
 * unstable pair).  s is the nondimensional vorticity c*omega/g of the
 * rotational layer. */
enum class regime_case {
    fig1_elevation,  // omega+ = 0, 2(varrho-1) < s <= 0, eta > 0: stable
    fig1_depression, // omega- = 0, 0 <= s < 2(1-varrho)/varrho, eta < 0: stable
    fig2_elevation,  // omega- = 0, s > 0, s > 2(varrho-1)/varrho, eta > 0: unstable
    fig2_depression  // omega+ = 0, s < 0, s < 2(varrho-1), eta < 0: unstable
};

inline std::string to_string(regime_case rc) {
    switch (rc) {
        case regime_case::fig1_elevation: return "fig1_elevation";
        case regime_case::fig1_depression: return "fig1_depression";
        case regime_case::fig2_elevation: return "fig2_elevation";
        default: return "fig2_depression";
    }
}

inline verdict_t predicted_verdict(regime_case rc) {
    return (rc == regime_case::fig1_elevation || rc == regime_case::fig1_depression) ? verdict_t::stable
                                                                                     : verdict_t::unstable;
}

struct sweep_point {
    double varrho = 0.0;
    double d = 0.0;
    double s = 0.0; // c omega / g of the rotational layer
    int sign_c = 1;
    bool constructed = false;    // a valid wave exists at this point
    std::string skip_reason;
    physical_params params;
    double m = 0.0;
    double m_prime = 0.0;
    verdict_t verdict = verdict_t::inconclusive;
    verdict_t predicted = verdict_t::inconclusive;
    bool match = false;
};

/** Realize a table point (varrho, d, s, sign c) as physical parameters with a
 * prescribed amplitude parameter eps and Bond number offset: rho_- = d+ = 1,
 * |c| = 1, the rotational layer's omega and gravity g are solved from s and
 * the existence condition eps^2 = alpha - alpha0, sigma from beta.
 * Returns nullopt when no valid wave realizes the point. */
inline std::optional<physical_params> realize_table_point(regime_case rc, double varrho, double d, double s,
                                                          int sign_c, double eps, double beta_excess,
                                                          std::string* reason = nullptr) {
    bool omega_minus_active = (rc == regime_case::fig1_elevation || rc == regime_case::fig2_depression);
    double c = sign_c >= 0 ? 1.0 : -1.0;
    // eps^2 = g*(1 - varrho + s)/c^2 - (varrho + 1/d)   [omega- layer rotational]
    // eps^2 = g*(1 - varrho - s*varrho)/c^2 - (varrho + 1/d)  [omega+ layer rotational]
    double slope = omega_minus_active ? (1.0 - varrho + s) : (1.0 - varrho - s * varrho);
    double need = eps * eps + varrho + 1.0 / d;
    if (slope <= 0.0) {
        if (reason) *reason = "no wave: existence requires g*slope > 0";
        return std::nullopt;
    }
    double g = need * c * c / slope;
    physical_params p;
    p.rho_minus = 1.0;
    p.rho_plus = varrho;
    p.d_plus = 1.0;
    p.d_minus = d;
    p.c = c;
    p.g = g;
    if (omega_minus_active) {
        p.omega_minus = s * g / c;
        p.omega_plus = 0.0;
    } else {
        p.omega_plus = s * g / c;
        p.omega_minus = 0.0;
    }
    nondim_params np = nondim(p);
    p.sigma = (np.beta0 + beta_excess) * p.d_plus * p.rho_minus * c * c;
    np = nondim(p);
    if (!(np.epsilon > 0.0) || !np.supercritical_beta()) {
        if (reason) *reason = "no wave: criticality conditions failed";
        return std::nullopt;
    }
    if (np.degenerate_B()) {
        if (reason) *reason = "degenerate frak_B";
        return std::nullopt;
    }
    wave_polarity want = (rc == regime_case::fig1_elevation || rc == regime_case::fig2_elevation)
                             ? wave_polarity::elevation
                             : wave_polarity::depression;
    if (polarity(np) != want) {
        if (reason) *reason = "polarity outside the table column";
        return std::nullopt;
    }
    return p;
}

struct sweep_result {
    std::vector<sweep_point> points;
    int n_constructed = 0;
    int n_match = 0;
    int n_mismatch = 0;
};

/** Sweep a deterministic lattice inside one table case; mismatches are data,
 * not faults.  The lattice over (varrho, d, s, sign c) is refined until at
 * least n_points grid points carry a valid wave, or the refinement cap is hit
 * (some hypothesis regions intersect the existence set in a null set). */
inline sweep_result regime_sweep(regime_case rc, int n_points, double eps = 0.1, double beta_excess = 0.5,
                                 alpha0_mode mode = alpha0_mode::pointwise) {
    sweep_result res;
    for (int level = 0; level < 10; level++) {
        res = sweep_result{};
        int n1 = 4 + 3 * level;
        int sign_c = 1;
        for (int iv = 0; iv < n1; iv++) {
            double vr = 0.15 + 0.75 * iv / (n1 - 1.0);
            for (int id = 0; id < n1; id++) {
                double d = 0.35 + 2.8 * id / (n1 - 1.0);
                for (int is = 0; is < n1; is++) {
                    double su = (is + 0.5) / n1;
                    double s = 0.0;
                    switch (rc) {
                        case regime_case::fig1_elevation: s = -su * (1.0 - vr) * 0.999; break;
                        case regime_case::fig1_depression: s = su * 2.0 * (1.0 - vr) / vr * 0.999; break;
                        case regime_case::fig2_elevation: s = su * (1.0 - vr) / vr * 0.999; break;
                        case regime_case::fig2_depression: s = 2.0 * (vr - 1.0) - su * 2.0; break;
                    }
                    sweep_point pt;
                    pt.varrho = vr;
                    pt.d = d;
                    pt.s = s;
                    pt.sign_c = sign_c;
                    pt.predicted = predicted_verdict(rc);
                    sign_c = -sign_c;
                    auto p = realize_table_point(rc, vr, d, s, pt.sign_c, eps, beta_excess, &pt.skip_reason);
                    if (p) {
                        pt.constructed = true;
                        pt.params = *p;
                        stability_report rep = classify(*p, mode);
                        pt.m = rep.m;
                        pt.m_prime = rep.m_prime;
                        pt.verdict = rep.verdict;
                        pt.match = (pt.verdict == pt.predicted);
                        res.n_constructed++;
                        if (pt.match)
                            res.n_match++;
                        else
                            res.n_mismatch++;
                    }
                    res.points.push_back(pt);
                }
            }
        }
        if (res.n_constructed >= n_points) break;
    }
    return res;
}

} // namespace iwave

#endif
