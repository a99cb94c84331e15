#ifndef IWAVE_DNO_HPP
#define IWAVE_DNO_HPP

#include <cmath>
#include <memory>
#include <vector>

#include "iwave/cheb.hpp"
#include "iwave/errors.hpp"
#include "iwave/grid.hpp"
#include "iwave/linalg.hpp"
#include "iwave/params.hpp"

namespace iwave {

enum class layer_side { upper, lower };

/** Flat-interface Dirichlet-Neumann symbol k tanh(d k); zero at k = 0. */
inline double flat_symbol_G(double k, layer_side side, const physical_params& p) {
    double d = (side == layer_side::upper) ? p.d_plus : p.d_minus;
    return k * std::tanh(d * k);
}

/** Flat symbol of B = rho+ G- + rho- G+. */
inline double flat_symbol_B(double k, const physical_params& p) {
    return p.rho_plus * k * std::tanh(p.d_minus * k) + p.rho_minus * k * std::tanh(p.d_plus * k);
}

/** Flat symbol of A = G+- B^-1 G-+ (both orderings coincide). */
inline double flat_symbol_A(double k, const physical_params& p) {
    if (k == 0.0) return 0.0;
    return flat_symbol_G(k, layer_side::upper, p) * flat_symbol_G(k, layer_side::lower, p) / flat_symbol_B(k, p);
}

/** Harmonic extension on the flattened strip, z in [0,1], z=0 the rigid wall,
 * z=1 the interface. */
struct strip_solution {
    int Nz = 0, M = 0;
    double L = 0.0;
    std::vector<double> f; // row-major: f[i*M + j] = phi(z_i, x_j)
    double residual = 0.0; // discrete interior residual at convergence

    double at(int i, int j) const { return f[static_cast<size_t>(i) * M + j]; }
};

/** Elliptic solver for one layer under the domain-flattening map y = w + z h(x),
 * h = eta - w, with the flat solve (exact per Fourier mode) as preconditioner.
 * The same factorizations serve every Dirichlet datum on the fixed eta. */
class layer_solver {
public:
    layer_solver(const interface_field& eta, layer_side side, const physical_params& p, int Nz = 64)
        : side_(side), eta_(eta), M_(eta.M), L_(eta.L), Nz_(Nz), cz_(Nz) {
        p.validate();
        double wall = (side == layer_side::upper) ? p.d_plus : -p.d_minus;
        h0_ = -wall; // eta = 0 baseline: h = -d+ (upper), +d- (lower)
        h_.assign(M_, 0.0);
        for (int j = 0; j < M_; j++) {
            if (!(eta.v[j] < p.d_plus && eta.v[j] > -p.d_minus))
                throw config_error("dno: interface touches a rigid wall");
            h_[j] = eta.v[j] - wall;
        }
        flat_ = max_abs(eta) == 0.0;
        if (!flat_ && eta.spectral_tail() > 1e-8)
            throw numerical_error("dno", "interface under-resolved on the grid", eta.spectral_tail());
        hp_ = spectral_derivative(h_, L_);
        hpp_ = spectral_derivative(hp_, L_);

        // per-mode flat operators D^2 - (kappa h0)^2 with Neumann row at z=0
        // and Dirichlet row at z=1; modes m and M-m share |kappa|
        D2_ = matmul(cz_.D, cz_.D);
        factors_.reserve(M_ / 2 + 1);
        for (int m = 0; m <= M_ / 2; m++) {
            double kap = 2.0 * M_PI * m / L_;
            matrix A(Nz_, Nz_);
            for (int i = 0; i < Nz_; i++)
                for (int j = 0; j < Nz_; j++) A(i, j) = D2_(i, j);
            for (int i = 0; i < Nz_; i++) A(i, i) -= (kap * h0_) * (kap * h0_);
            for (int j = 0; j < Nz_; j++) {
                A(0, j) = cz_.D(0, j);           // phi_z(0) = 0
                A(Nz_ - 1, j) = 0.0;             // phi(1) = data
            }
            A(Nz_ - 1, Nz_ - 1) = 1.0;
            factors_.emplace_back(std::move(A));
        }
    }

    int Nz() const { return Nz_; }
    const cheb_grid& zgrid() const { return cz_; }
    const interface_field& eta() const { return eta_; }
    layer_side side() const { return side_; }

    strip_solution extend(const interface_field& xi, double tol = 1e-13, int max_iter = 400) const {
        if (xi.M != M_ || xi.L != L_) throw config_error("dno: field grid mismatch");
        strip_solution sol;
        sol.Nz = Nz_;
        sol.M = M_;
        sol.L = L_;
        sol.f.assign(static_cast<size_t>(Nz_) * M_, 0.0);

        std::vector<double> rhs(static_cast<size_t>(Nz_) * M_, 0.0);
        for (int j = 0; j < M_; j++) rhs[static_cast<size_t>(Nz_ - 1) * M_ + j] = xi.v[j];
        precond_apply(rhs, sol.f);
        if (flat_) {
            sol.residual = 0.0;
            return sol;
        }

        // Convergence is judged on the preconditioned update: the raw residual
        // involves D^2 whose roundoff floor (~ Nz^4 eps) sits far above the
        // achievable solution accuracy, while P^{-1} smooths that noise away.
        double scale = std::max(max_abs(xi), 1e-300);
        std::vector<double> res(static_cast<size_t>(Nz_) * M_, 0.0), corr(res.size(), 0.0);
        double up = 0.0, up_prev = 1e300;
        for (int it = 0; it < max_iter; it++) {
            double rn = residual(sol.f, xi, res);
            precond_apply(res, corr);
            up = 0.0;
            for (size_t i = 0; i < sol.f.size(); i++) {
                sol.f[i] += corr[i];
                up = std::max(up, std::fabs(corr[i]));
            }
            if (up <= tol * scale || (it > 4 && up >= 0.5 * up_prev && up <= 1e-11 * scale)) {
                sol.residual = rn;
                return sol;
            }
            up_prev = up;
        }
        throw numerical_error("dno", "harmonic extension iteration did not converge", up / scale);
    }

    /** G(eta) xi: scaled normal derivative along the interface, mean removed. */
    interface_field dno(const interface_field& xi, double tol = 1e-13) const {
        strip_solution sol = extend(xi, tol);
        return dno_from_solution(sol);
    }

    interface_field dno_from_solution(const strip_solution& sol) const {
        // traces at z=1: phi_x (flattened) and phi_z
        std::vector<double> top(M_), phiz1(M_, 0.0);
        for (int j = 0; j < M_; j++) top[j] = sol.at(Nz_ - 1, j);
        std::vector<double> topx = spectral_derivative(top, L_);
        for (int j = 0; j < M_; j++) {
            double s = 0.0;
            for (int i = 0; i < Nz_; i++) s += cz_.D(Nz_ - 1, i) * sol.at(i, j);
            phiz1[j] = s;
        }
        interface_field g(M_, L_);
        double sgn = (side_ == layer_side::upper) ? 1.0 : -1.0;
        for (int j = 0; j < M_; j++) {
            double hp = flat_ ? 0.0 : hp_[j];
            double hj = flat_ ? h0_ : h_[j];
            g.v[j] = sgn * (hp * topx[j] - (1.0 + hp * hp) * phiz1[j] / hj);
        }
        g.remove_mean();
        return g;
    }

    /** G(eta)^{-1} on mean-free data by flat-symbol preconditioned iteration.
     * Convergence is judged on the preconditioned update, which lives in
     * solution units (the inverse symbol amplifies low modes, so the raw
     * residual floor sits above tol * |data|). */
    interface_field dno_inverse(const interface_field& data, double tol = 1e-12, int max_iter = 200) const {
        interface_field b = data;
        b.remove_mean();
        interface_field u = precond_inverse(b);
        double up = 0.0, up_prev = 1e300;
        for (int it = 0; it < max_iter; it++) {
            interface_field r = b - dno(u);
            interface_field du = precond_inverse(r);
            up = max_abs(du);
            double uscale = std::max(max_abs(u), 1e-300);
            u = u + du;
            if (up <= tol * uscale || (it > 4 && up >= 0.5 * up_prev && up <= 1e-8 * uscale)) return u;
            up_prev = up;
        }
        throw numerical_error("dno", "G^{-1} iteration did not converge", up);
    }

private:
    layer_side side_;
    interface_field eta_;
    int M_;
    double L_;
    int Nz_;
    cheb_grid cz_;
    matrix D2_;
    double h0_ = 0.0;
    bool flat_ = false;
    std::vector<double> h_, hp_, hpp_;
    std::vector<lu_factor> factors_;

    double d_for_symbol() const { return std::fabs(h0_); }

    interface_field precond_inverse(const interface_field& r) const {
        cvec a = fft_forward(r.v);
        double d = d_for_symbol();
        for (int m = 0; m < M_; m++) {
            if (m == 0) {
                a[m] = 0.0;
                continue;
            }
            double k = fourier_wavenumber(m, M_, L_);
            a[m] /= k * std::tanh(d * k);
        }
        interface_field u(M_, L_);
        u.v = fft_inverse_real(std::move(a));
        return u;
    }

    /** Solve the flat problem: interior rows of rhs are the PDE right side,
     * row 0 the Neumann value, row Nz-1 the Dirichlet value. */
    void precond_apply(const std::vector<double>& rhs, std::vector<double>& out) const {
        // FFT each z-row, per-mode backsolve, inverse FFT
        std::vector<cvec> rows(Nz_);
        for (int i = 0; i < Nz_; i++) {
            std::vector<double> row(M_);
            for (int j = 0; j < M_; j++) row[j] = rhs[static_cast<size_t>(i) * M_ + j];
            rows[i] = fft_forward(row);
        }
        std::vector<cvec> sol(Nz_, cvec(M_));
        std::vector<double> re(Nz_), im(Nz_);
        for (int m = 0; m < M_; m++) {
            int idx = (m <= M_ / 2) ? m : M_ - m;
            for (int i = 0; i < Nz_; i++) {
                re[i] = rows[i][m].real();
                im[i] = rows[i][m].imag();
            }
            std::vector<double> xr = factors_[idx].solve(re);
            std::vector<double> xi = factors_[idx].solve(im);
            for (int i = 0; i < Nz_; i++) sol[i][m] = std::complex<double>(xr[i], xi[i]);
        }
        for (int i = 0; i < Nz_; i++) {
            std::vector<double> row = fft_inverse_real(std::move(sol[i]));
            for (int j = 0; j < M_; j++) out[static_cast<size_t>(i) * M_ + j] = row[j];
        }
    }

    /** Residual of the variable-coefficient problem in preconditioner layout:
     * interior rows -(L_var phi), boundary rows the BC defects.  Returns the
     * max-norm.  L_var phi = h^2 phi_xx - 2 z h h' phi_xz + (1 + z^2 h'^2) phi_zz
     * + (2 z h'^2 - z h h'') phi_z, the flattened Laplacian times h^2. */
    double residual(const std::vector<double>& phi, const interface_field& xi, std::vector<double>& res) const {
        int Nz = Nz_, M = M_;
        std::vector<double> phiz(phi.size()), phizz(phi.size());
        for (int j = 0; j < M; j++) {
            for (int i = 0; i < Nz; i++) {
                double s = 0.0;
                const double* Drow = &cz_.D.a[static_cast<size_t>(i) * Nz];
                for (int k = 0; k < Nz; k++) s += Drow[k] * phi[static_cast<size_t>(k) * M + j];
                phiz[static_cast<size_t>(i) * M + j] = s;
            }
            for (int i = 0; i < Nz; i++) {
                double s = 0.0;
                const double* Drow = &cz_.D.a[static_cast<size_t>(i) * Nz];
                for (int k = 0; k < Nz; k++) s += Drow[k] * phiz[static_cast<size_t>(k) * M + j];
                phizz[static_cast<size_t>(i) * M + j] = s;
            }
        }
        double rn = 0.0;
        std::vector<double> row(M);
        for (int i = 0; i < Nz; i++) {
            size_t off = static_cast<size_t>(i) * M;
            if (i == 0) {
                for (int j = 0; j < M; j++) {
                    res[off + j] = -phiz[off + j];
                    rn = std::max(rn, std::fabs(res[off + j]));
                }
                continue;
            }
            if (i == Nz - 1) {
                for (int j = 0; j < M; j++) {
                    res[off + j] = xi.v[j] - phi[off + j];
                    rn = std::max(rn, std::fabs(res[off + j]));
                }
                continue;
            }
            for (int j = 0; j < M; j++) row[j] = phi[off + j];
            std::vector<double> rx = spectral_derivative(row, L_);
            std::vector<double> rxx = spectral_derivative(rx, L_);
            for (int j = 0; j < M; j++) row[j] = phiz[off + j];
            std::vector<double> rxz = spectral_derivative(row, L_);
            double z = cz_.z[i];
            for (int j = 0; j < M; j++) {
                double hj = h_[j], hpj = hp_[j], hppj = hpp_[j];
                double lv = hj * hj * rxx[j] - 2.0 * z * hj * hpj * rxz[j] + (1.0 + z * z * hpj * hpj) * phizz[off + j] +
                            (2.0 * z * hpj * hpj - z * hj * hppj) * phiz[off + j];
                res[off + j] = -lv;
                rn = std::max(rn, std::fabs(lv));
            }
        }
        return rn;
    }
};

/** Both layers over one interface; caches the per-layer factorizations so
 * repeated operator applications on the same eta are cheap. */
class two_layer_context {
public:
    two_layer_context(const interface_field& eta, const physical_params& p, int Nz = 64)
        : p_(p), up_(eta, layer_side::upper, p, Nz), lo_(eta, layer_side::lower, p, Nz), eta_(eta) {}

    const physical_params& params() const { return p_; }
    const interface_field& eta() const { return eta_; }
    const layer_solver& solver(layer_side s) const { return s == layer_side::upper ? up_ : lo_; }

    interface_field G(layer_side s, const interface_field& xi) const {
        return s == layer_side::upper ? up_.dno(xi) : lo_.dno(xi);
    }
    interface_field G_inverse(layer_side s, const interface_field& data, double tol = 1e-12) const {
        return s == layer_side::upper ? up_.dno_inverse(data, tol) : lo_.dno_inverse(data, tol);
    }

    /** B(eta) = rho+ G-(eta) + rho- G+(eta). */
    interface_field B(const interface_field& xi) const {
        return p_.rho_plus * lo_.dno(xi) + p_.rho_minus * up_.dno(xi);
    }

    /** B(eta)^{-1} on mean-free data, flat-symbol preconditioned; update-based
     * stopping as in dno_inverse. */
    interface_field B_inverse(const interface_field& data, double tol = 1e-12, int max_iter = 200) const {
        interface_field b = data;
        b.remove_mean();
        interface_field u = precond_B(b);
        double up = 0.0, up_prev = 1e300;
        for (int it = 0; it < max_iter; it++) {
            interface_field r = b - B(u);
            interface_field du = precond_B(r);
            up = max_abs(du);
            double uscale = std::max(max_abs(u), 1e-300);
            u = u + du;
            if (up <= tol * uscale || (it > 4 && up >= 0.5 * up_prev && up <= 1e-8 * uscale)) return u;
            up_prev = up;
        }
        throw numerical_error("dno", "B^{-1} iteration did not converge", up);
    }

    /** A(eta) = G_pm B^{-1} G_mp; the orderings agree to solver tolerance. */
    interface_field A(const interface_field& xi, bool plus_first = true) const {
        if (plus_first) return up_.dno(B_inverse(lo_.dno(xi)));
        return lo_.dno(B_inverse(up_.dno(xi)));
    }

private:
    physical_params p_;
    layer_solver up_, lo_;
    interface_field eta_;

    interface_field precond_B(const interface_field& r) const {
        cvec a = fft_forward(r.v);
        for (int m = 0; m < r.M; m++) {
            if (m == 0) {
                a[m] = 0.0;
                continue;
            }
            double k = fourier_wavenumber(m, r.M, r.L);
            a[m] /= flat_symbol_B(k, p_);
        }
        interface_field u(r.M, r.L);
        u.v = fft_inverse_real(std::move(a));
        return u;
    }
};

/** Coefficients of the first shape-derivative representation formula,
 *   a1 = (-+ xi' - eta' G xi)/(1 + eta'^2),  a2 = (+- G xi - eta' xi')/(1 + eta'^2). */
inline void shape_coefficients(const layer_solver& ls, const interface_field& xi, interface_field& a1,
                               interface_field& a2) {
    const interface_field& eta = ls.eta();
    interface_field etap = eta.derivative();
    interface_field xip = xi.derivative();
    interface_field Gxi = ls.dno(xi);
    double sgn = (ls.side() == layer_side::upper) ? 1.0 : -1.0;
    a1 = interface_field(eta.M, eta.L);
    a2 = interface_field(eta.M, eta.L);
    for (int j = 0; j < eta.M; j++) {
        double den = 1.0 + etap.v[j] * etap.v[j];
        a1.v[j] = (-sgn * xip.v[j] - etap.v[j] * Gxi.v[j]) / den;
        a2.v[j] = (sgn * Gxi.v[j] - etap.v[j] * xip.v[j]) / den;
    }
}

/** int zeta <DG(eta) eta_dot, xi> dx evaluated through the representation
 * formula int (a1 zeta' + a2 G zeta) eta_dot dx. */
inline double shape_derivative_pairing(const interface_field& eta, const interface_field& eta_dot,
                                       const interface_field& xi, const interface_field& zeta, layer_side side,
                                       const physical_params& p, int Nz = 64) {
    layer_solver ls(eta, side, p, Nz);
    interface_field a1, a2;
    shape_coefficients(ls, xi, a1, a2);
    interface_field zetap = zeta.derivative();
    interface_field Gzeta = ls.dno(zeta);
    interface_field integrand = pointwise(a1, zetap) + pointwise(a2, Gzeta);
    return inner(integrand, eta_dot);
}

/** int xi <D^2 G(eta)[eta_dot, eta_dot], xi> dx through
 * int (a4 eta_dot^2 + 2 a2 eta_dot G(a2 eta_dot)) dx, a4 = -2 a1' a2. */
inline double second_shape_derivative_pairing(const interface_field& eta, const interface_field& eta_dot,
                                              const interface_field& xi, layer_side side, const physical_params& p,
                                              int Nz = 64) {
    layer_solver ls(eta, side, p, Nz);
    interface_field a1, a2;
    shape_coefficients(ls, xi, a1, a2);
    interface_field a4 = -2.0 * pointwise(a1.derivative(), a2);
    interface_field a2d = pointwise(a2, eta_dot);
    interface_field Ga2d = ls.dno(a2d);
    double s = 0.0;
    for (int j = 0; j < eta.M; j++)
        s += a4.v[j] * eta_dot.v[j] * eta_dot.v[j] + 2.0 * a2d.v[j] * Ga2d.v[j];
    return s * (eta.L / eta.M);
}

/** Hilbert transform at the flat state: trace of the conjugate harmonic
 * extension; symbol -+ i tanh(d_pm k).  Exposed for completeness, no
 * downstream consumer. */
inline interface_field hilbert_flat(const interface_field& xi, layer_side side, const physical_params& p) {
    double d = (side == layer_side::upper) ? p.d_plus : p.d_minus;
    double sgn = (side == layer_side::upper) ? -1.0 : 1.0;
    cvec a = fft_forward(xi.v);
    for (int m = 0; m < xi.M; m++) {
        if (m == xi.M / 2) {
            a[m] = 0.0;
            continue;
        }
        double k = fourier_wavenumber(m, xi.M, xi.L);
        a[m] *= std::complex<double>(0.0, sgn * std::tanh(d * k));
    }
    interface_field out(xi.M, xi.L);
    out.v = fft_inverse_real(std::move(a));
    return out;
}

} // namespace iwave

#endif
