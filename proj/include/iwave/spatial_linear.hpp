#ifndef IWAVE_SPATIAL_LINEAR_HPP
#define IWAVE_SPATIAL_LINEAR_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "iwave/cheb.hpp"
#include "iwave/errors.hpp"
#include "iwave/linalg.hpp"
#include "iwave/params.hpp"

namespace iwave {
namespace spatial {

/** State of the linearized spatial dynamics: two scalars (eta, gamma) and the
 * four z-profiles (phi_bar+, Gamma+, phi_bar-, Gamma-) collocated on a
 * Chebyshev-Lobatto grid of N points in [0,1]. */
struct state_vector {
    double eta = 0.0;
    double gamma = 0.0;
    std::vector<double> phi_p, Gam_p, phi_m, Gam_m;

    explicit state_vector(int N) : phi_p(N, 0.0), Gam_p(N, 0.0), phi_m(N, 0.0), Gam_m(N, 0.0) {}

    std::vector<double> flatten() const {
        int N = static_cast<int>(phi_p.size());
        std::vector<double> u(2 + 4 * N);
        u[0] = eta;
        u[1] = gamma;
        for (int i = 0; i < N; i++) {
            u[2 + i] = phi_p[i];
            u[2 + N + i] = Gam_p[i];
            u[2 + 2 * N + i] = phi_m[i];
            u[2 + 3 * N + i] = Gam_m[i];
        }
        return u;
    }
};

/** Collocated linearized operator, its domain constraints, and the reduced
 * square matrix used for the spectrum. */
struct discrete_operator {
    int N = 0;
    nondim_params np;
    double wp = 0.0, wm = 0.0; // omega_pm d_+ / c
    cheb_grid cz;
    matrix A; // (2+4N) x (2+4N) operator collocation rows
    matrix C; // 10 x (2+4N) domain constraints
    std::vector<int> kept_rows;

    explicit discrete_operator(int N_) : N(N_), cz(N_), A(2 + 4 * N_, 2 + 4 * N_), C(10, 2 + 4 * N_) {}
};

/** Assemble the linearized operator at the trivial solution.  The gamma-row
 * coefficient of eta is grouped as alpha - alpha0 - wp^2 varrho/3 - wm^2 d/3,
 * the unique reading for which the action on the eigenvector e1 returns
 * alpha - alpha0 in the gamma slot and the k->0 limit reproduces the
 * dispersion relation. */
inline discrete_operator assemble(const physical_params& p, int N, double alpha_override = -1.0) {
    // even N: the interior-node polynomial integral that excludes Gamma slack
    // modes vanishes identically for odd N (antisymmetry about z = 1/2)
    if (N < 16 || N % 2 != 0) throw config_error("spatial: need even N >= 16");
    discrete_operator op(N);
    op.np = nondim(p);
    if (alpha_override >= 0.0) op.np.alpha = alpha_override;
    double rr = op.np.varrho, d = op.np.d_ratio, beta = op.np.beta, alpha = op.np.alpha;
    op.wp = p.omega_plus * p.d_plus / p.c;
    op.wm = p.omega_minus * p.d_plus / p.c;
    double wp = op.wp, wm = op.wm;
    const cheb_grid& cz = op.cz;
    int o_fp = 2, o_gp = 2 + N, o_fm = 2 + 2 * N, o_gm = 2 + 3 * N;

    // paren(u) = gamma + rr phi+(1) + int 2 z phi+ wp rr dz + int 2 z phi- wm d dz - phi-(1)
    std::vector<double> pr(2 + 4 * N, 0.0);
    pr[1] = 1.0;
    pr[o_fp + N - 1] += rr;
    pr[o_fm + N - 1] -= 1.0;
    for (int j = 0; j < N; j++) {
        pr[o_fp + j] += 2.0 * cz.w[j] * cz.z[j] * wp * rr;
        pr[o_fm + j] += 2.0 * cz.w[j] * cz.z[j] * wm * d;
    }

    // eta row
    for (int j = 0; j < 2 + 4 * N; j++) op.A(0, j) = pr[j] / beta;
    // gamma row
    double c_eta = alpha - rr - 1.0 / d - (wp * rr - wm) - wp * wp * rr / 3.0 - wm * wm * d / 3.0;
    op.A(1, 0) = c_eta;
    for (int j = 0; j < N; j++) {
        op.A(1, o_gp + j) += 2.0 * wp * cz.w[j];
        op.A(1, o_gm + j) += 2.0 * wm * cz.w[j];
    }
    for (int i = 0; i < N; i++) {
        double z = cz.z[i];
        // phi_bar+ row: Gam+_z / rr + wp (2z-1) eta
        for (int k = 0; k < N; k++) op.A(o_fp + i, o_gp + k) += cz.D(i, k) / rr;
        op.A(o_fp + i, 0) += wp * (2.0 * z - 1.0);
        // Gam+ row: z (rr - wp rr (z-1)) / beta * paren - rr phi+_z
        double cp = z * (rr - wp * rr * (z - 1.0)) / beta;
        for (int j = 0; j < 2 + 4 * N; j++) op.A(o_gp + i, j) += cp * pr[j];
        for (int k = 0; k < N; k++) op.A(o_gp + i, o_fp + k) -= rr * cz.D(i, k);
        // phi_bar- row: Gam-_z / d + wm (2z-1) eta
        for (int k = 0; k < N; k++) op.A(o_fm + i, o_gm + k) += cz.D(i, k) / d;
        op.A(o_fm + i, 0) += wm * (2.0 * z - 1.0);
        // Gam- row: z (-d + wm d^2 (1-z)) / (d beta) * paren - phi-_z / d
        double cm = z * (-d + wm * d * d * (1.0 - z)) / (d * beta);
        for (int j = 0; j < 2 + 4 * N; j++) op.A(o_gm + i, j) += cm * pr[j];
        for (int k = 0; k < N; k++) op.A(o_gm + i, o_fm + k) -= cz.D(i, k) / d;
    }

    // Domain constraints: mean-free phi_bars, Neumann ends coupled through
    // paren, Gamma vanishing at both ends.
    for (int j = 0; j < N; j++) {
        op.C(0, o_fp + j) = cz.w[j];
        op.C(1, o_fm + j) = cz.w[j];
        op.C(2, o_fp + j) = cz.D(0, j);
        op.C(3, o_fm + j) = cz.D(0, j);
        op.C(4, o_fp + j) = cz.D(N - 1, j);
        op.C(5, o_fm + j) = cz.D(N - 1, j);
    }
    for (int j = 0; j < 2 + 4 * N; j++) {
        op.C(4, j) -= pr[j] / beta;
        op.C(5, j) += d * pr[j] / beta;
    }
    op.C(6, o_gp) = 1.0;
    op.C(7, o_gp + N - 1) = 1.0;
    op.C(8, o_gm) = 1.0;
    op.C(9, o_gm + N - 1) = 1.0;

    // Rows sacrificed to the constraints: function-block endpoints (the Gamma
    // endpoint rows vanish identically on the constrained space, the phi ones
    // are the usual boundary collocation sacrifice) plus one interior Gamma
    // row per layer paired with the mean conditions.  Dropping the lambda
    // Gamma(z_mid) sample leaves the Gamma midpoint cardinal directions as
    // infinite-eigenvalue modes of the pencil; the spectrum is therefore
    // extracted by shift-invert rather than direct inversion of S Z.
    int mid = N / 2;
    std::vector<bool> drop(2 + 4 * N, false);
    for (int r : {o_fp, o_fp + N - 1, o_fm, o_fm + N - 1, o_gp, o_gp + mid, o_gp + N - 1, o_gm, o_gm + mid,
                  o_gm + N - 1})
        drop[r] = true;
    for (int r = 0; r < 2 + 4 * N; r++)
        if (!drop[r]) op.kept_rows.push_back(r);
    return op;
}

inline std::vector<double> apply(const discrete_operator& op, const state_vector& u) { return matvec(op.A, u.flatten()); }

/** Weighted norm: scalars plus L2 of each z-profile. */
inline double state_norm(const discrete_operator& op, const std::vector<double>& u) {
    int N = op.N;
    double s = u[0] * u[0] + u[1] * u[1];
    for (int b = 0; b < 4; b++)
        for (int i = 0; i < N; i++) s += op.cz.w[i] * u[2 + b * N + i] * u[2 + b * N + i];
    return std::sqrt(s);
}

/** Position-independent symplectic form restricted to the chi-free state. */
inline double symplectic_pairing(const discrete_operator& op, const state_vector& u, const state_vector& v) {
    // Omega(u, v) = gamma_v eta_u - eta_v gamma_u
    //   + int (Gam_v' phi_u - phi_v Gam_u') dz   in each layer
    const cheb_grid& cz = op.cz;
    double s = v.gamma * u.eta - v.eta * u.gamma;
    std::vector<double> dgu = cz.derivative(u.Gam_p), dgv = cz.derivative(v.Gam_p);
    for (int i = 0; i < op.N; i++) s += cz.w[i] * (dgv[i] * u.phi_p[i] - v.phi_p[i] * dgu[i]);
    dgu = cz.derivative(u.Gam_m);
    dgv = cz.derivative(v.Gam_m);
    for (int i = 0; i < op.N; i++) s += cz.w[i] * (dgv[i] * u.phi_m[i] - v.phi_m[i] * dgu[i]);
    return s;
}

/** The eigenvector e1 and generalized eigenvector e2 of the 0^2 resonance. */
inline state_vector eigenvector_e1(const discrete_operator& op) {
    state_vector e1(op.N);
    e1.eta = 1.0;
    for (int i = 0; i < op.N; i++) {
        double z = op.cz.z[i];
        e1.Gam_p[i] = op.wp * op.np.varrho * (z - z * z);
        e1.Gam_m[i] = op.wm * op.np.d_ratio * (z - z * z);
    }
    return e1;
}

inline state_vector eigenvector_e2(const discrete_operator& op) {
    state_vector e2(op.N);
    e2.gamma = op.np.beta - (op.np.varrho + op.np.d_ratio) / 3.0 -
               (op.wp * op.np.varrho - op.wm * op.np.d_ratio * op.np.d_ratio) / 12.0;
    for (int i = 0; i < op.N; i++) {
        double z = op.cz.z[i];
        e2.phi_p[i] = 0.5 * (z * z - 1.0 / 3.0);
        e2.phi_m[i] = -op.np.d_ratio * 0.5 * (z * z - 1.0 / 3.0);
    }
    return e2;
}

struct jordan_report {
    double res_e1 = 0.0;      // ||L e1||
    double res_e2 = 0.0;      // ||L e2 - e1||
    double pairing = 0.0;     // Omega(e1, e2), expected beta_star
    double beta_star = 0.0;
    int kernel_dim = 0;       // numerical kernel dimension of the reduced operator
};

/** Numerical kernel dimension of a square matrix by deflated inverse
 * iteration on A^{-T} A^{-1} (LU solves, no explicit squaring, so near-zero
 * singular values are resolved to machine precision rather than sqrt(eps)).
 * Directions with ||A v|| <= rel_tol ||A||_inf count as kernel. */
inline int matrix_kernel_dimension(const matrix& A, double rel_tol = 1e-9, int max_dim = 6) {
    int m = A.rows;
    double anorm = 0.0;
    for (int i = 0; i < m; i++) {
        double s = 0.0;
        for (int j = 0; j < m; j++) s += std::fabs(A(i, j));
        anorm = std::max(anorm, s);
    }
    if (anorm == 0.0) return m;
    matrix Areg = A, At(m, m);
    for (int i = 0; i < m; i++) Areg(i, i) += 1e-14 * anorm; // keeps LU of a singular matrix alive
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++) At(i, j) = Areg(j, i);
    lu_factor lu(std::move(Areg)), lut(std::move(At));
    if (lu.singular || lut.singular) return -1; // regularization failed; caller treats as fault

    std::vector<std::vector<double>> basis;
    for (int dim = 0; dim <= max_dim; dim++) {
        std::vector<double> x(m);
        for (int i = 0; i < m; i++) x[i] = std::sin(1.0 + 0.7 * i + dim);
        for (int it = 0; it < 40; it++) {
            for (const auto& b : basis) {
                double dot = 0.0;
                for (int i = 0; i < m; i++) dot += x[i] * b[i];
                for (int i = 0; i < m; i++) x[i] -= dot * b[i];
            }
            double nx = 0.0;
            for (double v : x) nx += v * v;
            nx = std::sqrt(nx);
            if (nx == 0.0) break;
            for (double& v : x) v /= nx;
            if (it == 39) break;
            x = lu.solve(lut.solve(x)); // power step on (A^T A)^{-1}: right singular direction
        }
        std::vector<double> Ax = matvec(A, x);
        double sigma = 0.0;
        for (double v : Ax) sigma += v * v;
        sigma = std::sqrt(sigma);
        if (sigma > rel_tol * anorm) return dim;
        basis.push_back(x);
    }
    return max_dim;
}

/** Constrained pencil (S A Z, S Z): the operator and the eigenvalue sampling
 * restricted to the constraint space and the kept collocation rows. */
struct reduced_pencil {
    matrix SAZ;
    matrix SZ;
};

inline reduced_pencil reduced_matrices(const discrete_operator& op) {
    matrix Z = nullspace_basis(op.C);
    int m = Z.cols;
    matrix AZ = matmul(op.A, Z);
    reduced_pencil rp{matrix(m, m), matrix(m, m)};
    for (int r = 0; r < m; r++) {
        int row = op.kept_rows[r];
        for (int j = 0; j < m; j++) {
            rp.SAZ(r, j) = AZ(row, j);
            rp.SZ(r, j) = Z(row, j);
        }
    }
    return rp;
}

/** Finite eigenvalues of the pencil by real shift-invert: eigenvalues theta of
 * (SAZ - sigma SZ)^{-1} SZ map to lambda = sigma + 1/theta; the singular
 * sampling directions sit at theta = 0 and are discarded. */
inline std::vector<std::complex<double>> pencil_eigenvalues(const reduced_pencil& rp) {
    int m = rp.SAZ.rows;
    const double shifts[] = {1.2345678912345, 2.7182818284590, 0.5772156649015, 3.9062499999, 1.7320508075689};
    for (double sigma : shifts) {
        matrix Ms(m, m);
        for (int i = 0; i < m; i++)
            for (int j = 0; j < m; j++) Ms(i, j) = rp.SAZ(i, j) - sigma * rp.SZ(i, j);
        lu_factor lu(std::move(Ms));
        if (lu.singular) continue;
        matrix K = lu.solve_matrix(rp.SZ);
        std::vector<std::complex<double>> th = eigenvalues(std::move(K));
        double thmax = 0.0;
        for (auto& t : th) thmax = std::max(thmax, std::abs(t));
        if (thmax == 0.0) continue;
        std::vector<std::complex<double>> out;
        for (auto& t : th) {
            if (std::abs(t) < 1e-10 * thmax) continue; // infinite modes of the pencil
            out.push_back(sigma + 1.0 / t);
        }
        std::sort(out.begin(), out.end(), [](const std::complex<double>& x, const std::complex<double>& y) {
            if (x.real() != y.real()) return x.real() < y.real();
            return x.imag() < y.imag();
        });
        return out;
    }
    throw numerical_error("spatial", "shift-invert failed for every trial shift", 0.0);
}

inline std::vector<std::complex<double>> spectrum(const discrete_operator& op, double window) {
    reduced_pencil rp = reduced_matrices(op);
    std::vector<std::complex<double>> all = pencil_eigenvalues(rp);
    std::vector<std::complex<double>> out;
    for (auto& l : all)
        if (std::fabs(l.imag()) <= window) out.push_back(l);
    return out;
}

/** Verify L e1 = 0, L e2 = e1 and the symplectic normalization.  Rejects
 * parameters away from criticality (tolerance 1e-12 on alpha - alpha0). */
inline jordan_report jordan_chain_check(const physical_params& p, int N) {
    nondim_params np0 = nondim(p);
    if (std::fabs(np0.alpha - np0.alpha0) > 1e-12)
        throw config_error("spatial: jordan chain check requires alpha = alpha0");
    discrete_operator op = assemble(p, N, np0.alpha0);
    state_vector e1 = eigenvector_e1(op), e2 = eigenvector_e2(op);
    jordan_report rep;
    std::vector<double> r1 = apply(op, e1);
    rep.res_e1 = state_norm(op, r1);
    std::vector<double> r2 = apply(op, e2);
    std::vector<double> f1 = e1.flatten();
    for (size_t i = 0; i < r2.size(); i++) r2[i] -= f1[i];
    rep.res_e2 = state_norm(op, r2);
    rep.pairing = symplectic_pairing(op, e1, e2);
    rep.beta_star = op.np.beta_star;

    // geometric multiplicity of lambda = 0: null directions of S A Z (the
    // midpoint cardinal modes are not in its kernel, so no correction needed)
    reduced_pencil rp = reduced_matrices(op);
    rep.kernel_dim = matrix_kernel_dimension(rp.SAZ);
    return rep;
}

} // namespace spatial
} // namespace iwave

#endif
