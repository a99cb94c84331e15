#ifndef IWAVE_LINALG_HPP
#define IWAVE_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace iwave {

/** Dense row-major matrix of doubles. */
struct matrix {
    int rows = 0, cols = 0;
    std::vector<double> a;

    matrix() = default;
    matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static matrix identity(int n) {
        matrix m(n, n);
        for (int i = 0; i < n; i++) m(i, i) = 1.0;
        return m;
    }
};

inline matrix matmul(const matrix& A, const matrix& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matmul: shape mismatch");
    matrix C(A.rows, B.cols);
    for (int i = 0; i < A.rows; i++) {
        for (int k = 0; k < A.cols; k++) {
            double aik = A(i, k);
            if (aik == 0.0) continue;
            const double* brow = &B.a[static_cast<size_t>(k) * B.cols];
            double* crow = &C.a[static_cast<size_t>(i) * C.cols];
            for (int j = 0; j < B.cols; j++) crow[j] += aik * brow[j];
        }
    }
    return C;
}

inline std::vector<double> matvec(const matrix& A, const std::vector<double>& x) {
    if (A.cols != static_cast<int>(x.size())) throw std::invalid_argument("matvec: shape mismatch");
    std::vector<double> y(A.rows, 0.0);
    for (int i = 0; i < A.rows; i++) {
        const double* arow = &A.a[static_cast<size_t>(i) * A.cols];
        double s = 0.0;
        for (int j = 0; j < A.cols; j++) s += arow[j] * x[j];
        y[i] = s;
    }
    return y;
}

/** LU factorization with partial pivoting, stored in place. */
struct lu_factor {
    matrix lu;
    std::vector<int> piv;
    bool singular = false;

    explicit lu_factor(matrix A) : lu(std::move(A)), piv(lu.rows) {
        int n = lu.rows;
        if (lu.cols != n) throw std::invalid_argument("lu_factor: matrix not square");
        for (int i = 0; i < n; i++) piv[i] = i;
        for (int k = 0; k < n; k++) {
            int p = k;
            double best = std::fabs(lu(k, k));
            for (int i = k + 1; i < n; i++) {
                double v = std::fabs(lu(i, k));
                if (v > best) { best = v; p = i; }
            }
            if (best == 0.0) { singular = true; continue; }
            if (p != k) {
                for (int j = 0; j < n; j++) std::swap(lu(k, j), lu(p, j));
                std::swap(piv[k], piv[p]);
            }
            for (int i = k + 1; i < n; i++) {
                double f = lu(i, k) / lu(k, k);
                lu(i, k) = f;
                for (int j = k + 1; j < n; j++) lu(i, j) -= f * lu(k, j);
            }
        }
    }

    std::vector<double> solve(const std::vector<double>& b) const {
        int n = lu.rows;
        if (singular) throw std::runtime_error("lu_factor: singular matrix");
        std::vector<double> x(n);
        for (int i = 0; i < n; i++) x[i] = b[piv[i]];
        for (int i = 1; i < n; i++) {
            double s = x[i];
            for (int j = 0; j < i; j++) s -= lu(i, j) * x[j];
            x[i] = s;
        }
        for (int i = n - 1; i >= 0; i--) {
            double s = x[i];
            for (int j = i + 1; j < n; j++) s -= lu(i, j) * x[j];
            x[i] = s / lu(i, i);
        }
        return x;
    }

    matrix solve_matrix(const matrix& B) const {
        matrix X(B.rows, B.cols);
        std::vector<double> col(B.rows);
        for (int j = 0; j < B.cols; j++) {
            for (int i = 0; i < B.rows; i++) col[i] = B(i, j);
            std::vector<double> x = solve(col);
            for (int i = 0; i < B.rows; i++) X(i, j) = x[i];
        }
        return X;
    }
};

/** Symmetric eigensolver: Householder tridiagonalization followed by
 * implicit-shift QL.  Eigenvalues returned ascending; columns of `vectors`
 * are the corresponding orthonormal eigenvectors. */
struct sym_eig_result {
    std::vector<double> values;
    matrix vectors;
};

inline sym_eig_result sym_eig(const matrix& A_in, bool want_vectors = true) {
    int n = A_in.rows;
    if (A_in.cols != n) throw std::invalid_argument("sym_eig: matrix not square");
    matrix z = A_in;
    std::vector<double> d(n, 0.0), e(n, 0.0);

    // tred2: reduce to symmetric tridiagonal, accumulating transforms in z.
    for (int i = n - 1; i >= 1; i--) {
        int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; k++) scale += std::fabs(z(i, k));
            if (scale == 0.0) {
                e[i] = z(i, l);
            } else {
                for (int k = 0; k <= l; k++) {
                    z(i, k) /= scale;
                    h += z(i, k) * z(i, k);
                }
                double f = z(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                z(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; j++) {
                    if (want_vectors) z(j, i) = z(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; k++) g += z(j, k) * z(i, k);
                    for (int k = j + 1; k <= l; k++) g += z(k, j) * z(i, k);
                    e[j] = g / h;
                    f += e[j] * z(i, j);
                }
                double hh = f / (h + h);
                for (int j = 0; j <= l; j++) {
                    f = z(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; k++) z(j, k) -= f * e[k] + g * z(i, k);
                }
            }
        } else {
            e[i] = z(i, l);
        }
        d[i] = h;
    }
    if (want_vectors) d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; i++) {
        if (want_vectors) {
            int l = i - 1;
            if (d[i] != 0.0) {
                for (int j = 0; j <= l; j++) {
                    double g = 0.0;
                    for (int k = 0; k <= l; k++) g += z(i, k) * z(k, j);
                    for (int k = 0; k <= l; k++) z(k, j) -= g * z(k, i);
                }
            }
            d[i] = z(i, i);
            z(i, i) = 1.0;
            for (int j = 0; j <= l; j++) z(j, i) = z(i, j) = 0.0;
        } else {
            d[i] = z(i, i);
        }
    }

    // tql2: implicit-shift QL on the tridiagonal (d, e).
    for (int i = 1; i < n; i++) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; l++) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; m++) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= 1e-300 || std::fabs(e[m]) <= 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 50) throw std::runtime_error("sym_eig: QL failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; i--) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (want_vectors) {
                        for (int k = 0; k < n; k++) {
                            f = z(k, i + 1);
                            z(k, i + 1) = s * z(k, i) + c * f;
                            z(k, i) = c * z(k, i) - s * f;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    // Sort ascending, keeping vectors aligned.
    std::vector<int> order(n);
    for (int i = 0; i < n; i++) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });
    sym_eig_result res;
    res.values.resize(n);
    if (want_vectors) res.vectors = matrix(n, n);
    for (int j = 0; j < n; j++) {
        res.values[j] = d[order[j]];
        if (want_vectors)
            for (int i = 0; i < n; i++) res.vectors(i, j) = z(i, order[j]);
    }
    return res;
}

namespace detail {

/** Balance a general matrix by similarity scaling (in place). */
inline void balance(matrix& a) {
    int n = a.rows;
    const double radix = 2.0, sqrdx = radix * radix;
    bool last = false;
    while (!last) {
        last = true;
        for (int i = 0; i < n; i++) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; j++)
                if (j != i) {
                    c += std::fabs(a(j, i));
                    r += std::fabs(a(i, j));
                }
            if (c != 0.0 && r != 0.0) {
                double g = r / radix, f = 1.0, s = c + r;
                while (c < g) { f *= radix; c *= sqrdx; }
                g = r * radix;
                while (c > g) { f /= radix; c /= sqrdx; }
                if ((c + r) / f < 0.95 * s) {
                    last = false;
                    g = 1.0 / f;
                    for (int j = 0; j < n; j++) a(i, j) *= g;
                    for (int j = 0; j < n; j++) a(j, i) *= f;
                }
            }
        }
    }
}

/** Reduce to upper Hessenberg form by stabilized elementary similarity
 * transformations (in place; lower part left as garbage and zeroed). */
inline void hessenberg(matrix& a) {
    int n = a.rows;
    for (int m = 1; m < n - 1; m++) {
        double x = 0.0;
        int i = m;
        for (int j = m; j < n; j++) {
            if (std::fabs(a(j, m - 1)) > std::fabs(x)) {
                x = a(j, m - 1);
                i = j;
            }
        }
        if (i != m) {
            for (int j = m - 1; j < n; j++) std::swap(a(i, j), a(m, j));
            for (int j = 0; j < n; j++) std::swap(a(j, i), a(j, m));
        }
        if (x != 0.0) {
            for (i = m + 1; i < n; i++) {
                double y = a(i, m - 1);
                if (y != 0.0) {
                    y /= x;
                    a(i, m - 1) = y;
                    for (int j = m; j < n; j++) a(i, j) -= y * a(m, j);
                    for (int j = 0; j < n; j++) a(j, m) += y * a(j, i);
                }
            }
        }
    }
    for (int i = 2; i < n; i++)
        for (int j = 0; j < i - 1; j++) a(i, j) = 0.0;
}

/** Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only. */
inline std::vector<std::complex<double>> hqr(matrix& a) {
    int n = a.rows;
    std::vector<std::complex<double>> wout(n);
    double anorm = 0.0;
    for (int i = 0; i < n; i++)
        for (int j = std::max(i - 1, 0); j < n; j++) anorm += std::fabs(a(i, j));
    int nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l;
        do {
            for (l = nn; l >= 1; l--) {
                double s = std::fabs(a(l - 1, l - 1)) + std::fabs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::fabs(a(l, l - 1)) + s == s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = a(nn, nn);
            if (l == nn) {
                wout[nn--] = std::complex<double>(x + t, 0.0);
            } else {
                double y = a(nn - 1, nn - 1);
                double w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    double p = 0.5 * (y - x);
                    double q = p * p + w;
                    double z = std::sqrt(std::fabs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + (p >= 0.0 ? std::fabs(z) : -std::fabs(z));
                        wout[nn] = wout[nn - 1] = std::complex<double>(x + z, 0.0);
                        if (z != 0.0) wout[nn] = std::complex<double>(x - w / z, 0.0);
                    } else {
                        wout[nn] = std::complex<double>(x + p, -z);
                        wout[nn - 1] = std::conj(wout[nn]);
                    }
                    nn -= 2;
                } else {
                    if (its == 60) throw std::runtime_error("hqr: too many iterations");
                    double p = 0, q = 0, z = 0, r = 0, s = 0;
                    if (its == 10 || its == 20 || its == 30 || its == 40 || its == 50) {
                        t += x;
                        for (int i = 0; i <= nn; i++) a(i, i) -= x;
                        s = std::fabs(a(nn, nn - 1)) + std::fabs(a(nn - 1, nn - 2));
                        x = y = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    int m;
                    for (m = nn - 2; m >= l; m--) {
                        z = a(m, m);
                        r = x - z;
                        s = y - z;
                        p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - r - s;
                        r = a(m + 2, m + 1);
                        s = std::fabs(p) + std::fabs(q) + std::fabs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        double u = std::fabs(a(m, m - 1)) * (std::fabs(q) + std::fabs(r));
                        double v = std::fabs(p) * (std::fabs(a(m - 1, m - 1)) + std::fabs(z) + std::fabs(a(m + 1, m + 1)));
                        if (u + v == v) break;
                    }
                    for (int i = m + 2; i <= nn; i++) {
                        a(i, i - 2) = 0.0;
                        if (i != m + 2) a(i, i - 3) = 0.0;
                    }
                    for (int k = m; k <= nn - 1; k++) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = 0.0;
                            if (k != nn - 1) r = a(k + 2, k - 1);
                            x = std::fabs(p) + std::fabs(q) + std::fabs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        s = std::sqrt(p * p + q * q + r * r);
                        if (p < 0.0) s = -s;
                        if (s != 0.0) {
                            if (k == m) {
                                if (l != m) a(k, k - 1) = -a(k, k - 1);
                            } else {
                                a(k, k - 1) = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for (int j = k; j <= nn; j++) {
                                p = a(k, j) + q * a(k + 1, j);
                                if (k != nn - 1) {
                                    p += r * a(k + 2, j);
                                    a(k + 2, j) -= p * z;
                                }
                                a(k + 1, j) -= p * y;
                                a(k, j) -= p * x;
                            }
                            int mmin = (nn < k + 3) ? nn : k + 3;
                            for (int i = l; i <= mmin; i++) {
                                p = x * a(i, k) + y * a(i, k + 1);
                                if (k != nn - 1) {
                                    p += z * a(i, k + 2);
                                    a(i, k + 2) -= p * r;
                                }
                                a(i, k + 1) -= p * q;
                                a(i, k) -= p;
                            }
                        }
                    }
                }
            }
        } while (l < nn - 1 && nn >= 0);
    }
    return wout;
}

} // namespace detail

/** All eigenvalues of a general real square matrix. */
inline std::vector<std::complex<double>> eigenvalues(matrix A) {
    if (A.rows != A.cols) throw std::invalid_argument("eigenvalues: matrix not square");
    if (A.rows == 0) return {};
    if (A.rows == 1) return {std::complex<double>(A(0, 0), 0.0)};
    detail::balance(A);
    detail::hessenberg(A);
    auto w = detail::hqr(A);
    std::sort(w.begin(), w.end(), [](const std::complex<double>& x, const std::complex<double>& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return w;
}

/** Orthonormal basis of the null space of C (r x n, r < n), as columns.
 * Computed from a Householder QR of C^T: the trailing columns of Q span
 * ker C when C has full row rank. */
inline matrix nullspace_basis(const matrix& C) {
    int r = C.rows, n = C.cols;
    if (r >= n) throw std::invalid_argument("nullspace_basis: need r < n");
    // Q R = C^T via Householder; accumulate Q explicitly.
    matrix a(n, r);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < r; j++) a(i, j) = C(j, i);
    std::vector<std::vector<double>> vs;
    std::vector<double> betas;
    for (int k = 0; k < r; k++) {
        double nrm = 0.0;
        for (int i = k; i < n; i++) nrm += a(i, k) * a(i, k);
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw std::runtime_error("nullspace_basis: rank-deficient constraints");
        double alpha = (a(k, k) >= 0.0) ? -nrm : nrm;
        std::vector<double> v(n, 0.0);
        v[k] = a(k, k) - alpha;
        for (int i = k + 1; i < n; i++) v[i] = a(i, k);
        double vtv = 0.0;
        for (int i = k; i < n; i++) vtv += v[i] * v[i];
        if (vtv == 0.0) { vs.push_back(v); betas.push_back(0.0); a(k, k) = alpha; continue; }
        double beta = 2.0 / vtv;
        for (int j = k; j < r; j++) {
            double s = 0.0;
            for (int i = k; i < n; i++) s += v[i] * a(i, j);
            s *= beta;
            for (int i = k; i < n; i++) a(i, j) -= s * v[i];
        }
        vs.push_back(v);
        betas.push_back(beta);
    }
    // Z = Q[:, r:n] obtained by applying H_0 H_1 ... H_{r-1} to trailing identity columns.
    matrix Z(n, n - r);
    for (int j = 0; j < n - r; j++) {
        std::vector<double> q(n, 0.0);
        q[r + j] = 1.0;
        for (int k = r - 1; k >= 0; k--) {
            if (betas[k] == 0.0) continue;
            double s = 0.0;
            for (int i = k; i < n; i++) s += vs[k][i] * q[i];
            s *= betas[k];
            for (int i = k; i < n; i++) q[i] -= s * vs[k][i];
        }
        for (int i = 0; i < n; i++) Z(i, j) = q[i];
    }
    return Z;
}

} // namespace iwave

#endif
