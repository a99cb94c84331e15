#ifndef IWAVE_FFT_HPP
#define IWAVE_FFT_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace iwave {

using cvec = std::vector<std::complex<double>>;

inline bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

/** In-place radix-2 FFT.  sign = -1 forward, +1 inverse (inverse is
 * unnormalized; divide by size afterwards). */
inline void fft_inplace(cvec& a, int sign) {
    int n = static_cast<int>(a.size());
    if (!is_power_of_two(n)) throw std::invalid_argument("fft: size must be a power of two");
    for (int i = 1, j = 0; i < n; i++) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        double ang = sign * 2.0 * M_PI / len;
        std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (int k = 0; k < len / 2; k++) {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

/** Forward transform of a real sequence: c_k = sum_j f_j exp(-2*pi*i*j*k/M). */
inline cvec fft_forward(const std::vector<double>& f) {
    cvec a(f.size());
    for (size_t j = 0; j < f.size(); j++) a[j] = f[j];
    fft_inplace(a, -1);
    return a;
}

/** Inverse of fft_forward, returning the real part. */
inline std::vector<double> fft_inverse_real(cvec a) {
    int n = static_cast<int>(a.size());
    fft_inplace(a, +1);
    std::vector<double> f(n);
    for (int j = 0; j < n; j++) f[j] = a[j].real() / n;
    return f;
}

/** Signed wavenumber of mode index m on a period-L grid of size M
 * (m in 0..M-1; the Nyquist mode maps to +M/2). */
inline double fourier_wavenumber(int m, int M, double L) {
    int k = (m <= M / 2) ? m : m - M;
    return 2.0 * M_PI * k / L;
}

/** Spectral derivative of a real periodic grid function. */
inline std::vector<double> spectral_derivative(const std::vector<double>& f, double L) {
    int M = static_cast<int>(f.size());
    cvec a = fft_forward(f);
    for (int m = 0; m < M; m++) {
        if (m == M / 2) {
            a[m] = 0.0; // Nyquist mode has no well-defined odd derivative
        } else {
            double k = fourier_wavenumber(m, M, L);
            a[m] *= std::complex<double>(0.0, k);
        }
    }
    return fft_inverse_real(std::move(a));
}

/** Apply a real even Fourier multiplier sym(k) to a real grid function. */
template <typename Sym>
std::vector<double> apply_multiplier(const std::vector<double>& f, double L, Sym&& sym) {
    int M = static_cast<int>(f.size());
    cvec a = fft_forward(f);
    for (int m = 0; m < M; m++) a[m] *= sym(fourier_wavenumber(m, M, L));
    return fft_inverse_real(std::move(a));
}

} // namespace iwave

#endif
