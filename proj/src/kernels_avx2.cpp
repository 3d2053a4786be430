// Compiled with -mavx2 -mfma; only called after a runtime CPU check.
#include "hill/kernels.hpp"

#include <immintrin.h>

namespace hill::kernels::avx2 {

namespace {

inline double hsum_even(__m256d v) {
    alignas(32) double t[4];
    _mm256_store_pd(t, v);
    return t[0] + t[2];
}
inline double hsum_odd(__m256d v) {
    alignas(32) double t[4];
    _mm256_store_pd(t, v);
    return t[1] + t[3];
}

// acc1 += a_re*b, acc2 += a_im*swap(b) over pairs of complex numbers
inline void mul_accumulate(const cplx* a, const cplx* b, std::size_t n,
                           __m256d& acc1, __m256d& acc2) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        __m256d are = _mm256_movedup_pd(va);
        __m256d aim = _mm256_permute_pd(va, 0xF);
        __m256d bsw = _mm256_permute_pd(vb, 0x5);
        acc1 = _mm256_fmadd_pd(are, vb, acc1);
        acc2 = _mm256_fmadd_pd(aim, bsw, acc2);
    }
}

}  // namespace

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
    __m256d acc1 = _mm256_setzero_pd(), acc2 = _mm256_setzero_pd();
    mul_accumulate(a, b, n, acc1, acc2);
    double re = hsum_even(acc1) - hsum_even(acc2);
    double im = hsum_odd(acc1) + hsum_odd(acc2);
    if (n % 2) {
        const cplx x = a[n - 1], y = b[n - 1];
        re += x.real() * y.real() - x.imag() * y.imag();
        im += x.real() * y.imag() + x.imag() * y.real();
    }
    return {re, im};
}

cplx dotc(const cplx* a, const cplx* b, std::size_t n) {
    __m256d acc1 = _mm256_setzero_pd(), acc2 = _mm256_setzero_pd();
    mul_accumulate(a, b, n, acc1, acc2);
    double re = hsum_even(acc1) + hsum_even(acc2);
    double im = hsum_odd(acc1) - hsum_odd(acc2);
    if (n % 2) {
        const cplx x = a[n - 1], y = b[n - 1];
        re += x.real() * y.real() + x.imag() * y.imag();
        im += x.real() * y.imag() - x.imag() * y.real();
    }
    return {re, im};
}

double norm2(const cplx* a, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(a);
    const std::size_t m = 2 * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        __m256d v = _mm256_loadu_pd(p + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum_even(acc) + hsum_odd(acc);
    for (; i < m; ++i) s += p[i] * p[i];
    return s;
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_setr_pd(-alpha.imag(), alpha.imag(), -alpha.imag(), alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(px + 2 * i);
        __m256d vy = _mm256_loadu_pd(py + 2 * i);
        __m256d xsw = _mm256_permute_pd(vx, 0x5);
        vy = _mm256_fmadd_pd(ar, vx, vy);
        vy = _mm256_fmadd_pd(ai, xsw, vy);
        _mm256_storeu_pd(py + 2 * i, vy);
    }
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + alpha.real() * xr - alpha.imag() * xi,
                y[i].imag() + alpha.real() * xi + alpha.imag() * xr};
    }
}

void lincomb(double* out, const double* base, std::size_t n, double h,
             const double* c, const double* const* v, std::size_t nv) {
    std::size_t i = 0;
    const __m256d vh = _mm256_set1_pd(h);
    for (; i + 4 <= n; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < nv; ++j)
            acc = _mm256_fmadd_pd(_mm256_set1_pd(c[j]), _mm256_loadu_pd(v[j] + i), acc);
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(vh, acc, _mm256_loadu_pd(base + i)));
    }
    for (; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < nv; ++j) acc += c[j] * v[j][i];
        out[i] = base[i] + h * acc;
    }
}

}  // namespace hill::kernels::avx2
