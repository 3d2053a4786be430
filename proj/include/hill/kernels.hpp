#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference and an
// AVX2 variant; the dispatcher picks one at first use (HILL_SIMD=scalar
// forces the reference path).

#include <complex>
#include <cstddef>
#include <span>

namespace hill::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

Isa active_isa();
bool isa_available(Isa isa);
void force_isa(Isa isa);  // tests only
const char* isa_name(Isa isa);

// sum a_i * b_i (bilinear, no conjugation)
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
// sum conj(a_i) * b_i
cplx dotc(std::span<const cplx> a, std::span<const cplx> b);
double norm2(std::span<const cplx> a);
// y += alpha * x
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
// out = base + h * sum_j c[j] * v[j]   (real arrays of length n)
void lincomb(double* out, const double* base, std::size_t n, double h,
             const double* c, const double* const* v, std::size_t nv);

namespace scalar {
cplx dot(const cplx* a, const cplx* b, std::size_t n);
cplx dotc(const cplx* a, const cplx* b, std::size_t n);
double norm2(const cplx* a, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
void lincomb(double* out, const double* base, std::size_t n, double h,
             const double* c, const double* const* v, std::size_t nv);
}  // namespace scalar

namespace avx2 {
cplx dot(const cplx* a, const cplx* b, std::size_t n);
cplx dotc(const cplx* a, const cplx* b, std::size_t n);
double norm2(const cplx* a, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
void lincomb(double* out, const double* base, std::size_t n, double h,
             const double* c, const double* const* v, std::size_t nv);
}  // namespace avx2

}  // namespace hill::kernels
