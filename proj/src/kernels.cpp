#include "hill/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace hill::kernels {

namespace {

Isa detect() {
    if (const char* env = std::getenv("HILL_SIMD"); env && std::strcmp(env, "scalar") == 0)
        return Isa::scalar;
#if defined(HILL_HAVE_AVX2)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::avx2;
#endif
    return Isa::scalar;
}

std::atomic<int>& current() {
    static std::atomic<int> isa{static_cast<int>(detect())};
    return isa;
}

}  // namespace

Isa active_isa() { return static_cast<Isa>(current().load(std::memory_order_relaxed)); }

bool isa_available(Isa isa) {
    if (isa == Isa::scalar) return true;
#if defined(HILL_HAVE_AVX2)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

void force_isa(Isa isa) {
    if (isa_available(isa)) current().store(static_cast<int>(isa));
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

#if defined(HILL_HAVE_AVX2)
#define HILL_DISPATCH(fn, ...) \
    (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define HILL_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
    return HILL_DISPATCH(dot, a.data(), b.data(), a.size());
}
cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
    return HILL_DISPATCH(dotc, a.data(), b.data(), a.size());
}
double norm2(std::span<const cplx> a) { return HILL_DISPATCH(norm2, a.data(), a.size()); }
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    HILL_DISPATCH(axpy, alpha, x.data(), y.data(), x.size());
}
void lincomb(double* out, const double* base, std::size_t n, double h,
             const double* c, const double* const* v, std::size_t nv) {
    HILL_DISPATCH(lincomb, out, base, n, h, c, v, nv);
}

}  // namespace hill::kernels
