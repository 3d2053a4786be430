#include <doctest.h>

#include <random>
#include <vector>

#include "hill/kernels.hpp"

using namespace hill::kernels;

namespace {

std::vector<cplx> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> d;
    std::vector<cplx> v(n);
    for (auto& x : v) x = {d(rng), d(rng)};
    return v;
}

}  // namespace

TEST_SUITE("kernels") {
    TEST_CASE("avx2 variants agree with the scalar reference") {
        if (!isa_available(Isa::avx2)) {
            MESSAGE("AVX2 not available; only the scalar path is exercised");
            return;
        }
        std::mt19937_64 rng(7);
        for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 8u, 17u, 64u, 255u, 1000u}) {
            const auto a = random_vec(rng, n), b = random_vec(rng, n);
            const double tol = 1e-13 * (1.0 + n);
            CHECK(std::abs(scalar::dot(a.data(), b.data(), n) - avx2::dot(a.data(), b.data(), n)) <= tol);
            CHECK(std::abs(scalar::dotc(a.data(), b.data(), n) - avx2::dotc(a.data(), b.data(), n)) <= tol);
            CHECK(std::abs(scalar::norm2(a.data(), n) - avx2::norm2(a.data(), n)) <= tol);
            auto y1 = b, y2 = b;
            const cplx alpha(0.3, -1.2);
            scalar::axpy(alpha, a.data(), y1.data(), n);
            avx2::axpy(alpha, a.data(), y2.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-14);

            std::normal_distribution<double> d;
            const std::size_t m = 2 * n;
            std::vector<double> base(m), o1(m), o2(m);
            std::vector<std::vector<double>> v(5, std::vector<double>(m));
            std::vector<const double*> vp;
            for (auto& x : base) x = d(rng);
            for (auto& row : v) {
                for (auto& x : row) x = d(rng);
                vp.push_back(row.data());
            }
            const double c[5] = {0.1, -0.2, 0.3, 0.05, 1.5};
            scalar::lincomb(o1.data(), base.data(), m, 0.01, c, vp.data(), 5);
            avx2::lincomb(o2.data(), base.data(), m, 0.01, c, vp.data(), 5);
            for (std::size_t i = 0; i < m; ++i) CHECK(std::abs(o1[i] - o2[i]) <= 1e-14);
        }
    }

    TEST_CASE("dispatch honours a forced isa") {
        force_isa(Isa::scalar);
        CHECK(active_isa() == Isa::scalar);
        const std::vector<cplx> a{{1, 2}, {3, 4}}, b{{5, 6}, {7, 8}};
        CHECK(dot(a, b) == cplx(1, 2) * cplx(5, 6) + cplx(3, 4) * cplx(7, 8));
        CHECK(dotc(a, b) == std::conj(cplx(1, 2)) * cplx(5, 6) + std::conj(cplx(3, 4)) * cplx(7, 8));
        CHECK(norm2(a) == doctest::Approx(30.0));
        if (isa_available(Isa::avx2)) {
            force_isa(Isa::avx2);
            CHECK(active_isa() == Isa::avx2);
            CHECK(std::abs(dot(a, b) - (cplx(1, 2) * cplx(5, 6) + cplx(3, 4) * cplx(7, 8))) < 1e-14);
        }
    }
}
