#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hill/spectra.hpp"
#include "oracle.hpp"

using namespace hill;

namespace {

std::vector<double> real_parts(const std::vector<SpectralPoint>& p) {
    std::vector<double> r;
    for (cplx z : expand_multiplicity(p)) r.push_back(z.real());
    return r;
}

}  // namespace

TEST_SUITE("spectra") {
    TEST_CASE("free spectra") {
        const Potential V = Potential::zero();
        const auto mu = dirichlet_spectrum(V, 5);
        REQUIRE(mu.size() == 5);
        for (int k = 1; k <= 5; ++k) CHECK(std::abs(mu[k - 1].value - double(k * k)) < 1e-8);
        const PeriodicSpectra pa = periodic_antiperiodic_spectrum(V, 3);
        const std::vector<double> per{0, 4, 4, 16, 16}, anti{1, 1, 9, 9};
        const auto p = expand_multiplicity(pa.periodic), a = expand_multiplicity(pa.antiperiodic);
        REQUIRE(p.size() == per.size());
        REQUIRE(a.size() == anti.size());
        for (std::size_t i = 0; i < per.size(); ++i) CHECK(std::abs(p[i] - per[i]) < 1e-8);
        for (std::size_t i = 0; i < anti.size(); ++i) CHECK(std::abs(a[i] - anti[i]) < 1e-8);
        const auto d = critical_points(V, 4);
        REQUIRE(d.size() == 4);
        for (int k = 1; k <= 4; ++k) CHECK(std::abs(d[k - 1].delta - double(k * k)) < 1e-8);
    }

    TEST_CASE("mathieu(0.5) against the Hill-method oracle") {
        const Potential V = Potential::preset("mathieu:0.5");
        const auto per = oracle::hill_exponential(0.5, 0.0, 64), anti = oracle::hill_exponential(0.5, 1.0, 64);
        const auto dir = oracle::hill_dirichlet(0.5, 64);
        const PeriodicSpectra pa = periodic_antiperiodic_spectrum(V, 3);
        const auto p = real_parts(pa.periodic), a = real_parts(pa.antiperiodic);
        for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(p[i] - per[i]) < 1e-6);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - anti[i]) < 1e-6);
        const auto mu = dirichlet_spectrum(V, 4);
        for (std::size_t i = 0; i < mu.size(); ++i) CHECK(std::abs(mu[i].value - dir[i]) < 1e-6);
        const double t = 1.2;
        const auto fib = oracle::hill_exponential(0.5, t / kPi, 64);
        const auto E = real_parts(fiber_spectrum(V, t, 3));
        for (std::size_t i = 0; i < E.size(); ++i) CHECK(std::abs(E[i] - fib[i]) < 1e-6);
    }

    TEST_CASE("gasymov discriminant equals the free one") {
        const Potential V = Potential::preset("gasymov:1");
        for (cplx z : {cplx(0.5), cplx(4.0), cplx(12.0, 3.0), cplx(-5.0, -2.0)}) {
            const cplx c = std::cos(kPi * std::sqrt(z));
            CHECK(std::abs(monodromy_matrix(V, z).delta_plus() - c) < 1e-8 * std::max(1.0, std::abs(c)));
        }
    }

    TEST_CASE("multiplicities at a free double point") {
        // lambda = 1 at t = pi: double antiperiodic eigenvalue, two independent eigenfunctions
        const Multiplicities m = algebraic_vs_geometric(Potential::zero(), kPi, 1.0);
        CHECK(m.algebraic == 2);
        CHECK(m.geometric == 2);
        const Multiplicities s = algebraic_vs_geometric(Potential::preset("mathieu:0.5"), kPi, 0.4706543549339609);
        CHECK(s.algebraic == 1);
        CHECK(s.geometric == 1);
    }

    TEST_CASE("argument-principle root finder") {
        // (z - 1)(z - 2)^2 (z - 3i)
        AnalyticFn f = [](cplx z) {
            const cplx a = z - 1.0, b = z - 2.0, c = z - cplx(0, 3);
            return AnalyticValue{a * b * b * c, b * b * c + 2.0 * a * b * c + a * b * b, 1e-15};
        };
        auto r = find_roots_in_rect(f, {-1.0, 4.0, -1.0, 1.0});
        std::sort(r.begin(), r.end(), [](const Root& a, const Root& b) { return a.z.real() < b.z.real(); });
        REQUIRE(r.size() == 2);
        CHECK(std::abs(r[0].z - 1.0) < 1e-10);
        CHECK(r[0].multiplicity == 1);
        CHECK(std::abs(r[1].z - 2.0) < 1e-6);
        CHECK(r[1].multiplicity == 2);
    }
}
