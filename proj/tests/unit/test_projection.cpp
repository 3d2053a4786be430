#include <doctest.h>

#include <cmath>
#include <random>

#include "hill/projection.hpp"

using namespace hill;

namespace {

// closed-form free resolvent at z = -1 applied to a gaussian: (1/2) int e^{-|x-y|} g(y) dy
double free_resolvent_gaussian(double x, double c, double s) {
    const double u = x - c;
    return 0.25 * s * std::sqrt(2.0 * kPi) * std::exp(0.5 * s * s) *
           (std::exp(-u) * std::erfc((s * s - u) / (s * std::sqrt(2.0))) +
            std::exp(u) * std::erfc((s * s + u) / (s * std::sqrt(2.0))));
}

// band projection of the free operator: wave numbers a <= |k| <= b
cplx free_band_projection(double x, double a, double b, double c, double s) {
    std::vector<double> gx, gw;
    gauss_legendre(40, gx, gw);
    cplx r = 0.0;
    for (int sign : {-1, 1})
        for (std::size_t q = 0; q < gx.size(); ++q) {
            const double k = sign * (0.5 * (a + b) + 0.5 * (b - a) * gx[q]);
            const double w = 0.5 * (b - a) * gw[q];
            r += w * s * std::sqrt(2.0 * kPi) * std::exp(-0.5 * s * s * k * k) * std::exp(cplx(0, k * (x - c)));
        }
    return r / (2.0 * kPi);
}

}  // namespace

TEST_SUITE("projection") {
    TEST_CASE("gel'fand transform examples") {
        GridFunction g = GridFunction::zeros(4, 16);
        for (int j = 0; j < 16; ++j) g.at(0, j) = std::sin(j + 1.0);
        g.update_support();
        const GelfandField G = gelfand_forward(g, uniform_t_grid(8));
        for (std::size_t m = 0; m < 8; ++m)
            for (int j = 0; j < 16; ++j) CHECK(std::abs(G.at(m, j) - g.at(0, j)) < 1e-15);

        GridFunction h = GridFunction::zeros(4, 16);
        for (int j = 0; j < 16; ++j) h.at(-1, j) = std::cos(j + 0.5);
        h.update_support();
        const GelfandField H = gelfand_forward(h, uniform_t_grid(8));
        for (std::size_t m = 0; m < 8; ++m)
            for (int j = 0; j < 16; ++j) CHECK(std::abs(std::abs(H.at(m, j)) - std::abs(h.at(-1, j))) < 1e-15);
    }

    TEST_CASE("gel'fand unitarity and inversion") {
        std::mt19937_64 rng(11);
        std::normal_distribution<double> d;
        GridFunction g = GridFunction::zeros(8, 32);
        for (int n = -4; n < 4; ++n)
            for (int j = 0; j < 32; ++j) g.at(n, j) = {d(rng), d(rng)};
        g.update_support();
        const GelfandField G = gelfand_forward(g, uniform_t_grid(16));
        double n2 = 0.0;
        for (cplx v : G.values) n2 += std::norm(v);
        CHECK(std::abs(std::sqrt(n2 * g.h() / 16.0) - g.norm()) < 1e-10 * g.norm());
        CHECK((gelfand_inverse(G, 8) - g).norm() < 1e-10 * g.norm());
        CHECK_THROWS_AS(gelfand_inverse(G, 9), PreconditionError);
    }

    TEST_CASE("free band projection matches the Fourier oracle") {
        const Potential V = Potential::zero();
        const SpectrumPortrait P = spectrum_portrait(V, 3);
        const GridFunction g = gaussian(12, 64, 0.3, 1.0);
        for (int b = 0; b < 3; ++b) {
            const GridFunction p = project(V, P.arcs[b], g);
            double worst = 0.0;
            for (int j = 0; j < p.size(); j += 5)
                worst = std::max(worst, std::abs(p.values[j] - free_band_projection(p.x(j), b, b + 1.0, 0.3, 1.0)));
            CHECK(worst < 1e-4);
        }
    }

    TEST_CASE("projection algebra on open bands") {
        const Potential V = Potential::preset("mathieu:0.5");
        const SpectrumPortrait P = spectrum_portrait(V, 3);
        const GridFunction g = bump(16, 64, 0.3, 1.5);
        const GridFunction p1 = project(V, P.arcs[0], g);
        CHECK((project(V, P.arcs[0], p1) - p1).norm() <= 1e-3 * p1.norm());
        CHECK(project(V, P.arcs[1], p1).norm() <= 1e-3 * g.norm());
        // a split arc adds up
        ProjectionOptions lo, hi;
        lo.t_hi = 1.0;
        hi.t_lo = 1.0;
        CHECK((project(V, P.arcs[0], g, lo) + project(V, P.arcs[0], g, hi) - p1).norm() < 1e-10 * p1.norm());
    }

    TEST_CASE("expansion is linear and complete") {
        const Potential V = Potential::preset("mathieu:0.5");
        const SpectrumPortrait P = spectrum_portrait(V, 8);
        const GridFunction g1 = gaussian(8, 32, 0.3, 1.0), g2 = bump(8, 32, -0.5, 1.2);
        const cplx a(0.7, -0.2), b(-1.1, 0.4);
        const GridFunction lhs = expand(V, P, a * g1 + b * g2, 3).sum;
        const GridFunction rhs = a * expand(V, P, g1, 3).sum + b * expand(V, P, g2, 3).sum;
        CHECK((lhs - rhs).norm() < 1e-10 * lhs.norm());
        double prev = 1e300;
        for (int bm : {2, 4, 8}) {
            const double e = (g1 - expand(V, P, g1, bm).sum).norm();
            CHECK(e <= prev);
            prev = e;
        }
        CHECK(prev <= 5e-2 * g1.norm());
    }

    TEST_CASE("expansion refuses singular arcs") {
        const Potential V = Potential::preset("gasymov:1");
        const SpectrumPortrait P = spectrum_portrait(V, 3);
        const GridFunction g = gaussian(4, 32, 0.0, 1.0);
        CHECK_THROWS_AS(expand(V, P, g, 2), SingularArcError);
        CHECK_THROWS_AS(project(V, P.arcs[0], g), SingularArcError);
    }

    TEST_CASE("fiber expansions") {
        const double t = kPi / 2;
        const auto f = [&](double x) {
            cplx s = 0.0;
            for (int n = -2; n <= 2; ++n) s += cplx(1.0 / (1 + n * n), 0.3 * n) * std::exp(cplx(0, (2 * n + t / kPi) * x));
            return s;
        };
        CHECK(fiber_expansion(Potential::zero(), t, f, 6).residual < 1e-8);

        const double t1 = 1.0;
        const auto g = [&](double x) { return std::exp(cplx(0, t1 * x / kPi)) * std::exp(cplx(std::cos(2 * x), 0.5 * std::sin(4 * x))); };
        CHECK(fiber_expansion(Potential::preset("mathieu:0.3"), t1, g, 24).residual < 1e-3);
        CHECK_THROWS_AS(fiber_expansion(Potential::zero(), 0.0, f, 4), PreconditionError);
    }

    TEST_CASE("biorthogonality") {
        for (const char* p : {"zero", "mathieu:0.5", "mathieu:0.3+0.1i"})
            for (double t : {0.5, 1.5, 2.5}) CHECK(biorthogonality_residual(Potential::preset(p), t, 8) < 1e-7);
    }

    TEST_CASE("spectral matrix") {
        const double t = 1.0;
        const double k = t / kPi;
        const auto S = spectral_matrix(Potential::zero(), k * k, t);
        CHECK(S[1] == S[2]);
        CHECK(std::abs(S[1]) < 1e-12);
        CHECK(std::abs(S[0] * S[3] - S[1] * S[2] - 1.0 / (4.0 * kPi * kPi)) < 1e-10);
        // free density: phi/(2 pi sin t) = 1/(2 pi k)
        CHECK(std::abs(S[0] - 1.0 / (2.0 * kPi * k)) < 1e-10);
    }

    TEST_CASE("resolvent") {
        const GridFunction g = gaussian(8, 64, 0.3, 1.0);
        const GridFunction r = resolvent_apply(Potential::zero(), -1.0, g);
        double worst = 0.0;
        for (int j = 0; j < r.size(); ++j) worst = std::max(worst, std::abs(r.values[j] - free_resolvent_gaussian(r.x(j), 0.3, 1.0)));
        CHECK(worst < 1e-6);

        const Potential V = Potential::preset("mathieu:0.5");
        const SpectrumPortrait P = spectrum_portrait(V, 3);
        const GridFunction b = bump(16, 64, 0.3, 1.5);
        const cplx z(-2.0, 1.0);
        const GridFunction rp = resolvent_apply(V, z, project(V, P.arcs[0], b));
        const GridFunction pr = project(V, P.arcs[0], resolvent_apply(V, z, b));
        CHECK((rp - pr).norm() <= 1e-3 * b.norm());
        CHECK_THROWS_AS(resolvent_apply(Potential::zero(), 2.0, g), NearSpectrumError);
    }
}
