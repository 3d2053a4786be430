#include <doctest.h>

#include <cmath>

#include "hill/arcs.hpp"

using namespace hill;

TEST_SUITE("arcs") {
    TEST_CASE("free arcs follow the parabola") {
        const SpectrumPortrait P = spectrum_portrait(Potential::zero(), 3);
        REQUIRE(P.arcs.size() == 3);
        for (const SpectralArc& a : P.arcs) {
            CHECK_FALSE(a.flagged_singular);
            for (double t : {0.2, 1.0, 2.0, 3.0}) {
                const double s = t / kPi;
                const double k = a.band == 1 ? s : (a.band == 2 ? 2.0 - s : 2.0 + s);
                CHECK(std::abs(arc_point(Potential::zero(), a, t) - k * k) < 1e-9);
                CHECK(std::abs(a.lambda_at(t) - k * k) < 1e-6);
            }
        }
        for (const SingularPoint& s : P.singular_points) CHECK_FALSE(s.spectral_singularity);
    }

    TEST_CASE("mathieu(0.5) bands end at the catalogued edges") {
        const Potential V = Potential::preset("mathieu:0.5");
        const SpectrumPortrait P = spectrum_portrait(V, 3);
        const auto per = expand_multiplicity(P.catalog.periodic), anti = expand_multiplicity(P.catalog.antiperiodic);
        REQUIRE(P.arcs.size() == 3);
        for (const SpectralArc& a : P.arcs) CHECK(a.regular);
        CHECK(std::abs(P.arcs[0].samples.front().lambda - per[0]) < 1e-9);
        CHECK(std::abs(P.arcs[0].samples.back().lambda - anti[0]) < 1e-9);
        CHECK(std::abs(P.arcs[1].samples.back().lambda - anti[1]) < 1e-9);
        CHECK(std::abs(P.arcs[1].samples.front().lambda - per[1]) < 1e-9);
        for (const SpectralArc& a : P.arcs)
            for (const ArcSample& s : a.samples) {
                CHECK(std::abs(s.lambda.imag()) < 1e-9);
                CHECK(std::abs(0.5 * (s.th + s.php) - std::cos(s.t)) < 1e-9);
            }
    }

    TEST_CASE("distance to the spectrum") {
        const SpectrumPortrait P = spectrum_portrait(Potential::zero(), 3);
        CHECK(distance_to_spectrum({2.0, 0.5}, P) == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(distance_to_spectrum({3.0, 0.0}, P) < 1e-9);
        CHECK_THROWS_AS(distance_to_spectrum({100.0, 0.0}, P), WindowError);
    }

    TEST_CASE("gasymov: critical points on the spectrum are spectral singularities") {
        const SpectrumPortrait P = spectrum_portrait(Potential::preset("gasymov:1"), 4);
        int found = 0;
        for (const SingularPoint& s : P.singular_points)
            if (s.spectral_singularity && std::abs(s.lambda - 1.0) < 1e-6) ++found;
        CHECK(found == 1);
    }
}
