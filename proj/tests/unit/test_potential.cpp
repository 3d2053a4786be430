#include <doctest.h>

#include <cmath>

#include "hill/io.hpp"
#include "hill/potential.hpp"

using namespace hill;

TEST_SUITE("potential") {
    TEST_CASE("fourier construction and evaluation") {
        const Potential z = Potential::fourier({});
        CHECK(z.is_zero());
        CHECK(z.mean() == cplx(0.0));
        CHECK(std::abs(z(0.3)) == 0.0);

        const Potential g = Potential::gasymov(1.0);
        CHECK(std::abs(g(0.0) - 1.0) < 1e-15);
        CHECK(std::abs(g(kPi / 2) + 1.0) < 1e-15);
        CHECK(g.mean() == cplx(0.0));

        const cplx c(0.3, 0.1);
        const Potential m = Potential::fourier({{1, c}, {-1, c}});
        for (double x : {0.0, 0.4, 1.3, 2.9}) CHECK(std::abs(m(x) - 2.0 * c * std::cos(2.0 * x)) < 1e-14);
    }

    TEST_CASE("periodicity and mean") {
        const Potential V = Potential::fourier({{0, {5, 1}}, {2, {0.5, -0.2}}, {-3, {0.1, 0.4}}});
        for (int m : {-7, -1, 1, 3, 10})
            for (double x : {0.1, 1.0, 2.5}) CHECK(std::abs(V(x + m * kPi) - V(x)) < 1e-12);
        CHECK(V.mean() == cplx(5, 1));
        const Potential W = V.shifted_to_zero_mean();
        CHECK(std::abs(W.mean()) == 0.0);
        CHECK(std::abs(W.shifted_to_zero_mean()(0.7) - W(0.7)) == 0.0);
        CHECK(Potential::constant({5, 1}).shifted_to_zero_mean().is_zero());
    }

    TEST_CASE("sampled potentials interpolate trigonometrically") {
        std::vector<cplx> s(16);
        for (int j = 0; j < 16; ++j) s[j] = std::cos(2.0 * j * kPi / 16) + cplx(0, 0.2);
        const Potential V = Potential::sampled(s);
        for (double x : {0.05, 0.9, 2.2}) CHECK(std::abs(V(x) - (std::cos(2.0 * x) + cplx(0, 0.2))) < 1e-13);
        CHECK(std::abs(V.mean() - cplx(0, 0.2)) < 1e-15);
    }

    TEST_CASE("presets and JSON potentials") {
        CHECK(std::abs(Potential::preset("mathieu:0.5")(0.0) - 1.0) < 1e-15);
        CHECK(std::abs(Potential::preset("mathieu:0.3+0.1i")(0.0) - cplx(0.6, 0.2)) < 1e-15);
        CHECK_THROWS_AS(Potential::preset("nope"), ConfigError);

        const Potential V = potential_from_json(json::parse(R"({"fourier": {"1": [0.5, 0], "-1": [0.5, 0]}})"));
        CHECK(std::abs(V(0.3) - std::cos(0.6)) < 1e-14);
        const Potential W = potential_from_json(potential_to_json(V));
        CHECK(std::abs(W(1.1) - V(1.1)) < 1e-15);
        CHECK_THROWS_AS(potential_from_json(json::parse(R"({"fourier": {"x": [1, 0]}})")), ConfigError);
        CHECK_THROWS_AS(potential_from_json(json::parse(R"({"other": 1})")), ConfigError);
        CHECK_THROWS_AS(potential_from_json(json::parse(R"({"samples": []})")), ConfigError);
    }
}
