#include <doctest.h>

#include <cstring>
#include <sstream>

#include "hill/io.hpp"
#include "hill/validate.hpp"

using namespace hill;

TEST_SUITE("io") {
    TEST_CASE("complex values") {
        CHECK(complex_from_json(json::parse("[1.5, -2]")) == cplx(1.5, -2));
        CHECK(complex_from_json(json::parse("3")) == cplx(3));
        CHECK(complex_from_json(json::parse("\"0.3+0.1i\"")) == cplx(0.3, 0.1));
        CHECK_THROWS_AS(complex_from_json(json::parse("[1]")), ConfigError);
    }

    TEST_CASE("csv numbers round-trip") {
        for (double v : {0.1, -1.0 / 3.0, 1e-300, 12345.678}) CHECK(std::stod(csv_number(v)) == v);
    }

    TEST_CASE("catalog serialization") {
        SpectraCatalog c;
        c.k_max = 2;
        c.dirichlet = {{cplx(1, 0), 1}, {cplx(4, 0), 1}};
        c.periodic = {{cplx(0, 0), 1}};
        const json j = to_json(c);
        CHECK(j["dirichlet"].size() == 2);
        CHECK(j["dirichlet"][1]["value"][0] == 4.0);
        std::ostringstream os;
        write_catalog_csv(os, c);
        CHECK(os.str().rfind("kind,index,re,im,multiplicity\n", 0) == 0);
    }

    TEST_CASE("validation suite is deterministic") {
        ValidateOptions o;
        o.k_max = 3;
        o.n_random = 10;
        o.seed = 5;
        const ValidationReport a = validate_suite(Potential::preset("mathieu:0.5"), o);
        const ValidationReport b = validate_suite(Potential::preset("mathieu:0.5"), o);
        REQUIRE(a.checks.size() == b.checks.size());
        for (std::size_t i = 0; i < a.checks.size(); ++i) {
            CHECK(a.checks[i].name == b.checks[i].name);
            CHECK(std::memcmp(&a.checks[i].value, &b.checks[i].value, sizeof(double)) == 0);
        }
        CHECK(a.all_pass());
    }
}
