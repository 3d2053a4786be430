#include <doctest.h>

#include <cmath>
#include <random>

#include "hill/floquet.hpp"
#include "hill/ode.hpp"
#include "hill/roots.hpp"

using namespace hill;

TEST_SUITE("floquet_core") {
    TEST_CASE("dop853 integrates a complex oscillator") {
        // y' = i w y
        const double w = 3.0;
        ode::Dop853 s([&](double, const double* y, double* f) {
            f[0] = -w * y[1];
            f[1] = w * y[0];
        }, 2, {1e-12, 1e-14});
        std::vector<double> y{1.0, 0.0};
        s.integrate(0.0, 5.0, y);
        CHECK(std::abs(y[0] - std::cos(15.0)) < 1e-10);
        CHECK(std::abs(y[1] - std::sin(15.0)) < 1e-10);
        // dense output inside each step
        double worst = 0.0;
        ode::StepObserver obs = [&](const ode::DenseStep& st) {
            double out[2];
            const double xm = 0.5 * (st.x0 + st.x1);
            st.eval(xm, out);
            worst = std::max(worst, std::hypot(out[0] - std::cos(w * xm), out[1] - std::sin(w * xm)));
        };
        std::vector<double> y2{1.0, 0.0};
        s.integrate(0.0, 5.0, y2, &obs);
        CHECK(worst < 1e-9);
    }

    TEST_CASE("gauss-legendre is exact to degree 2n-1") {
        std::vector<double> x, w;
        gauss_legendre(8, x, w);
        for (int p = 0; p <= 15; ++p) {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], p);
            const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
            CHECK(std::abs(s - exact) < 1e-14);
        }
    }

    TEST_CASE("free closed forms") {
        const Potential V = Potential::zero();
        for (cplx z : {cplx(0.3), cplx(4.0), cplx(10.5, 2.0), cplx(-3.0, 0.5), cplx(50.0, -1.0)}) {
            const Monodromy M = monodromy_matrix(V, z);
            const cplx w = std::sqrt(z);
            CHECK(std::abs(M.delta_plus() - std::cos(kPi * w)) < 1e-9 * std::max(1.0, std::abs(std::cos(kPi * w))));
            CHECK(std::abs(M.ph - std::sin(kPi * w) / w) < 1e-9 * std::max(1.0, std::abs(std::sin(kPi * w))));
            CHECK(std::abs(M.delta_minus()) < 1e-9);
        }
    }

    TEST_CASE("monodromy identities on presets") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> re(-2.0, 60.0), im(-3.0, 3.0);
        for (const char* p : {"mathieu:0.5", "gasymov:1", "mathieu:0.3+0.1i"}) {
            const Potential V = Potential::preset(p);
            for (int i = 0; i < 20; ++i) {
                const cplx z(re(rng), im(rng));
                const MonodromyData D = monodromy(V, z, {FloquetOptions{}, false, std::nullopt});
                CHECK(std::abs(D.m[0] * D.m[3] - D.m[1] * D.m[2] - 1.0) < 1e-10);
                CHECK(std::abs(D.rho_plus * D.rho_minus - 1.0) < 1e-10);
                CHECK(std::abs(D.rho_plus) <= 1.0 + 1e-12);
                const cplx dp = D.delta_plus, dm = D.delta_minus;
                CHECK(std::abs(dp * dp - 1.0 - dm * dm - D.m[1] * D.m[2]) < 1e-9);
                if (!D.dirichlet_point) {
                    CHECK(std::abs(D.m_plus + D.m_minus + 2.0 * dm / D.m[1]) < 1e-9 * (1.0 + std::abs(D.m_plus)));
                    CHECK(std::abs(D.m_plus * D.m_minus + D.m[2] / D.m[1]) <
                          1e-9 * (1.0 + std::abs(D.m_plus * D.m_minus)));
                }
            }
        }
    }

    TEST_CASE("variational and Lagrange derivatives of the discriminant agree") {
        const Potential V = Potential::preset("mathieu:0.5");
        for (cplx z : {cplx(2.0, 0.1), cplx(7.3, -0.5), cplx(20.0, 1.0)}) {
            const cplx a = monodromy_matrix(V, z).delta_plus_dot(), b = delta_plus_dot_lagrange(V, z);
            CHECK(std::abs(a - b) <= 1e-7 * std::abs(a));
        }
    }

    TEST_CASE("floquet solutions are quasi-periodic") {
        const Potential V = Potential::preset("mathieu:0.3+0.1i");
        const cplx z(2.5, 0.7);
        const std::vector<double> grid{0.0, 1.0, kPi};
        const FloquetSolutions F = floquet_solutions(V, z, grid);
        CHECK(std::abs(F.psi_plus[2] - F.rho_plus * F.psi_plus[0]) < 1e-10);
        CHECK(std::abs(F.psi_minus[2] - F.rho_minus * F.psi_minus[0]) < 1e-10);
    }

    TEST_CASE("green's function") {
        // free kernel at z = -1 is exp(-|x-y|)/2
        for (auto [x, y] : {std::pair{0.0, 0.0}, std::pair{0.5, 2.0}, std::pair{-3.0, 4.0}, std::pair{7.1, 1.3}})
            CHECK(std::abs(greens_function(Potential::zero(), -1.0, x, y) - 0.5 * std::exp(-std::abs(x - y))) < 1e-10);
        const Potential V = Potential::preset("gasymov:1");
        const cplx z(-2.0, 1.0);
        CHECK(std::abs(greens_function(V, z, 0.4, 5.0) - greens_function(V, z, 5.0, 0.4)) < 1e-12);
    }
}
