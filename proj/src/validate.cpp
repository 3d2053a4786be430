#include "hill/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hill/criterion.hpp"
#include "hill/projection.hpp"

namespace hill {

bool ValidationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass || c.skipped; });
}

namespace {

CheckResult check(std::string name, double value, double threshold, std::string detail = {}) {
    CheckResult c;
    c.name = std::move(name);
    c.value = value;
    c.threshold = threshold;
    c.pass = value <= threshold;
    c.detail = std::move(detail);
    return c;
}

CheckResult skipped(std::string name, std::string why) {
    CheckResult c;
    c.name = std::move(name);
    c.skipped = true;
    c.detail = std::move(why);
    return c;
}

template <class F>
CheckResult guarded(const std::string& name, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        CheckResult c;
        c.name = name;
        c.value = NAN;
        c.detail = std::string(e.name()) + ": " + e.what();
        return c;
    }
}

}  // namespace

ValidationReport validate_suite(const Potential& V, const ValidateOptions& o) {
    ValidationReport rep;
    rep.potential = V.label();
    rep.seed = o.seed;
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    // a strip around the low spectrum; far off the real axis the entries grow like e^{pi |Im sqrt z|}
    const auto random_z = [&] { return cplx(-2.0 + 62.0 * unit(rng), -3.0 + 6.0 * unit(rng)); };

    rep.checks.push_back(guarded("potential_periodicity", [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double x = kPi * unit(rng);
            const int m = static_cast<int>(unit(rng) * 21.0) - 10;
            worst = std::max(worst, std::abs(V(x + m * kPi) - V(x)));
        }
        return check("potential_periodicity", worst, 1e-12 * (1.0 + V.sup_norm()));
    }));

    rep.checks.push_back(guarded("potential_mean", [&] {
        // trapezoid is exact for the trigonometric polynomial on enough nodes
        const int n = 4 * (V.max_order() + 1);
        const double x0 = unit(rng);
        cplx s = 0.0;
        for (int j = 0; j < n; ++j) s += V(x0 + j * kPi / n);
        return check("potential_mean", std::abs(s / static_cast<double>(n) - V.mean()), 1e-12 * (1.0 + V.sup_norm()));
    }));

    std::vector<cplx> zs(o.n_random);
    for (cplx& z : zs) z = random_z();

    {
        double det = 0.0, rho = 0.0, l21 = 0.0;
        std::string err;
        try {
            for (cplx z : zs) {
                const MonodromyData D = monodromy(V, z, {o.ode, false, std::nullopt});
                const auto& m = D.m;
                det = std::max(det, std::abs(m[0] * m[3] - m[1] * m[2] - 1.0));
                rho = std::max(rho, std::abs(D.rho_plus * D.rho_minus - 1.0));
                const cplx dp = D.delta_plus, dm = D.delta_minus;
                l21 = std::max(l21, std::abs(dp * dp - 1.0 - dm * dm - m[1] * m[2]));
            }
        } catch (const Error& e) {
            det = rho = l21 = NAN;
            err = std::string(e.name()) + ": " + e.what();
        }
        rep.checks.push_back(check("det_monodromy", det, 1e-10, err));
        rep.checks.push_back(check("multiplier_product", rho, 1e-10, err));
        rep.checks.push_back(check("discriminant_identity", l21, 1e-9, err));
    }

    rep.checks.push_back(guarded("weyl_identities", [&] {
        double worst = 0.0;
        int used = 0;
        for (cplx z : zs) {
            const MonodromyData D = monodromy(V, z, {o.ode, false, std::nullopt});
            if (D.dirichlet_point) continue;
            const cplx ph = D.m[1], thp = D.m[2];
            const double sc = 1.0 + std::abs(D.m_plus) + std::abs(D.m_minus);
            worst = std::max(worst, std::abs(D.m_plus + D.m_minus + 2.0 * D.delta_minus / ph) / sc);
            worst = std::max(worst, std::abs(D.m_plus * D.m_minus + thp / ph) / (sc * sc));
            ++used;
        }
        return check("weyl_identities", worst, 1e-9, std::to_string(used) + " non-Dirichlet points");
    }));

    rep.checks.push_back(guarded("delta_dot_lagrange", [&] {
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const cplx z = zs[i];
            const Monodromy M = monodromy_matrix(V, z, o.ode);
            if (std::abs(M.ph) < 1e-3) continue;
            const cplx a = M.delta_plus_dot(), b = delta_plus_dot_lagrange(V, z, 256, o.ode);
            worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-300));
        }
        return check("delta_dot_lagrange", worst, 1e-7);
    }));

    rep.checks.push_back(guarded("greens_symmetry", [&] {
        // left of the semi-strip the resolvent exists
        const cplx z = V.semistrip().m3 - 5.0;
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double x = 4.0 * kPi * (unit(rng) - 0.5), y = 4.0 * kPi * (unit(rng) - 0.5);
            const cplx a = greens_function(V, z, x, y, o.ode), b = greens_function(V, z, y, x, o.ode);
            worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-300));
        }
        return check("greens_symmetry", worst, 1e-10);
    }));

    rep.checks.push_back(guarded("gelfand_roundtrip", [&] {
        GridFunction g = GridFunction::zeros(8, 32);
        for (int n = -3; n < 3; ++n)
            for (int j = 0; j < 32; ++j) g.at(n, j) = {unit(rng) - 0.5, unit(rng) - 0.5};
        g.update_support();
        const GelfandField G = gelfand_forward(g, uniform_t_grid(16));
        double ng = 0.0;
        for (cplx v : G.values) ng += std::norm(v);
        ng *= g.h() / 16.0;
        const double unitarity = std::abs(std::sqrt(ng) - g.norm()) / g.norm();
        const double inversion = (gelfand_inverse(G, 8) - g).norm() / g.norm();
        std::ostringstream d;
        d << "unitarity " << unitarity << ", inversion " << inversion;
        return check("gelfand_roundtrip", std::max(unitarity, inversion), 1e-10, d.str());
    }));

    rep.checks.push_back(guarded("biorthogonality", [&] {
        double worst = 0.0;
        for (double t : {0.5, 1.5, 2.5}) worst = std::max(worst, biorthogonality_residual(V, t, 8, 256, o.ode));
        return check("biorthogonality", worst, 1e-7, "k, l <= 8, t in {0.5, 1.5, 2.5}");
    }));

    const Potential V0 = V.shifted_to_zero_mean();
    PortraitOptions po;
    po.trace.ode = o.ode;
    po.spectra.ode = o.ode;
    SpectrumPortrait P;
    bool have_portrait = true;
    std::string portrait_error;
    try {
        P = spectrum_portrait(V0, o.k_max, po);
    } catch (const Error& e) {
        have_portrait = false;
        portrait_error = std::string(e.name()) + ": " + e.what();
    }

    if (have_portrait) {
        rep.checks.push_back(guarded("spectral_matrix", [&] {
            double sym = 0.0, det = 0.0;
            for (const SpectralArc& a : P.arcs)
                for (std::size_t i = 1; i + 1 < a.samples.size(); i += 7) {
                    const ArcSample& s = a.samples[i];
                    if (std::sin(s.t) < 0.1) continue;
                    const auto S = spectral_matrix(V0, s.lambda, s.t, o.ode);
                    sym = std::max(sym, std::abs(S[1] - S[2]));
                    const cplx d = S[0] * S[3] - S[1] * S[2];
                    det = std::max(det, std::abs(d * (4.0 * kPi * kPi) - 1.0));
                }
            std::ostringstream d;
            d << "symmetry " << sym << ", |4 pi^2 det S - 1| " << det;
            return check("spectral_matrix", std::max(sym, det), 1e-8, d.str());
        }));
        if (V.is_real()) {
            rep.checks.push_back(guarded("interlacing", [&] {
                // lambda_0^+ <= lambda_1^- <= mu_1 <= lambda_1^+ <= lambda_2^- <= mu_2 <= ...
                // a gap below the double-root resolution is catalogued as one double point; there
                // mu_k only has to sit on it within the on-spectrum tolerance
                const SpectraCatalog& c = P.catalog;
                double prev = expand_multiplicity(c.periodic).at(0).real();
                double worst = 0.0;
                int points = 1, merged = 0;
                for (int k = 1; k < o.k_max; ++k) {
                    const std::vector<cplx> e = gap_edges(c, k);
                    if (e.empty() || k > static_cast<int>(c.dirichlet.size())) break;
                    const double mu = c.dirichlet[k - 1].value.real();
                    // violations relative to 1 + |mu|: edge accuracy degrades like noise / |Delta_+'|
                    const double s = 1.0 + std::abs(mu);
                    worst = std::max(worst, (prev - e[0].real()) / s);
                    if (e[0] == e[1]) {
                        ++merged;
                        const double d = std::abs(mu - e[0].real()) / s - 1e-6;
                        worst = std::max(worst, d > 0.0 ? d : 0.0);
                    } else {
                        worst = std::max({worst, (e[0].real() - mu) / s, (mu - e[1].real()) / s});
                    }
                    prev = e[1].real();
                    points += 3;
                }
                std::ostringstream d;
                d << points << " ordered points, " << merged << " unresolved gaps";
                return check("interlacing", std::max(worst, 0.0), 1e-9, d.str());
            }));
        } else {
            rep.checks.push_back(skipped("interlacing", "complex potential"));
        }
    } else {
        CheckResult c;
        c.name = "spectrum_portrait";
        c.value = NAN;
        c.detail = portrait_error;
        rep.checks.push_back(c);
    }

    rep.checks.push_back(guarded("resolvent_residual", [&] {
        const cplx z = V.semistrip().m3 - 2.0 + cplx(0.0, 0.5);
        const GridFunction g = gaussian(8, 64, 0.3, 1.0);
        const GridFunction r = resolvent_apply(V, z, g, o.ode);
        const double h = r.h();
        double err = 0.0, ng = 0.0;
        // interior only: the window edges cut the tails
        for (int j = r.size() / 4; j < 3 * r.size() / 4; ++j) {
            const cplx d2 = (-r.values[j + 2] + 16.0 * r.values[j + 1] - 30.0 * r.values[j] + 16.0 * r.values[j - 1] -
                             r.values[j - 2]) / (12.0 * h * h);
            err += std::norm(-d2 + (V(r.x(j)) - z) * r.values[j] - g.values[j]);
            ng += std::norm(g.values[j]);
        }
        return check("resolvent_residual", std::sqrt(err / ng), 1e-3);
    }));

    rep.checks.push_back(guarded("free_closed_forms", [&] {
        if (!V.is_zero()) return skipped("free_closed_forms", "potential is not zero");
        double worst = 0.0;
        for (int i = 0; i < o.n_random; ++i) {
            const cplx z = std::polar(o.z_radius * std::sqrt(unit(rng)), 2.0 * kPi * unit(rng));
            const Monodromy M = monodromy_matrix(V, z, o.ode);
            const cplx w = std::sqrt(z);
            const double scale = std::max(1.0, std::exp(kPi * std::abs(w.imag())));
            const cplx sphi = std::abs(w) < 1e-8 ? cplx(kPi) : std::sin(kPi * w) / w;
            worst = std::max({worst, std::abs(M.delta_plus() - std::cos(kPi * w)) / scale, std::abs(M.ph - sphi) / scale});
        }
        return check("free_closed_forms", worst, 1e-8, "errors scaled by max(1, e^{pi |Im sqrt z|})");
    }));

    return rep;
}

}  // namespace hill
