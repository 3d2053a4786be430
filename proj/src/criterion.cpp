#include "hill/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "hill/kernels.hpp"

namespace hill {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "PASS";
        case Verdict::fail: return "FAIL";
        default: return "INCONCLUSIVE";
    }
}

std::vector<cplx> gap_edges(const SpectraCatalog& cat, int k) {
    const std::vector<cplx> per = expand_multiplicity(cat.periodic);
    const std::vector<cplx> anti = expand_multiplicity(cat.antiperiodic);
    const std::vector<cplx>& src = (k % 2 == 0) ? per : anti;
    const std::size_t i = static_cast<std::size_t>(k - 1);  // lambda_k^- in either list
    if (i + 1 >= src.size()) return {};
    std::vector<cplx> e{src[i], src[i + 1]};
    if (e[1].real() < e[0].real()) std::swap(e[0], e[1]);
    return e;
}

namespace {

std::string fmt(cplx z) {
    std::ostringstream os;
    os.precision(10);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

int octave_of(int band) {
    int j = 1;
    while ((1 << (j - 1)) < band) ++j;
    return j;  // bands (2^(j-2), 2^(j-1)] -> j, band 1 -> 1
}

Verdict combine(const std::vector<Verdict>& vs) {
    bool all_pass = true;
    for (Verdict v : vs) {
        if (v == Verdict::fail) return Verdict::fail;
        if (v != Verdict::pass) all_pass = false;
    }
    return all_pass ? Verdict::pass : Verdict::inconclusive;
}

}  // namespace

RatioDiagnostics ratio_diagnostics(const SpectrumPortrait& P, double eps_sing) {
    RatioDiagnostics R;
    const int nb = static_cast<int>(P.arcs.size());
    R.band_sup.assign(nb, {0.0, 0.0, 0.0});
    for (const SpectralArc& a : P.arcs) {
        for (const ArcSample& s : a.samples) {
            const double al = std::abs(s.lambda);
            const double dd = std::abs(s.delta_dot);
            if (dd < eps_sing * (1.0 + al)) {
                ++R.excluded;
                continue;
            }
            const cplx dm = 0.5 * (s.th - s.php);
            RatioSample rs{a.band, s.t, s.lambda,
                           {std::abs(s.ph) / dd, std::abs(s.thp) / ((al + 1.0) * dd),
                            std::abs(dm) / ((std::sqrt(al) + 1.0) * dd)}};
            for (int i = 0; i < 3; ++i) R.band_sup[a.band - 1][i] = std::max(R.band_sup[a.band - 1][i], rs.r[i]);
            R.samples.push_back(rs);
        }
    }
    std::array<double, 3> run{0.0, 0.0, 0.0};
    for (int b = 0; b < nb; ++b) {
        for (int i = 0; i < 3; ++i) {
            if (R.band_sup[b][i] > run[i]) {
                run[i] = R.band_sup[b][i];
                R.argmax_band[i] = b + 1;
            }
        }
        R.window_sup.push_back(run);
        const int j = octave_of(b + 1);
        if (static_cast<int>(R.octave_sup.size()) < j) R.octave_sup.resize(j, {0.0, 0.0, 0.0});
        for (int i = 0; i < 3; ++i) R.octave_sup[j - 1][i] = std::max(R.octave_sup[j - 1][i], R.band_sup[b][i]);
    }
    R.sup = run;
    return R;
}

TrendResult octave_trend(const std::vector<double>& s, const CriterionOptions& o) {
    TrendResult r;
    std::ostringstream os;
    std::vector<double> f(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) f[j] = std::max(s[j], o.ratio_floor);
    for (std::size_t j = 0; j + 1 < f.size(); ++j) {
        if (f[j + 1] > o.trend_fail * f[j]) {
            os << "octave " << j + 2 << " sup " << s[j + 1] << " exceeds " << o.trend_fail << "x octave " << j + 1
               << " sup " << s[j];
            r.verdict = Verdict::fail;
            r.detail = os.str();
            return r;
        }
    }
    if (f.size() < 3) {
        r.detail = "fewer than three octaves in window";
        return r;
    }
    const std::size_t J = f.size() - 1;
    if (f[J] <= o.trend_pass * f[J - 2]) {
        r.verdict = Verdict::pass;
        os << "last octave sup " << s[J] << " <= " << o.trend_pass << " x " << s[J - 2];
    } else {
        os << "last octave sup " << s[J] << " > " << o.trend_pass << " x " << s[J - 2];
    }
    r.detail = os.str();
    return r;
}

std::vector<CriticalRecord> critical_records(const Potential& V, const SpectrumPortrait& P,
                                             const CriterionOptions& o) {
    std::vector<CriticalRecord> out;
    const PortraitOptions& po = o.portrait;
    int k = 0;
    for (const CriticalPoint& c : P.catalog.critical) {
        ++k;
        CriticalRecord r;
        r.k = k;
        r.delta = c.delta;
        try {
            r.distance = distance_to_spectrum(c.delta, P);
        } catch (const WindowError&) {
            continue;
        }
        const double scale = 1.0 + std::abs(c.delta);
        r.on_spectrum = r.distance <= po.on_spectrum_eps * scale;
        if (r.on_spectrum) {
            r.zero_pattern = quadruple_zero_test(V, c.delta, po.on_spectrum_eps * scale, po.ddot_eps, po.trace.ode);
            r.removability_ratio = removability_ratio(V, c.delta, po.removability_r * scale, po.trace.ode);
            r.removable = r.removability_ratio <= po.pole_ratio;
            r.ok = r.zero_pattern.holds && r.removable;
        }
        out.push_back(r);
    }
    return out;
}

CriticalPointResult check_critical_points(const Potential& V, const SpectrumPortrait& P, const CriterionOptions& o) {
    CriticalPointResult r;
    r.records = critical_records(V, P, o);
    for (const CriticalRecord& c : r.records) {
        if (c.ok) continue;
        std::ostringstream os;
        os << "critical point delta_" << c.k << " = " << fmt(c.delta) << " on the spectrum";
        if (!c.zero_pattern.holds)
            os << " violates the quadruple-zero pattern (|D+^2-1|=" << c.zero_pattern.disc << ", |D-|=" << c.zero_pattern.dminus
               << ", |phi|=" << c.zero_pattern.phi << ", |D+''|=" << c.zero_pattern.ddot << ")";
        if (!c.removable) os << "; two-circle ratio " << c.removability_ratio << " indicates a pole";
        r.witnesses.push_back(os.str());
    }
    r.verdict = r.witnesses.empty() ? Verdict::pass : Verdict::fail;
    return r;
}

RatioGrowthResult check_ratio_growth(const SpectrumPortrait& P, const RatioDiagnostics& R,
                             const std::vector<CriticalRecord>& candidates, const CriterionOptions& o) {
    (void)P;
    RatioGrowthResult r;
    static const char* names[3] = {"|phi/D+'|", "|theta'/((|l|+1)D+')|", "|D-/((sqrt|l|+1)D+')|"};
    for (int i = 0; i < 3; ++i) {
        std::vector<double> s;
        for (const auto& oc : R.octave_sup) s.push_back(oc[i]);
        r.trend[i] = octave_trend(s, o);
        if (r.trend[i].verdict == Verdict::fail) r.witnesses.push_back(std::string(names[i]) + ": " + r.trend[i].detail);
    }
    for (const CriticalRecord& c : candidates) {
        if (!c.on_spectrum) continue;
        BlowupFit fit;
        fit.lambda0 = c.delta;
        const double win = o.blowup_window * (1.0 + std::abs(c.delta));
        std::vector<double> lx, ly;
        double dmin = 1e300, dmax = 0.0;
        for (const RatioSample& s : R.samples) {
            const double d = std::abs(s.lambda - c.delta);
            if (d > win || d == 0.0) continue;
            lx.push_back(std::log(d));
            ly.push_back(std::log(s.r[0] + s.r[1] + s.r[2]));
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
        }
        fit.n_samples = static_cast<int>(lx.size());
        fit.dist_min = dmin;
        fit.dist_max = dmax;
        if (fit.n_samples >= 4 && dmax >= 10.0 * dmin) {
            double mx = 0, my = 0;
            for (std::size_t i = 0; i < lx.size(); ++i) {
                mx += lx[i];
                my += ly[i];
            }
            mx /= lx.size();
            my /= ly.size();
            double sxx = 0, sxy = 0;
            for (std::size_t i = 0; i < lx.size(); ++i) {
                sxx += (lx[i] - mx) * (lx[i] - mx);
                sxy += (lx[i] - mx) * (ly[i] - my);
            }
            fit.exponent = -sxy / sxx;
            fit.resolved = true;
            if (fit.exponent > o.blowup_exponent) {
                std::ostringstream os;
                os << "ratio sum grows like |lambda - " << fmt(c.delta) << "|^-" << fit.exponent << " over "
                   << fit.n_samples << " arc samples (distances " << dmin << " .. " << dmax << ")";
                r.witnesses.push_back(os.str());
            }
        }
        r.fits.push_back(fit);
    }
    if (!r.witnesses.empty()) r.verdict = Verdict::fail;
    else r.verdict = combine({r.trend[0].verdict, r.trend[1].verdict, r.trend[2].verdict});
    return r;
}

MultiplicityResult check_multiplicities(const Potential& V, const SpectrumPortrait& P, const CriterionOptions& o) {
    MultiplicityResult r;
    const SpectraCatalog& cat = P.catalog;
    const double eps = o.portrait.on_spectrum_eps;
    double hi = -1e300;
    for (const auto& a : P.arcs)
        for (const auto& s : a.samples) hi = std::max(hi, s.lambda.real());
    const double window_hi = hi + 1e-6 * (1.0 + std::abs(hi));

    // (i) multiple periodic/antiperiodic points are Dirichlet points
    auto scan = [&](const std::vector<SpectralPoint>& pts, bool periodic) {
        for (const SpectralPoint& p : pts) {
            if (p.multiplicity < 2 || p.value.real() > window_hi) continue;
            MultiplePoint m;
            m.lambda = p.value;
            m.multiplicity = p.multiplicity;
            m.periodic = periodic;
            m.dirichlet_distance = 1e300;
            for (const SpectralPoint& mu : cat.dirichlet)
                m.dirichlet_distance = std::min(m.dirichlet_distance, std::abs(mu.value - p.value));
            m.ok = m.dirichlet_distance <= eps * (1.0 + std::abs(p.value));
            if (!m.ok) {
                std::ostringstream os;
                os << "(i) multiple " << (periodic ? "periodic" : "antiperiodic") << " point " << fmt(p.value)
                   << " is " << m.dirichlet_distance << " away from the Dirichlet spectrum";
                r.witnesses.push_back(os.str());
            }
            r.multiple_points.push_back(m);
        }
    };
    scan(cat.periodic, true);
    scan(cat.antiperiodic, false);

    // (ii) algebraic = geometric multiplicity on a t-grid and at the multiple points
    SpectraOptions so = o.portrait.spectra;
    auto check = [&](double t, cplx E) {
        const Multiplicities m = algebraic_vs_geometric(V, t, E, so);
        ++r.points_checked;
        if (m.algebraic != m.geometric) {
            r.mismatches.push_back({t, E, m.algebraic, m.geometric});
            std::ostringstream os;
            os << "(ii) H(t) at t = " << t << ", E = " << fmt(E) << ": algebraic " << m.algebraic << ", geometric "
               << m.geometric;
            r.witnesses.push_back(os.str());
        }
    };
    const int nt = std::max(2, o.multiplicity_t_points);
    for (int j = 0; j < nt; ++j) {
        const double t = kPi * j / (nt - 1);
        std::vector<cplx> seen;
        for (const SpectralArc& a : P.arcs) {
            if (a.samples.empty() || t < a.samples.front().t - 1e-12 || t > a.samples.back().t + 1e-12) continue;
            cplx E;
            if (j == 0) E = a.samples.front().lambda;
            else if (j == nt - 1) E = a.samples.back().lambda;
            else E = arc_point(V, a, t, o.portrait.trace.ode);
            bool dup = false;
            for (cplx s : seen)
                if (std::abs(s - E) <= 1e-6 * (1.0 + std::abs(E))) dup = true;
            if (dup) continue;
            seen.push_back(E);
            check(t, E);
        }
    }
    for (const MultiplePoint& m : r.multiple_points) {
        // multiple points on the window are arc endpoints, already covered at t = 0 / pi
        bool covered = false;
        for (const auto& a : P.arcs)
            for (const ArcSample* s : {&a.samples.front(), &a.samples.back()})
                if (std::abs(s->lambda - m.lambda) <= 1e-6 * (1.0 + std::abs(m.lambda))) covered = true;
        if (!covered) check(m.periodic ? 0.0 : kPi, m.lambda);
    }

    // (iii) distance ratios over Q
    const int nb = static_cast<int>(P.arcs.size());
    std::vector<std::array<double, 3>> oct;
    for (int k = 1; k < nb && k <= static_cast<int>(cat.critical.size()); ++k) {
        const std::vector<cplx> e = gap_edges(cat, k);
        if (e.empty() || k > static_cast<int>(cat.dirichlet.size())) continue;
        const cplx delta = cat.critical[k - 1].delta;
        double d;
        try {
            d = distance_to_spectrum(delta, P);
        } catch (const WindowError&) {
            continue;
        }
        if (d <= eps * (1.0 + std::abs(delta))) continue;
        const cplx mu = cat.dirichlet[k - 1].value;
        GapRatio g{k, d, {std::abs(e[1] - e[0]) / d, std::abs(mu - e[0]) / d, std::abs(mu - e[1]) / d}};
        for (int i = 0; i < 3; ++i) r.sup[i] = std::max(r.sup[i], g.ratio[i]);
        const int j = octave_of(k);
        if (static_cast<int>(oct.size()) < j) oct.resize(j, {0.0, 0.0, 0.0});
        for (int i = 0; i < 3; ++i) oct[j - 1][i] = std::max(oct[j - 1][i], g.ratio[i]);
        r.gaps.push_back(g);
    }
    for (int i = 0; i < 3; ++i) {
        std::vector<double> s;
        for (const auto& x : oct)
            if (x[i] > 0.0) s.push_back(x[i]);
        // only growth is a witness here; sups are reported raw
        r.trend[i] = octave_trend(s, o);
        if (r.trend[i].verdict == Verdict::fail) {
            r.witnesses.push_back("(iii) ratio " + std::to_string(i + 1) + ": " + r.trend[i].detail);
        } else {
            r.trend[i].verdict = Verdict::pass;
        }
    }
    r.verdict = r.witnesses.empty() ? Verdict::pass : Verdict::fail;
    return r;
}

std::vector<Singularity> detect_spectral_singularities(const CriticalPointResult& crit, const RatioGrowthResult& growth) {
    std::vector<Singularity> out;
    for (const CriticalRecord& c : crit.records) {
        if (!c.on_spectrum || c.ok) continue;
        Singularity s{c.delta, std::numeric_limits<double>::quiet_NaN()};
        for (const BlowupFit& f : growth.fits)
            if (f.lambda0 == c.delta && f.resolved) s.exponent = f.exponent;
        out.push_back(s);
    }
    return out;
}

CriterionReport evaluate_criterion(const Potential& V, int k_max, const CriterionOptions& o) {
    if (k_max < 1) throw ConfigError("k_max must be >= 1");
    CriterionReport rep;
    rep.k_max = k_max;
    rep.portrait = spectrum_portrait(V, k_max, o.portrait);
    const SpectrumPortrait& P = rep.portrait;
    rep.window_lo = 1e300;
    rep.window_hi = -1e300;
    for (const auto& a : P.arcs)
        for (const auto& s : a.samples) {
            rep.window_lo = std::min(rep.window_lo, s.lambda.real());
            rep.window_hi = std::max(rep.window_hi, s.lambda.real());
        }
    rep.ratios = ratio_diagnostics(P, o.portrait.trace.eps_sing);
    rep.crit_check = check_critical_points(V, P, o);
    rep.growth_check = check_ratio_growth(P, rep.ratios, rep.crit_check.records, o);
    rep.mult_check = check_multiplicities(V, P, o);
    rep.singularities = detect_spectral_singularities(rep.crit_check, rep.growth_check);
    rep.checks_agree = rep.crit_check.verdict == rep.growth_check.verdict && rep.growth_check.verdict == rep.mult_check.verdict;
    for (const auto* w : {&rep.crit_check.witnesses, &rep.growth_check.witnesses, &rep.mult_check.witnesses})
        rep.witnesses.insert(rep.witnesses.end(), w->begin(), w->end());
    rep.verdict = combine({rep.crit_check.verdict, rep.growth_check.verdict, rep.mult_check.verdict});
    return rep;
}

std::vector<cplx> fiber_eigenvalues(const Potential& V, double t, int n_max, const FloquetOptions& o) {
    if (!(t > 0.0 && t < kPi)) throw PreconditionError("fiber_eigenvalues needs 0 < t < pi");
    constexpr int n_low = 4;
    const int nl = std::min(n_low, n_max);
    SpectraOptions so;
    so.ode = o;
    std::vector<cplx> out = expand_multiplicity(fiber_spectrum(V, t, nl + 1, so));
    out.resize(2 * nl + 1);
    const double s = t / kPi;
    const cplx target = std::cos(t);
    for (int n = nl + 1; n <= n_max; ++n) {
        for (int sign : {-1, 1}) {
            const double z0 = 2.0 * n + sign * s;
            // half the distance to the neighbouring guesses
            const double sep = std::min(2.0 * s, 2.0 - 2.0 * s);
            const double radius = std::min(0.5, 0.45 * sep);
            cplx zeta = z0;
            bool ok = false;
            for (int it = 0; it < 40; ++it) {
                const Monodromy M = monodromy_matrix(V, zeta * zeta, o);
                const cplx g = M.delta_plus() - target;
                const cplx dg = 2.0 * zeta * M.delta_plus_dot();
                cplx step = g / dg;
                if (std::abs(step) > 0.25 * radius) step *= 0.25 * radius / std::abs(step);
                zeta -= step;
                if (std::abs(step) <= 1e-15 * std::abs(zeta) || std::abs(g) <= 2.0 * M.noise) {
                    ok = true;
                    break;
                }
            }
            if (!ok || std::abs(zeta - z0) > radius) {
                std::ostringstream os;
                os << "fiber eigenvalue E_" << n << (sign < 0 ? "^-" : "^+") << "(" << t
                   << ") not isolated near its asymptotic guess";
                throw NonconvergenceError(os.str());
            }
            out.push_back(zeta * zeta);
        }
    }
    return out;
}

namespace {

// H(t)-eigenfunction at E on the quadrature nodes, u(pi) = e^{it} u(0)
std::vector<cplx> fiber_eigenfunction(const Potential& V, cplx E, double t, const std::vector<double>& x,
                                      const FloquetOptions& o) {
    std::vector<double> grid = x;
    grid.push_back(kPi);
    const FundamentalData F = fundamental_system(V, E, grid, o, false);
    const cplx th = F.theta.back(), ph = F.phi.back(), thp = F.theta_p.back(), php = F.phi_p.back();
    const cplx rho = std::polar(1.0, t);
    cplx a, b;
    if (std::abs(ph) + std::abs(rho - th) >= std::abs(rho - php) + std::abs(thp)) {
        a = ph;
        b = rho - th;
    } else {
        a = rho - php;
        b = thp;
    }
    std::vector<cplx> u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) u[i] = a * F.theta[i] + b * F.phi[i];
    return u;
}

}  // namespace

RieszDiagnostic riesz_basis_diagnostic(const Potential& V, double t, int k_max, std::uint64_t seed, int n_tests) {
    RieszDiagnostic r;
    r.t = t;
    r.k_max = k_max;
    const double tm = std::fmod(std::fmod(t, 2.0 * kPi) + 2.0 * kPi, 2.0 * kPi);
    const double tr = tm > kPi ? 2.0 * kPi - tm : tm;  // H(2pi - t) has the same spectrum
    const FloquetOptions ode;
    if (tr < 1e-9 || tr > kPi - 1e-9) {
        r.periodic_case = true;
        const bool periodic = tr < 1e-9;
        const PeriodicSpectra ps = periodic_antiperiodic_spectrum(V, k_max / 2 + 2);
        const std::vector<cplx> E = expand_multiplicity(periodic ? ps.periodic : ps.antiperiodic);
        for (std::size_t k = 0; k < E.size() && static_cast<int>(k) < k_max; ++k) {
            const Monodromy M = monodromy_matrix(V, E[k], ode);
            const double al = std::abs(E[k]);
            const double dd = std::max(std::abs(M.delta_plus_dot()), 1e-300);
            const double v = std::abs(M.ph) / dd + std::abs(M.thp) / ((al + 1.0) * dd) +
                             std::abs(M.delta_minus()) / ((std::sqrt(al) + 1.0) * dd);
            r.per_k.push_back(v);
            r.bound = std::max(r.bound, v);
        }
        return r;
    }
    const std::vector<cplx> E = fiber_eigenvalues(V, tr, k_max, ode);
    std::vector<double> x, w;
    gauss_legendre(std::max(96, 6 * k_max + 32), x, w);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = 0.5 * kPi * (x[i] + 1.0);
        w[i] *= 0.5 * kPi;
    }
    std::vector<std::vector<cplx>> psi;
    for (cplx e : E) {
        std::vector<cplx> u = fiber_eigenfunction(V, e, tr, x, ode);
        double nrm = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) nrm += w[i] * std::norm(u[i]);
        nrm = std::sqrt(nrm);
        for (cplx& v : u) v /= nrm;
        psi.push_back(std::move(u));
    }
    // smooth quasi-periodic test functions in the span of the lowest modes
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    constexpr int modes = 3;
    r.lower = 1e300;
    r.upper = 0.0;
    std::vector<cplx> f(x.size()), fw(x.size());
    for (int test = 0; test < n_tests; ++test) {
        std::fill(f.begin(), f.end(), cplx{});
        for (int n = -modes; n <= modes; ++n) {
            const cplx c(nd(rng), nd(rng));
            for (std::size_t i = 0; i < x.size(); ++i) f[i] += c * std::exp(cplx(0.0, (2.0 * n + tr / kPi) * x[i]));
        }
        double nf = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            nf += w[i] * std::norm(f[i]);
            fw[i] = w[i] * f[i];
        }
        double q = 0.0;
        for (const auto& u : psi) q += std::norm(kernels::dotc(u, fw));
        q /= nf;
        r.lower = std::min(r.lower, q);
        r.upper = std::max(r.upper, q);
    }
    r.bound = std::max(r.upper, 1.0 / r.lower);
    for (std::size_t k = 0; k < E.size(); ++k) r.per_k.push_back(std::abs(E[k]));
    return r;
}

AsymptoticsReport validate_parametrization_asymptotics(const Potential& V, int k_max, int points_per_unit) {
    require_zero_mean(V);
    AsymptoticsReport rep;
    const double z_hi = 2.0 * k_max;
    const int n = static_cast<int>((z_hi - 1.0) * points_per_unit);
    for (int i = 0; i <= n; ++i) {
        const double z = 1.0 + (z_hi - 1.0) * i / n;
        const Monodromy M = monodromy_matrix(V, z * z);
        AsymptoticResidual a;
        a.zeta = z;
        a.s = z * z * std::abs(M.ph - std::sin(kPi * z) / z);
        a.u = z * z * std::abs(M.delta_plus() - std::cos(kPi * z));
        a.m = z * std::abs(M.delta_minus());
        rep.curve.push_back(a);
        const int j = static_cast<int>(std::floor(std::log2(z) + 1e-12));
        if (static_cast<int>(rep.octave_max.size()) <= j) rep.octave_max.resize(j + 1, {0.0, 0.0, 0.0});
        auto& om = rep.octave_max[j];
        om[0] = std::max(om[0], a.s);
        om[1] = std::max(om[1], a.u);
        om[2] = std::max(om[2], a.m);
    }
    rep.bounded = true;
    for (std::size_t j = 1; j < rep.octave_max.size(); ++j)
        for (int i = 0; i < 3; ++i)
            if (rep.octave_max[j][i] > 1.1 * rep.octave_max[j - 1][i] + 1e-8) rep.bounded = false;
    return rep;
}

Lemma51Report lemma51_constant(const Potential& V, int n_max, const std::vector<double>& t_grid) {
    Lemma51Report rep;
    rep.n_max = n_max;
    rep.t_grid = t_grid;
    for (double t : t_grid) {
        const std::vector<cplx> E = fiber_eigenvalues(V, t, n_max);
        for (int n = 1; n <= n_max; ++n) {
            for (int sign : {-1, 1}) {
                const cplx e = E[2 * n - 1 + (sign > 0 ? 1 : 0)];
                const double v = n * std::abs(std::sqrt(e) - (2.0 * n + sign * t / kPi));
                if (v > rep.constant) {
                    rep.constant = v;
                    rep.argmax_n = n;
                }
            }
        }
    }
    return rep;
}

}  // namespace hill
