// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

#include "../unit/oracle.hpp"
#include "hill/criterion.hpp"
#include "hill/projection.hpp"

using namespace hill;

namespace {

const char* kPresets[] = {"zero", "mathieu:0.5", "gasymov:1", "mathieu:0.3+0.1i"};

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int n, const std::string& title, const std::function<Outcome()>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        o = body();
    } catch (const Error& e) {
        o = {false, std::string("exception ") + e.name() + ": " + e.what()};
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2d %-34s %s  %s [%.1fs]\n", n, title.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str(), dt);
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

cplx random_disc(std::mt19937_64& rng, double r) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(r * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
}

cplx random_strip(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(-2.0, 60.0), im(-3.0, 3.0);
    return {re(rng), im(rng)};
}

// error of a free closed form relative to the growth scale e^{pi |Im sqrt z|}
double scaled(cplx err, cplx z) { return std::abs(err) / std::max(1.0, std::exp(kPi * std::abs(std::sqrt(z).imag()))); }

std::vector<double> real_parts(const std::vector<SpectralPoint>& p) {
    std::vector<double> r;
    for (cplx z : expand_multiplicity(p)) r.push_back(z.real());
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

int main() {
    std::mt19937_64 rng(20240601);

    report(1, "free-operator closed forms", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const cplx z = random_disc(rng, 100.0);
            const Monodromy M = monodromy_matrix(Potential::zero(), z);
            const cplx w = std::sqrt(z);
            worst = std::max({worst, scaled(M.delta_plus() - std::cos(kPi * w), z), scaled(M.ph - std::sin(kPi * w) / w, z)});
        }
        const double dt = seconds_since(t0);
        return Outcome{worst <= 1e-8 && dt < 10.0, fmt("max scaled error %.2e, %.2fs", worst, dt)};
    });

    report(2, "algebraic identities", [&] {
        double det = 0, rho = 0, l21 = 0, weyl = 0;
        for (const char* p : kPresets) {
            const Potential V = Potential::preset(p);
            for (int i = 0; i < 200; ++i) {
                const MonodromyData D = monodromy(V, random_strip(rng), {FloquetOptions{}, false, std::nullopt});
                det = std::max(det, std::abs(D.m[0] * D.m[3] - D.m[1] * D.m[2] - 1.0));
                rho = std::max(rho, std::abs(D.rho_plus * D.rho_minus - 1.0));
                l21 = std::max(l21, std::abs(D.delta_plus * D.delta_plus - 1.0 - D.delta_minus * D.delta_minus - D.m[1] * D.m[2]));
                // relative to the size of m+-: both sides carry the integration noise amplified by 1/|phi|
                if (!D.dirichlet_point) {
                    const double a = std::abs(D.m_plus), b = std::abs(D.m_minus);
                    weyl = std::max({weyl, std::abs(D.m_plus + D.m_minus + 2.0 * D.delta_minus / D.m[1]) / (1.0 + a + b),
                                     std::abs(D.m_plus * D.m_minus + D.m[2] / D.m[1]) / (1.0 + a * b)});
                }
            }
        }
        return Outcome{det <= 1e-10 && rho <= 1e-10 && l21 <= 1e-9 && weyl <= 1e-9,
                       fmt("det %.1e, rho %.1e, discriminant %.1e, weyl %.1e", det, rho, l21, weyl)};
    });

    report(3, "derivative cross-check", [&] {
        double worst = 0.0;
        for (const char* p : kPresets) {
            const Potential V = Potential::preset(p);
            int used = 0;
            while (used < 50) {
                const cplx z = random_strip(rng);
                const Monodromy M = monodromy_matrix(V, z);
                if (std::abs(M.ph) < 1e-3) continue;
                const cplx a = M.delta_plus_dot(), b = delta_plus_dot_lagrange(V, z);
                worst = std::max(worst, std::abs(a - b) / std::abs(a));
                ++used;
            }
        }
        return Outcome{worst <= 1e-7, fmt("max relative difference %.2e over 4x50 points", worst)};
    });

    report(4, "spectra", [&] {
        const Potential Z = Potential::zero();
        double ez = 0.0;
        const auto mu = dirichlet_spectrum(Z, 4);
        for (int k = 1; k <= 4; ++k) ez = std::max(ez, std::abs(mu[k - 1].value - double(k * k)));
        const PeriodicSpectra pa = periodic_antiperiodic_spectrum(Z, 3);
        const std::vector<double> per{0, 4, 4, 16, 16}, anti{1, 1, 9, 9};
        const auto p = expand_multiplicity(pa.periodic), a = expand_multiplicity(pa.antiperiodic);
        if (p.size() != per.size() || a.size() != anti.size()) return Outcome{false, "wrong free counts"};
        for (std::size_t i = 0; i < p.size(); ++i) ez = std::max(ez, std::abs(p[i] - per[i]));
        for (std::size_t i = 0; i < a.size(); ++i) ez = std::max(ez, std::abs(a[i] - anti[i]));
        const auto d = critical_points(Z, 4);
        for (int k = 1; k <= 4; ++k) ez = std::max(ez, std::abs(d[k - 1].delta - double(k * k)));

        const Potential M = Potential::preset("mathieu:0.5");
        const SpectraCatalog c = spectra_catalog(M, 4);
        const auto op = oracle::hill_exponential(0.5, 0.0, 64), oa = oracle::hill_exponential(0.5, 1.0, 64);
        const auto od = oracle::hill_dirichlet(0.5, 64);
        double em = 0.0;
        const auto mp = real_parts(c.periodic), ma = real_parts(c.antiperiodic);
        for (std::size_t i = 0; i < mp.size(); ++i) em = std::max(em, std::abs(mp[i] - op[i]));
        for (std::size_t i = 0; i < ma.size(); ++i) em = std::max(em, std::abs(ma[i] - oa[i]));
        for (std::size_t i = 0; i < c.dirichlet.size(); ++i) em = std::max(em, std::abs(c.dirichlet[i].value - od[i]));
        return Outcome{ez <= 1e-8 && em <= 1e-6, fmt("free %.1e, mathieu(0.5) vs 64-mode oracle %.1e", ez, em)};
    });

    report(5, "gasymov discriminant", [&] {
        const Potential V = Potential::preset("gasymov:1");
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const cplx z = random_disc(rng, 100.0);
            worst = std::max(worst, scaled(monodromy_matrix(V, z).delta_plus() - std::cos(kPi * std::sqrt(z)), z));
        }
        return Outcome{worst <= 1e-8, fmt("max scaled error %.2e", worst)};
    });

    report(6, "criterion verdicts", [&] {
        std::ostringstream d;
        bool ok = true;
        const CriterionReport z = evaluate_criterion(Potential::zero(), 8);
        double dev = 0.0;
        for (const RatioSample& s : z.ratios.samples) dev = std::max(dev, std::abs(s.r[0] - 2.0 / kPi));
        ok &= z.verdict == Verdict::pass && dev <= 1e-6;
        d << "zero " << verdict_name(z.verdict) << " (|phi/D'| - 2/pi " << fmt("%.1e", dev) << ")";
        const CriterionReport m = evaluate_criterion(Potential::preset("mathieu:0.5"), 8);
        ok &= m.verdict == Verdict::pass;
        d << ", mathieu(0.5) " << verdict_name(m.verdict);
        const Potential G = Potential::preset("gasymov:1");
        int n0 = 0;
        for (int k = 1; k <= 8 && !n0; ++k)
            if (std::abs(monodromy_matrix(G, double(k * k)).ph) > 1e-6) n0 = k;
        const CriterionReport g = evaluate_criterion(G, 8);
        double near = 1e300;
        for (const Singularity& s : g.singularities) near = std::min(near, std::abs(s.lambda - double(n0 * n0)));
        ok &= g.verdict == Verdict::fail && near <= 1e-6;
        d << ", gasymov(1) " << verdict_name(g.verdict) << " (n0 = " << n0 << ", singularity at " << fmt("%.1e", near) << ")";
        const CriterionReport c = evaluate_criterion(Potential::preset("mathieu:0.3+0.1i"), 8);
        d << ", mathieu(0.3+0.1i) " << verdict_name(c.verdict);
        const bool agree = z.checks_agree && m.checks_agree && g.checks_agree && c.checks_agree;
        ok &= agree;
        d << ", checks agree " << (agree ? "yes" : "no");
        return Outcome{ok, d.str()};
    });

    report(7, "interlacing", [&] {
        const SpectraCatalog c = spectra_catalog(Potential::preset("mathieu:0.5"), 4);
        const auto per = real_parts(c.periodic);
        std::vector<double> seq{per[0]};
        for (int k = 1; k <= 2; ++k) {
            const auto e = gap_edges(c, k);
            seq.insert(seq.end(), {e[0].real(), c.dirichlet[k - 1].value.real(), e[1].real()});
        }
        double worst = 0.0;
        for (std::size_t i = 1; i < seq.size(); ++i) worst = std::max(worst, seq[i - 1] - seq[i]);
        return Outcome{worst <= 1e-9, fmt("largest order violation %.1e over %zu points", std::max(worst, 0.0), seq.size())};
    });

    report(8, "fiber asymptotics constant", [&] {
        const Potential V = Potential::preset("mathieu:0.5");
        std::vector<double> tg;
        for (int i = 1; i <= 9; ++i) tg.push_back(kPi * i / 10.0);
        const double c8 = lemma51_constant(V, 8, tg).constant, c16 = lemma51_constant(V, 16, tg).constant;
        const double r = c16 / c8;
        return Outcome{r >= 0.9 && r <= 1.1, fmt("C(n<=8) %.5f, C(n<=16) %.5f, ratio %.4f", c8, c16, r)};
    });

    report(9, "projection algebra", [&] {
        const Potential V = Potential::preset("mathieu:0.5");
        const SpectrumPortrait P = spectrum_portrait(V, 3);
        const GridFunction g = bump(16, 64, 0.3, 1.5);  // 2048 points on [-16 pi, 16 pi)
        const auto t0 = std::chrono::steady_clock::now();
        const GridFunction p1 = project(V, P.arcs[0], g);
        const double dt = seconds_since(t0);
        const double idem = (project(V, P.arcs[0], p1) - p1).norm() / p1.norm();
        const double disj = project(V, P.arcs[1], p1).norm() / g.norm();
        const GridFunction p2 = project(V, P.arcs[1], g);
        const double idem2 = (project(V, P.arcs[1], p2) - p2).norm() / p2.norm();
        return Outcome{idem <= 1e-3 && disj <= 1e-3 && dt < 60.0,
                       fmt("band 1: idempotence %.1e, P2 P1 %.1e, %.2fs per projection (band 2 idempotence %.1e, "
                           "window-limited)", idem, disj, dt, idem2)};
    });

    report(10, "expansion completeness", [&] {
        std::ostringstream d;
        bool ok = true;
        const GridFunction g = gaussian(16, 64, 0.3, 1.0);
        for (const char* p : {"zero", "mathieu:0.5"}) {
            const Potential V = Potential::preset(p);
            const SpectrumPortrait P = spectrum_portrait(V, 8);
            double prev = 1e300;
            d << p << ":";
            for (int bm : {2, 4, 8}) {
                const Expansion e = expand(V, P, g, bm);
                const double r = (g - e.sum).norm() / g.norm();
                ok &= r <= prev;
                prev = r;
                d << fmt(" %.1e", r);
                if (bm == 8 && V.is_zero()) {
                    // free oracle: Fourier synthesis over |k| <= 8
                    // (64 panels keep the phase k (x - 0.3) resolved out to |x| = 16 pi)
                    std::vector<double> gx, gw;
                    gauss_legendre(16, gx, gw);
                    double worst = 0.0;
                    for (int j = 0; j < g.size(); j += 3) {
                        cplx s = 0.0;
                        for (int sg : {-1, 1})
                            for (int panel = 0; panel < 64; ++panel)
                                for (std::size_t q = 0; q < gx.size(); ++q) {
                                    const double k = sg * 0.125 * (panel + 0.5 * (gx[q] + 1.0));
                                    s += 0.0625 * gw[q] * std::sqrt(2.0 * kPi) * std::exp(-0.5 * k * k) *
                                         std::exp(cplx(0, k * (g.x(j) - 0.3)));
                                }
                        worst = std::max(worst, std::abs(s / (2.0 * kPi) - e.sum.values[j]));
                    }
                    ok &= worst <= 1e-4;
                    d << fmt(" (oracle %.1e)", worst);
                }
            }
            ok &= prev <= 5e-2;
            d << "; ";
        }
        return Outcome{ok, d.str()};
    });

    report(11, "fiber biorthogonality", [&] {
        double worst = 0.0;
        for (const char* p : kPresets) {
            for (double t : {0.5, 1.5, 2.5}) worst = std::max(worst, biorthogonality_residual(Potential::preset(p), t, 16));
        }
        return Outcome{worst <= 1e-7, fmt("max residual %.1e for k, l <= 16", worst)};
    });

    report(12, "gel'fand round-trip", [&] {
        std::normal_distribution<double> nd;
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            GridFunction g = GridFunction::zeros(8, 32);
            const int lo = -4 + trial % 3, hi = lo + 4;
            for (int n = lo; n < hi; ++n)
                for (int j = 0; j < 32; ++j) g.at(n, j) = {nd(rng), nd(rng)};
            g.update_support();
            const GelfandField G = gelfand_forward(g, uniform_t_grid(16));
            double n2 = 0.0;
            for (cplx v : G.values) n2 += std::norm(v);
            worst = std::max({worst, std::abs(std::sqrt(n2 * g.h() / 16.0) - g.norm()) / g.norm(),
                              (gelfand_inverse(G, 8) - g).norm() / g.norm()});
        }
        return Outcome{worst <= 1e-10, fmt("max relative error %.1e", worst)};
    });

    report(13, "determinism", [&] {
        namespace fs = std::filesystem;
        const fs::path root = fs::temp_directory_path() / "hillspec_acceptance";
        fs::remove_all(root);
        const std::string base = std::string(HILLSPEC_PATH) + " validate --preset mathieu:0.3+0.1i --seed 42 --out ";
        const int r1 = std::system((base + (root / "a").string() + " > /dev/null").c_str());
        const int r2 = std::system((base + (root / "b").string() + " > /dev/null").c_str());
        if (r1 == -1 || r2 == -1) return Outcome{false, "could not run hillspec"};
        int files = 0;
        for (const auto& e : fs::directory_iterator(root / "a")) {
            if (slurp(e.path()) != slurp(root / "b" / e.path().filename()))
                return Outcome{false, e.path().filename().string() + " differs"};
            ++files;
        }
        fs::remove_all(root);
        return Outcome{files >= 2, fmt("%d artifacts byte-identical", files)};
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
