#include "hill/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hill {

namespace {

bool by_real(const SpectralPoint& a, const SpectralPoint& b) {
    return a.value.real() != b.value.real() ? a.value.real() < b.value.real()
                                            : a.value.imag() < b.value.imag();
}

std::vector<double> cuts(double first, double step, int n) {
    std::vector<double> c;
    for (int j = 0; j < n; ++j) c.push_back(first + step * j);
    return c;
}

}  // namespace

void require_zero_mean(const Potential& V) {
    if (std::abs(V.mean()) > 1e-12 * (1.0 + V.sup_norm()))
        throw PreconditionError("potential must have zero mean (shift it first)");
}

std::vector<cplx> expand_multiplicity(const std::vector<SpectralPoint>& pts) {
    std::vector<cplx> out;
    for (const auto& p : pts)
        for (int m = 0; m < p.multiplicity; ++m) out.push_back(p.value);
    return out;
}

AnalyticFn dirichlet_function(const Potential& V, const FloquetOptions& o) {
    return [&V, o](cplx z) {
        const Monodromy M = monodromy_matrix(V, z, o);
        return AnalyticValue{M.ph, M.dph, M.noise};
    };
}

AnalyticFn discriminant_function(const Potential& V, cplx level, const FloquetOptions& o) {
    return [&V, level, o](cplx z) {
        const Monodromy M = monodromy_matrix(V, z, o);
        return AnalyticValue{M.delta_plus() - level, M.delta_plus_dot(), M.noise};
    };
}

AnalyticFn critical_function(const Potential& V, const FloquetOptions& o) {
    return [&V, o](cplx z) {
        const DiscriminantJet j = discriminant_jet(V, z, o);
        return AnalyticValue{j.d1, j.d2, j.noise1};
    };
}

std::vector<SpectralPoint> zeros_in_strip(const AnalyticFn& f, const Semistrip& s,
                                          std::vector<double> zeta_cuts, int count,
                                          const SpectraOptions& o, Rect* region) {
    std::vector<SpectralPoint> found;
    if (count <= 0) return found;
    const double im_lo = s.m1 - o.margin, im_hi = s.m2 + o.margin;
    double left = std::min(s.m3 - o.margin, -o.margin);
    std::sort(zeta_cuts.begin(), zeta_cuts.end());
    std::vector<double> edges;
    for (double c : zeta_cuts)
        if (c > 0.0 && c * c > left + 0.25) edges.push_back(c * c);
    int total = 0;
    double right = left;
    for (std::size_t j = 0; j < edges.size() && total < count; ++j) {
        const Rect cell{left, edges[j], im_lo, im_hi};
        for (const Root& r : find_roots_in_rect(f, cell, o.roots)) {
            found.push_back({r.z, r.multiplicity});
            total += r.multiplicity;
        }
        right = edges[j];
        left = edges[j];
    }
    if (total < count) {
        std::ostringstream os;
        os << "found only " << total << " of " << count << " zeros below Re z = " << right;
        throw NonconvergenceError(os.str());
    }
    std::sort(found.begin(), found.end(), by_real);
    std::vector<SpectralPoint> out;
    int taken = 0;
    for (const auto& p : found) {
        if (taken >= count) break;
        out.push_back(p);
        taken += p.multiplicity;
    }
    if (region) *region = {std::min(s.m3 - o.margin, -o.margin), right, im_lo, im_hi};
    return out;
}

std::vector<SpectralPoint> dirichlet_spectrum(const Potential& V, int k_max, const SpectraOptions& o) {
    require_zero_mean(V);
    // mu_k ~ k^2: cut at half-integers where phi(z, pi) ~ sin(pi sqrt z)/sqrt z is large
    return zeros_in_strip(dirichlet_function(V, o.ode), V.semistrip(), cuts(1.5, 1.0, 4 * k_max + 16),
                          k_max, o);
}

PeriodicSpectra periodic_antiperiodic_spectrum(const Potential& V, int k_max, const SpectraOptions& o) {
    require_zero_mean(V);
    const Semistrip s = V.semistrip();
    PeriodicSpectra r;
    // Delta_+ - 1 vanishes near even squares: cut at odd integers (Delta_+ ~ -1)
    r.periodic = zeros_in_strip(discriminant_function(V, 1.0, o.ode), s, cuts(1.0, 2.0, 2 * k_max + 8),
                                2 * k_max - 1, o);
    if (k_max >= 2)
        r.antiperiodic = zeros_in_strip(discriminant_function(V, -1.0, o.ode), s,
                                        cuts(2.0, 2.0, 2 * k_max + 8), 2 * k_max - 2, o);
    return r;
}

std::vector<CriticalPoint> critical_points(const Potential& V, int k_max, const SpectraOptions& o) {
    require_zero_mean(V);
    const auto zeros = zeros_in_strip(critical_function(V, o.ode), V.semistrip(),
                                      cuts(1.5, 1.0, 4 * k_max + 16), k_max, o);
    std::vector<CriticalPoint> out;
    for (const auto& p : zeros) {
        const Monodromy M = monodromy_matrix(V, p.value, o.ode);
        out.push_back({p.value, M.delta_plus(), p.multiplicity});
    }
    return out;
}

std::vector<SpectralPoint> fiber_spectrum(const Potential& V, double t, int k_max, const SpectraOptions& o) {
    require_zero_mean(V);
    const double c = std::cos(t);
    // roots near (2n +- t/pi)^2; cut at integers of the parity where |Delta_+ - cos t| >= 1
    const double first = c >= 0.0 ? 1.0 : 2.0;
    return zeros_in_strip(discriminant_function(V, c, o.ode), V.semistrip(), cuts(first, 2.0, 2 * k_max + 8),
                          2 * k_max - 1, o);
}

Multiplicities algebraic_vs_geometric(const Potential& V, double t, cplx E, const SpectraOptions& o) {
    const Monodromy M = monodromy_matrix(V, E, o.ode);
    const cplx c = std::cos(t);
    if (std::abs(M.delta_plus() - c) > 1e-7 * std::max(1.0, M.norm())) {
        std::ostringstream os;
        os << "E = " << E << " is not an eigenvalue of H(t) for t = " << t
           << " (|Delta_+ - cos t| = " << std::abs(M.delta_plus() - c) << ")";
        throw NotAnEigenvalueError(os.str());
    }
    const AnalyticFn f = discriminant_function(V, c, o.ode);
    Multiplicities r;
    double radius = 1e-2 * std::sqrt(1.0 + std::abs(E));
    int count = winding_on_circle(f, E, radius);
    r.radius = radius;
    if (count < 0) count = 1;
    for (int step = 0; step < 12 && count > 1; ++step) {
        const double rr = radius * std::pow(0.1, step + 1);
        const int cc = winding_on_circle(f, E, rr);
        if (cc < 1) break;  // unresolvable (or E itself inaccurate at this scale)
        count = cc;
        r.radius = rr;
    }
    double dE = r.radius;
    if (count == 2) {
        // two zeros farther apart than the pair resolution are distinct simple roots
        const DiscriminantJet j = discriminant_jet(V, E, o.ode);
        const double res = pair_resolution(j.noise, j.d2);
        const ContourMoments cm = contour_moments_circle(f, E, r.radius);
        const cplx s1 = cm.centered[1], s2 = cm.centered[2];
        const double sep = std::sqrt(std::abs(2.0 * s2 - s1 * s1));
        if (cm.ok && sep > res) {
            count = 1;
        } else {
            dE = std::min(dE, res);
        }
    }
    r.algebraic = count;

    // rank of M - e^{it} I with a threshold matched to the resolution radius
    const cplx rho = std::polar(1.0, t);
    const cplx a = M.th - rho, b = M.ph, cc = M.thp, d = M.php - rho;
    const double fro2 = std::norm(a) + std::norm(b) + std::norm(cc) + std::norm(d);
    const double det = std::abs(a * d - b * cc);
    const double smax = std::sqrt(0.5 * (fro2 + std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det))));
    const double smin = smax > 0.0 ? det / smax : 0.0;
    // entries are only known to the accuracy with which E locates the root
    if (count == 1) dE = std::min(r.radius, M.noise / std::max(std::abs(M.delta_plus_dot()), 1e-300));
    const double tau = std::max({1e-8 * std::sqrt(fro2), M.derivative_norm() * dE, 100.0 * M.noise});
    const int rank = (smax > tau) + (smin > tau);
    r.geometric = 2 - rank;
    return r;
}

SpectraCatalog spectra_catalog(const Potential& V, int k_max, const SpectraOptions& o) {
    SpectraCatalog c;
    c.k_max = k_max;
    require_zero_mean(V);
    c.strip = V.semistrip();
    Rect reg{};
    c.dirichlet = zeros_in_strip(dirichlet_function(V, o.ode), c.strip, cuts(1.5, 1.0, 4 * k_max + 16), k_max, o, &reg);
    const PeriodicSpectra p = periodic_antiperiodic_spectrum(V, k_max, o);
    c.periodic = p.periodic;
    c.antiperiodic = p.antiperiodic;
    c.critical = critical_points(V, k_max, o);
    c.region = reg;
    auto widen = [&](const std::vector<SpectralPoint>& v) {
        for (const auto& q : v) c.region.re_hi = std::max(c.region.re_hi, q.value.real() + 1.0);
    };
    widen(c.periodic);
    widen(c.antiperiodic);
    return c;
}

}  // namespace hill
