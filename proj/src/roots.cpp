#include "hill/roots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace hill {

namespace {

const cplx kI(0.0, 1.0);
constexpr double kPi2 = 6.283185307179586476925286766559;

// Kronrod 15 / Gauss 7 (QUADPACK qk15)
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct EdgeState {
    const AnalyticFn* f;
    const RootOptions* opt;
    cplx a, d;  // z(s) = a + s d, s in [0, 1]
    double zscale;
    long evals = 0;
    double min_abs = 1e300, max_noise = 0.0;
    bool bad = false;
};

using Triple = std::array<cplx, 3>;

Triple integrand(EdgeState& e, double s) {
    const cplx z = e.a + s * e.d;
    const AnalyticValue v = (*e.f)(z);
    ++e.evals;
    const double noise = std::max(v.noise, e.opt->noise_floor);
    e.min_abs = std::min(e.min_abs, std::abs(v.f));
    e.max_noise = std::max(e.max_noise, noise);
    if (std::abs(v.f) < 100.0 * noise || !std::isfinite(std::abs(v.df))) e.bad = true;
    const cplx g = v.df / v.f * e.d;
    const cplx zz = z / e.zscale;
    return {g, g * zz, g * zz * zz};
}

void gk15(EdgeState& e, double lo, double hi, Triple& res, double& err) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    Triple k{}, g{};
    const Triple fc = integrand(e, c);
    for (int p = 0; p < 3; ++p) {
        k[p] = wgk[7] * fc[p];
        g[p] = wg[3] * fc[p];
    }
    for (int j = 0; j < 7; ++j) {
        const Triple f1 = integrand(e, c - h * xgk[j]);
        const Triple f2 = integrand(e, c + h * xgk[j]);
        for (int p = 0; p < 3; ++p) {
            k[p] += wgk[j] * (f1[p] + f2[p]);
            if (j % 2 == 1) g[p] += wg[j / 2] * (f1[p] + f2[p]);
        }
    }
    err = 0.0;
    for (int p = 0; p < 3; ++p) {
        res[p] = h * k[p];
        err = std::max(err, h * std::abs(k[p] - g[p]));
    }
}

void adapt(EdgeState& e, double lo, double hi, const Triple& whole, double err, double tol,
           int depth, Triple& acc) {
    if (err <= tol || depth > 40 || e.evals > e.opt->max_evals_per_edge) {
        if (err > tol) e.bad = true;
        for (int p = 0; p < 3; ++p) acc[p] += whole[p];
        return;
    }
    const double mid = 0.5 * (lo + hi);
    Triple r1, r2;
    double e1, e2;
    gk15(e, lo, mid, r1, e1);
    gk15(e, mid, hi, r2, e2);
    adapt(e, lo, mid, r1, e1, 0.5 * tol, depth + 1, acc);
    adapt(e, mid, hi, r2, e2, 0.5 * tol, depth + 1, acc);
}

Triple edge_integral(EdgeState& e) {
    Triple whole, acc{};
    double err;
    gk15(e, 0.0, 1.0, whole, err);
    adapt(e, 0.0, 1.0, whole, err, e.opt->edge_tol, 0, acc);
    return acc;
}

cplx newton(const AnalyticFn& f, cplx z, const RootOptions& opt, bool& ok,
            const cplx* deflate = nullptr) {
    ok = false;
    for (int it = 0; it < 60; ++it) {
        const AnalyticValue v = f(z);
        if (v.f == 0.0) {
            ok = true;
            return z;
        }
        cplx ratio = v.df / v.f;
        if (deflate) ratio -= 1.0 / (z - *deflate);
        const cplx dz = 1.0 / ratio;
        if (!std::isfinite(std::abs(dz))) return z;
        z -= dz;
        if (std::abs(dz) <= opt.newton_tol * (1.0 + std::abs(z))) {
            ok = true;
            return z;
        }
    }
    // stalled at the noise level is still a converged root
    const AnalyticValue v = f(z);
    ok = std::abs(v.f) <= 1e3 * std::max(v.noise, opt.noise_floor * std::max(1.0, std::abs(v.df)));
    return z;
}

// secant iteration on f' (center of a double zero / tight pair)
cplx secant_on_derivative(const AnalyticFn& f, cplx z0, double h, bool& ok) {
    cplx za = z0, zb = z0 + h;
    cplx fa = f(za).df, fb = f(zb).df;
    ok = false;
    for (int it = 0; it < 60; ++it) {
        if (fb == fa) break;
        const cplx zc = zb - fb * (zb - za) / (fb - fa);
        za = zb;
        fa = fb;
        zb = zc;
        fb = f(zb).df;
        if (std::abs(zb - za) <= 1e-14 * (1.0 + std::abs(zb))) {
            ok = true;
            break;
        }
    }
    if (!ok && std::abs(zb - za) <= 1e-11 * (1.0 + std::abs(zb))) ok = true;
    return zb;
}

void solve_cell(const AnalyticFn& f, const Rect& r, const ContourMoments& cm, int n,
                double zscale, const RootOptions& opt, std::vector<Root>& out) {
    const double pad = 0.05 * std::max(r.width(), r.height());
    if (n == 1) {
        bool ok;
        cplx z = newton(f, cm.m[1] * zscale, opt, ok);
        if (!ok || !r.contains(z, pad)) {
            std::ostringstream os;
            os << "Newton polish failed near " << cm.m[1] * zscale;
            throw NonconvergenceError(os.str());
        }
        out.push_back({z, 1});
        return;
    }
    const cplx s1 = cm.m[1] * zscale, s2 = cm.m[2] * zscale * zscale;
    const cplx sq = std::sqrt(2.0 * s2 - s1 * s1);
    const cplx c = 0.5 * s1;
    // curvature of f at the pair center
    const double hh = std::max(std::abs(sq), 1e-4 * (1.0 + std::abs(c)));
    const AnalyticValue vp = f(c + hh), vm = f(c - hh);
    const cplx f2 = (vp.df - vm.df) / (2.0 * hh);
    const double noise = std::max({vp.noise, vm.noise, opt.noise_floor});
    const double res = pair_resolution(noise, f2);

    if (std::abs(sq) > res) {
        bool ok1, ok2;
        const cplx z1 = newton(f, c + 0.5 * sq, opt, ok1);
        const cplx z2 = newton(f, c - 0.5 * sq, opt, ok2, &z1);
        if (ok1 && ok2 && std::abs(z1 - z2) > res && r.contains(z1, pad) && r.contains(z2, pad)) {
            out.push_back({z1, 1});
            out.push_back({z2, 1});
            return;
        }
    }
    bool ok;
    const cplx z = secant_on_derivative(f, c, 1e-6 * (1.0 + std::abs(c)), ok);
    if (!ok || !r.contains(z, pad)) {
        std::ostringstream os;
        os << "double-root refinement failed near " << c;
        throw NonconvergenceError(os.str());
    }
    out.push_back({z, 2});
}

bool moments_usable(const ContourMoments& cm, const RootOptions& opt) {
    if (!cm.ok) return false;
    const double m0 = cm.m[0].real();
    return std::abs(m0 - std::round(m0)) <= opt.winding_slack && std::abs(cm.m[0].imag()) <= opt.winding_slack &&
           std::round(m0) >= 0;
}

void search(const AnalyticFn& f, const Rect& r, const ContourMoments& cm, int depth,
            const RootOptions& opt, std::vector<Root>& out) {
    const int n = static_cast<int>(std::lround(cm.m[0].real()));
    if (n == 0) return;
    const double zscale = std::max(1.0, std::abs(r.center()));
    const double size = std::max(r.width(), r.height());
    if (n <= 2) {
        solve_cell(f, r, cm, n, zscale, opt, out);
        return;
    }
    if (depth >= opt.max_depth || size < 1e-9 * (1.0 + std::abs(r.center()))) {
        out.push_back({cm.m[1] * zscale / static_cast<double>(n), n});
        return;
    }
    const bool split_re = r.width() >= r.height();
    for (double frac : {0.5, 0.46, 0.54, 0.42, 0.58, 0.38}) {
        Rect a = r, b = r;
        if (split_re) a.re_hi = b.re_lo = r.re_lo + frac * r.width();
        else a.im_hi = b.im_lo = r.im_lo + frac * r.height();
        const ContourMoments ca = contour_moments(f, a, opt), cb = contour_moments(f, b, opt);
        if (!moments_usable(ca, opt) || !moments_usable(cb, opt)) continue;
        if (std::lround(ca.m[0].real()) + std::lround(cb.m[0].real()) != n) continue;
        search(f, a, ca, depth + 1, opt, out);
        search(f, b, cb, depth + 1, opt, out);
        return;
    }
    throw BoundaryRootError("could not place a subdivision line away from the zeros");
}

}  // namespace

double pair_resolution(double noise, cplx f2) {
    const double a = std::max(std::abs(f2), 1e-300);
    return 4.0 * std::sqrt(2.0 * noise / a);
}

ContourMoments contour_moments(const AnalyticFn& f, const Rect& r, const RootOptions& opt) {
    const cplx c[4] = {{r.re_lo, r.im_lo}, {r.re_hi, r.im_lo}, {r.re_hi, r.im_hi}, {r.re_lo, r.im_hi}};
    const double zscale = std::max(1.0, std::abs(r.center()));
    ContourMoments cm;
    Triple total{};
    bool bad = false;
    for (int k = 0; k < 4; ++k) {
        EdgeState e{&f, &opt, c[k], c[(k + 1) % 4] - c[k], zscale};
        const Triple t = edge_integral(e);
        for (int p = 0; p < 3; ++p) total[p] += t[p];
        cm.evals += e.evals;
        cm.min_abs_f = k == 0 ? e.min_abs : std::min(cm.min_abs_f, e.min_abs);
        cm.max_noise = std::max(cm.max_noise, e.max_noise);
        bad = bad || e.bad;
    }
    for (int p = 0; p < 3; ++p) cm.m[p] = total[p] / (kPi2 * kI);
    cm.ok = !bad;
    return cm;
}

ContourMoments contour_moments_circle(const AnalyticFn& f, cplx center, double radius, int n_min) {
    ContourMoments cm;
    cm.min_abs_f = 1e300;
    cplx prev0 = NAN;
    for (int n = n_min; n <= 4096; n *= 2) {
        cplx m[3] = {0.0, 0.0, 0.0};
        double mn = 1e300, mx_noise = 0.0;
        for (int j = 0; j < n; ++j) {
            const cplx u = std::polar(1.0, kPi2 * j / n);
            const AnalyticValue v = f(center + radius * u);
            ++cm.evals;
            mn = std::min(mn, std::abs(v.f));
            mx_noise = std::max(mx_noise, v.noise);
            // dz = i r u dtheta; moments about the center in units of r
            const cplx g = v.df / v.f * radius * u;
            m[0] += g;
            m[1] += g * u;
            m[2] += g * u * u;
        }
        for (int p = 0; p < 3; ++p) cm.m[p] = m[p] / static_cast<double>(n);
        cm.min_abs_f = mn;
        cm.max_noise = mx_noise;
        if (std::abs(cm.m[0] - prev0) < 1e-6) {
            cm.ok = true;
            break;
        }
        prev0 = cm.m[0];
    }
    // convert to absolute moments
    const cplx c = center;
    const cplx m0 = cm.m[0], m1 = cm.m[1] * radius, m2 = cm.m[2] * radius * radius;
    cm.centered[0] = m0;
    cm.centered[1] = m1;
    cm.centered[2] = m2;
    cm.m[1] = m1 + c * m0;
    cm.m[2] = m2 + 2.0 * c * m1 + c * c * m0;
    return cm;
}

int winding_on_circle(const AnalyticFn& f, cplx center, double radius, double floor_factor) {
    const ContourMoments cm = contour_moments_circle(f, center, radius);
    if (cm.min_abs_f < floor_factor * std::max(cm.max_noise, 1e-16)) return -1;
    if (!cm.ok) return -1;
    return static_cast<int>(std::lround(cm.m[0].real()));
}

std::vector<Root> find_roots_in_rect(const AnalyticFn& f, const Rect& r0, const RootOptions& opt) {
    Rect r = r0;
    for (int attempt = 0; attempt < 6; ++attempt) {
        const ContourMoments cm = contour_moments(f, r, opt);
        if (moments_usable(cm, opt)) {
            std::vector<Root> out;
            search(f, r, cm, 0, opt, out);
            std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
                return a.z.real() != b.z.real() ? a.z.real() < b.z.real() : a.z.imag() < b.z.imag();
            });
            return out;
        }
        const double dw = 0.002 * (attempt + 1) * r0.width(), dh = 0.002 * (attempt + 1) * r0.height();
        r = {r0.re_lo - dw, r0.re_hi + dw, r0.im_lo - dh, r0.im_hi + dh};
    }
    std::ostringstream os;
    os << "zeros on or near the boundary of [" << r0.re_lo << ", " << r0.re_hi << "] x [" << r0.im_lo
       << ", " << r0.im_hi << "] after 5 perturbations";
    throw BoundaryRootError(os.str());
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

}  // namespace hill
