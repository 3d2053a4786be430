#include "hill/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hill {

namespace {

struct Corrected {
    bool ok = false;
    cplx lambda;
    Monodromy M;
    int iters = 0;
    double last_dot = 0.0;
};

Corrected correct(const Potential& V, cplx guess, double t, const TraceOptions& o) {
    Corrected c;
    const cplx target = std::cos(t);
    cplx lam = guess;
    double last_step = 1e300;
    for (int it = 0; it <= o.max_newton; ++it) {
        const Monodromy M = monodromy_matrix(V, lam, o.ode);
        const cplx r = M.delta_plus() - target;
        const cplx d = M.delta_plus_dot();
        c.last_dot = std::abs(d);
        c.iters = it;
        if (std::abs(r) <= 2.0 * M.noise || last_step <= o.corrector_tol * (1.0 + std::abs(lam))) {
            c.ok = std::abs(r) <= 1e3 * M.noise;
            c.lambda = lam;
            c.M = M;
            return c;
        }
        if (it == o.max_newton || d == 0.0) return c;
        const cplx step = r / d;
        lam -= step;
        last_step = std::abs(step);
        if (!std::isfinite(std::abs(lam))) return c;
    }
    return c;
}

ArcSample make_sample(double t, cplx lam, const Monodromy& M) {
    ArcSample s;
    s.t = t;
    s.lambda = lam;
    s.th = M.th;
    s.ph = M.ph;
    s.thp = M.thp;
    s.php = M.php;
    s.delta_dot = M.delta_plus_dot();
    s.dlambda_dt = -std::sin(t) / s.delta_dot;
    return s;
}

struct HalfTrace {
    std::vector<ArcSample> samples;  // in tracing order, first is the start
    EndStatus status = EndStatus::reached;
    std::optional<cplx> encounter;
};

HalfTrace trace_half(const Potential& V, const ArcSample& start, double t_end, const TraceOptions& o) {
    HalfTrace out;
    out.samples.push_back(start);
    const double dir = t_end > start.t ? 1.0 : -1.0;
    double h = o.h_max;
    int halvings = 0, divergent = 0;
    while (true) {
        const ArcSample& cur = out.samples.back();
        const double remaining = dir * (t_end - cur.t);
        if (remaining <= 1e-15) break;
        const double hs = std::min(h, remaining);
        const double t_new = remaining - hs < 1e-14 ? t_end : cur.t + dir * hs;
        const double dt = t_new - cur.t;
        // second-order predictor when a previous sample exists
        cplx pred = cur.lambda + dt * cur.dlambda_dt;
        if (out.samples.size() >= 2) {
            const ArcSample& prev = out.samples[out.samples.size() - 2];
            const double hp = cur.t - prev.t;
            const cplx second = (cur.dlambda_dt - prev.dlambda_dt) / hp;
            if (std::isfinite(std::abs(second))) pred += 0.5 * dt * dt * second;
        }
        const Corrected c = correct(V, pred, t_new, o);
        bool accept = c.ok;
        bool singular = false;
        if (accept) {
            const double dd = std::abs(c.M.delta_plus_dot());
            if (dd < o.eps_sing * (1.0 + std::abs(c.lambda))) {
                singular = true;
                accept = false;
            }
        }
        ArcSample s;
        if (accept) {
            s = make_sample(t_new, c.lambda, c.M);
            // trapezoid consistency guards against hopping to a neighbouring arc
            const cplx chord = s.lambda - cur.lambda;
            const cplx trap = 0.5 * dt * (s.dlambda_dt + cur.dlambda_dt);
            if (std::abs(chord - trap) > 0.05 * std::abs(chord) + 1e-10 * (1.0 + std::abs(s.lambda)))
                accept = false;
        }
        if (accept) {
            out.samples.push_back(s);
            halvings = 0;
            divergent = 0;
            if (c.iters <= 4) h = std::min(o.h_max, 1.5 * hs);
            continue;
        }
        if (singular) out.encounter = c.lambda;
        const double near = 100.0 * o.eps_sing * (1.0 + std::abs(cur.lambda));
        if (!singular && std::abs(cur.delta_dot) > near && (c.last_dot == 0.0 || c.last_dot > near)) ++divergent;
        h = 0.5 * hs;
        ++halvings;
        if (divergent > o.max_divergent_halvings) {
            std::ostringstream os;
            os << "arc corrector diverged at t = " << cur.t << ", lambda = " << cur.lambda;
            throw CorrectorDivergence(cur.t, os.str());
        }
        if (h < o.h_min || halvings > o.max_halvings) {
            const double dd = std::abs(cur.delta_dot);
            if (singular || out.encounter || dd < 1e3 * o.eps_sing * (1.0 + std::abs(cur.lambda))) {
                out.status = EndStatus::singular;
                if (!out.encounter) out.encounter = cur.lambda;
                break;
            }
            std::ostringstream os;
            os << "arc corrector failed at t = " << cur.t << ", lambda = " << cur.lambda;
            throw CorrectorDivergence(cur.t, os.str());
        }
    }
    return out;
}

cplx hermite(const ArcSample& a, const ArcSample& b, double t) {
    const double h = b.t - a.t;
    if (h == 0.0) return a.lambda;
    const double s = (t - a.t) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    cplx da = a.dlambda_dt, db = b.dlambda_dt;
    if (!std::isfinite(std::abs(da)) || !std::isfinite(std::abs(db))) return a.lambda + s * (b.lambda - a.lambda);
    return h00 * a.lambda + h10 * h * da + h01 * b.lambda + h11 * h * db;
}

double segment_distance(const ArcSample& a, const ArcSample& b, cplx p) {
    double best = std::min(std::abs(a.lambda - p), std::abs(b.lambda - p));
    double s_best = std::abs(a.lambda - p) <= std::abs(b.lambda - p) ? 0.0 : 1.0;
    constexpr int n = 16;
    for (int j = 1; j < n; ++j) {
        const double s = static_cast<double>(j) / n;
        const double d = std::abs(hermite(a, b, a.t + s * (b.t - a.t)) - p);
        if (d < best) {
            best = d;
            s_best = s;
        }
    }
    // golden-section refinement around the best sample
    double lo = std::max(0.0, s_best - 1.0 / n), hi = std::min(1.0, s_best + 1.0 / n);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    auto dist = [&](double s) { return std::abs(hermite(a, b, a.t + s * (b.t - a.t)) - p); };
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = dist(x1), f2 = dist(x2);
    for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = dist(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = dist(x2);
        }
    }
    return std::min({best, f1, f2});
}

cplx nearest(const std::vector<SpectralPoint>& pts, cplx z) {
    cplx best = z;
    double d = 1e300;
    for (const auto& p : pts)
        if (std::abs(p.value - z) < d) {
            d = std::abs(p.value - z);
            best = p.value;
        }
    return best;
}

}  // namespace

cplx SpectralArc::lambda_at(double t) const {
    if (samples.empty()) throw WindowError("empty arc");
    if (t <= samples.front().t) return samples.front().lambda;
    if (t >= samples.back().t) return samples.back().lambda;
    auto it = std::upper_bound(samples.begin(), samples.end(), t,
                               [](double v, const ArcSample& s) { return v < s.t; });
    const ArcSample& b = *it;
    const ArcSample& a = *(it - 1);
    return hermite(a, b, t);
}

SpectralArc trace_arc(const Potential& V, cplx lambda_start, double t_start, double t_end,
                      const TraceOptions& opt) {
    const Corrected c0 = correct(V, lambda_start, t_start, opt);
    if (!c0.ok) {
        std::ostringstream os;
        os << "start point " << lambda_start << " does not converge onto the fiber t = " << t_start;
        throw CorrectorDivergence(t_start, os.str());
    }
    const ArcSample start = make_sample(t_start, c0.lambda, c0.M);
    if (std::abs(start.delta_dot) < opt.eps_sing * (1.0 + std::abs(start.lambda)))
        throw CorrectorDivergence(t_start, "start point is a critical point of Delta_+");
    HalfTrace h = trace_half(V, start, t_end, opt);
    SpectralArc arc;
    arc.t_lo = std::min(t_start, t_end);
    arc.t_hi = std::max(t_start, t_end);
    arc.samples = h.samples;
    if (t_end < t_start) {
        std::reverse(arc.samples.begin(), arc.samples.end());
        arc.lo_status = h.status;
        arc.lo_encounter = h.encounter;
    } else {
        arc.hi_status = h.status;
        arc.hi_encounter = h.encounter;
    }
    for (const auto& s : arc.samples)
        if (std::abs(s.delta_dot) < opt.eps_sing * (1.0 + std::abs(s.lambda))) arc.regular = false;
    return arc;
}

cplx arc_point(const Potential& V, const SpectralArc& arc, double t, const FloquetOptions& o) {
    TraceOptions to;
    to.ode = o;
    to.max_newton = 30;
    const Corrected c = correct(V, arc.lambda_at(t), t, to);
    if (!c.ok) {
        std::ostringstream os;
        os << "arc point at t = " << t << " did not converge";
        throw CorrectorDivergence(t, os.str());
    }
    return c.lambda;
}

QuadrupleZero quadruple_zero_test(const Potential& V, cplx lambda, double radius, double eps, const FloquetOptions& o) {
    const Monodromy M = monodromy_matrix(V, lambda, o);
    MonodromyOptions mo;
    mo.ode = o;
    QuadrupleZero r;
    const cplx dp = M.delta_plus();
    r.disc = std::abs(dp * dp - 1.0);
    r.dminus = std::abs(M.delta_minus());
    r.phi = std::abs(M.ph);
    r.ddot = std::abs(delta_plus_ddot(V, lambda, mo));
    // "zero" means: vanishes somewhere within the resolution radius
    const double floor = 100.0 * M.noise;
    const double tol_disc = std::abs(dp) * r.ddot * radius * radius + floor;
    const double tol_dm = 0.5 * std::abs(M.dth - M.dphp) * radius + floor;
    const double tol_phi = std::abs(M.dph) * radius + floor;
    r.holds = r.disc <= tol_disc && r.dminus <= tol_dm && r.phi <= tol_phi && r.ddot > eps * (1.0 + std::abs(lambda));
    return r;
}

double removability_ratio(const Potential& V, cplx center, double r, const FloquetOptions& o) {
    // f = (Delta_+^2 - 1 - Delta_-^2) / (phi(pi) Delta_+'), evaluated literally
    auto mean_abs = [&](double rad) {
        constexpr int n = 16;
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            const cplx z = center + std::polar(rad, 2.0 * kPi * (j + 0.5) / n);
            const Monodromy M = monodromy_matrix(V, z, o);
            const cplx dp = M.delta_plus(), dm = M.delta_minus();
            s += std::abs((dp * dp - 1.0 - dm * dm) / (M.ph * M.delta_plus_dot()));
        }
        return s / n;
    };
    return mean_abs(0.5 * r) / mean_abs(r);
}

SpectrumPortrait spectrum_portrait(const Potential& V, int k_max, const PortraitOptions& o) {
    require_zero_mean(V);
    const int k_cat = k_max / 2 + 2;
    SpectraCatalog cat;
    cat.k_max = k_max;
    cat.strip = V.semistrip();
    cat.dirichlet = dirichlet_spectrum(V, k_max, o.spectra);
    const PeriodicSpectra p = periodic_antiperiodic_spectrum(V, k_cat, o.spectra);
    cat.periodic = p.periodic;
    cat.antiperiodic = p.antiperiodic;
    cat.critical = critical_points(V, k_max, o.spectra);
    return spectrum_portrait(V, cat, o);
}

SpectrumPortrait spectrum_portrait(const Potential& V, const SpectraCatalog& cat, const PortraitOptions& o) {
    const int k_max = cat.k_max;
    SpectrumPortrait P;
    P.k_max = k_max;
    P.strip = V.semistrip();
    P.catalog = cat;
    const double tm = 0.5 * kPi;
    const auto mid = fiber_spectrum(V, tm, (k_max + 2) / 2, o.spectra);
    const std::vector<cplx> mids = expand_multiplicity(mid);
    if (static_cast<int>(mids.size()) < k_max)
        throw NonconvergenceError("not enough fiber eigenvalues at t = pi/2");

    struct Encounter {
        cplx lambda;
        double t;
        int band;
    };
    std::vector<Encounter> encounters;

    for (int n = 1; n <= k_max; ++n) {
        SpectralArc lo = trace_arc(V, mids[n - 1], tm, 0.0, o.trace);
        SpectralArc hi = trace_arc(V, mids[n - 1], tm, kPi, o.trace);
        SpectralArc arc;
        arc.band = n;
        arc.t_lo = 0.0;
        arc.t_hi = kPi;
        arc.samples = lo.samples;
        arc.samples.insert(arc.samples.end(), hi.samples.begin() + 1, hi.samples.end());
        arc.lo_status = lo.lo_status;
        arc.hi_status = hi.hi_status;
        arc.lo_encounter = lo.lo_encounter;
        arc.hi_encounter = hi.hi_encounter;
        arc.regular = lo.regular && hi.regular;
        // singular ends: the endpoint comes from the periodic/antiperiodic catalog
        auto close_end = [&](bool at_lo) {
            const double te = at_lo ? 0.0 : kPi;
            const cplx enc = at_lo ? *arc.lo_encounter : *arc.hi_encounter;
            const ArcSample& edge = at_lo ? arc.samples.front() : arc.samples.back();
            encounters.push_back({enc, std::abs(edge.t - te) < 1e-3 ? te : edge.t, n});
            if (std::abs(edge.t - te) > 1e-3) return;  // interior halt: leave open
            const cplx root = nearest(at_lo ? cat.periodic : cat.antiperiodic, enc);
            const Monodromy M = monodromy_matrix(V, root, o.trace.ode);
            ArcSample s;
            s.t = te;
            s.lambda = root;
            s.th = M.th;
            s.ph = M.ph;
            s.thp = M.thp;
            s.php = M.php;
            s.delta_dot = M.delta_plus_dot();
            // one-sided slope from the approach samples
            const ArcSample& a = at_lo ? arc.samples[0] : arc.samples[arc.samples.size() - 1];
            const ArcSample& b = at_lo ? arc.samples[1] : arc.samples[arc.samples.size() - 2];
            s.dlambda_dt = (root - a.lambda) / (te - a.t);
            if (!std::isfinite(std::abs(s.dlambda_dt))) s.dlambda_dt = (a.lambda - b.lambda) / (a.t - b.t);
            if (at_lo) arc.samples.insert(arc.samples.begin(), s);
            else arc.samples.push_back(s);
            arc.regular = false;
        };
        if (arc.lo_status == EndStatus::singular) close_end(true);
        if (arc.hi_status == EndStatus::singular) close_end(false);
        P.arcs.push_back(std::move(arc));
    }

    // group encounters at the nearest critical point
    for (const Encounter& e : encounters) {
        cplx loc = e.lambda;
        double best = 1e300;
        for (const auto& c : cat.critical)
            if (std::abs(c.delta - e.lambda) < best) {
                best = std::abs(c.delta - e.lambda);
                loc = c.delta;
            }
        if (best > 0.05 * (1.0 + std::abs(e.lambda))) loc = e.lambda;
        auto it = std::find_if(P.singular_points.begin(), P.singular_points.end(), [&](const SingularPoint& s) {
            return std::abs(s.lambda - loc) <= 1e-6 * (1.0 + std::abs(loc));
        });
        if (it != P.singular_points.end()) {
            if (std::find(it->bands.begin(), it->bands.end(), e.band) == it->bands.end()) it->bands.push_back(e.band);
            continue;
        }
        SingularPoint sp;
        sp.lambda = loc;
        sp.t = e.t;
        sp.bands = {e.band};
        P.singular_points.push_back(sp);
    }
    for (SingularPoint& sp : P.singular_points) {
        sp.on_spectrum = distance_to_spectrum(sp.lambda, P) <= o.on_spectrum_eps * (1.0 + std::abs(sp.lambda));
        sp.zero_pattern = quadruple_zero_test(V, sp.lambda, o.on_spectrum_eps * (1.0 + std::abs(sp.lambda)), o.ddot_eps, o.trace.ode);
        sp.removability_ratio = removability_ratio(V, sp.lambda, o.removability_r * (1.0 + std::abs(sp.lambda)), o.trace.ode);
        sp.spectral_singularity = sp.on_spectrum && (!sp.zero_pattern.holds || sp.removability_ratio > o.pole_ratio);
        if (sp.spectral_singularity)
            for (SpectralArc& a : P.arcs)
                if (std::find(sp.bands.begin(), sp.bands.end(), a.band) != sp.bands.end()) a.flagged_singular = true;
    }
    std::sort(P.singular_points.begin(), P.singular_points.end(),
              [](const SingularPoint& a, const SingularPoint& b) { return a.lambda.real() < b.lambda.real(); });
    return P;
}

double distance_to_spectrum(cplx p, const SpectrumPortrait& P) {
    double lo = 1e300, hi = -1e300;
    for (const auto& a : P.arcs)
        for (const auto& s : a.samples) {
            lo = std::min(lo, s.lambda.real());
            hi = std::max(hi, s.lambda.real());
        }
    if (P.arcs.empty() || p.real() < lo - 1.0 || p.real() > hi + 1.0) {
        std::ostringstream os;
        os << "point " << p << " outside the traced window [" << lo - 1.0 << ", " << hi + 1.0 << "]";
        throw WindowError(os.str());
    }
    double d = 1e300;
    for (const auto& a : P.arcs) {
        for (std::size_t i = 0; i + 1 < a.samples.size(); ++i) {
            const ArcSample& s0 = a.samples[i];
            const ArcSample& s1 = a.samples[i + 1];
            // cheap rejection: chord bounding disc
            const double rad = 0.5 * std::abs(s1.lambda - s0.lambda) +
                               0.25 * (s1.t - s0.t) * (std::abs(s0.dlambda_dt) + std::abs(s1.dlambda_dt));
            const cplx c = 0.5 * (s0.lambda + s1.lambda);
            if (std::abs(p - c) - rad > d) continue;
            d = std::min(d, segment_distance(s0, s1, p));
        }
        if (a.samples.size() == 1) d = std::min(d, std::abs(a.samples[0].lambda - p));
    }
    for (const auto& s : P.singular_points)
        if (s.on_spectrum) d = std::min(d, std::abs(s.lambda - p));
    return d;
}

}  // namespace hill
