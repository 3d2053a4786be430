#pragma once

#include <optional>
#include <vector>

#include "hill/spectra.hpp"

namespace hill {

struct ArcSample {
    double t;
    cplx lambda;
    cplx dlambda_dt;
    // monodromy entries at lambda (kept for the ratio diagnostics)
    cplx th, ph, thp, php, delta_dot;
};

enum class EndStatus { reached, singular };

struct SpectralArc {
    int band = 0;
    double t_lo = 0.0, t_hi = kPi;  // nominal parameter range
    std::vector<ArcSample> samples;  // ascending t
    EndStatus lo_status = EndStatus::reached, hi_status = EndStatus::reached;
    std::optional<cplx> lo_encounter, hi_encounter;  // last approach points
    bool regular = true;           // |delta_plus_dot| >= eps_sing on every sample
    bool flagged_singular = false;  // ends at a spectral singularity

    cplx lambda_at(double t) const;  // cubic Hermite through the samples
};

struct TraceOptions {
    FloquetOptions ode;
    double h_max = kPi / 96.0;
    double h_min = 1e-7;
    double eps_sing = 1e-6;       // relative to 1 + |lambda|
    double corrector_tol = 1e-14;  // relative Newton step
    int max_newton = 10;
    int max_halvings = 40;
    int max_divergent_halvings = 3;  // halvings away from any critical point
};

// Follows the solution of Delta_+(lambda) = cos t from (t_start, lambda_start)
// to t_end. Stops early (status singular) when |delta_plus_dot| drops below
// eps_sing; samples are returned in ascending t.
SpectralArc trace_arc(const Potential& V, cplx lambda_start, double t_start, double t_end,
                      const TraceOptions& opt = {});

// Newton-polished point of the arc at parameter t.
cplx arc_point(const Potential& V, const SpectralArc& arc, double t, const FloquetOptions& o = {});

struct QuadrupleZero {
    double disc = 0.0;      // |Delta_+^2 - 1|
    double dminus = 0.0;    // |Delta_-|
    double phi = 0.0;       // |phi(., pi)|
    double ddot = 0.0;      // |Delta_+''|
    bool holds = false;
};

struct SingularPoint {
    cplx lambda;            // refined location (nearest critical point)
    double t = 0.0;         // 0 or pi for band-end encounters
    std::vector<int> bands;
    bool on_spectrum = false;
    QuadrupleZero zero_pattern;
    double removability_ratio = 1.0;  // mean|f| on r/2 over mean|f| on r
    bool spectral_singularity = false;
};

struct PortraitOptions {
    TraceOptions trace;
    SpectraOptions spectra;
    double on_spectrum_eps = 1e-6;  // relative to 1 + |lambda|
    double ddot_eps = 1e-8;          // lower bound on |Delta_+''|, relative to 1 + |lambda|
    double removability_r = 1e-3;   // relative to 1 + |lambda|
    double pole_ratio = 1.5;
};

struct SpectrumPortrait {
    int k_max = 0;
    std::vector<SpectralArc> arcs;
    std::vector<SingularPoint> singular_points;
    Semistrip strip;
    SpectraCatalog catalog;
};

SpectrumPortrait spectrum_portrait(const Potential& V, int k_max, const PortraitOptions& o = {});
SpectrumPortrait spectrum_portrait(const Potential& V, const SpectraCatalog& catalog,
                                   const PortraitOptions& o = {});

// Euclidean distance to the traced spectrum (arcs, endpoints, singular
// points); WindowError outside the traced window.
double distance_to_spectrum(cplx point, const SpectrumPortrait& portrait);

// Delta_+^2-1, Delta_-, phi(.,pi) count as zero when their first-order
// (second for the discriminant) variation over `radius` covers them.
QuadrupleZero quadruple_zero_test(const Potential& V, cplx lambda, double radius, double eps, const FloquetOptions& o = {});
double removability_ratio(const Potential& V, cplx center, double r, const FloquetOptions& o = {});

}  // namespace hill
