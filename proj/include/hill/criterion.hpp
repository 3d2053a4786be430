#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hill/arcs.hpp"

namespace hill {

enum class Verdict { pass, fail, inconclusive };
const char* verdict_name(Verdict v);

// All thresholds of the criterion checks in one place.
struct CriterionOptions {
    PortraitOptions portrait;
    double trend_pass = 1.5;       // last octave sup <= trend_pass * sup two octaves earlier
    double trend_fail = 10.0;      // octave-to-octave growth beyond this is a witness
    double ratio_floor = 1e-3;     // sups below this count as zero in trend tests
    double blowup_exponent = 0.5;  // local log-log exponent above this is a witness
    double blowup_window = 0.2;    // fit samples within this * (1 + |lambda0|)
    int multiplicity_t_points = 16;
};

// edges (lambda_k^-, lambda_k^+) of gap k from the catalog, ordered by real part; empty outside it
std::vector<cplx> gap_edges(const SpectraCatalog& cat, int k);

struct RatioSample {
    int band;
    double t;
    cplx lambda;
    std::array<double, 3> r;  // |phi/D'|, |theta'/((|l|+1)D')|, |D_-/((sqrt|l|+1)D')|
};

struct RatioDiagnostics {
    std::vector<RatioSample> samples;
    int excluded = 0;  // samples with |Delta_+'| < eps_sing
    std::array<double, 3> sup{};
    std::array<int, 3> argmax_band{};
    std::vector<std::array<double, 3>> band_sup;    // [band-1]
    std::vector<std::array<double, 3>> window_sup;  // bands <= m, [m-1]
    std::vector<std::array<double, 3>> octave_sup;  // bands in (2^(j-1), 2^j]
};

RatioDiagnostics ratio_diagnostics(const SpectrumPortrait& P, double eps_sing = 1e-6);

struct TrendResult {
    Verdict verdict = Verdict::inconclusive;
    std::string detail;
};
TrendResult octave_trend(const std::vector<double>& sups, const CriterionOptions& o);

struct CriticalRecord {
    int k = 0;
    cplx delta;
    double distance = 0.0;
    bool on_spectrum = false;
    QuadrupleZero zero_pattern;
    double removability_ratio = 1.0;
    bool removable = true;
    bool ok = true;
};

struct CriticalPointResult {
    Verdict verdict = Verdict::inconclusive;
    std::vector<CriticalRecord> records;
    std::vector<std::string> witnesses;
};

struct BlowupFit {
    cplx lambda0;
    double exponent = 0.0;
    int n_samples = 0;
    double dist_min = 0.0, dist_max = 0.0;
    bool resolved = false;
};

struct RatioGrowthResult {
    Verdict verdict = Verdict::inconclusive;
    std::array<TrendResult, 3> trend;
    std::vector<BlowupFit> fits;
    std::vector<std::string> witnesses;
};

struct MultiplePoint {
    cplx lambda;
    int multiplicity = 2;
    bool periodic = true;
    double dirichlet_distance = 0.0;
    bool ok = true;
};

struct MultiplicityCheck {
    double t;
    cplx E;
    int algebraic = 0, geometric = 0;
};

struct GapRatio {
    int k = 0;
    double d = 0.0;
    std::array<double, 3> ratio{};  // |l+ - l-|/d, |mu - l-|/d, |mu - l+|/d
};

struct MultiplicityResult {
    Verdict verdict = Verdict::inconclusive;
    std::vector<MultiplePoint> multiple_points;             // (i)
    int points_checked = 0;                                 // (ii)
    std::vector<MultiplicityCheck> mismatches;              // (ii)
    std::vector<GapRatio> gaps;                             // (iii), k in Q
    std::array<double, 3> sup{};
    std::array<TrendResult, 3> trend;
    std::vector<std::string> witnesses;
};

struct Singularity {
    cplx lambda;
    double exponent = 0.0;  // local blowup rate of the ratio sum (NaN if unresolved)
};

struct CriterionReport {
    Verdict verdict = Verdict::inconclusive;
    int k_max = 0;
    double window_lo = 0.0, window_hi = 0.0;
    RatioDiagnostics ratios;
    CriticalPointResult crit_check;
    RatioGrowthResult growth_check;
    MultiplicityResult mult_check;
    std::vector<Singularity> singularities;
    bool checks_agree = false;
    std::vector<std::string> witnesses;
    SpectrumPortrait portrait;
};

std::vector<CriticalRecord> critical_records(const Potential& V, const SpectrumPortrait& P,
                                             const CriterionOptions& o = {});
CriticalPointResult check_critical_points(const Potential& V, const SpectrumPortrait& P, const CriterionOptions& o = {});
RatioGrowthResult check_ratio_growth(const SpectrumPortrait& P, const RatioDiagnostics& R,
                             const std::vector<CriticalRecord>& candidates, const CriterionOptions& o = {});
MultiplicityResult check_multiplicities(const Potential& V, const SpectrumPortrait& P, const CriterionOptions& o = {});
std::vector<Singularity> detect_spectral_singularities(const CriticalPointResult& crit, const RatioGrowthResult& growth);

CriterionReport evaluate_criterion(const Potential& V, int k_max, const CriterionOptions& o = {});

// Fiber eigenvalues E_0(t), E_1^-(t), E_1^+(t), ..., E_n^+(t) for 0 < t < pi
// (low ones from the contour search, the rest by Newton from the
// asymptotic guesses (2n -+ t/pi)^2).
std::vector<cplx> fiber_eigenvalues(const Potential& V, double t, int n_max, const FloquetOptions& o = {});

struct RieszDiagnostic {
    double t = 0.0;
    bool periodic_case = false;  // t = 0 mod pi: per-k ratio sums instead of frame bounds
    int k_max = 0;
    double lower = 0.0, upper = 0.0, bound = 0.0;
    std::vector<double> per_k;
};
RieszDiagnostic riesz_basis_diagnostic(const Potential& V, double t, int k_max, std::uint64_t seed = 1,
                                       int n_tests = 50);

struct AsymptoticResidual {
    double zeta;
    double s, u, m;  // zeta^2|phi - sin/zeta|, zeta^2|Delta_+ - cos|, zeta|Delta_-|
};
struct AsymptoticsReport {
    std::vector<AsymptoticResidual> curve;
    std::vector<std::array<double, 3>> octave_max;  // zeta in [2^j, 2^(j+1))
    bool bounded = false;                           // octave maxima non-increasing within 10%
};
AsymptoticsReport validate_parametrization_asymptotics(const Potential& V, int k_max, int points_per_unit = 16);

struct Lemma51Report {
    int n_max = 0;
    std::vector<double> t_grid;
    double constant = 0.0;  // max n |sqrt(E_n^pm(t)) - (2n pm t/pi)|
    int argmax_n = 0;
};
Lemma51Report lemma51_constant(const Potential& V, int n_max, const std::vector<double>& t_grid);

}  // namespace hill
