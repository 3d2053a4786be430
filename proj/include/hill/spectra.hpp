#pragma once

#include <vector>

#include "hill/floquet.hpp"
#include "hill/roots.hpp"

namespace hill {

struct SpectralPoint {
    cplx value;
    int multiplicity = 1;
};

struct CriticalPoint {
    cplx delta;   // zero of delta_plus_dot
    cplx gamma;   // delta_plus(delta)
    int order = 1;
};

struct SpectraOptions {
    FloquetOptions ode;
    RootOptions roots;
    double margin = 1.0;  // widening of the semi-strip
};

// Evaluators used by the catalogs (f, f', noise).
AnalyticFn dirichlet_function(const Potential& V, const FloquetOptions& o = {});
AnalyticFn discriminant_function(const Potential& V, cplx level, const FloquetOptions& o = {});
AnalyticFn critical_function(const Potential& V, const FloquetOptions& o = {});

// Zeros of f in the widened semi-strip, collected cell by cell between the
// squares of the given cut abscissae until `count` zeros (with
// multiplicity) are found.
std::vector<SpectralPoint> zeros_in_strip(const AnalyticFn& f, const Semistrip& s,
                                          std::vector<double> zeta_cuts, int count,
                                          const SpectraOptions& o, Rect* region = nullptr);

// mu_1..mu_kmax
std::vector<SpectralPoint> dirichlet_spectrum(const Potential& V, int k_max, const SpectraOptions& o = {});

struct PeriodicSpectra {
    std::vector<SpectralPoint> periodic;      // lambda_0^+, lambda_2^-, lambda_2^+, ...
    std::vector<SpectralPoint> antiperiodic;  // lambda_1^-, lambda_1^+, ...
};
// 2k_max-1 periodic and 2k_max-2 antiperiodic eigenvalues counted with multiplicity
PeriodicSpectra periodic_antiperiodic_spectrum(const Potential& V, int k_max, const SpectraOptions& o = {});

// delta_1..delta_kmax
std::vector<CriticalPoint> critical_points(const Potential& V, int k_max, const SpectraOptions& o = {});

// E_0(t), E_1^-(t), E_1^+(t), ..., 2k_max-1 values with multiplicity
std::vector<SpectralPoint> fiber_spectrum(const Potential& V, double t, int k_max, const SpectraOptions& o = {});

struct Multiplicities {
    int algebraic = 0;
    int geometric = 0;
    double radius = 0.0;  // circle on which the algebraic count was resolved
};
Multiplicities algebraic_vs_geometric(const Potential& V, double t, cplx E, const SpectraOptions& o = {});

struct SpectraCatalog {
    int k_max = 0;
    std::vector<SpectralPoint> dirichlet, periodic, antiperiodic;
    std::vector<CriticalPoint> critical;
    Rect region{};
    Semistrip strip{};
};

SpectraCatalog spectra_catalog(const Potential& V, int k_max, const SpectraOptions& o = {});

// Flattened count helpers
std::vector<cplx> expand_multiplicity(const std::vector<SpectralPoint>& pts);

void require_zero_mean(const Potential& V);

}  // namespace hill
