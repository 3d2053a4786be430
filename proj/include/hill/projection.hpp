#pragma once

#include <array>
#include <functional>
#include <vector>

#include "hill/arcs.hpp"

namespace hill {

// Samples on x_j = -N pi + j pi / P, j = 0 .. 2NP-1 (N cells of length pi
// on each side of the origin).
struct GridFunction {
    int cells = 0;
    int points_per_cell = 0;
    std::vector<cplx> values;
    int support_lo = 0, support_hi = 0;  // [lo, hi)

    static GridFunction zeros(int cells, int points_per_cell);
    static GridFunction sample(int cells, int points_per_cell, const std::function<cplx(double)>& f);

    int size() const { return static_cast<int>(values.size()); }
    double h() const;
    double x(int j) const;
    // value at x_j + n pi for x_j in [0, pi), n in [-cells, cells)
    cplx& at(int n, int j) { return values[static_cast<std::size_t>((n + cells) * points_per_cell + j)]; }
    cplx at(int n, int j) const { return values[static_cast<std::size_t>((n + cells) * points_per_cell + j)]; }
    void update_support(double tol = 1e-14);
    double norm() const;  // L2 norm by the grid rule
};

GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator*(cplx s, const GridFunction& a);

// exp(-1/(1 - r^2)) bump of half-width w, and a Gaussian.
GridFunction bump(int cells, int points_per_cell, double center, double halfwidth);
GridFunction gaussian(int cells, int points_per_cell, double center, double sigma);

struct GelfandField {
    int points_per_cell = 0;     // x_j = j pi / P on [0, pi)
    std::vector<double> t;       // quasi-momenta
    std::vector<cplx> values;    // [m * P + j]
    cplx at(std::size_t m, int j) const { return values[m * points_per_cell + j]; }
};

std::vector<double> uniform_t_grid(int n);  // 2 pi m / n
GelfandField gelfand_forward(const GridFunction& g, const std::vector<double>& t_grid);
// needs a uniform t-grid with at least 2 * cells points
GridFunction gelfand_inverse(const GelfandField& G, int cells);

struct ProjectionOptions {
    FloquetOptions ode;
    double t_lo = 0.0, t_hi = kPi;  // sub-arc in the arc parameter
    double panel = kPi / 48.0;      // Gauss-Legendre panel width in t
    int nodes = 8;                  // nodes per panel
};

// P(sigma) g for the part of `arc` with t in [t_lo, t_hi].
GridFunction project(const Potential& V, const SpectralArc& arc, const GridFunction& g,
                     const ProjectionOptions& o = {});

struct Expansion {
    GridFunction sum;
    std::vector<double> band_norms;
};
// Sum of band projections for bands 1..band_max; refuses arcs flagged
// singular unless allow_singular.
Expansion expand(const Potential& V, const SpectrumPortrait& P, const GridFunction& g, int band_max,
                 bool allow_singular = false, const ProjectionOptions& o = {});

struct FiberExpansion {
    double t = 0.0;
    std::vector<cplx> eigenvalues;
    std::vector<cplx> coefficients;  // w.r.t. L2-normalized eigenfunctions
    std::vector<double> x;           // quadrature nodes on [0, pi]
    std::vector<cplx> reconstruction;
    double residual = 0.0;  // relative L2 error of the reconstruction
};
FiberExpansion fiber_expansion(const Potential& V, double t, const std::function<cplx(double)>& f, int k_max,
                               int n_quad = 256, const FloquetOptions& o = {});

// max over k, l of |int psi_-(E_k) psi_+(E_l) - delta_kl (-2 D+'(E_k)/phi(E_k,pi))|,
// relative to sqrt(|B_kk B_ll|); psi_pm normalized by psi(0) = 1.
double biorthogonality_residual(const Potential& V, double t, int k_max, int n_quad = 256,
                                const FloquetOptions& o = {});

// [[phi, -D-], [-D-, -theta']] / (2 pi sin t) at a point of the arc with parameter t
std::array<cplx, 4> spectral_matrix(const Potential& V, cplx lambda, double t, const FloquetOptions& o = {});

// (H - z)^{-1} g through the Green's kernel.
GridFunction resolvent_apply(const Potential& V, cplx z, const GridFunction& g, const FloquetOptions& o = {});

}  // namespace hill
