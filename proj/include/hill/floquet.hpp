#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "hill/potential.hpp"

namespace hill {

struct FloquetOptions {
    double rtol = 1e-12;
    double atol = 1e-14;
};

// theta, phi with theta(0)=phi'(0)=1, theta'(0)=phi(0)=0, and their
// z-derivatives, sampled on a grid in [0, pi].
struct FundamentalData {
    cplx z;
    std::vector<double> x;
    std::vector<cplx> theta, theta_p, phi, phi_p;
    std::vector<cplx> theta_z, theta_pz, phi_z, phi_pz;  // empty unless requested
};

FundamentalData fundamental_system(const Potential& V, cplx z, std::span<const double> x_grid,
                                   const FloquetOptions& opt = {}, bool with_z_derivatives = true);

// Entries of the monodromy matrix [[theta, phi], [theta', phi']](pi) and
// their z-derivatives from one pass of the variational system.
struct Monodromy {
    cplx z;
    cplx th, ph, thp, php;
    cplx dth, dph, dthp, dphp;
    double noise = 0.0;  // absolute accuracy estimate of the entries

    cplx delta_plus() const { return 0.5 * (th + php); }
    cplx delta_minus() const { return 0.5 * (th - php); }
    cplx delta_plus_dot() const { return 0.5 * (dth + dphp); }
    double norm() const;
    double derivative_norm() const;
};

Monodromy monodromy_matrix(const Potential& V, cplx z, const FloquetOptions& opt = {});

// delta_plus_dot and delta_plus_ddot from a second variational layer
// (one integration of 12 unknowns); used by the critical-point search.
struct DiscriminantJet {
    cplx d, d1, d2;
    double noise = 0.0, noise1 = 0.0;
};
DiscriminantJet discriminant_jet(const Potential& V, cplx z, const FloquetOptions& opt = {});

// accuracy estimate of entries of size `scale` at spectral parameter z
double integration_noise(const FloquetOptions& opt, double scale, cplx z);

// sqrt(1 - d^2) on the sheet with |rho_+| <= 1; on the unit circle the
// hint (when given) selects the sign continuously.
cplx floquet_sqrt(cplx delta_plus, std::optional<cplx> hint = std::nullopt);

struct MonodromyData {
    cplx z;
    std::array<cplx, 4> m;   // m11, m12, m21, m22
    std::array<cplx, 4> dm;  // z-derivatives
    cplx delta_plus, delta_minus, delta_plus_dot, delta_plus_ddot;
    cplx sqrt_branch;  // sqrt(1 - delta_plus^2) on the chosen sheet
    cplx rho_plus, rho_minus;
    cplx m_plus, m_minus;  // Weyl-type coefficients (undefined at Dirichlet points)
    bool dirichlet_point = false;
    double noise = 0.0;
};

struct MonodromyOptions {
    FloquetOptions ode;
    bool second_derivative = true;
    std::optional<cplx> branch_hint;
    double ddot_step = 1e-5;  // relative to 1 + |z|
};

MonodromyData monodromy(const Potential& V, cplx z, const MonodromyOptions& opt = {});

// Central difference of the variational delta_plus_dot with one Richardson step.
cplx delta_plus_ddot(const Potential& V, cplx z, const MonodromyOptions& opt = {});

// |phi(z, pi)| below this (times the matrix scale) counts as a Dirichlet point.
inline constexpr double kDirichletThreshold = 1e-12;

struct FloquetSolutions {
    cplx m_plus, m_minus, rho_plus, rho_minus;
    std::vector<double> x;
    std::vector<cplx> psi_plus, psi_minus;
};

FloquetSolutions floquet_solutions(const Potential& V, cplx z, std::span<const double> x_grid,
                                   const FloquetOptions& opt = {});

// Lagrange-identity route to delta_plus_dot (independent of the variational one).
cplx delta_plus_dot_lagrange(const Potential& V, cplx z, int n_quad = 256,
                             const FloquetOptions& opt = {});

// Resolvent kernel written as scale * u_-(min) * u_+(max), with u_pm
// combinations of theta and phi that stay finite at Dirichlet points.
struct GreenKernel {
    cplx s;  // sqrt(1 - delta_plus^2), |rho_+| <= 1
    cplx rho_plus, rho_minus;
    cplx a_th, a_ph;  // u_- = a_th theta + a_ph phi
    cplx b_th, b_ph;  // u_+ = b_th theta + b_ph phi
    cplx scale;
};

GreenKernel green_kernel(const Monodromy& M);

cplx greens_function(const Potential& V, cplx z, double x, double y, const FloquetOptions& opt = {});

// Periodicity-cell grid x_j = j*pi/P, j = 0..P.
std::vector<double> cell_grid(int points_per_cell);

}  // namespace hill
