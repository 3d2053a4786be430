#include "hill/projection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hill/criterion.hpp"
#include "hill/kernels.hpp"

namespace hill {

GridFunction GridFunction::zeros(int cells, int ppc) {
    if (cells < 1 || ppc < 4) throw ConfigError("grid needs >= 1 cell and >= 4 points per cell");
    GridFunction g;
    g.cells = cells;
    g.points_per_cell = ppc;
    g.values.assign(static_cast<std::size_t>(2 * cells * ppc), cplx{});
    return g;
}

GridFunction GridFunction::sample(int cells, int ppc, const std::function<cplx(double)>& f) {
    GridFunction g = zeros(cells, ppc);
    for (int j = 0; j < g.size(); ++j) g.values[j] = f(g.x(j));
    g.update_support();
    return g;
}

double GridFunction::h() const { return kPi / points_per_cell; }
double GridFunction::x(int j) const { return -cells * kPi + j * h(); }

void GridFunction::update_support(double tol) {
    support_lo = size();
    support_hi = 0;
    for (int j = 0; j < size(); ++j)
        if (std::abs(values[j]) > tol) {
            support_lo = std::min(support_lo, j);
            support_hi = j + 1;
        }
    if (support_hi == 0) support_lo = 0;
}

double GridFunction::norm() const { return std::sqrt(h() * kernels::norm2(values)); }

namespace {
void same_grid(const GridFunction& a, const GridFunction& b) {
    if (a.cells != b.cells || a.points_per_cell != b.points_per_cell)
        throw PreconditionError("grid functions live on different grids");
}
}  // namespace

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    same_grid(a, b);
    GridFunction r = a;
    kernels::axpy(-1.0, b.values, r.values);
    r.update_support();
    return r;
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    same_grid(a, b);
    GridFunction r = a;
    kernels::axpy(1.0, b.values, r.values);
    r.update_support();
    return r;
}

GridFunction operator*(cplx s, const GridFunction& a) {
    GridFunction r = a;
    for (cplx& v : r.values) v *= s;
    r.update_support();
    return r;
}

GridFunction bump(int cells, int ppc, double center, double w) {
    return GridFunction::sample(cells, ppc, [=](double x) -> cplx {
        const double r = (x - center) / w;
        return std::abs(r) < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
    });
}

GridFunction gaussian(int cells, int ppc, double center, double sigma) {
    return GridFunction::sample(cells, ppc, [=](double x) -> cplx {
        const double r = (x - center) / sigma;
        return std::exp(-0.5 * r * r);
    });
}

std::vector<double> uniform_t_grid(int n) {
    std::vector<double> t(n);
    for (int m = 0; m < n; ++m) t[m] = 2.0 * kPi * m / n;
    return t;
}

namespace {

// G(x_j, t) = sum_n g(x_j + n pi) e^{-int} on the cell grid
std::vector<cplx> gelfand_at(const GridFunction& g, double t) {
    const int P = g.points_per_cell;
    std::vector<cplx> G(P, cplx{});
    if (g.support_hi <= g.support_lo) return G;
    const int n_lo = g.support_lo / P - g.cells, n_hi = (g.support_hi - 1) / P - g.cells;
    for (int n = n_lo; n <= n_hi; ++n) {
        const std::span<const cplx> cell(&g.values[static_cast<std::size_t>((n + g.cells) * P)], P);
        kernels::axpy(std::polar(1.0, -n * t), cell, G);
    }
    return G;
}

}  // namespace

GelfandField gelfand_forward(const GridFunction& g, const std::vector<double>& t_grid) {
    GelfandField F;
    F.points_per_cell = g.points_per_cell;
    F.t = t_grid;
    F.values.reserve(t_grid.size() * g.points_per_cell);
    for (double t : t_grid) {
        const std::vector<cplx> G = gelfand_at(g, t);
        F.values.insert(F.values.end(), G.begin(), G.end());
    }
    return F;
}

GridFunction gelfand_inverse(const GelfandField& G, int cells) {
    const std::size_t T = G.t.size();
    if (static_cast<int>(T) < 2 * cells) throw PreconditionError("t-grid too coarse for the requested cells");
    for (std::size_t m = 0; m < T; ++m)
        if (std::abs(G.t[m] - 2.0 * kPi * m / T) > 1e-12) throw PreconditionError("gelfand_inverse needs a uniform t-grid");
    const int P = G.points_per_cell;
    GridFunction g = GridFunction::zeros(cells, P);
    for (int n = -cells; n < cells; ++n) {
        const std::span<cplx> cell(&g.at(n, 0), P);
        for (std::size_t m = 0; m < T; ++m) {
            const std::span<const cplx> row(&G.values[m * P], P);
            kernels::axpy(std::polar(1.0 / T, n * G.t[m]), row, cell);
        }
    }
    g.update_support();
    return g;
}

namespace {

// Eigenfunctions of H(t) and H(-t) at a fiber eigenvalue, unnormalized.
struct FiberPair {
    std::vector<cplx> up, um;  // multipliers e^{it}, e^{-it}
    cplx D;                    // int_0^pi um up
};

void eigencombination(cplx th, cplx ph, cplx thp, cplx php, cplx rho, cplx& a, cplx& b) {
    // u = a theta + b phi with u(pi) = rho u(0); pick the better conditioned of two forms
    if (std::abs(ph) + std::abs(rho - th) >= std::abs(rho - php) + std::abs(thp)) {
        a = ph;
        b = rho - th;
    } else {
        a = rho - php;
        b = thp;
    }
}

FiberPair fiber_pair(const Potential& V, cplx lambda, double t, const std::vector<double>& grid,
                     const FloquetOptions& o) {
    const FundamentalData F = fundamental_system(V, lambda, grid, o, false);
    const std::size_t P = grid.size() - 1;
    const cplx th = F.theta[P], ph = F.phi[P], thp = F.theta_p[P], php = F.phi_p[P];
    FiberPair r;
    cplx a, b;
    r.up.resize(P);
    r.um.resize(P);
    eigencombination(th, ph, thp, php, std::polar(1.0, t), a, b);
    for (std::size_t j = 0; j < P; ++j) r.up[j] = a * F.theta[j] + b * F.phi[j];
    eigencombination(th, ph, thp, php, std::polar(1.0, -t), a, b);
    for (std::size_t j = 0; j < P; ++j) r.um[j] = a * F.theta[j] + b * F.phi[j];
    // periodic integrand: trapezoid on the cell grid
    r.D = kernels::dot(r.um, r.up) * (kPi / P);
    return r;
}

std::vector<double> cell_points(int P) {
    std::vector<double> x(P + 1);
    for (int j = 0; j <= P; ++j) x[j] = j * kPi / P;
    x[P] = kPi;
    return x;
}

}  // namespace

GridFunction project(const Potential& V, const SpectralArc& arc, const GridFunction& g, const ProjectionOptions& o) {
    if (arc.flagged_singular) {
        std::ostringstream os;
        os << "band " << arc.band << " carries a spectral singularity";
        throw SingularArcError(os.str());
    }
    if (arc.samples.empty()) throw PreconditionError("empty arc");
    const double lo = std::max(o.t_lo, arc.samples.front().t), hi = std::min(o.t_hi, arc.samples.back().t);
    GridFunction out = GridFunction::zeros(g.cells, g.points_per_cell);
    if (!(hi > lo)) return out;
    const int P = g.points_per_cell;
    const std::vector<double> grid = cell_points(P);
    std::vector<double> gx, gw;
    gauss_legendre(o.nodes, gx, gw);
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / o.panel)));
    const double pw = (hi - lo) / panels;
    const double hx = kPi / P;
    std::vector<cplx> prev_lambda;
    for (int p = 0; p < panels; ++p) {
        for (int q = 0; q < o.nodes; ++q) {
            const double t = lo + pw * (p + 0.5 * (gx[q] + 1.0));
            const double w = 0.5 * pw * gw[q];
            const cplx lambda = arc_point(V, arc, t, o.ode);
            const FiberPair fp = fiber_pair(V, lambda, t, grid, o.ode);
            const std::vector<cplx> Gp = gelfand_at(g, t), Gm = gelfand_at(g, -t);
            const cplx cp = kernels::dot(fp.um, Gp) * hx / fp.D;
            const cplx cm = kernels::dot(fp.up, Gm) * hx / fp.D;
            const double f = w / (2.0 * kPi);
            for (int n = -g.cells; n < g.cells; ++n) {
                const std::span<cplx> cell(&out.at(n, 0), P);
                kernels::axpy(f * cp * std::polar(1.0, n * t), fp.up, cell);
                kernels::axpy(f * cm * std::polar(1.0, -n * t), fp.um, cell);
            }
        }
    }
    out.update_support();
    return out;
}

Expansion expand(const Potential& V, const SpectrumPortrait& P, const GridFunction& g, int band_max,
                 bool allow_singular, const ProjectionOptions& o) {
    if (band_max < 1 || band_max > static_cast<int>(P.arcs.size()))
        throw ConfigError("band_max outside the traced window");
    Expansion e;
    e.sum = GridFunction::zeros(g.cells, g.points_per_cell);
    for (int n = 0; n < band_max; ++n) {
        SpectralArc arc = P.arcs[n];
        if (arc.flagged_singular) {
            if (!allow_singular) {
                std::ostringstream os;
                os << "band " << arc.band << " ends at a spectral singularity; expansion refused";
                throw SingularArcError(os.str());
            }
            arc.flagged_singular = false;
        }
        const GridFunction pg = project(V, arc, g, o);
        e.band_norms.push_back(pg.norm());
        kernels::axpy(1.0, pg.values, e.sum.values);
    }
    e.sum.update_support();
    return e;
}

namespace {

struct FiberBasis {
    std::vector<cplx> E;
    std::vector<std::vector<cplx>> psi_p, psi_m;  // on the nodes
    std::vector<cplx> phi_pi, ddot;
};

FiberBasis fiber_basis(const Potential& V, double t, int k_max, const std::vector<double>& x, bool normalize_at_zero,
                       const FloquetOptions& o) {
    FiberBasis b;
    std::vector<cplx> E = fiber_eigenvalues(V, t, (k_max + 1) / 2, o);
    E.resize(std::min<std::size_t>(E.size(), static_cast<std::size_t>(k_max)));
    std::vector<double> grid = x;
    grid.push_back(kPi);
    for (std::size_t k = 0; k < E.size(); ++k) {
        for (std::size_t l = 0; l < k; ++l)
            if (std::abs(E[k] - E[l]) <= 1e-8 * (1.0 + std::abs(E[k]))) {
                std::ostringstream os;
                os << "fiber eigenvalue " << E[k] << " at t = " << t << " is not simple";
                throw DegenerateFiberError(os.str());
            }
        const FundamentalData F = fundamental_system(V, E[k], grid, o, false);
        const std::size_t n = x.size();
        const cplx th = F.theta[n], ph = F.phi[n], thp = F.theta_p[n], php = F.phi_p[n];
        const Monodromy M = monodromy_matrix(V, E[k], o);
        if (std::abs(M.delta_plus_dot()) < 1e-6 * (1.0 + std::abs(E[k]))) {
            std::ostringstream os;
            os << "fiber eigenvalue " << E[k] << " at t = " << t << " sits at a critical point";
            throw DegenerateFiberError(os.str());
        }
        std::vector<cplx> up(n), um(n);
        for (int s : {1, -1}) {
            const cplx rho = std::polar(1.0, s * t);
            cplx a, bb;
            if (normalize_at_zero) {
                if (std::abs(ph) < kDirichletThreshold * std::max(1.0, M.norm()))
                    throw DirichletPointError(E[k], "fiber eigenvalue at a Dirichlet point");
                a = 1.0;
                bb = (rho - th) / ph;
            } else {
                eigencombination(th, ph, thp, php, rho, a, bb);
            }
            auto& u = s > 0 ? up : um;
            for (std::size_t j = 0; j < n; ++j) u[j] = a * F.theta[j] + bb * F.phi[j];
        }
        b.E.push_back(E[k]);
        b.psi_p.push_back(std::move(up));
        b.psi_m.push_back(std::move(um));
        b.phi_pi.push_back(M.ph);
        b.ddot.push_back(M.delta_plus_dot());
    }
    return b;
}

void pi_nodes(int n, std::vector<double>& x, std::vector<double>& w) {
    gauss_legendre(n, x, w);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = 0.5 * kPi * (x[i] + 1.0);
        w[i] *= 0.5 * kPi;
    }
}

}  // namespace

FiberExpansion fiber_expansion(const Potential& V, double t, const std::function<cplx(double)>& f, int k_max,
                               int n_quad, const FloquetOptions& o) {
    if (!(t > 0.0 && t < kPi)) throw PreconditionError("fiber_expansion needs 0 < t < pi");
    FiberExpansion r;
    r.t = t;
    std::vector<double> w;
    pi_nodes(n_quad, r.x, w);
    const FiberBasis b = fiber_basis(V, t, k_max, r.x, false, o);
    const std::size_t n = r.x.size();
    std::vector<cplx> fv(n), fw(n);
    double nf = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        fv[j] = f(r.x[j]);
        fw[j] = w[j] * fv[j];
        nf += w[j] * std::norm(fv[j]);
    }
    r.reconstruction.assign(n, cplx{});
    std::vector<cplx> tmp(n);
    for (std::size_t k = 0; k < b.E.size(); ++k) {
        for (std::size_t j = 0; j < n; ++j) tmp[j] = w[j] * b.psi_p[k][j];
        const cplx D = kernels::dot(b.psi_m[k], tmp);
        const cplx c = kernels::dot(b.psi_m[k], fw) / D;
        double nu = 0.0;
        for (std::size_t j = 0; j < n; ++j) nu += w[j] * std::norm(b.psi_p[k][j]);
        r.eigenvalues.push_back(b.E[k]);
        r.coefficients.push_back(c * std::sqrt(nu));
        kernels::axpy(c, b.psi_p[k], r.reconstruction);
    }
    double ne = 0.0;
    for (std::size_t j = 0; j < n; ++j) ne += w[j] * std::norm(fv[j] - r.reconstruction[j]);
    r.residual = nf > 0.0 ? std::sqrt(ne / nf) : std::sqrt(ne);
    return r;
}

double biorthogonality_residual(const Potential& V, double t, int k_max, int n_quad, const FloquetOptions& o) {
    std::vector<double> x, w;
    pi_nodes(n_quad, x, w);
    const FiberBasis b = fiber_basis(V, t, k_max, x, true, o);
    const std::size_t K = b.E.size(), n = x.size();
    std::vector<std::vector<cplx>> wp(K, std::vector<cplx>(n));
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t j = 0; j < n; ++j) wp[k][j] = w[j] * b.psi_p[k][j];
    std::vector<double> diag(K);
    for (std::size_t k = 0; k < K; ++k) diag[k] = std::abs(kernels::dot(b.psi_m[k], wp[k]));
    double worst = 0.0;
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = 0; l < K; ++l) {
            const cplx B = kernels::dot(b.psi_m[k], wp[l]);
            const cplx expect = k == l ? -2.0 * b.ddot[k] / b.phi_pi[k] : cplx{};
            worst = std::max(worst, std::abs(B - expect) / std::sqrt(diag[k] * diag[l]));
        }
    return worst;
}

std::array<cplx, 4> spectral_matrix(const Potential& V, cplx lambda, double t, const FloquetOptions& o) {
    const Monodromy M = monodromy_matrix(V, lambda, o);
    const double s = std::sin(t);
    if (std::abs(s) < 1e-14) throw PreconditionError("spectral matrix is singular at band edges");
    const cplx f = 1.0 / (2.0 * kPi * s);
    const cplx dm = M.delta_minus();
    return {f * M.ph, -f * dm, -f * dm, -f * M.thp};
}

namespace {

// cumulative integral of samples f_0..f_P on a uniform grid, 4th order
std::vector<cplx> cumulative(const std::vector<cplx>& f, double h) {
    const std::size_t P = f.size() - 1;
    std::vector<cplx> I(P + 1, cplx{});
    const double c = h / 24.0;
    for (std::size_t j = 0; j < P; ++j) {
        cplx s;
        if (j == 0) s = c * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
        else if (j == P - 1) s = c * (f[P - 3] - 5.0 * f[P - 2] + 19.0 * f[P - 1] + 9.0 * f[P]);
        else s = c * (-f[j - 1] + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2]);
        I[j + 1] = I[j] + s;
    }
    return I;
}

}  // namespace

GridFunction resolvent_apply(const Potential& V, cplx z, const GridFunction& g, const FloquetOptions& o) {
    const int P = g.points_per_cell, N = g.cells;
    const std::vector<double> grid = cell_points(P);
    const FundamentalData F = fundamental_system(V, z, grid, o, false);
    Monodromy M;
    M.z = z;
    M.th = F.theta[P];
    M.ph = F.phi[P];
    M.thp = F.theta_p[P];
    M.php = F.phi_p[P];
    M.noise = integration_noise(o, std::max({std::abs(M.th), std::abs(M.ph), std::abs(M.thp), std::abs(M.php)}), z);
    const GreenKernel K = green_kernel(M);
    // |rho_+| = 1 on the spectrum; the cell sums stop converging there
    if (1.0 - std::abs(K.rho_plus) < 1e-8) throw NearSpectrumError(z, "resolvent requested on the spectrum");
    std::vector<cplx> um(P + 1), up(P + 1);
    for (int j = 0; j <= P; ++j) {
        um[j] = K.a_th * F.theta[j] + K.a_ph * F.phi[j];
        up[j] = K.b_th * F.theta[j] + K.b_ph * F.phi[j];
    }
    const double h = kPi / P;
    const int nc = 2 * N;
    std::vector<cplx> A(nc), B(nc);
    std::vector<std::vector<cplx>> CA(nc), CB(nc);
    std::vector<cplx> fa(P + 1), fb(P + 1);
    for (int c = 0; c < nc; ++c) {
        const int n = c - N;
        for (int j = 0; j <= P; ++j) {
            cplx gv;
            if (j < P) gv = g.at(n, j);
            else gv = (n + 1 < N) ? g.at(n + 1, 0) : cplx{};
            fa[j] = um[j] * gv;
            fb[j] = up[j] * gv;
        }
        CA[c] = cumulative(fa, h);
        CB[c] = cumulative(fb, h);
        A[c] = CA[c][P];
        B[c] = CB[c][P];
    }
    // L_n = sum_{m<n} rho^{n-m} A_m,  R_n = sum_{m>n} rho^{m-n} B_m
    const cplx rho = K.rho_plus;
    std::vector<cplx> L(nc, cplx{}), R(nc, cplx{});
    for (int c = 1; c < nc; ++c) L[c] = rho * (L[c - 1] + A[c - 1]);
    for (int c = nc - 2; c >= 0; --c) R[c] = rho * (R[c + 1] + B[c + 1]);
    GridFunction out = GridFunction::zeros(N, P);
    for (int c = 0; c < nc; ++c)
        for (int j = 0; j < P; ++j)
            out.at(c - N, j) = K.scale * (up[j] * (L[c] + CA[c][j]) + um[j] * (R[c] + (B[c] - CB[c][j])));
    out.update_support();
    return out;
}

}  // namespace hill
