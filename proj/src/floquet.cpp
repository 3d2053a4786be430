#include "hill/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hill/ode.hpp"

namespace hill {

namespace {

const cplx kI(0.0, 1.0);

// Real layout: pairs (re, im) of
// [theta, theta', phi, phi', theta_z, theta_z', phi_z, phi_z',
//  theta_zz, theta_zz', phi_zz, phi_zz'].
struct HillRhs {
    const Potential* V;
    cplx z;
    bool variational;
    bool second = false;

    void operator()(double x, const double* y, double* dy) const {
        const cplx q = (*V)(x)-z;
        auto c = [&](int k) { return cplx(y[2 * k], y[2 * k + 1]); };
        auto put = [&](int k, cplx v) {
            dy[2 * k] = v.real();
            dy[2 * k + 1] = v.imag();
        };
        const cplx th = c(0), ph = c(2);
        put(0, c(1));
        put(1, q * th);
        put(2, c(3));
        put(3, q * ph);
        if (variational) {
            put(4, c(5));
            put(5, q * c(4) - th);
            put(6, c(7));
            put(7, q * c(6) - ph);
        }
        if (second) {
            put(8, c(9));
            put(9, q * c(8) - 2.0 * c(4));
            put(10, c(11));
            put(11, q * c(10) - 2.0 * c(6));
        }
    }
};

std::vector<double> initial_state(bool variational) {
    std::vector<double> y(variational ? 16 : 8, 0.0);
    y[0] = 1.0;  // theta(0)
    y[6] = 1.0;  // phi'(0)
    return y;
}

ode::Options ode_options(const FloquetOptions& o) {
    ode::Options r;
    r.rtol = o.rtol;
    r.atol = o.atol;
    return r;
}

}  // namespace

double Monodromy::norm() const {
    return std::sqrt(std::norm(th) + std::norm(ph) + std::norm(thp) + std::norm(php));
}

double Monodromy::derivative_norm() const {
    return std::sqrt(std::norm(dth) + std::norm(dph) + std::norm(dthp) + std::norm(dphp));
}

FundamentalData fundamental_system(const Potential& V, cplx z, std::span<const double> x_grid,
                                   const FloquetOptions& opt, bool with_z) {
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        if (x_grid[i] < 0.0 || x_grid[i] > kPi * (1.0 + 1e-14))
            throw PreconditionError("fundamental_system grid must lie in [0, pi]");
        if (i > 0 && x_grid[i] < x_grid[i - 1])
            throw PreconditionError("fundamental_system grid must be sorted");
    }
    FundamentalData out;
    out.z = z;
    out.x.assign(x_grid.begin(), x_grid.end());
    const std::size_t n = x_grid.size();
    out.theta.resize(n);
    out.theta_p.resize(n);
    out.phi.resize(n);
    out.phi_p.resize(n);
    if (with_z) {
        out.theta_z.resize(n);
        out.theta_pz.resize(n);
        out.phi_z.resize(n);
        out.phi_pz.resize(n);
    }
    std::vector<double> y = initial_state(with_z);
    auto store = [&](std::size_t i, const double* s) {
        out.theta[i] = {s[0], s[1]};
        out.theta_p[i] = {s[2], s[3]};
        out.phi[i] = {s[4], s[5]};
        out.phi_p[i] = {s[6], s[7]};
        if (with_z) {
            out.theta_z[i] = {s[8], s[9]};
            out.theta_pz[i] = {s[10], s[11]};
            out.phi_z[i] = {s[12], s[13]};
            out.phi_pz[i] = {s[14], s[15]};
        }
    };
    std::size_t next = 0;
    while (next < n && x_grid[next] <= 0.0) store(next++, y.data());
    if (next == n) return out;

    const double x_end = x_grid[n - 1];
    std::vector<double> buf(y.size());
    ode::StepObserver obs = [&](const ode::DenseStep& st) {
        while (next < n && x_grid[next] <= st.x1) {
            st.eval(x_grid[next], buf.data());
            store(next++, buf.data());
        }
    };
    ode::Dop853 solver(HillRhs{&V, z, with_z}, y.size(), ode_options(opt));
    solver.integrate(0.0, x_end, y, &obs);
    while (next < n) store(next++, y.data());
    return out;
}

Monodromy monodromy_matrix(const Potential& V, cplx z, const FloquetOptions& opt) {
    std::vector<double> y = initial_state(true);
    ode::Dop853 solver(HillRhs{&V, z, true}, y.size(), ode_options(opt));
    solver.integrate(0.0, kPi, y);
    Monodromy m;
    m.z = z;
    m.th = {y[0], y[1]};
    m.thp = {y[2], y[3]};
    m.ph = {y[4], y[5]};
    m.php = {y[6], y[7]};
    m.dth = {y[8], y[9]};
    m.dthp = {y[10], y[11]};
    m.dph = {y[12], y[13]};
    m.dphp = {y[14], y[15]};
    m.noise = integration_noise(opt, m.norm(), z);
    return m;
}

double integration_noise(const FloquetOptions& opt, double scale, cplx z) {
    // calibrated against rtol 1e-14 reference runs; errors grow with the
    // number of steps, i.e. with sqrt|z|
    return 0.2 * opt.rtol * std::max(1.0, scale) * (1.0 + std::sqrt(std::abs(z)));
}

DiscriminantJet discriminant_jet(const Potential& V, cplx z, const FloquetOptions& opt) {
    std::vector<double> y(24, 0.0);
    y[0] = 1.0;
    y[6] = 1.0;
    HillRhs rhs{&V, z, true, true};
    ode::Dop853 solver(rhs, y.size(), ode_options(opt));
    solver.integrate(0.0, kPi, y);
    auto c = [&](int k) { return cplx(y[2 * k], y[2 * k + 1]); };
    DiscriminantJet j;
    j.d = 0.5 * (c(0) + c(3));
    j.d1 = 0.5 * (c(4) + c(7));
    j.d2 = 0.5 * (c(8) + c(11));
    const double s0 = std::sqrt(std::norm(c(0)) + std::norm(c(1)) + std::norm(c(2)) + std::norm(c(3)));
    const double s1 = std::sqrt(std::norm(c(4)) + std::norm(c(5)) + std::norm(c(6)) + std::norm(c(7)));
    j.noise = integration_noise(opt, s0, z);
    j.noise1 = integration_noise(opt, s1, z);
    return j;
}

cplx floquet_sqrt(cplx d, std::optional<cplx> hint) {
    cplx s = std::sqrt(1.0 - d * d);
    const double ap = std::abs(d + kI * s), am = std::abs(d - kI * s);
    if (hint && std::abs(ap - am) <= 1e-10 * (1.0 + std::abs(d))) {
        if (std::abs(s - *hint) > std::abs(-s - *hint)) s = -s;
        return s;
    }
    if (ap > am) s = -s;
    return s;
}

cplx delta_plus_ddot(const Potential& V, cplx z, const MonodromyOptions& opt) {
    const double h = opt.ddot_step * (1.0 + std::abs(z));
    auto d = [&](cplx w) { return monodromy_matrix(V, w, opt.ode).delta_plus_dot(); };
    const cplx d1 = (d(z + h) - d(z - h)) / (2.0 * h);
    const cplx d2 = (d(z + 0.5 * h) - d(z - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

MonodromyData monodromy(const Potential& V, cplx z, const MonodromyOptions& opt) {
    const Monodromy M = monodromy_matrix(V, z, opt.ode);
    MonodromyData r;
    r.z = z;
    r.m = {M.th, M.ph, M.thp, M.php};
    r.dm = {M.dth, M.dph, M.dthp, M.dphp};
    r.delta_plus = M.delta_plus();
    r.delta_minus = M.delta_minus();
    r.delta_plus_dot = M.delta_plus_dot();
    r.delta_plus_ddot = opt.second_derivative ? delta_plus_ddot(V, z, opt) : cplx(NAN, NAN);
    r.sqrt_branch = floquet_sqrt(r.delta_plus, opt.branch_hint);
    r.rho_plus = r.delta_plus + kI * r.sqrt_branch;
    r.rho_minus = r.delta_plus - kI * r.sqrt_branch;
    r.noise = M.noise;
    r.dirichlet_point = std::abs(M.ph) < kDirichletThreshold * std::max(1.0, M.norm());
    if (!r.dirichlet_point) {
        r.m_plus = (-r.delta_minus + kI * r.sqrt_branch) / M.ph;
        r.m_minus = (-r.delta_minus - kI * r.sqrt_branch) / M.ph;
    } else {
        r.m_plus = r.m_minus = cplx(NAN, NAN);
    }
    return r;
}

FloquetSolutions floquet_solutions(const Potential& V, cplx z, std::span<const double> x_grid,
                                   const FloquetOptions& opt) {
    const Monodromy M = monodromy_matrix(V, z, opt);
    if (std::abs(M.ph) < kDirichletThreshold * std::max(1.0, M.norm())) {
        std::ostringstream os;
        os << "z = " << z << " is a Dirichlet point (|phi(z,pi)| = " << std::abs(M.ph) << ")";
        throw DirichletPointError(z, os.str());
    }
    const cplx s = floquet_sqrt(M.delta_plus());
    FloquetSolutions out;
    out.rho_plus = M.delta_plus() + kI * s;
    out.rho_minus = M.delta_plus() - kI * s;
    out.m_plus = (-M.delta_minus() + kI * s) / M.ph;
    out.m_minus = (-M.delta_minus() - kI * s) / M.ph;
    const FundamentalData f = fundamental_system(V, z, x_grid, opt, false);
    out.x = f.x;
    out.psi_plus.resize(f.x.size());
    out.psi_minus.resize(f.x.size());
    for (std::size_t i = 0; i < f.x.size(); ++i) {
        out.psi_plus[i] = f.theta[i] + out.m_plus * f.phi[i];
        out.psi_minus[i] = f.theta[i] + out.m_minus * f.phi[i];
    }
    return out;
}

std::vector<double> cell_grid(int p) {
    std::vector<double> x(p + 1);
    for (int j = 0; j <= p; ++j) x[j] = kPi * j / p;
    x[p] = kPi;
    return x;
}

cplx delta_plus_dot_lagrange(const Potential& V, cplx z, int n_quad, const FloquetOptions& opt) {
    const std::vector<double> grid = cell_grid(n_quad);
    const FloquetSolutions fs = floquet_solutions(V, z, grid, opt);
    const Monodromy M = monodromy_matrix(V, z, opt);
    // psi_+ psi_- is pi-periodic (rho_+ rho_- = 1): periodic trapezoid rule
    cplx sum = 0.0;
    for (int j = 0; j < n_quad; ++j) sum += fs.psi_plus[j] * fs.psi_minus[j];
    sum *= kPi / n_quad;
    return -0.5 * M.ph * sum;
}

GreenKernel green_kernel(const Monodromy& M) {
    GreenKernel g;
    const cplx dp = M.delta_plus(), dm = M.delta_minus();
    g.s = floquet_sqrt(dp);
    if (std::abs(g.s) < 1e-10 * std::max(1.0, std::abs(dp))) {
        std::ostringstream os;
        os << "z = " << M.z << " lies on the spectrum (|1 - Delta_+^2|^(1/2) = " << std::abs(g.s) << ")";
        throw NearSpectrumError(M.z, os.str());
    }
    g.rho_plus = dp + kI * g.s;
    g.rho_minus = dp - kI * g.s;
    const cplx ns = kI * g.s;
    // (dm + is)(dm - is) = -phi(pi) theta'(pi): at most one of them vanishes
    if (std::abs(dm + ns) >= std::abs(dm - ns)) {
        g.a_th = M.ph;
        g.a_ph = -ns - dm;
        g.b_th = dm + ns;
        g.b_ph = M.thp;
        g.scale = -1.0 / (2.0 * ns * (dm + ns));
    } else {
        g.a_th = dm - ns;
        g.a_ph = M.thp;
        g.b_th = M.ph;
        g.b_ph = ns - dm;
        g.scale = -1.0 / (2.0 * ns * (dm - ns));
    }
    return g;
}

cplx greens_function(const Potential& V, cplx z, double x, double y, const FloquetOptions& opt) {
    const Monodromy M = monodromy_matrix(V, z, opt);
    const GreenKernel g = green_kernel(M);
    const double lo = std::min(x, y), hi = std::max(x, y);
    const double nl = std::floor(lo / kPi), nh = std::floor(hi / kPi);
    const double l0 = std::clamp(lo - nl * kPi, 0.0, kPi), h0 = std::clamp(hi - nh * kPi, 0.0, kPi);
    double pts[2] = {std::min(l0, h0), std::max(l0, h0)};
    const FundamentalData f = fundamental_system(V, z, pts, opt, false);
    const int il = l0 <= h0 ? 0 : 1, ih = 1 - il;
    // rho_-^nl rho_+^nh = rho_+^(nh - nl) since rho_+ rho_- = 1
    const cplx um = g.a_th * f.theta[il] + g.a_ph * f.phi[il];
    const cplx up = (g.b_th * f.theta[ih] + g.b_ph * f.phi[ih]) * std::pow(g.rho_plus, nh - nl);
    return g.scale * um * up;
}

}  // namespace hill
