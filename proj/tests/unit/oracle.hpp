#pragma once

// Hill's-method matrices for mathieu(q) = 2q cos 2x: the potential couples
// Fourier modes two apart with weight q.

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

namespace oracle {

// exponentials e^{i(2k + s)x}, |k| <= modes; s = 0 periodic, 1 antiperiodic, t/pi fiber
inline std::vector<double> hill_exponential(double q, double s, int modes) {
    const int n = 2 * modes + 1;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double k = 2.0 * (i - modes) + s;
        H(i, i) = k * k;
        if (i + 1 < n) H(i, i + 1) = H(i + 1, i) = q;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    std::vector<double> e(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(e.begin(), e.end());
    return e;
}

// sines sin(mx), m = 1..modes (Dirichlet problem on [0, pi])
inline std::vector<double> hill_dirichlet(double q, int modes) {
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(modes, modes);
    for (int m = 1; m <= modes; ++m) {
        H(m - 1, m - 1) = double(m) * m;
        if (m + 2 <= modes) H(m - 1, m + 1) = H(m + 1, m - 1) = q;
    }
    H(0, 0) -= q;  // sin(-x) = -sin x
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    std::vector<double> e(es.eigenvalues().data(), es.eigenvalues().data() + modes);
    std::sort(e.begin(), e.end());
    return e;
}

}  // namespace oracle
