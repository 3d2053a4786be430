#include "hill/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hill/errors.hpp"
#include "hill/kernels.hpp"

namespace hill::ode {

namespace {
#include "dop853_tableau.inc"

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 10.0;
constexpr double kErrorExponent = -1.0 / 8.0;
}  // namespace

Dop853::Dop853(Rhs rhs, std::size_t n, Options opt)
    : rhs_(std::move(rhs)), n_(n), opt_(opt),
      k_(kStagesExt, std::vector<double>(n)),
      y_old_(n), y_new_(n), f_new_(n), tmp_(n), scale_(n), err3_(n), err5_(n),
      dense_(kInterpPower, std::vector<double>(n)) {}

double Dop853::rms_scaled(const double* v, const double* scale) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        const double q = v[i] / scale[i];
        s += q * q;
    }
    return std::sqrt(s / static_cast<double>(n_));
}

double Dop853::initial_step(double x0, double x1, const std::vector<double>& y,
                            const std::vector<double>& f0) {
    const double dir = x1 > x0 ? 1.0 : -1.0;
    const double length = std::abs(x1 - x0);
    for (std::size_t i = 0; i < n_; i += 2) {
        const double m = std::hypot(y[i], y[i + 1]);
        scale_[i] = scale_[i + 1] = opt_.atol + m * opt_.rtol;
    }
    const double d0 = rms_scaled(y.data(), scale_.data());
    const double d1 = rms_scaled(f0.data(), scale_.data());
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, length);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h0 * dir * f0[i];
    rhs_(x0 + h0 * dir, tmp_.data(), err3_.data());
    ++stats_.nfev;
    for (std::size_t i = 0; i < n_; ++i) err5_[i] = err3_[i] - f0[i];
    const double d2 = rms_scaled(err5_.data(), scale_.data()) / h0;
    double h1;
    if (d1 <= 1e-15 && d2 <= 1e-15) h1 = std::max(1e-6, h0 * 1e-3);
    else h1 = std::pow(0.01 / std::max(d1, d2), 1.0 / 8.0);
    return std::min({100.0 * h0, h1, length, opt_.max_step});
}

Stats Dop853::integrate(double x0, double x1, std::vector<double>& y,
                        const StepObserver* observer) {
    stats_ = {};
    if (x0 == x1) return stats_;
    const double dir = x1 > x0 ? 1.0 : -1.0;
    std::vector<double>& f = k_[0];
    rhs_(x0, y.data(), f.data());
    ++stats_.nfev;
    double h_abs = initial_step(x0, x1, y, f);
    double x = x0;
    const double* stage_ptr[kStagesExt];
    for (int s = 0; s < kStagesExt; ++s) stage_ptr[s] = k_[s].data();

    while (dir * (x1 - x) > 0.0) {
        if (stats_.steps >= opt_.max_steps)
            throw StepSizeUnderflow(x, "integrator exceeded the step budget");
        const double min_step = 10.0 * std::abs(std::nextafter(x, dir * 1e300) - x);
        h_abs = std::min(h_abs, opt_.max_step);
        bool accepted = false, rejected = false;
        double x_new = x, h = 0.0;
        while (!accepted) {
            if (h_abs < min_step) {
                std::ostringstream os;
                os << "step size underflow at x = " << x;
                throw StepSizeUnderflow(x, os.str());
            }
            h = h_abs * dir;
            x_new = x + h;
            if (dir * (x_new - x1) > 0.0) x_new = x1;
            h = x_new - x;
            h_abs = std::abs(h);

            // stages 1..11; stage 0 is f(x, y) (FSAL)
            for (int s = 1; s < kStages; ++s) {
                kernels::lincomb(tmp_.data(), y.data(), n_, h, kA[s], stage_ptr, s);
                rhs_(x + kC[s] * h, tmp_.data(), k_[s].data());
            }
            kernels::lincomb(y_new_.data(), y.data(), n_, h, kB, stage_ptr, kStages);
            rhs_(x_new, y_new_.data(), k_[kStages].data());
            stats_.nfev += kStages;

            for (std::size_t i = 0; i < n_; i += 2) {
                const double a = std::hypot(y[i], y[i + 1]);
                const double b = std::hypot(y_new_[i], y_new_[i + 1]);
                scale_[i] = scale_[i + 1] = opt_.atol + std::max(a, b) * opt_.rtol;
            }
            double e5 = 0.0, e3 = 0.0;
            for (std::size_t i = 0; i < n_; ++i) {
                double s5 = 0.0, s3 = 0.0;
                for (int s = 0; s <= kStages; ++s) {
                    s5 += kE5[s] * k_[s][i];
                    s3 += kE3[s] * k_[s][i];
                }
                s5 /= scale_[i];
                s3 /= scale_[i];
                e5 += s5 * s5;
                e3 += s3 * s3;
            }
            double err = 0.0;
            if (e5 != 0.0 || e3 != 0.0)
                err = h_abs * e5 / std::sqrt((e5 + 0.01 * e3) * static_cast<double>(n_));

            if (err < 1.0) {
                double factor = err == 0.0 ? kMaxFactor
                                           : std::min(kMaxFactor, kSafety * std::pow(err, kErrorExponent));
                if (rejected) factor = std::min(1.0, factor);
                h_abs *= factor;
                accepted = true;
            } else {
                h_abs *= std::max(kMinFactor, kSafety * std::pow(err, kErrorExponent));
                rejected = true;
                ++stats_.rejected;
            }
        }
        ++stats_.steps;
        y_old_ = y;
        x_old_ = x;
        h_ = h;
        f_new_ = k_[kStages];
        dense_ready_ = false;
        if (observer) {
            DenseStep step;
            step.x0 = x;
            step.x1 = x_new;
            step.owner_ = this;
            (*observer)(step);
        }
        y = y_new_;
        x = x_new;
        k_[0] = f_new_;  // FSAL
    }
    return stats_;
}

void Dop853::prepare_dense() {
    if (dense_ready_) return;
    const double* stage_ptr[kStagesExt];
    for (int s = 0; s < kStagesExt; ++s) stage_ptr[s] = k_[s].data();
    for (int s = kStages + 1; s < kStagesExt; ++s) {
        kernels::lincomb(tmp_.data(), y_old_.data(), n_, h_, kA[s], stage_ptr, s);
        rhs_(x_old_ + kC[s] * h_, tmp_.data(), k_[s].data());
        ++stats_.nfev;
    }
    const std::vector<double>& f_old = k_[0];
    for (std::size_t i = 0; i < n_; ++i) {
        const double dy = y_new_[i] - y_old_[i];
        dense_[0][i] = dy;
        dense_[1][i] = h_ * f_old[i] - dy;
        dense_[2][i] = 2.0 * dy - h_ * (f_new_[i] + f_old[i]);
    }
    for (int r = 0; r < kInterpPower - 3; ++r) {
        for (std::size_t i = 0; i < n_; ++i) {
            double s = 0.0;
            for (int j = 0; j < kStagesExt; ++j) s += kD[r][j] * k_[j][i];
            dense_[3 + r][i] = h_ * s;
        }
    }
    dense_ready_ = true;
}

void DenseStep::eval(double x, double* out) const {
    Dop853& o = *owner_;
    o.prepare_dense();
    const double s = (x - o.x_old_) / o.h_;
    for (std::size_t i = 0; i < o.n_; ++i) {
        double y = 0.0;
        for (int r = kInterpPower - 1, c = 0; r >= 0; --r, ++c) {
            y += o.dense_[r][i];
            y *= (c % 2 == 0) ? s : (1.0 - s);
        }
        out[i] = y + o.y_old_[i];
    }
}

}  // namespace hill::ode
