#pragma once

// Explicit Runge-Kutta 8(5,3) of Dormand-Prince with 7th-order dense
// output. The state is a flat array of doubles in which consecutive pairs
// are the real and imaginary parts of one complex unknown; error control
// measures each pair by its modulus.

#include <functional>
#include <limits>
#include <vector>

namespace hill::ode {

struct Options {
    double rtol = 1e-12;
    double atol = 1e-14;
    double max_step = std::numeric_limits<double>::infinity();
    long max_steps = 2'000'000;
};

using Rhs = std::function<void(double x, const double* y, double* dydx)>;

struct Stats {
    long steps = 0;
    long rejected = 0;
    long nfev = 0;
};

class Dop853;

// A completed step [x0, x1] that can be interpolated anywhere inside.
class DenseStep {
public:
    double x0 = 0.0, x1 = 0.0;
    void eval(double x, double* out) const;

private:
    friend class Dop853;
    Dop853* owner_ = nullptr;
};

using StepObserver = std::function<void(const DenseStep&)>;

class Dop853 {
public:
    Dop853(Rhs rhs, std::size_t n, Options opt = {});

    // Integrates y from x0 to x1 in place (x1 < x0 allowed). Throws
    // StepSizeUnderflow if the controller cannot make progress.
    Stats integrate(double x0, double x1, std::vector<double>& y,
                    const StepObserver* observer = nullptr);

private:
    friend class DenseStep;
    void prepare_dense();
    double initial_step(double x0, double x1, const std::vector<double>& y,
                        const std::vector<double>& f0);
    double rms_scaled(const double* v, const double* scale) const;

    Rhs rhs_;
    std::size_t n_;
    Options opt_;
    std::vector<std::vector<double>> k_;  // 16 stage vectors
    std::vector<double> y_old_, y_new_, f_new_, tmp_, scale_, err3_, err5_;
    std::vector<std::vector<double>> dense_;  // 7 interpolation vectors
    double x_old_ = 0.0, h_ = 0.0;
    bool dense_ready_ = false;
    Stats stats_;
};

}  // namespace hill::ode
