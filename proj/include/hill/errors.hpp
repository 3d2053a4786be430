#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hill {

using cplx = std::complex<double>;

// Every numerical failure carries a short machine name used by the CLI
// when mapping errors to exit codes and messages.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& w) : Error("ConfigError", w) {}
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& w) : Error("PreconditionError", w) {}
};

class StepSizeUnderflow : public Error {
public:
    StepSizeUnderflow(double x, const std::string& w)
        : Error("StepSizeUnderflow", w), x(x) {}
    double x;
};

class DirichletPointError : public Error {
public:
    DirichletPointError(cplx z, const std::string& w)
        : Error("DirichletPointError", w), z(z) {}
    cplx z;
};

class NearSpectrumError : public Error {
public:
    NearSpectrumError(cplx z, const std::string& w)
        : Error("NearSpectrumError", w), z(z) {}
    cplx z;
};

class BoundaryRootError : public Error {
public:
    explicit BoundaryRootError(const std::string& w) : Error("BoundaryRootError", w) {}
};

class NonconvergenceError : public Error {
public:
    explicit NonconvergenceError(const std::string& w) : Error("NonconvergenceError", w) {}
};

class NotAnEigenvalueError : public Error {
public:
    explicit NotAnEigenvalueError(const std::string& w) : Error("NotAnEigenvalueError", w) {}
};

class CorrectorDivergence : public Error {
public:
    CorrectorDivergence(double t, const std::string& w)
        : Error("CorrectorDivergence", w), t(t) {}
    double t;
};

class WindowError : public Error {
public:
    explicit WindowError(const std::string& w) : Error("WindowError", w) {}
};

class SingularArcError : public Error {
public:
    explicit SingularArcError(const std::string& w) : Error("SingularArcError", w) {}
};

class DegenerateFiberError : public Error {
public:
    explicit DegenerateFiberError(const std::string& w) : Error("DegenerateFiberError", w) {}
};

}  // namespace hill
