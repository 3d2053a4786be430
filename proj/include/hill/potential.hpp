#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "hill/errors.hpp"

namespace hill {

inline constexpr double kPi = 3.14159265358979323846;

// Bounds of the semi-strip {Re z >= M3, M1 <= Im z <= M2} containing the
// spectra of the fiber operators.
struct Semistrip {
    double m1 = 0.0;  // inf Im V
    double m2 = 0.0;  // sup Im V
    double m3 = 0.0;  // inf Re V
};

// pi-periodic complex potential, stored as a trigonometric polynomial
// V(x) = sum_n c_n e^{2inx}. Sampled input is converted by a DFT so that
// evaluation is always a Fourier sum.
class Potential {
public:
    enum class Kind { fourier, sampled };

    Potential();  // V = 0

    static Potential zero();
    static Potential constant(cplx c);
    static Potential mathieu(cplx c);   // 2c cos 2x
    static Potential gasymov(cplx g);   // g e^{2ix}
    static Potential fourier(const std::map<int, cplx>& coeffs);
    static Potential sampled(const std::vector<cplx>& samples);
    // "zero", "mathieu:0.5", "mathieu:0.3+0.1i", "gasymov:1", "constant:2"
    static Potential preset(const std::string& spec);

    cplx operator()(double x) const;
    cplx mean() const { return coeff(0); }
    cplx coeff(int n) const;
    const std::map<int, cplx>& coefficients() const { return coeffs_; }
    int max_order() const { return nmax_; }

    Kind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    const std::vector<cplx>& samples() const { return samples_; }

    bool is_real() const;
    bool is_zero() const;
    Semistrip semistrip() const;
    double sup_norm() const;

    // V - <V>, together with the removed mean
    Potential shifted_to_zero_mean() const;

private:
    void rebuild();

    Kind kind_ = Kind::fourier;
    std::string label_ = "zero";
    std::map<int, cplx> coeffs_;
    std::vector<cplx> samples_;
    // dense copy for fast evaluation: pos_[k] = c_k (k>=1), neg_[k] = c_{-k}
    std::vector<cplx> pos_, neg_;
    cplx c0_{0.0, 0.0};
    int nmax_ = 0;
};

cplx parse_complex(const std::string& s);

}  // namespace hill
