#include "hill/potential.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>

namespace hill {

Potential::Potential() { rebuild(); }

Potential Potential::zero() { return Potential(); }

Potential Potential::constant(cplx c) {
    Potential p;
    if (c != 0.0) p.coeffs_[0] = c;
    p.label_ = "constant";
    p.rebuild();
    return p;
}

Potential Potential::mathieu(cplx c) {
    Potential p;
    p.coeffs_[1] = c;
    p.coeffs_[-1] = c;
    p.label_ = "mathieu";
    p.rebuild();
    return p;
}

Potential Potential::gasymov(cplx g) {
    Potential p;
    p.coeffs_[1] = g;
    p.label_ = "gasymov";
    p.rebuild();
    return p;
}

Potential Potential::fourier(const std::map<int, cplx>& coeffs) {
    Potential p;
    for (auto [n, c] : coeffs)
        if (c != 0.0) p.coeffs_[n] = c;
    p.label_ = "fourier";
    p.rebuild();
    return p;
}

Potential Potential::sampled(const std::vector<cplx>& samples) {
    const std::size_t n = samples.size();
    if (n < 2) throw ConfigError("sampled potential needs at least two samples");
    for (const auto& v : samples)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ConfigError("sampled potential contains non-finite values");
    Potential p;
    p.kind_ = Kind::sampled;
    p.label_ = "samples";
    p.samples_ = samples;
    // trigonometric interpolant on x_j = j*pi/n; a Nyquist term is split
    // symmetrically so that real data gives a real interpolant
    const int half = static_cast<int>(n / 2);
    for (int k = -half; k <= half; ++k) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = -2.0 * kPi * k * static_cast<double>(j) / static_cast<double>(n);
            s += samples[j] * cplx(std::cos(ang), std::sin(ang));
        }
        s /= static_cast<double>(n);
        if (n % 2 == 0 && std::abs(k) == half) s *= 0.5;
        if (std::abs(s) > 1e-15 * (1.0 + std::abs(samples[0]))) p.coeffs_[k] = s;
    }
    p.rebuild();
    return p;
}

cplx parse_complex(const std::string& in) {
    std::string s;
    for (char ch : in)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    static const std::regex num(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)$)");
    static const std::regex imag(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij]$)");
    static const std::regex both(
        R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)[ij]$)");
    std::smatch m;
    if (std::regex_match(s, m, num)) return {std::stod(m[1]), 0.0};
    if (std::regex_match(s, m, both)) {
        std::string im = m[2];
        double vi = (im == "+" ? 1.0 : im == "-" ? -1.0 : std::stod(im));
        return {std::stod(m[1]), vi};
    }
    if (std::regex_match(s, m, imag)) {
        std::string im = m[1];
        double vi = im.empty() || im == "+" ? 1.0 : im == "-" ? -1.0 : std::stod(im);
        return {0.0, vi};
    }
    throw ConfigError("cannot parse complex number '" + in + "'");
}

Potential Potential::preset(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto need_arg = [&] {
        if (arg.empty()) throw ConfigError("preset '" + name + "' needs a parameter, e.g. " + name + ":0.5");
        return parse_complex(arg);
    };
    Potential p;
    if (name == "zero") p = zero();
    else if (name == "mathieu") p = mathieu(need_arg());
    else if (name == "gasymov") p = gasymov(need_arg());
    else if (name == "constant") p = constant(need_arg());
    else throw ConfigError("unknown preset '" + name + "' (zero, mathieu:c, gasymov:g, constant:c)");
    p.label_ = spec;
    return p;
}

void Potential::rebuild() {
    nmax_ = 0;
    for (auto [n, c] : coeffs_) nmax_ = std::max(nmax_, std::abs(n));
    pos_.assign(nmax_ + 1, 0.0);
    neg_.assign(nmax_ + 1, 0.0);
    c0_ = 0.0;
    for (auto [n, c] : coeffs_) {
        if (n > 0) pos_[n] = c;
        else if (n < 0) neg_[-n] = c;
        else c0_ = c;
    }
}

cplx Potential::coeff(int n) const {
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? cplx(0.0) : it->second;
}

cplx Potential::operator()(double x) const {
    if (nmax_ == 0) return c0_;
    const cplx w(std::cos(2.0 * x), std::sin(2.0 * x));
    const cplx wc = std::conj(w);
    // Horner in w for n>0 and in conj(w) for n<0
    cplx sp = 0.0, sn = 0.0;
    for (int k = nmax_; k >= 1; --k) {
        sp = (sp + pos_[k]) * w;
        sn = (sn + neg_[k]) * wc;
    }
    return c0_ + sp + sn;
}

bool Potential::is_real() const {
    for (auto [n, c] : coeffs_) {
        const cplx partner = coeff(-n);
        if (std::abs(c - std::conj(partner)) > 1e-14 * (1.0 + std::abs(c))) return false;
    }
    return true;
}

bool Potential::is_zero() const { return coeffs_.empty(); }

Semistrip Potential::semistrip() const {
    constexpr int n = 4096;
    Semistrip s{1e300, -1e300, 1e300};
    for (int j = 0; j < n; ++j) {
        const cplx v = (*this)(kPi * j / n);
        s.m1 = std::min(s.m1, v.imag());
        s.m2 = std::max(s.m2, v.imag());
        s.m3 = std::min(s.m3, v.real());
    }
    return s;
}

double Potential::sup_norm() const {
    constexpr int n = 4096;
    double m = 0.0;
    for (int j = 0; j < n; ++j) m = std::max(m, std::abs((*this)(kPi * j / n)));
    return m;
}

Potential Potential::shifted_to_zero_mean() const {
    Potential p = *this;
    p.coeffs_.erase(0);
    if (!p.samples_.empty()) {
        const cplx m = mean();
        for (auto& v : p.samples_) v -= m;
    }
    p.rebuild();
    return p;
}

}  // namespace hill
