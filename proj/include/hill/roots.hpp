#pragma once

// Zeros of analytic functions inside rectangles via contour moments of
// f'/f (Delves-Lyness), with Newton polishing.

#include <functional>
#include <vector>

#include "hill/errors.hpp"

namespace hill {

struct AnalyticValue {
    cplx f;
    cplx df;
    double noise = 0.0;  // absolute accuracy of f, if the evaluator knows it
};

using AnalyticFn = std::function<AnalyticValue(cplx)>;

struct Rect {
    double re_lo, re_hi, im_lo, im_hi;
    double width() const { return re_hi - re_lo; }
    double height() const { return im_hi - im_lo; }
    cplx center() const { return {0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)}; }
    bool contains(cplx z, double pad = 0.0) const {
        return z.real() >= re_lo - pad && z.real() <= re_hi + pad &&
               z.imag() >= im_lo - pad && z.imag() <= im_hi + pad;
    }
};

struct Root {
    cplx z;
    int multiplicity = 1;
};

struct RootOptions {
    double newton_tol = 1e-14;   // relative step size at convergence
    double noise_floor = 1e-13;  // relative accuracy of f if the evaluator gives none
    int max_depth = 48;
    long max_evals_per_edge = 20000;
    double winding_slack = 0.1;  // |m0 - round(m0)| allowed
    double edge_tol = 1e-7;      // moments only seed Newton, so modest accuracy suffices
};

struct ContourMoments {
    cplx m[3];             // (1/2 pi i) \oint z^p f'/f dz
    cplx centered[3];      // same with (z - center)^p; circles only
    double min_abs_f = 0;  // smallest |f| met on the contour
    double max_noise = 0;
    bool ok = false;
    long evals = 0;
};

ContourMoments contour_moments(const AnalyticFn& f, const Rect& r, const RootOptions& opt = {});
ContourMoments contour_moments_circle(const AnalyticFn& f, cplx center, double radius, int n_min = 32);

// Root count on a circle, or -1 if |f| on the circle is below the
// resolvability floor (factor * noise).
int winding_on_circle(const AnalyticFn& f, cplx center, double radius, double floor_factor = 100.0);

std::vector<Root> find_roots_in_rect(const AnalyticFn& f, const Rect& r, const RootOptions& opt = {});

// Separation below which two zeros cannot be told apart from a double zero.
double pair_resolution(double noise, cplx f2);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace hill
