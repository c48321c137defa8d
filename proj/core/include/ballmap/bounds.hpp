#ifndef BALLMAP_BOUNDS_HPP
#define BALLMAP_BOUNDS_HPP

#include <functional>
#include <string>

#include <ballmap/classes.hpp>
#include <ballmap/kernel.hpp>

namespace ballmap
{

struct GrowthBounds {
    double lower = 0; // Phi_1
    double upper = 0; // Phi_2
};

// Adaptive Simpson on [a, b] to the given absolute tolerance. `f_a` is the
// value (or limit) of the integrand at a, supplied separately so removable
// singularities at the left endpoint are never evaluated. Throws
// QuadratureFailure beyond `max_depth` bisection levels.
double adaptive_simpson(const std::function<double(double)> &f, double a, double b, double f_a, double abs_tol,
                        int max_depth = 20);

// Growth integrals Phi_1 <= ||F(z)|| <= Phi_2 at ||z|| = r for any kernel.
GrowthBounds growth_bounds_quadrature(const Kernel &k, double alpha, double r);

// Closed forms for Mobius kernels.
GrowthBounds growth_bounds_closed(double a, double b, double alpha, double r);

// (1 + T r)^{E/T} and (1 - T r)^{E/T} with E = (B-A)(1-alpha): the growth
// bounds divided by r, regular at r = 0.
GrowthBounds growth_ratios_closed(double a, double b, double alpha, double r);

struct Lemma23Bounds {
    double b1 = 0;
    double b2 = 0;
    double b3 = 0;
    double b4 = 0;
};

// B1 <= Re<e^{-i beta} h(z), z> <= B2, any kernel (B3 = B4 = NaN).
Lemma23Bounds real_part_bounds(const Kernel &k, const ClassParams &p, double r);
// All four; B3 <= |<h(z), z>| <= B4 needs a Mobius kernel (Unsupported otherwise).
Lemma23Bounds lemma23_bounds(const Kernel &k, const ClassParams &p, double r);

struct CoefficientBound {
    double a1 = 0;
    double a2 = 0;
    double a0 = 0;      // min(a1, a2)
    double q_bound = 0; // (3 sqrt 3 / 2) a0
    bool degenerate = false;
};

// Infima over r in (0, 1) by a 512-point scan on [1e-4, 1 - 1e-4] refined by
// golden section; when the minimizer sits on the scan boundary the one-sided
// limit at 0 or 1 is extrapolated.
CoefficientBound coeff_bound(const Kernel &k, const ClassParams &p);

struct DistortionFactors {
    double f1 = 0;
    double f2 = 0;
};

DistortionFactors distortion_factors(double a, double b, const ClassParams &p, double r);

struct DistortionBounds {
    double det_upper = 0;
    double det_lower = 0;
    double tangent_upper = 0;
    double tangent_lower = 0;
    double unitvec_upper = 0;
};

// Throws UpperBoundsUndefined when F1 <= 0.
DistortionBounds distortion_bounds(double a, double b, const ClassParams &p, double r, int n);

// Independent closed forms of the g-starlike (alpha = beta = 0) specialization
// and of the order-gamma starlike specialization (A = -1, B = 1 - 2 gamma).
// unitvec_upper is not part of these displays and is left at 0.
DistortionBounds gstarlike_distortion_bounds(double a, double b, double r, int n);
DistortionBounds order_gamma_distortion_bounds(double gamma, double r, int n);

// One row of the bounds table. Quantities that need a Mobius kernel are NaN
// for generic kernels; upper distortion bounds are NaN where F1 <= 0.
struct BoundReport {
    double r = 0;
    double phi1 = 0, phi2 = 0;
    double b1 = 0, b2 = 0, b3 = 0, b4 = 0;
    double t = 0;
    double f1 = 0, f2 = 0;
    double det_upper = 0, det_lower = 0;
    double tangent_upper = 0, tangent_lower = 0;
    double unitvec_upper = 0;
    double a0 = 0, a1 = 0, a2 = 0;
};

BoundReport bound_report(const Kernel &k, const ClassParams &p, double r, int n);

std::string bound_report_csv_header();
std::string to_csv_row(const BoundReport &row);

} // namespace ballmap

#endif
