#include <ballmap/bounds.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include <ballmap/error.hpp>

namespace ballmap
{

namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kQuadratureTolerance = 1e-10;
constexpr double kZeroT = 1e-12;

void require_alpha(double alpha)
{
    if (!(alpha >= 0 && alpha < 1)) {
        throw DomainError("alpha must lie in [0, 1)");
    }
}

void require_radius(double r)
{
    if (!(r >= 0 && r < 1)) {
        throw DomainError("radius must lie in [0, 1)");
    }
}

void require_mobius_range(double a, double b)
{
    if (!(a >= -1 && a < b && b <= 1)) {
        throw DomainError("Mobius parameters need -1 <= A < B <= 1");
    }
}

double simpson_step(const std::function<double(double)> &f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth, int max_depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double diff = left + right - whole;
    if (std::abs(diff) <= 15 * tol) {
        return left + right + diff / 15;
    }
    if (depth >= max_depth) {
        throw QuadratureFailure("adaptive quadrature exceeded the refinement limit");
    }
    return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth + 1, max_depth)
           + simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth + 1, max_depth);
}

// Limit of f at 0+ by Richardson extrapolation over h = 1e-2 / 2^k.
double richardson_limit_at_zero(const std::function<double(double)> &f)
{
    constexpr int levels = 5;
    std::vector<std::vector<double>> t(levels, std::vector<double>(levels));
    double h = 1e-2;
    for (int k = 0; k < levels; ++k, h /= 2) {
        t[k][0] = f(h);
        for (int j = 1; j <= k; ++j) {
            const double p = std::ldexp(1.0, j);
            t[k][j] = (p * t[k][j - 1] - t[k - 1][j - 1]) / (p - 1);
        }
    }
    return t[levels - 1][levels - 1];
}

// Quadratic extrapolation of the one-sided limit at `edge` from
// edge + s h, edge + 2 s h, edge + 4 s h, s = +-1.
double endpoint_limit(const std::function<double(double)> &f, double edge, double dir)
{
    constexpr double h = 1e-5;
    return (8.0 / 3.0) * f(edge + dir * h) - 2.0 * f(edge + 2 * dir * h) + (1.0 / 3.0) * f(edge + 4 * dir * h);
}

double infimum_on_unit_interval(const std::function<double(double)> &f)
{
    constexpr int scan = 512;
    constexpr double lo = 1e-4;
    constexpr double hi = 1 - 1e-4;
    std::vector<double> xs(scan);
    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i < scan; ++i) {
        xs[i] = lo + (hi - lo) * i / (scan - 1);
        const double v = f(xs[i]);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    // Golden-section refinement on the bracketing cell(s).
    double a = xs[std::max(best - 1, 0)];
    double b = xs[std::min(best + 1, scan - 1)];
    const double invphi = (std::sqrt(5.0) - 1) / 2;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    best_val = std::min({best_val, fc, fd});
    // The infimum over the open interval may be a one-sided limit.
    if (best == 0) {
        best_val = std::min(best_val, endpoint_limit(f, 0.0, 1.0));
    } else if (best == scan - 1) {
        const double lim = endpoint_limit(f, 1.0, -1.0);
        if (std::isfinite(lim)) {
            best_val = std::min(best_val, lim);
        }
    }
    return best_val;
}

} // namespace

double adaptive_simpson(const std::function<double(double)> &f, double a, double b, double f_a, double abs_tol,
                        int max_depth)
{
    if (b == a) {
        return 0;
    }
    const double fm = f(0.5 * (a + b));
    const double fb = f(b);
    const double whole = (b - a) / 6 * (f_a + 4 * fm + fb);
    return simpson_step(f, a, b, f_a, fm, fb, whole, abs_tol, 0, max_depth);
}

GrowthBounds growth_bounds_quadrature(const Kernel &k, double alpha, double r)
{
    require_alpha(alpha);
    require_radius(r);
    if (alpha > 0.99) {
        throw DomainError("growth quadrature is evaluated only for alpha <= 0.99");
    }
    if (r == 0) {
        return {0, 0};
    }
    auto integrand = [&](bool use_min) {
        return std::function<double(double)>([&k, alpha, use_min](double y) {
            const double gp = k.eval(Complex(y, 0)).real();
            const double gm = k.eval(Complex(-y, 0)).real();
            const double m = use_min ? std::min(gp, gm) : std::max(gp, gm);
            return (1.0 / ((1 - alpha) * m + alpha) - 1.0) / y;
        });
    };
    const auto upper_f = integrand(true);
    const auto lower_f = integrand(false);
    double upper0 = 0;
    double lower0 = 0;
    if (k.is_mobius()) {
        const auto &m = k.as_mobius();
        upper0 = (1 - alpha) * (m.b - m.a);
        lower0 = -(1 - alpha) * (m.b - m.a);
    } else {
        upper0 = richardson_limit_at_zero(upper_f);
        lower0 = richardson_limit_at_zero(lower_f);
    }
    const double iu = adaptive_simpson(upper_f, 0, r, upper0, kQuadratureTolerance);
    const double il = adaptive_simpson(lower_f, 0, r, lower0, kQuadratureTolerance);
    return {r * std::exp(il), r * std::exp(iu)};
}

GrowthBounds growth_ratios_closed(double a, double b, double alpha, double r)
{
    require_mobius_range(a, b);
    require_alpha(alpha);
    require_radius(r);
    const double t = a - a * alpha + b * alpha;
    const double e = (b - a) * (1 - alpha);
    if (std::abs(t) < kZeroT) {
        return {std::exp(-e * r), std::exp(e * r)};
    }
    // (1 + s T r)^{E/T} = exp(s E r log1p(x)/x), x = s T r; stable as T -> 0.
    auto power = [e, r, t](double sign) {
        const double x = sign * t * r;
        if (x == 0) {
            return 1.0;
        }
        if (1 + x <= 0) {
            throw DomainError("growth bound base 1 - T r is not positive");
        }
        return std::exp(sign * e * r * std::log1p(x) / x);
    };
    return {power(-1), power(1)};
}

GrowthBounds growth_bounds_closed(double a, double b, double alpha, double r)
{
    const GrowthBounds ratio = growth_ratios_closed(a, b, alpha, r);
    return {r * ratio.lower, r * ratio.upper};
}

Lemma23Bounds real_part_bounds(const Kernel &k, const ClassParams &p, double r)
{
    require_radius(r);
    const CircleExtrema ex = k.circle_extrema(r);
    const double a = p.alpha();
    const double s = std::cos(p.beta()) * r * r;
    return {s * ((1 - a) * ex.min_re + a), s * ((1 - a) * ex.max_re + a), kNaN, kNaN};
}

Lemma23Bounds lemma23_bounds(const Kernel &k, const ClassParams &p, double r)
{
    if (!k.is_mobius()) {
        throw Unsupported("B3/B4 require a Mobius kernel");
    }
    Lemma23Bounds out = real_part_bounds(k, p, r);
    const auto &m = k.as_mobius();
    const DistortionFactors f = distortion_factors(m.a, m.b, p, r);
    out.b3 = f.f1 * r * r;
    out.b4 = f.f2 * r * r;
    return out;
}

CoefficientBound coeff_bound(const Kernel &k, const ClassParams &p)
{
    const double a = p.alpha();
    const std::function<double(double)> obj1 = [&](double r) {
        return (1 - ((1 - a) * k.circle_extrema(r).min_re + a)) / r;
    };
    const std::function<double(double)> obj2 = [&](double r) {
        return (((1 - a) * k.circle_extrema(r).max_re + a) - 1) / r;
    };
    CoefficientBound out;
    out.a1 = infimum_on_unit_interval(obj1);
    out.a2 = infimum_on_unit_interval(obj2);
    out.a0 = std::min(out.a1, out.a2);
    out.q_bound = 1.5 * std::sqrt(3.0) * out.a0;
    out.degenerate = !(out.a0 > 0);
    return out;
}

DistortionFactors distortion_factors(double a, double b, const ClassParams &p, double r)
{
    require_mobius_range(a, b);
    require_radius(r);
    const double al = p.alpha();
    const double tb = p.tan_beta();
    const double rad = std::sqrt(al * al + tb * tb) / (1 - al);
    const double scale = (1 - al) * std::cos(p.beta());
    return {((1 + a * r) / (1 + b * r) - rad) * scale, ((1 - a * r) / (1 - b * r) + rad) * scale};
}

DistortionBounds distortion_bounds(double a, double b, const ClassParams &p, double r, int n)
{
    if (n < 1) {
        throw DomainError("dimension must be >= 1");
    }
    const DistortionFactors f = distortion_factors(a, b, p, r);
    if (!(f.f1 > 0)) {
        throw UpperBoundsUndefined("F1 <= 0: upper distortion bounds are undefined");
    }
    const GrowthBounds ratio = growth_ratios_closed(a, b, p.alpha(), r);
    const double half = 0.5 * (n + 1);
    DistortionBounds d;
    d.det_upper = std::pow(ratio.upper, n) * std::pow(1 / f.f1, half);
    d.tangent_upper = ratio.upper * std::sqrt(1 / f.f1);
    d.det_lower = std::pow(ratio.lower, n) * std::pow(f.f2, -half);
    d.tangent_lower = ratio.lower / std::sqrt(f.f2);
    d.unitvec_upper = ratio.upper / f.f1;
    return d;
}

DistortionBounds gstarlike_distortion_bounds(double a, double b, double r, int n)
{
    require_mobius_range(a, b);
    require_radius(r);
    const double half = 0.5 * (n + 1);
    const double up_frac = (1 + b * r) / (1 + a * r);
    const double lo_frac = (1 - a * r) / (1 - b * r);
    double up_growth = 0;
    double lo_growth = 0;
    if (a != 0) {
        up_growth = std::pow(1 + a * r, (b - a) / a);
        lo_growth = std::pow(1 - a * r, (b - a) / a);
    } else {
        up_growth = std::exp((b - a) * r);
        lo_growth = std::exp((a - b) * r);
    }
    DistortionBounds d;
    d.det_upper = std::pow(up_growth, n) * std::pow(up_frac, half);
    d.tangent_upper = up_growth * std::sqrt(up_frac);
    d.det_lower = std::pow(lo_growth, n) * std::pow(lo_frac, -half);
    d.tangent_lower = lo_growth / std::sqrt(lo_frac);
    return d;
}

DistortionBounds order_gamma_distortion_bounds(double gamma, double r, int n)
{
    if (!(gamma > 0 && gamma < 1)) {
        throw DomainError("order gamma must lie in (0, 1)");
    }
    require_radius(r);
    const double half = 0.5 * (n + 1);
    const double up_frac = (1 - r) / (1 + (1 - 2 * gamma) * r);
    const double lo_frac = (1 + r) / (1 - (1 - 2 * gamma) * r);
    DistortionBounds d;
    d.det_upper = std::pow(1 - r, 2 * (gamma - 1) * n) * std::pow(up_frac, -half);
    d.tangent_upper = std::pow(1 - r, 2 * (gamma - 1)) * std::pow(up_frac, -0.5);
    d.det_lower = std::pow(1 + r, -2 * (1 - gamma) * n) * std::pow(lo_frac, -half);
    d.tangent_lower = std::pow(1 + r, -2 * (1 - gamma)) * std::pow(lo_frac, -0.5);
    return d;
}

BoundReport bound_report(const Kernel &k, const ClassParams &p, double r, int n)
{
    BoundReport row;
    row.r = r;
    const CoefficientBound cb = coeff_bound(k, p);
    row.a0 = cb.a0;
    row.a1 = cb.a1;
    row.a2 = cb.a2;
    if (!k.is_mobius()) {
        const GrowthBounds g = growth_bounds_quadrature(k, p.alpha(), r);
        const Lemma23Bounds l = real_part_bounds(k, p, r);
        row.phi1 = g.lower;
        row.phi2 = g.upper;
        row.b1 = l.b1;
        row.b2 = l.b2;
        row.b3 = row.b4 = row.t = row.f1 = row.f2 = kNaN;
        row.det_upper = row.det_lower = row.tangent_upper = row.tangent_lower = row.unitvec_upper = kNaN;
        return row;
    }
    const auto &m = k.as_mobius();
    const GrowthBounds g = growth_bounds_closed(m.a, m.b, p.alpha(), r);
    const Lemma23Bounds l = lemma23_bounds(k, p, r);
    const DistortionFactors f = distortion_factors(m.a, m.b, p, r);
    row.phi1 = g.lower;
    row.phi2 = g.upper;
    row.b1 = l.b1;
    row.b2 = l.b2;
    row.b3 = l.b3;
    row.b4 = l.b4;
    row.t = m.a - m.a * p.alpha() + m.b * p.alpha();
    row.f1 = f.f1;
    row.f2 = f.f2;
    if (f.f1 > 0) {
        const DistortionBounds d = distortion_bounds(m.a, m.b, p, r, n);
        row.det_upper = d.det_upper;
        row.tangent_upper = d.tangent_upper;
        row.det_lower = d.det_lower;
        row.tangent_lower = d.tangent_lower;
        row.unitvec_upper = d.unitvec_upper;
    } else {
        const GrowthBounds ratio = growth_ratios_closed(m.a, m.b, p.alpha(), r);
        const double half = 0.5 * (n + 1);
        row.det_upper = row.tangent_upper = row.unitvec_upper = kNaN;
        row.det_lower = std::pow(ratio.lower, n) * std::pow(f.f2, -half);
        row.tangent_lower = ratio.lower / std::sqrt(f.f2);
    }
    return row;
}

std::string bound_report_csv_header()
{
    return "r,phi1,phi2,B1,B2,B3,B4,T,F1,F2,det_upper,det_lower,tangent_upper,tangent_lower,unitvec_upper";
}

std::string to_csv_row(const BoundReport &row)
{
    return fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},"
                       "{:.17g},{:.17g},{:.17g},{:.17g}",
                       row.r, row.phi1, row.phi2, row.b1, row.b2, row.b3, row.b4, row.t, row.f1, row.f2,
                       row.det_upper, row.det_lower, row.tangent_upper, row.tangent_lower, row.unitvec_upper);
}

} // namespace ballmap
