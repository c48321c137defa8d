#include <ballmap/classes.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <limits>
#include <utility>
#include <vector>

#include <ballmap/error.hpp>
#include <ballmap/sampling.hpp>
#include <ballmap/series.hpp>

namespace ballmap
{

ClassParams::ClassParams(double alpha, double beta) : alpha_(alpha), beta_(beta)
{
    if (!(alpha >= 0 && alpha < 1)) {
        throw DomainError("alpha must lie in [0, 1)");
    }
    if (!(std::abs(beta) < std::numbers::pi / 2)) {
        throw DomainError("beta must lie in (-pi/2, pi/2)");
    }
}

double ClassParams::tan_beta() const noexcept
{
    return std::tan(beta_);
}

Mode parse_mode(const std::string &s)
{
    if (s == "m" || s == "M") {
        return Mode::m;
    }
    if (s == "m_g" || s == "M_g") {
        return Mode::m_g;
    }
    if (s == "m_tilde" || s == "M_tilde") {
        return Mode::m_tilde;
    }
    if (s == "s_hat" || s == "S_hat") {
        return Mode::s_hat;
    }
    if (s == "s_g_star" || s == "S_g_star") {
        return Mode::s_g_star;
    }
    if (s == "spirallike") {
        return Mode::spirallike;
    }
    if (s == "almost_starlike") {
        return Mode::almost_starlike;
    }
    throw ParseError("unknown membership mode '" + s + "'");
}

std::string to_string(Mode m)
{
    switch (m) {
        case Mode::m:
            return "m";
        case Mode::m_g:
            return "m_g";
        case Mode::m_tilde:
            return "m_tilde";
        case Mode::s_hat:
            return "s_hat";
        case Mode::s_g_star:
            return "s_g_star";
        case Mode::spirallike:
            return "spirallike";
        case Mode::almost_starlike:
            return "almost_starlike";
    }
    return "?";
}

Complex q_value(const CVec &hz, const CVec &z)
{
    const double n2 = z.norm2();
    if (n2 == 0) {
        throw DomainError("q_value is not evaluated at z = 0");
    }
    return inner(hz, z) / n2;
}

Complex q_value(const Mapping &h, const CVec &z)
{
    return q_value(h.eval(z), z);
}

Complex tilde_transform(Complex q, const ClassParams &p)
{
    const double a = p.alpha();
    const double t = p.tan_beta();
    return (Complex(-a, t) + Complex(1, -t) * q) / (1 - a);
}

Complex tilde_inverse(Complex w, const ClassParams &p)
{
    const double a = p.alpha();
    const double t = p.tan_beta();
    return ((1 - a) * w + Complex(a, -t)) / Complex(1, -t);
}

namespace
{

ClassParams effective_params(Mode mode, const ClassParams &p)
{
    switch (mode) {
        case Mode::m_g:
        case Mode::s_g_star:
            return {0, 0};
        case Mode::spirallike:
            return {0, p.beta()};
        case Mode::almost_starlike:
            return {p.alpha(), 0};
        default:
            return p;
    }
}

bool uses_inverse_jacobian(Mode mode)
{
    return mode == Mode::s_hat || mode == Mode::s_g_star || mode == Mode::spirallike
           || mode == Mode::almost_starlike;
}

} // namespace

Verdict membership_verdict(const Mapping &subject, Mode mode, const Kernel &k, const ClassParams &p,
                           const SamplePlan &plan, double tolerance)
{
    if (plan.radii < 1 || plan.dirs < 1 || !(plan.rmin > 0) || !(plan.rmax < 1) || plan.rmin > plan.rmax) {
        throw DomainError("invalid sample plan");
    }
    const std::size_t n = subject.dim();
    const ClassParams eff = effective_params(mode, p);
    const std::size_t count = static_cast<std::size_t>(plan.radii) * static_cast<std::size_t>(plan.dirs);

    struct Sample {
        double margin = 0;
        CVec z;
    };
    const std::function<Sample(std::size_t)> eval_point = [&](std::size_t idx) {
        const std::size_t i = idx / static_cast<std::size_t>(plan.dirs);
        const double r = plan.radii == 1
                             ? plan.rmax
                             : plan.rmin * std::pow(plan.rmax / plan.rmin, static_cast<double>(i) / (plan.radii - 1));
        Rng rng(mix_seed(plan.seed, idx));
        CVec z = random_sphere_point(rng, n, r);
        const CVec hz = uses_inverse_jacobian(mode) ? inverse_jacobian_field(subject, z) : subject.eval(z);
        const Complex q = q_value(hz, z);
        if (mode == Mode::m) {
            return Sample{q.real(), std::move(z)};
        }
        return Sample{k.margin(tilde_transform(q, eff)), std::move(z)};
    };
    const auto samples = parallel_map<Sample>(count, eval_point);

    Verdict v;
    v.worst_margin = std::numeric_limits<double>::infinity();
    for (const auto &s : samples) {
        if (s.margin < v.worst_margin || std::isnan(s.margin)) {
            v.worst_margin = s.margin;
            v.witness = s.z;
            if (std::isnan(s.margin)) {
                break;
            }
        }
    }
    v.samples_used = static_cast<long>(count);
    v.member = v.worst_margin >= -tolerance;
    return v;
}

HoloMap ShearedMap::to_holomap() const
{
    return HoloMap(2, {Term{0, {1, 0}, rho}, Term{0, {0, 2}, q}, Term{1, {0, 1}, sigma}});
}

ShearedMap shearing(const HoloMap &h, double tol)
{
    if (h.dim() != 2) {
        throw DimensionMismatch("shearing is defined for maps of C^2");
    }
    ShearedMap s{h.coefficient(0, {1, 0}), h.coefficient(1, {0, 1}), h.coefficient(0, {0, 2})};
    if (std::abs(h.coefficient(0, {0, 0})) > tol || std::abs(h.coefficient(1, {0, 0})) > tol) {
        throw ShapeViolation("shearing: h(0) != 0");
    }
    if (std::abs(h.coefficient(0, {0, 1})) > tol) {
        throw ShapeViolation("shearing: component 1 has a z2-linear term");
    }
    if (std::abs(h.coefficient(1, {1, 0})) > tol) {
        throw ShapeViolation("shearing: component 2 has a z1-linear term");
    }
    if (std::abs(s.rho) <= tol || std::abs(s.sigma) <= tol) {
        throw ShapeViolation("shearing: diagonal linear part must be nonzero");
    }
    return s;
}

Func1D synth_member_1d(const Kernel &k, const ClassParams &p, Complex c, int degree)
{
    if (degree < 1) {
        throw DomainError("synthesis degree must be >= 1");
    }
    if (std::abs(c) > 1) {
        throw DomainError("synthesis parameter needs |c| <= 1");
    }
    const auto d = static_cast<std::size_t>(degree);
    // q(u) = tilde_inverse(g(c u)); f'/f = 1/(u q), so log(f/z)' = (1/q - 1)/u.
    series::Series q = series::rescale(k.taylor(d), c);
    const double a = p.alpha();
    const Complex one_minus_it(1, -p.tan_beta());
    for (auto &v : q) {
        v *= (1 - a) / one_minus_it;
    }
    q[0] += Complex(a, -p.tan_beta()) / one_minus_it;
    const series::Series inv = series::reciprocal(q, d);
    series::Series shifted(d);
    for (std::size_t j = 0; j + 1 <= d; ++j) {
        shifted[j] = inv[j + 1];
    }
    const series::Series e = series::exp(series::integrate(shifted, d - 1), d - 1);
    series::Series f(d + 1);
    for (std::size_t j = 0; j + 1 <= d; ++j) {
        f[j + 1] = e[j];
    }
    return Func1D::from_series(std::move(f));
}

Func1D synth_gstarlike_1d(const Kernel &k, Complex c, int degree)
{
    return synth_member_1d(k, ClassParams{0, 0}, c, degree);
}

} // namespace ballmap
