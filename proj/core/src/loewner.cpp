#include <ballmap/loewner.hpp>

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include <ballmap/error.hpp>

namespace ballmap
{

namespace
{

constexpr int kPathSteps = ExtendedMap::kBranchPathSteps;

std::optional<Complex> newton(const Func1D &f, Complex target, Complex seed)
{
    Complex v = seed;
    for (int it = 0; it < kNewtonMaxIterations; ++it) {
        const Jet1D j = f.jet(v);
        if (j.df == Complex(0) || !std::isfinite(std::abs(j.f)) || !std::isfinite(std::abs(j.df))) {
            return std::nullopt;
        }
        const Complex step = (j.f - target) / j.df;
        v -= step;
        if (!std::isfinite(std::abs(v)) || std::abs(v) >= 1) {
            return std::nullopt;
        }
        if (std::abs(step) <= kNewtonTolerance * std::max(1.0, std::abs(v))) {
            return v;
        }
    }
    return std::nullopt;
}

void require_times(double s, double t)
{
    if (!(s >= 0 && s <= t) || !std::isfinite(t)) {
        throw DomainError("transition times need 0 <= s <= t");
    }
}

// Root of f(v) = e^{s-t} f(z1) from `seed`, with the homotopy fallback.
Complex solve_transition(const Func1D &f, Complex z1, double s, double t, Complex seed)
{
    const Complex fz = f.value(z1);
    if (auto v = newton(f, std::exp(s - t) * fz, seed)) {
        return *v;
    }
    const double step = (t - s) / kHomotopySubsteps;
    Complex v = z1;
    for (int k = 1; k <= kHomotopySubsteps; ++k) {
        auto next = newton(f, std::exp(-step * k) * fz, v * std::exp(-step));
        if (!next) {
            throw NewtonDivergence(
                fmt::format("transition solve failed at z1 = ({}, {}), s = {}, t = {}", z1.real(), z1.imag(), s, t));
        }
        v = *next;
    }
    return v;
}

void check_schwarz(Complex v, Complex z1)
{
    if (std::abs(v) > std::abs(z1) * (1 + 1e-12) + 1e-15) {
        throw NewtonDivergence("transition root violates |v| <= |z1|");
    }
}

struct PowerFactor {
    Complex value;
    Complex log_deriv;
    Jet1D jet;
};

// e^{(1-ahat-bhat) t} (e^t f/z1)^ahat (e^t f')^bhat, continued radially.
PowerFactor chain_factor(const Func1D &f, double ahat, double bhat, Complex z1, double t)
{
    PowerFactor out;
    out.jet = f.jet(z1);
    const double et = std::exp(t);
    std::vector<Complex> ratios;
    std::vector<Complex> derivs;
    const int steps = z1 == Complex(0) ? 0 : kPathSteps;
    for (int k = 0; k < steps; ++k) {
        const Jet1D j = f.jet(z1 * (static_cast<double>(k) / kPathSteps));
        ratios.push_back(et * j.ratio);
        derivs.push_back(et * j.df);
    }
    ratios.push_back(et * out.jet.ratio);
    derivs.push_back(et * out.jet.df);
    Complex value = std::exp((1 - ahat - bhat) * t);
    out.log_deriv = 0;
    if (ahat != 0) {
        if (z1 != Complex(0) && std::abs(out.jet.ratio) < ExtendedMap::kZeroOfBaseThreshold) {
            throw ZeroOfBase("base function vanishes off the origin");
        }
        check_branch_path(ratios);
        value *= principal_power(ratios.back(), ahat);
        out.log_deriv += ahat * out.jet.dratio / out.jet.ratio;
    }
    if (bhat != 0) {
        check_branch_path(derivs);
        value *= principal_power(derivs.back(), bhat);
        out.log_deriv += bhat * out.jet.d2f / out.jet.df;
    }
    out.value = value;
    return out;
}

} // namespace

Complex Chain1D::value(Complex z, double t) const
{
    return std::exp(t) * base_.value(z);
}

Complex Chain1D::derivative(Complex z, double t) const
{
    return std::exp(t) * base_.derivative(z);
}

Complex Chain1D::vector_field(Complex z) const
{
    const Jet1D j = base_.jet(z);
    return j.f / j.df;
}

Chain1D starlike_chain(const Func1D &f, const Kernel &k, const SamplePlan &plan)
{
    Verdict v;
    try {
        v = membership_verdict(Func1DMap(f), Mode::s_g_star, k, ClassParams(), plan);
    } catch (const SingularJacobian &e) {
        throw NotGStarlike(fmt::format("{} is not locally univalent: {}", f.name(), e.what()));
    }
    if (!v.member) {
        throw NotGStarlike(fmt::format("{} is not g-starlike for {} (worst margin {:.3g})", f.name(), k.spec(),
                                       v.worst_margin));
    }
    return Chain1D(f);
}

Transition1D transition_1d(const Chain1D &c, Complex z1, double s, double t)
{
    require_times(s, t);
    if (!(std::abs(z1) < 1)) {
        throw DomainError("transition needs |z1| < 1");
    }
    const Complex v = solve_transition(c.base(), z1, s, t, std::exp(s - t) * z1);
    check_schwarz(v, z1);
    return {v, std::exp(s - t) * c.base().derivative(z1) / c.base().derivative(v)};
}

ChainND::ChainND(Chain1D base, const ExtensionParams &p, std::size_t n) : base_(std::move(base)), params_(p), n_(n)
{
    p.require_chain_regime();
    if (n < 1) {
        throw DomainError("dimension must be >= 1");
    }
}

CVec ChainND::eval(const CVec &z, double t) const
{
    if (z.size() != n_) {
        throw DimensionMismatch("chain evaluated at a point of the wrong dimension");
    }
    const PowerFactor pf = chain_factor(base_.base(), params_.alpha_hat(), params_.beta_hat(), z[0], t);
    CVec out(n_);
    out[0] = std::exp(t) * pf.jet.f;
    for (std::size_t j = 1; j < n_; ++j) {
        out[j] = z[j] * pf.value;
    }
    return out;
}

ExtendedMap ChainND::at(double t) const
{
    const ChainND self = *this;
    auto eval = [self, t](const CVec &z) { return self.eval(z, t); };
    auto jac = [self, t](const CVec &z) {
        const PowerFactor pf =
            chain_factor(self.base_.base(), self.params_.alpha_hat(), self.params_.beta_hat(), z[0], t);
        CMatrix m(self.n_);
        m(0, 0) = std::exp(t) * pf.jet.df;
        for (std::size_t j = 1; j < self.n_; ++j) {
            m(j, 0) = z[j] * pf.value * pf.log_deriv;
            m(j, j) = pf.value;
        }
        return m;
    };
    OperatorMetadata meta{"rs-chain", base_.base().name(), n_, params_.alpha_hat(), params_.beta_hat(), true, false};
    return ExtendedMap(n_, std::move(eval), std::move(jac), std::move(meta));
}

ChainND rs_chain(const Chain1D &c, const ExtensionParams &p, std::size_t n)
{
    return ChainND(c, p, n);
}

CVec transition_nd(const ChainND &c, const CVec &z, double s, double t)
{
    require_times(s, t);
    if (z.size() != c.dim()) {
        throw DimensionMismatch("transition evaluated at a point of the wrong dimension");
    }
    const Func1D &f = c.base().base();
    const double ahat = c.params().alpha_hat();
    const double bhat = c.params().beta_hat();
    const Complex z1 = z[0];
    const double decay = std::exp(s - t);

    const Transition1D end = transition_1d(c.base(), z1, s, t);
    Complex factor = std::exp((s - t) * (1 - ahat - bhat));
    if ((ahat != 0 || bhat != 0) && z1 != Complex(0)) {
        // Walk v along u_k = (k / K) z1, seeding each solve with the previous root.
        std::vector<Complex> ratios{decay};
        std::vector<Complex> derivs{decay};
        Complex prev = 0;
        for (int k = 1; k <= kPathSteps; ++k) {
            const Complex u = z1 * (static_cast<double>(k) / kPathSteps);
            Complex v = end.v;
            if (k < kPathSteps) {
                const Complex seed = k == 1 ? decay * u : prev * (static_cast<double>(k) / (k - 1));
                auto root = newton(f, decay * f.value(u), seed);
                v = root ? *root : solve_transition(f, u, s, t, decay * u);
                check_schwarz(v, u);
            }
            prev = v;
            ratios.push_back(v / u);
            derivs.push_back(decay * f.derivative(u) / f.derivative(v));
        }
        if (ahat != 0) {
            check_branch_path(ratios);
            factor *= principal_power(ratios.back(), ahat);
        }
        if (bhat != 0) {
            check_branch_path(derivs);
            factor *= principal_power(derivs.back(), bhat);
        }
    } else if (z1 == Complex(0)) {
        factor *= std::exp((s - t) * (ahat + bhat));
    }
    CVec out(z.size());
    out[0] = end.v;
    for (std::size_t j = 1; j < z.size(); ++j) {
        out[j] = z[j] * factor;
    }
    return out;
}

double pde_residual(const Chain1D &c, Complex z, double t, double dt)
{
    if (!(dt > 0) || t < dt) {
        throw DomainError("central differences need dt > 0 and t >= dt");
    }
    const Complex dfdt = (c.value(z, t + dt) - c.value(z, t - dt)) / (2 * dt);
    return std::abs(dfdt - c.derivative(z, t) * c.vector_field(z));
}

ChainFieldCheck pde_residual(const ChainND &c, const Kernel &k, const ClassParams &p, const CVec &z, double t,
                             double dt)
{
    if (!(dt > 0) || t < dt) {
        throw DomainError("central differences need dt > 0 and t >= dt");
    }
    CVec dfdt = c.eval(z, t + dt) - c.eval(z, t - dt);
    dfdt *= Complex(1 / (2 * dt));
    const ExtendedMap ft = c.at(t);
    ChainFieldCheck out;
    out.field = solve_jacobian(ft, z, dfdt).x;
    out.margin = k.margin(tilde_transform(q_value(out.field, z), p));
    out.residual = std::max(0.0, -out.margin);
    return out;
}

double commutation_identity_check(const Func1D &m, const Chain1D &c, const ExtensionParams &p, std::size_t n,
                                  double t, const CVec &z)
{
    const ChainND chain = rs_chain(c, p, n);
    const double et = std::exp(t);
    CVec lhs = modified_rs(m, p, n).eval(transition_nd(chain, z, 0, t));
    lhs *= Complex(et);

    const Func1D &fb = c.base();
    auto jet = [m, c, fb, t, et](Complex zeta) {
        const Transition1D tr = zeta == Complex(0) ? Transition1D{0, std::exp(-t)} : transition_1d(c, zeta, 0, t);
        const Jet1D mj = m.jet(tr.v);
        const Jet1D bz = fb.jet(zeta);
        const Jet1D bv = fb.jet(tr.v);
        const Complex d2v = std::exp(-t) * (bz.d2f / bv.df - bz.df * bv.d2f * tr.dv / (bv.df * bv.df));
        Jet1D out;
        out.f = et * mj.f;
        out.df = et * mj.df * tr.dv;
        out.d2f = et * (mj.d2f * tr.dv * tr.dv + mj.df * d2v);
        if (zeta == Complex(0)) {
            out.ratio = out.df;
            out.dratio = out.d2f / 2.0;
        } else {
            out.ratio = out.f / zeta;
            out.dratio = (out.df - out.ratio) / zeta;
        }
        return out;
    };
    // v_0 is the identity
    const Func1D composed = t == 0 ? m : Func1D::from_callable(jet, fmt::format("e^t({} o v_t)", m.name()));
    const CVec rhs = modified_rs(composed, p, n).eval(z);
    return (lhs - rhs).norm();
}

FlowTrajectory spirallike_flow(const Mapping &f, const CVec &z, double beta, double t_end, int steps)
{
    if (steps < 1 || !(t_end > 0)) {
        throw DomainError("flow needs t_end > 0 and at least one step");
    }
    if (z.size() != f.dim()) {
        throw DimensionMismatch("flow start point has the wrong dimension");
    }
    if (z.norm() == 0 || !(z.norm() < 1)) {
        throw DomainError("flow start point must lie in the punctured ball");
    }
    const Complex rot = -std::exp(Complex(0, -beta));
    auto rhs = [&](const CVec &x) {
        CVec d = solve_jacobian(f, x, f.eval(x)).x;
        d *= rot;
        return d;
    };
    const double h = t_end / steps;
    FlowTrajectory tr;
    tr.times.reserve(steps + 1);
    tr.states.reserve(steps + 1);
    CVec x = z;
    auto record = [&](double t) {
        tr.times.push_back(t);
        tr.z_norms.push_back(x.norm());
        tr.f_norms.push_back(f.eval(x).norm());
        tr.states.push_back(x);
    };
    record(0);
    for (int i = 1; i <= steps; ++i) {
        const CVec k1 = rhs(x);
        const CVec k2 = rhs(x + (0.5 * h) * k1);
        const CVec k3 = rhs(x + (0.5 * h) * k2);
        const CVec k4 = rhs(x + h * k3);
        x += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!(x.norm() < 1)) {
            throw DomainError("flow trajectory left the unit ball");
        }
        record(h * i);
    }
    bool dec = true;
    bool inc = true;
    for (std::size_t i = 1; i < tr.z_norms.size(); ++i) {
        dec = dec && tr.z_norms[i] < tr.z_norms[i - 1];
        inc = inc && tr.z_norms[i] > tr.z_norms[i - 1];
    }
    tr.norm_direction = dec ? "decreasing" : inc ? "increasing" : "not monotone";
    return tr;
}

} // namespace ballmap
