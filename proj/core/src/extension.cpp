#include <ballmap/extension.hpp>

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include <ballmap/error.hpp>

namespace ballmap
{

namespace
{

constexpr int kSteps = ExtendedMap::kBranchPathSteps;

// Samples s -> w(s z1) on s = 0, 1/steps, ..., 1 and returns the principal
// power of the endpoint after checking the path never crosses the cut.
Complex continued_power(const std::vector<Complex> &path, double p)
{
    if (p == 0) {
        return 1;
    }
    check_branch_path(path);
    return principal_power(path.back(), p);
}

struct RsFactor {
    Complex value;      // (f/z1)^ahat (f')^bhat
    Complex log_deriv;  // d/dz1 log of the factor
    Jet1D jet;
};

RsFactor rs_factor(const Func1D &f, double ahat, double bhat, Complex z1)
{
    RsFactor out;
    out.jet = f.jet(z1);
    if (z1 != Complex(0) && std::abs(out.jet.ratio) < ExtendedMap::kZeroOfBaseThreshold) {
        throw ZeroOfBase(fmt::format("base function vanishes at z1 = ({}, {})", z1.real(), z1.imag()));
    }
    if (ahat == 0 && bhat == 0) {
        out.value = 1;
        out.log_deriv = 0;
        return out;
    }
    std::vector<Complex> ratios;
    std::vector<Complex> derivs;
    if (z1 == Complex(0)) {
        ratios.push_back(out.jet.ratio);
        derivs.push_back(out.jet.df);
    } else {
        ratios.reserve(kSteps + 1);
        derivs.reserve(kSteps + 1);
        for (int k = 0; k < kSteps; ++k) {
            const Jet1D j = f.jet(z1 * (static_cast<double>(k) / kSteps));
            ratios.push_back(j.ratio);
            derivs.push_back(j.df);
        }
        ratios.push_back(out.jet.ratio);
        derivs.push_back(out.jet.df);
    }
    out.value = continued_power(ratios, ahat) * continued_power(derivs, bhat);
    out.log_deriv = 0;
    if (ahat != 0) {
        out.log_deriv += ahat * out.jet.dratio / out.jet.ratio;
    }
    if (bhat != 0) {
        out.log_deriv += bhat * out.jet.d2f / out.jet.df;
    }
    return out;
}

void require_dim(const CVec &z, std::size_t n)
{
    if (z.size() != n) {
        throw DimensionMismatch(fmt::format("expected a point of C^{}, got C^{}", n, z.size()));
    }
}

} // namespace

ExtensionParams::ExtensionParams(double alpha_hat, double beta_hat) : alpha_hat_(alpha_hat), beta_hat_(beta_hat)
{
    if (!(alpha_hat >= 0) || !(beta_hat >= 0) || !std::isfinite(alpha_hat) || !std::isfinite(beta_hat)) {
        throw DomainError("extension exponents must be finite and nonnegative");
    }
}

bool ExtensionParams::in_chain_regime() const noexcept
{
    return alpha_hat_ <= 1 && beta_hat_ <= 0.5 && alpha_hat_ + beta_hat_ <= 1;
}

void ExtensionParams::require_chain_regime() const
{
    if (!in_chain_regime()) {
        throw DomainError("chain construction needs alpha_hat in [0,1], beta_hat in [0,1/2], alpha_hat + beta_hat <= 1");
    }
}

ExtendedMap::ExtendedMap(std::size_t n, EvalFn eval, JacobianFn jacobian, OperatorMetadata meta)
    : n_(n), eval_(std::move(eval)), jacobian_(std::move(jacobian)), meta_(std::move(meta))
{
    meta_.n = n;
}

CVec ExtendedMap::eval(const CVec &z) const
{
    require_dim(z, n_);
    return eval_(z);
}

CMatrix ExtendedMap::jacobian(const CVec &z) const
{
    require_dim(z, n_);
    return jacobian_(z);
}

std::string ExtendedMap::name() const
{
    return fmt::format("{}({})", meta_.op, meta_.base);
}

Complex radial_power(const std::function<Complex(Complex)> &w, Complex z1, double p)
{
    if (p == 0) {
        return 1;
    }
    std::vector<Complex> path;
    path.reserve(kSteps + 1);
    for (int k = 0; k <= kSteps; ++k) {
        path.push_back(w(z1 * (static_cast<double>(k) / kSteps)));
    }
    return continued_power(path, p);
}

ExtendedMap modified_rs(const Func1D &f, const ExtensionParams &p, std::size_t n)
{
    if (n < 1) {
        throw DomainError("dimension must be >= 1");
    }
    const double ahat = p.alpha_hat();
    const double bhat = p.beta_hat();
    auto eval = [f, ahat, bhat, n](const CVec &z) {
        const RsFactor r = rs_factor(f, ahat, bhat, z[0]);
        CVec out(n);
        out[0] = r.jet.f;
        for (std::size_t j = 1; j < n; ++j) {
            out[j] = z[j] * r.value;
        }
        return out;
    };
    auto jac = [f, ahat, bhat, n](const CVec &z) {
        const RsFactor r = rs_factor(f, ahat, bhat, z[0]);
        CMatrix m(n);
        m(0, 0) = r.jet.df;
        for (std::size_t j = 1; j < n; ++j) {
            m(j, 0) = z[j] * r.value * r.log_deriv;
            m(j, j) = r.value;
        }
        return m;
    };
    OperatorMetadata meta{"modified-rs", f.name(), n, ahat, bhat, p.in_chain_regime(), false};
    return ExtendedMap(n, std::move(eval), std::move(jac), std::move(meta));
}

ExtendedMap roper_suffridge(const Func1D &f, std::size_t n)
{
    if (n < 1) {
        throw DomainError("dimension must be >= 1");
    }
    auto root = [f](Complex z1) {
        const Jet1D j = f.jet(z1);
        if (z1 != Complex(0)) {
            std::array<Complex, kSteps + 1> path;
            for (int k = 0; k < kSteps; ++k) {
                path[k] = f.derivative(z1 * (static_cast<double>(k) / kSteps));
            }
            path[kSteps] = j.df;
            check_branch_path(path);
        }
        return std::pair{j, std::sqrt(j.df)};
    };
    auto eval = [root, n](const CVec &z) {
        const auto [j, s] = root(z[0]);
        CVec out(n);
        out[0] = j.f;
        for (std::size_t k = 1; k < n; ++k) {
            out[k] = z[k] * s;
        }
        return out;
    };
    auto jac = [root, n](const CVec &z) {
        const auto [j, s] = root(z[0]);
        CMatrix m(n);
        m(0, 0) = j.df;
        for (std::size_t k = 1; k < n; ++k) {
            m(k, 0) = z[k] * s * j.d2f / (2.0 * j.df);
            m(k, k) = s;
        }
        return m;
    };
    OperatorMetadata meta{"roper-suffridge", f.name(), n, 0, 0.5, true, false};
    return ExtendedMap(n, std::move(eval), std::move(jac), std::move(meta));
}

ExtendedMap pfaltzgraff_suffridge(const HoloMap &f, double alpha_hat)
{
    if (!(alpha_hat >= 0) || !std::isfinite(alpha_hat)) {
        throw DomainError("alpha_hat must be finite and nonnegative");
    }
    const std::size_t n = f.dim();
    auto base = std::make_shared<const HoloMap>(f);
    auto head = [n](const CVec &z) {
        CVec w(n);
        for (std::size_t k = 0; k < n; ++k) {
            w[k] = z[k];
        }
        return w;
    };
    auto det_power = [base, alpha_hat](const CVec &zp) {
        if (alpha_hat == 0) {
            return Complex(1);
        }
        std::vector<Complex> path;
        path.reserve(kSteps + 1);
        for (int k = 0; k <= kSteps; ++k) {
            const Complex d = LuFactorization(base->jacobian(static_cast<double>(k) / kSteps * zp)).determinant();
            path.push_back(d);
        }
        return continued_power(path, alpha_hat);
    };
    auto eval = [base, head, det_power, n](const CVec &z) {
        const CVec zp = head(z);
        const CVec fz = base->eval(zp);
        CVec out(n + 1);
        for (std::size_t k = 0; k < n; ++k) {
            out[k] = fz[k];
        }
        out[n] = z[n] * det_power(zp);
        return out;
    };
    auto jac = [base, head, det_power, n, alpha_hat](const CVec &z) {
        const CVec zp = head(z);
        const CMatrix j = base->jacobian(zp);
        CMatrix m(n + 1);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                m(r, c) = j(r, c);
            }
        }
        const Complex pw = det_power(zp);
        m(n, n) = pw;
        if (alpha_hat != 0) {
            // d/dz_k det J = det J * tr(J^{-1} dJ/dz_k).
            const CMatrix inv = LuFactorization(j).inverse();
            const std::vector<CMatrix> hs = base->hessians(zp);
            for (std::size_t k = 0; k < n; ++k) {
                Complex tr = 0;
                for (std::size_t a = 0; a < n; ++a) {
                    for (std::size_t b = 0; b < n; ++b) {
                        tr += inv(a, b) * hs[b](a, k);
                    }
                }
                m(n, k) = z[n] * alpha_hat * pw * tr;
            }
        }
        return m;
    };
    const bool classical = std::abs(alpha_hat - 1.0 / static_cast<double>(n + 1)) < 1e-15;
    OperatorMetadata meta{"pfaltzgraff-suffridge", f.name(), n + 1, alpha_hat, 0, false, classical};
    return ExtendedMap(n + 1, std::move(eval), std::move(jac), std::move(meta));
}

} // namespace ballmap
