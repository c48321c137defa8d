#ifndef BALLMAP_FUNC1D_HPP
#define BALLMAP_FUNC1D_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <ballmap/linalg.hpp>
#include <ballmap/mapping.hpp>
#include <ballmap/series.hpp>

namespace ballmap
{

// Value and derivatives of a one-variable function at a point, together
// with the quotient f(z)/z and its derivative (both regular at z = 0 for
// functions vanishing at the origin).
struct Jet1D {
    Complex f;
    Complex df;
    Complex d2f;
    Complex ratio;
    Complex dratio;
};

// A holomorphic function on the unit disk: a named builtin, a truncated
// power series, or (internally) an arbitrary jet callback.
class Func1D
{
public:
    enum class Kind { identity, koebe, mobius_starlike, series, callable };

    using JetFn = std::function<Jet1D(Complex)>;

    static Func1D identity();
    // z / (1 - z)^2.
    static Func1D koebe();
    // z (1 + A c z)^{(B - A)/A}, or z exp(B c z) when A = 0. This is the
    // extremal g-starlike function for g(zeta) = (1 + A zeta)/(1 + B zeta),
    // rotated/contracted by |c| <= 1.
    static Func1D mobius_starlike(double a, double b, Complex c = 1.0);
    static Func1D from_series(series::Series coeffs);
    static Func1D from_callable(JetFn jet, std::string name);

    [[nodiscard]] Jet1D jet(Complex z) const
    {
        return jet_(z);
    }
    [[nodiscard]] Complex value(Complex z) const
    {
        return jet_(z).f;
    }
    [[nodiscard]] Complex derivative(Complex z) const
    {
        return jet_(z).df;
    }

    [[nodiscard]] Kind kind() const noexcept
    {
        return kind_;
    }
    [[nodiscard]] const std::string &name() const noexcept
    {
        return name_;
    }
    // Empty unless kind() == series.
    [[nodiscard]] const series::Series &coefficients() const noexcept
    {
        return coeffs_;
    }
    [[nodiscard]] const std::vector<double> &params() const noexcept
    {
        return params_;
    }
    // f(0) = 0 and f'(0) = 1.
    [[nodiscard]] bool normalized(double tol = 1e-14) const;

private:
    Func1D(Kind kind, std::string name, JetFn jet) : kind_(kind), name_(std::move(name)), jet_(std::move(jet)) {}

    Kind kind_;
    std::string name_;
    JetFn jet_;
    series::Series coeffs_;
    std::vector<double> params_;
};

// A Func1D viewed as a mapping of C^1.
class Func1DMap final : public Mapping
{
public:
    explicit Func1DMap(Func1D f) : f_(std::move(f)) {}

    [[nodiscard]] std::size_t dim() const override
    {
        return 1;
    }
    [[nodiscard]] CVec eval(const CVec &z) const override;
    [[nodiscard]] CMatrix jacobian(const CVec &z) const override;
    [[nodiscard]] std::string name() const override
    {
        return f_.name();
    }
    [[nodiscard]] const Func1D &function() const noexcept
    {
        return f_;
    }

private:
    Func1D f_;
};

} // namespace ballmap

#endif
