#ifndef BALLMAP_EXTENSION_HPP
#define BALLMAP_EXTENSION_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <string>

#include <ballmap/func1d.hpp>
#include <ballmap/holomap.hpp>
#include <ballmap/linalg.hpp>
#include <ballmap/mapping.hpp>

namespace ballmap
{

// (alpha_hat, beta_hat) of the modified Roper-Suffridge operator. Any
// nonnegative pair is accepted for bare evaluation; the Loewner chain
// construction further needs alpha_hat <= 1, beta_hat <= 1/2 and
// alpha_hat + beta_hat <= 1.
class ExtensionParams
{
public:
    ExtensionParams() = default;
    ExtensionParams(double alpha_hat, double beta_hat);

    [[nodiscard]] double alpha_hat() const noexcept
    {
        return alpha_hat_;
    }
    [[nodiscard]] double beta_hat() const noexcept
    {
        return beta_hat_;
    }
    [[nodiscard]] bool in_chain_regime() const noexcept;
    // Throws DomainError outside the chain regime.
    void require_chain_regime() const;

private:
    double alpha_hat_ = 0;
    double beta_hat_ = 0;
};

struct OperatorMetadata {
    std::string op;   // "modified-rs", "roper-suffridge", "pfaltzgraff-suffridge"
    std::string base; // name of the base map
    std::size_t n = 0;
    double alpha_hat = 0;
    double beta_hat = 0;
    bool chain_regime = false;
    // Psi with alpha_hat = 1/(n+1) is the classical Pfaltzgraff-Suffridge operator.
    bool classical_pfaltzgraff_suffridge = false;
};

// Closure-valued extension of a base map. Fractional powers are evaluated on
// the branch anchored to 1 at the origin; continuity is checked along the
// radial segment from 0 in kBranchPathSteps steps.
class ExtendedMap final : public Mapping
{
public:
    static constexpr int kBranchPathSteps = 64;
    static constexpr double kZeroOfBaseThreshold = 1e-14;

    using EvalFn = std::function<CVec(const CVec &)>;
    using JacobianFn = std::function<CMatrix(const CVec &)>;

    ExtendedMap(std::size_t n, EvalFn eval, JacobianFn jacobian, OperatorMetadata meta);

    [[nodiscard]] std::size_t dim() const override
    {
        return n_;
    }
    [[nodiscard]] CVec eval(const CVec &z) const override;
    [[nodiscard]] CMatrix jacobian(const CVec &z) const override;
    [[nodiscard]] std::string name() const override;
    [[nodiscard]] const OperatorMetadata &metadata() const noexcept
    {
        return meta_;
    }

private:
    std::size_t n_;
    EvalFn eval_;
    JacobianFn jacobian_;
    OperatorMetadata meta_;
};

// (f(z1), z~ (f(z1)/z1)^alpha_hat (f'(z1))^beta_hat), z~ = (z2, ..., zn).
ExtendedMap modified_rs(const Func1D &f, const ExtensionParams &p, std::size_t n);

// (f(z1), z~ sqrt(f'(z1))), evaluated independently of modified_rs.
ExtendedMap roper_suffridge(const Func1D &f, std::size_t n);

// (f(z'), z_{n+1} (det J_f(z'))^alpha_hat) on C^{n+1}.
ExtendedMap pfaltzgraff_suffridge(const HoloMap &f, double alpha_hat);

// Continued power w(z1)^p along s -> w(s z1), s in [0, 1], with w(0) = 1.
// Exposed for the Loewner transition, which anchors its factors the same way.
Complex radial_power(const std::function<Complex(Complex)> &w, Complex z1, double p);

} // namespace ballmap

#endif
