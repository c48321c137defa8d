#ifndef BALLMAP_CLASSES_HPP
#define BALLMAP_CLASSES_HPP

#include <cstdint>
#include <string>

#include <ballmap/func1d.hpp>
#include <ballmap/holomap.hpp>
#include <ballmap/kernel.hpp>
#include <ballmap/linalg.hpp>
#include <ballmap/mapping.hpp>

namespace ballmap
{

// (alpha, beta) with alpha in [0, 1) and beta in (-pi/2, pi/2).
class ClassParams
{
public:
    ClassParams() = default;
    ClassParams(double alpha, double beta);

    [[nodiscard]] double alpha() const noexcept
    {
        return alpha_;
    }
    [[nodiscard]] double beta() const noexcept
    {
        return beta_;
    }
    [[nodiscard]] double tan_beta() const noexcept;

private:
    double alpha_ = 0;
    double beta_ = 0;
};

enum class Mode { m, m_g, m_tilde, s_hat, s_g_star, spirallike, almost_starlike };

Mode parse_mode(const std::string &s);
std::string to_string(Mode m);

// Radii (geometric in [rmin, rmax]) times random unit directions.
struct SamplePlan {
    int radii = 24;
    int dirs = 200;
    double rmin = 0.05;
    double rmax = 0.95;
    std::uint64_t seed = 0x5eed;
};

struct Verdict {
    bool member = true;
    double worst_margin = 0;
    CVec witness;
    long samples_used = 0;
};

// <h(z), z / ||z||^2>.
Complex q_value(const Mapping &h, const CVec &z);
Complex q_value(const CVec &hz, const CVec &z);

// (-alpha + i tan beta)/(1 - alpha) + (1 - i tan beta)/(1 - alpha) * q.
Complex tilde_transform(Complex q, const ClassParams &p);

// Inverse of tilde_transform: the q with tilde_transform(q, p) = w.
Complex tilde_inverse(Complex w, const ClassParams &p);

inline constexpr double kMembershipTolerance = 1e-9;

// Sampled necessary-condition membership test. For the M* modes h is the
// subject itself, for the S* modes h = [J_f]^{-1} f. Mode m uses the margin
// Re<h(z), z>/||z||^2; every other mode uses the kernel preimage margin of
// the tilde-transformed quotient.
Verdict membership_verdict(const Mapping &subject, Mode mode, const Kernel &k, const ClassParams &p,
                           const SamplePlan &plan, double tolerance = kMembershipTolerance);

// h^{[c]}(z) = (rho z1 + q z2^2, sigma z2).
struct ShearedMap {
    Complex rho;
    Complex sigma;
    Complex q;

    [[nodiscard]] HoloMap to_holomap() const;
};

// Reads (rho, sigma, q^1_{0,2}) off a two-dimensional polynomial map.
ShearedMap shearing(const HoloMap &h, double tol = 1e-12);

// Truncated series of f(z) = z exp int_0^z (1/g(c u) - 1) du/u, so that
// f/(z f') = g(c z): a g-starlike function by construction.
Func1D synth_gstarlike_1d(const Kernel &k, Complex c, int degree);

// Generalization: f/(z f') = tilde_inverse(g(c z), p), so the quotient
// lies in the class with parameters p by construction.
Func1D synth_member_1d(const Kernel &k, const ClassParams &p, Complex c, int degree);

} // namespace ballmap

#endif
