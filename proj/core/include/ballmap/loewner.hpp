#ifndef BALLMAP_LOEWNER_HPP
#define BALLMAP_LOEWNER_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <ballmap/classes.hpp>
#include <ballmap/extension.hpp>
#include <ballmap/func1d.hpp>
#include <ballmap/kernel.hpp>
#include <ballmap/linalg.hpp>
#include <ballmap/mapping.hpp>

namespace ballmap
{

// The starlike chain f(z, t) = e^t f(z). Its vector field h = f / f' does
// not depend on t.
class Chain1D
{
public:
    explicit Chain1D(Func1D base) : base_(std::move(base)) {}

    [[nodiscard]] const Func1D &base() const noexcept
    {
        return base_;
    }
    [[nodiscard]] Complex value(Complex z, double t) const;
    [[nodiscard]] Complex derivative(Complex z, double t) const;
    [[nodiscard]] Complex vector_field(Complex z) const;

private:
    Func1D base_;
};

// Checks f / (z f') against g(D) on the sample plan before building the
// chain; throws NotGStarlike on a negative margin.
Chain1D starlike_chain(const Func1D &f, const Kernel &k, const SamplePlan &plan = {24, 64, 0.05, 0.9, 0x5eed});

struct Transition1D {
    Complex v;
    Complex dv; // d v / d z1
};

inline constexpr double kNewtonTolerance = 1e-13;
inline constexpr int kNewtonMaxIterations = 50;
inline constexpr int kHomotopySubsteps = 16;

// v = f^{-1}(e^{s-t} f(z1)) by Newton seeded at e^{s-t} z1, falling back to
// a homotopy in s - t. Throws NewtonDivergence; the Schwarz property
// |v| <= |z1| is checked on the result.
Transition1D transition_1d(const Chain1D &c, Complex z1, double s, double t);

// F(z, t) = (f(z1, t), z~ e^{(1-ahat-bhat) t} (f(z1, t)/z1)^ahat (f'(z1, t))^bhat).
class ChainND
{
public:
    ChainND(Chain1D base, const ExtensionParams &p, std::size_t n);

    [[nodiscard]] const Chain1D &base() const noexcept
    {
        return base_;
    }
    [[nodiscard]] const ExtensionParams &params() const noexcept
    {
        return params_;
    }
    [[nodiscard]] std::size_t dim() const noexcept
    {
        return n_;
    }
    [[nodiscard]] CVec eval(const CVec &z, double t) const;
    // F(., t) as a mapping with analytic Jacobian.
    [[nodiscard]] ExtendedMap at(double t) const;

private:
    Chain1D base_;
    ExtensionParams params_;
    std::size_t n_;
};

ChainND rs_chain(const Chain1D &c, const ExtensionParams &p, std::size_t n);

// V(z, s, t) = (v, z~ e^{(s-t)(1-ahat-bhat)} (v/z1)^ahat (v')^bhat), the
// powers continued along the radial segment to z1.
CVec transition_nd(const ChainND &c, const CVec &z, double s, double t);

inline constexpr double kDefaultTimeStep = 1e-4;

// |df/dt - f'(z, t) h(z)| with df/dt by central differences. Needs t >= dt.
double pde_residual(const Chain1D &c, Complex z, double t, double dt = kDefaultTimeStep);

struct ChainFieldCheck {
    double residual = 0; // max(0, -margin)
    double margin = 0;   // kernel margin of the recovered field
    CVec field;          // h(z, t) = J_F^{-1} dF/dt
};

// Recovers h(z, t) from central differences and tests its tilde-normalized
// quotient against g(D).
ChainFieldCheck pde_residual(const ChainND &c, const Kernel &k, const ClassParams &p, const CVec &z, double t,
                             double dt = kDefaultTimeStep);

// || e^t Phi(m)(V(z, 0, t)) - Phi(e^t (m o v_t))(z) ||.
double commutation_identity_check(const Func1D &m, const Chain1D &c, const ExtensionParams &p, std::size_t n,
                                  double t, const CVec &z);

struct FlowTrajectory {
    std::vector<double> times;
    std::vector<CVec> states;
    std::vector<double> z_norms;
    std::vector<double> f_norms;
    // "decreasing", "increasing" or "not monotone" for ||z(t)||.
    std::string norm_direction;
};

// Classical RK4 for dz/dt = -e^{-i beta} [J_F(z)]^{-1} F(z) with a fixed
// number of steps over [0, t_end].
FlowTrajectory spirallike_flow(const Mapping &f, const CVec &z, double beta, double t_end, int steps);

} // namespace ballmap

#endif
