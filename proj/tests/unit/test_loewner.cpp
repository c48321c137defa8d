#include <doctest.h>

#include <cmath>
#include <numbers>

#include <ballmap/classes.hpp>
#include <ballmap/error.hpp>
#include <ballmap/extension.hpp>
#include <ballmap/func1d.hpp>
#include <ballmap/holomap.hpp>
#include <ballmap/loewner.hpp>
#include <ballmap/sampling.hpp>

#include "test_support.hpp"

using namespace ballmap;
using ballmap::test::cdist;
using ballmap::test::vdist;

namespace
{

const Kernel kStar = Kernel::mobius(-1, 1);

// The chain point z used for the d/dt check at time t, by finite differences.
class ChainAt final : public Mapping
{
public:
    ChainAt(const ChainND &c, double t) : c_(c), t_(t) {}
    [[nodiscard]] std::size_t dim() const override
    {
        return c_.dim();
    }
    [[nodiscard]] CVec eval(const CVec &z) const override
    {
        return c_.eval(z, t_);
    }
    [[nodiscard]] CMatrix jacobian(const CVec &) const override
    {
        return CMatrix(c_.dim());
    }

private:
    const ChainND &c_;
    double t_;
};

} // namespace

TEST_CASE("starlike chains")
{
    const Chain1D id = starlike_chain(Func1D::identity(), kStar);
    const Complex z(0.3, 0.2);
    CHECK(cdist(id.value(z, 0.7), std::exp(0.7) * z) < 1e-15);
    CHECK(cdist(id.vector_field(z), z) < 1e-16);

    const Chain1D koebe = starlike_chain(Func1D::koebe(), kStar);
    const Complex h = koebe.vector_field(z);
    CHECK(cdist(h, z * (1.0 - z) / (1.0 + z)) < 1e-15);
    CHECK(cdist(h / z, kStar.eval(z)) < 1e-15);

    CHECK_THROWS_AS(starlike_chain(Func1D::from_series({0.0, 1.0, 5.0}), kStar), NotGStarlike);
}

TEST_CASE("one-dimensional transitions")
{
    const Chain1D id = starlike_chain(Func1D::identity(), kStar);
    const Chain1D koebe = starlike_chain(Func1D::koebe(), kStar);
    const Complex z(0.4, -0.3);
    CHECK(cdist(transition_1d(koebe, z, 0.5, 0.5).v, z) < 1e-15);
    CHECK(cdist(transition_1d(id, z, 0.2, 1.1).v, std::exp(-0.9) * z) < 1e-15);

    const Transition1D t = transition_1d(koebe, 0.5, 0, std::log(2.0));
    CHECK(cdist(t.v, (3 - std::sqrt(5.0)) / 2) < 1e-13);
    // v' = e^{s - t} f'(z) / f'(v)
    const Func1D k = Func1D::koebe();
    CHECK(cdist(t.dv, 0.5 * k.derivative(0.5) / k.derivative(t.v)) < 1e-12);
}

TEST_CASE("n-dimensional chains")
{
    const Chain1D koebe = starlike_chain(Func1D::koebe(), kStar);
    const ExtensionParams p(0.3, 0.4);
    const ChainND chain = rs_chain(koebe, p, 3);
    const ExtendedMap direct = modified_rs(Func1D::koebe(), p, 3);
    Rng rng(41);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const CVec z = random_sphere_point(rng, 3, rng.uniform(0.01, 0.6));
        worst = std::max(worst, vdist(chain.eval(z, 0), direct.eval(z)));
    }
    CHECK(worst <= 1e-14);

    const ChainND dil = rs_chain(starlike_chain(Func1D::identity(), kStar), p, 2);
    const CVec z{Complex(0.2, 0.1), Complex(-0.3, 0.2)};
    CHECK(vdist(dil.eval(z, 0.8), std::exp(0.8) * z) < 1e-14);
    CHECK(vdist(transition_nd(dil, z, 0.3, 1.0), std::exp(-0.7) * z) < 1e-14);

    for (double t : {0.0, 0.5, 1.0}) {
        CMatrix scaled = CMatrix::identity(3);
        for (std::size_t i = 0; i < 3; ++i) {
            scaled(i, i) = std::exp(t);
        }
        const ChainAt at(chain, t);
        CHECK(test::mdist(test::fd_jacobian(at, CVec(3)), scaled) < 1e-8);
        CHECK(test::mdist(chain.at(t).jacobian(CVec(3)), scaled) < 1e-12);
    }

    CHECK_THROWS_AS(rs_chain(koebe, ExtensionParams(0, 0.7), 2), DomainError);
}

TEST_CASE("transition identities")
{
    const ChainND chain = rs_chain(starlike_chain(Func1D::koebe(), kStar), ExtensionParams(0.2, 0.5), 2);
    Rng rng(43);
    for (int i = 0; i < 50; ++i) {
        const CVec z = random_sphere_point(rng, 2, rng.uniform(0.05, 0.6));
        double s = rng.uniform(0, 1);
        double t = rng.uniform(0, 1);
        double u = rng.uniform(0, 1);
        if (s > t) {
            std::swap(s, t);
        }
        if (t > u) {
            std::swap(t, u);
        }
        if (s > t) {
            std::swap(s, t);
        }
        CHECK(vdist(transition_nd(chain, z, s, s), z) < 1e-15);
        const CVec v = transition_nd(chain, z, s, t);
        CHECK(vdist(chain.eval(z, s), chain.eval(v, t)) <= 1e-8);
        CHECK(v.norm() <= z.norm() + 1e-15);
        const CVec direct = transition_nd(chain, z, s, u);
        const CVec composed = transition_nd(chain, v, t, u);
        CHECK(vdist(direct, composed) <= 1e-9);
    }
}

TEST_CASE("Loewner equation residuals")
{
    const Chain1D id = starlike_chain(Func1D::identity(), kStar);
    CHECK(pde_residual(id, Complex(0.3, 0.4), 0.5) <= 1e-8);

    const Chain1D koebe = starlike_chain(Func1D::koebe(), kStar);
    Rng rng(47);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const Complex z = rng.disk(0.8);
        worst = std::max(worst, pde_residual(koebe, z, rng.uniform(0.01, 1.0)));
    }
    CHECK(worst <= 1e-6);
    CHECK_THROWS_AS(pde_residual(koebe, Complex(0.3), 0.0), DomainError);

    const ChainND chain = rs_chain(koebe, ExtensionParams(0, 0.5), 2);
    for (int i = 0; i < 20; ++i) {
        const CVec z = random_sphere_point(rng, 2, rng.uniform(0.1, 0.8));
        const ChainFieldCheck c = pde_residual(chain, kStar, {}, z, rng.uniform(0.01, 1.0));
        CHECK(c.margin >= -1e-6);
        CHECK(c.residual <= 1e-6);
    }
    // the recovered field of the dilation chain is h(z) = z
    const ChainND dil = rs_chain(id, ExtensionParams(0, 0.5), 2);
    const CVec z{0.3, Complex(0, 0.2)};
    CHECK(vdist(pde_residual(dil, kStar, {}, z, 0.5).field, z) < 1e-7);
}

TEST_CASE("commutation identity")
{
    const Chain1D koebe = starlike_chain(Func1D::koebe(), kStar);
    const ExtensionParams p(0.5, 0.5);
    Rng rng(53);
    const CVec z0 = random_sphere_point(rng, 2, 0.5);
    CHECK(commutation_identity_check(Func1D::koebe(), koebe, p, 2, 0.0, z0) == 0.0);
    for (int i = 0; i < 10; ++i) {
        const CVec z = random_sphere_point(rng, 2, rng.uniform(0.05, 0.6));
        CHECK(commutation_identity_check(Func1D::koebe(), koebe, p, 2, 0.3, z) <= 1e-9);
        CHECK(commutation_identity_check(Func1D::identity(), koebe, p, 2, 0.3, z) <= 1e-12);
    }
}

TEST_CASE("spirallike flows")
{
    const CVec z{Complex(0.3, 0.1), Complex(0.2, -0.2)};
    const HoloMap id = HoloMap::identity(2);

    const FlowTrajectory f0 = spirallike_flow(id, z, 0, 2, 2000);
    REQUIRE(f0.times.size() == 2001);
    for (std::size_t i = 0; i < f0.times.size(); i += 100) {
        CHECK(vdist(f0.states[i], std::exp(-f0.times[i]) * z) < 1e-12);
    }
    CHECK(f0.norm_direction == "decreasing");

    const double beta = std::numbers::pi / 4;
    const FlowTrajectory f1 = spirallike_flow(id, z, beta, 2, 2000);
    const Complex rate = std::exp(Complex(0, -beta));
    for (std::size_t i = 0; i < f1.times.size(); i += 100) {
        const double t = f1.times[i];
        CHECK(vdist(f1.states[i], std::exp(-rate * t) * z) < 1e-12);
        CHECK(std::abs(f1.z_norms[i] - std::exp(-t / std::sqrt(2.0)) * z.norm()) < 1e-12);
    }

    const ExtendedMap rs = roper_suffridge(Func1D::koebe(), 2);
    const FlowTrajectory fk = spirallike_flow(rs, z, 0.5, 2, 2000);
    const double f_start = fk.f_norms.front();
    for (std::size_t i = 0; i < fk.times.size(); ++i) {
        CHECK(std::abs(fk.f_norms[i] * std::exp(fk.times[i] * std::cos(0.5)) - f_start) <= 1e-6);
    }
    CHECK(fk.norm_direction == "decreasing");
}
