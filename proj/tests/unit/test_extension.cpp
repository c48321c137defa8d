#include <doctest.h>

#include <cmath>
#include <numbers>

#include <ballmap/classes.hpp>
#include <ballmap/error.hpp>
#include <ballmap/extension.hpp>
#include <ballmap/func1d.hpp>
#include <ballmap/holomap.hpp>
#include <ballmap/json_io.hpp>
#include <ballmap/sampling.hpp>

#include "test_support.hpp"

using namespace ballmap;
using ballmap::test::cdist;
using ballmap::test::vdist;

namespace
{

// Koebe series truncated at `degree` as a polynomial map of C^1.
HoloMap koebe_polynomial(int degree)
{
    std::vector<Term> terms;
    for (int k = 1; k <= degree; ++k) {
        terms.push_back({0, {k}, static_cast<double>(k)});
    }
    return HoloMap(1, terms, degree);
}

} // namespace

TEST_CASE("Roper-Suffridge values")
{
    const CVec z{Complex(0.3, -0.1), Complex(0.2, 0.4), Complex(-0.1, 0.05)};
    CHECK(vdist(roper_suffridge(Func1D::identity(), 3).eval(z), z) < 1e-16);

    const CVec w = roper_suffridge(Func1D::koebe(), 2).eval(CVec{0.5, 0.3});
    CHECK(cdist(w[0], 2.0) < 1e-15);
    // f'(1/2) = 1.5 / 0.125 = 12
    CHECK(cdist(w[1], 0.3 * std::sqrt(12.0)) < 1e-14);
}

TEST_CASE("modified Roper-Suffridge values")
{
    const CVec z{Complex(0.3, -0.1), Complex(0.2, 0.4)};
    const Func1D k = Func1D::koebe();
    const CVec w0 = modified_rs(k, ExtensionParams(0, 0), 2).eval(z);
    CHECK(cdist(w0[0], k.value(z[0])) < 1e-16);
    CHECK(cdist(w0[1], z[1]) < 1e-16);

    const Complex t(0.1, 0.2);
    const CVec w1 = modified_rs(k, ExtensionParams(1, 0), 2).eval(CVec{0.5, t});
    CHECK(cdist(w1[0], 2.0) < 1e-15);
    CHECK(cdist(w1[1], 4.0 * t) < 1e-14);

    Rng rng(21);
    const ExtendedMap rs = roper_suffridge(k, 3);
    const ExtendedMap mrs = modified_rs(k, ExtensionParams(0, 0.5), 3);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const CVec p = random_sphere_point(rng, 3, rng.uniform(0.01, 0.6));
        worst = std::max(worst, vdist(rs.eval(p), mrs.eval(p)));
    }
    CHECK(worst <= 1e-14);
}

TEST_CASE("extensions are normalized with exact Jacobians")
{
    const Func1D f = Func1D::from_series({0.0, 1.0, Complex(0.3, 0.1), Complex(-0.1, 0.05)});
    Rng rng(22);
    for (const ExtensionParams &p : {ExtensionParams(0, 0.5), ExtensionParams(0.3, 0.2), ExtensionParams(1, 0)}) {
        const ExtendedMap m = modified_rs(f, p, 3);
        CHECK(m.eval(CVec(3)).norm() == 0.0);
        CHECK(test::mdist(test::fd_jacobian(m, CVec(3)), CMatrix::identity(3)) < 1e-8);
        for (int i = 0; i < 10; ++i) {
            const CVec z = random_sphere_point(rng, 3, 0.5);
            const CMatrix exact = m.jacobian(z);
            CHECK(test::mdist(exact, test::fd_jacobian(m, z)) <= 1e-7 * std::max(1.0, exact.max_abs()));
        }
    }
}

TEST_CASE("Pfaltzgraff-Suffridge extension")
{
    const ExtendedMap id = pfaltzgraff_suffridge(HoloMap::identity(2), 0.3);
    const CVec z{Complex(0.2, 0.1), Complex(-0.3, 0.2), Complex(0.1, -0.4)};
    CHECK(id.dim() == 3);
    CHECK(vdist(id.eval(z), z) < 1e-16);

    const ExtendedMap ps = pfaltzgraff_suffridge(koebe_polynomial(200), 0.5);
    const CVec w = ps.eval(CVec{0.5, 0.2});
    CHECK(cdist(w[0], 2.0) < 1e-12);
    CHECK(cdist(w[1], 0.2 * std::sqrt(12.0)) < 1e-12);
    CHECK(ps.metadata().classical_pfaltzgraff_suffridge);
    CHECK_FALSE(pfaltzgraff_suffridge(HoloMap::identity(2), 0.5).metadata().classical_pfaltzgraff_suffridge);
    CHECK(pfaltzgraff_suffridge(HoloMap::identity(2), 1.0 / 3).metadata().classical_pfaltzgraff_suffridge);

    const HoloMap f(2, {{0, {1, 0}, 1.0}, {0, {0, 2}, 0.3}, {1, {0, 1}, 1.0}, {1, {1, 1}, Complex(0.1, 0.2)}});
    const ExtendedMap g = pfaltzgraff_suffridge(f, 1.0 / 3);
    Rng rng(5);
    for (int i = 0; i < 10; ++i) {
        const CVec p = random_sphere_point(rng, 3, 0.5);
        const CMatrix exact = g.jacobian(p);
        CHECK(test::mdist(exact, test::fd_jacobian(g, p)) <= 1e-7 * std::max(1.0, exact.max_abs()));
    }
}

TEST_CASE("Roper-Suffridge keeps g-starlike members g-starlike")
{
    const Kernel k = Kernel::mobius(-1, 1);
    Rng rng(31);
    for (int i = 0; i < 4; ++i) {
        const Complex c = std::polar(rng.uniform(0.2, 0.7), rng.uniform(0, 2 * std::numbers::pi));
        const ExtendedMap m = roper_suffridge(synth_gstarlike_1d(k, c, 256), 2);
        const Verdict v = membership_verdict(m, Mode::s_g_star, k, {}, SamplePlan{8, 40, 0.05, 0.9, 7});
        CHECK(v.member);
    }
}

TEST_CASE("branch and zero monitoring")
{
    // arg f'(z1) for the Koebe function passes pi before reaching this point.
    const ExtendedMap rs = roper_suffridge(Func1D::koebe(), 2);
    CHECK_THROWS_AS(rs.eval(CVec{std::polar(0.99, 1.2), 0.0}), BranchCut);

    // f(z)/z = 1 - 2z vanishes at z = 1/2.
    const Func1D f = Func1D::from_series({0.0, 1.0, -2.0});
    CHECK_THROWS_AS(modified_rs(f, ExtensionParams(0.5, 0), 2).eval(CVec{0.5, 0.1}), ZeroOfBase);

    CHECK_THROWS_AS(ExtensionParams(-0.1, 0), DomainError);
    CHECK_FALSE(ExtensionParams(0.6, 0.5).in_chain_regime());
    CHECK_THROWS_AS(ExtensionParams(0, 0.7).require_chain_regime(), DomainError);
    CHECK(ExtensionParams(0.5, 0.5).in_chain_regime());
}

TEST_CASE("operator metadata")
{
    const ExtendedMap m = modified_rs(Func1D::koebe(), ExtensionParams(0.25, 0.5), 3);
    CHECK(m.metadata().op == "modified-rs");
    CHECK(m.metadata().n == 3);
    CHECK(m.metadata().chain_regime);
    const std::string js = metadata_to_json(m.metadata());
    CHECK(js.find("\"alpha_hat\": 0.25") != std::string::npos);
    CHECK(js.find("\"base\": \"koebe\"") != std::string::npos);
}
