#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include <ballmap/bounds.hpp>
#include <ballmap/error.hpp>
#include <ballmap/extension.hpp>
#include <ballmap/func1d.hpp>
#include <ballmap/holomap.hpp>
#include <ballmap/sampling.hpp>
#include <ballmap/verify.hpp>

#include "test_support.hpp"

using namespace ballmap;
using ballmap::test::cdist;
using ballmap::test::vdist;

namespace
{

HoloMap shear(double c)
{
    return HoloMap(2, {{0, {1, 0}, 1.0}, {0, {0, 2}, c}, {1, {0, 1}, 1.0}});
}

// Max of ||(z1 + c z2^2, z2)|| on ||z|| = r. The norm depends only on |z1| and
// the phase of z1 relative to z2^2, so a 2-D grid covers the sphere.
double brute_shear_max(double c, double r)
{
    double best = 0;
    constexpr int nt = 400;
    constexpr int np = 250;
    for (int i = 0; i <= nt; ++i) {
        const double th = 0.5 * std::numbers::pi * i / nt;
        for (int j = 0; j < np; ++j) {
            const double ph = 2 * std::numbers::pi * j / np;
            const Complex z1 = std::polar(r * std::cos(th), ph);
            const double z2 = r * std::sin(th);
            best = std::max(best, std::hypot(std::abs(z1 + c * z2 * z2), z2));
        }
    }
    return best;
}

} // namespace

TEST_CASE("sphere sampling")
{
    const auto a = sphere_sample(3, 0.7, 100, 42);
    const auto b = sphere_sample(3, 0.7, 100, 42);
    CHECK(a == b);
    for (const auto &z : a) {
        CHECK(std::abs(z.norm() - 0.7) < 1e-15);
    }
    CHECK(sphere_sample(3, 0.7, 100, 43) != a);

    const std::size_t count = 100000;
    const auto pts = sphere_sample(2, 0.9, count, 1);
    CVec mean(2);
    for (const auto &z : pts) {
        mean += z;
    }
    mean *= Complex(1.0 / count);
    for (const auto &m : mean) {
        CHECK(std::abs(m.real()) < 5 / std::sqrt(static_cast<double>(count)));
        CHECK(std::abs(m.imag()) < 5 / std::sqrt(static_cast<double>(count)));
    }
}

TEST_CASE("tangent frames")
{
    const auto f = tangent_frame(CVec{0.6, 0.0});
    REQUIRE(f.size() == 1);
    CHECK(vdist(f[0], CVec{0.0, 1.0}) < 1e-15);

    Rng rng(61);
    for (int i = 0; i < 10; ++i) {
        const CVec z = random_sphere_point(rng, 3, rng.uniform(0.1, 1));
        const auto frame = tangent_frame(z);
        REQUIRE(frame.size() == 2);
        for (std::size_t a = 0; a < 2; ++a) {
            CHECK(std::abs(inner(frame[a], z)) < 1e-14);
            for (std::size_t b = 0; b < 2; ++b) {
                CHECK(cdist(inner(frame[a], frame[b]), a == b ? 1.0 : 0.0) < 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(tangent_frame(CVec(2)), DomainError);
}

TEST_CASE("sphere extrema")
{
    const HoloMap id = HoloMap::identity(2);
    CHECK(sphere_extremum(id, 0.6, Extremum::max, 50, 1).value == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(sphere_extremum(id, 0.6, Extremum::min, 50, 1).value == doctest::Approx(0.6).epsilon(1e-14));

    const double c = 3 * std::sqrt(3.0) / 2;
    const double r = 0.8;
    const SphereExtremum e = sphere_extremum(shear(c), r, Extremum::max, 400, 3);
    CHECK(std::abs(e.z.norm() - r) < 1e-12);
    CHECK(std::abs(shear(c).eval(e.z).norm() - e.value) < 1e-14);
    CHECK(std::abs(e.value - brute_shear_max(c, r)) < 1e-4);
    const SphereExtremum again = sphere_extremum(shear(c), r, Extremum::max, 400, 3);
    CHECK(again.z == e.z);
}

TEST_CASE("boundary lambda")
{
    const CVec z0{std::polar(0.6, 0.3), std::polar(0.8, -1.1)};
    const BoundaryData id = boundary_lambda(HoloMap::identity(2), z0);
    CHECK(std::abs(id.lambda - 1) < 1e-15);
    CHECK(std::abs(id.tangent_margin) < 1e-15);
    CHECK(std::abs(id.det_margin) < 1e-15);

    // A unitary map: rotation mixed with a phase.
    const double th = 0.7;
    const Complex ph = std::polar(1.0, 0.4);
    const HoloMap u(2, {{0, {1, 0}, std::cos(th)}, {0, {0, 1}, -std::sin(th)}, {1, {1, 0}, ph * std::sin(th)},
                        {1, {0, 1}, ph * std::cos(th)}});
    const BoundaryData bu = boundary_lambda(u, z0);
    CHECK(std::abs(bu.lambda - 1) < 1e-14);
    CHECK(bu.lambda_imag_residual < 1e-14);

    CHECK_THROWS_AS(boundary_lambda(HoloMap::identity(2), CVec{0.5, 0.0}), NotBoundaryPoint);
    CHECK_THROWS_AS(boundary_lambda(HoloMap::scaled_identity(2, 0.5), CVec{1.0, 0.0}), NotBoundaryPoint);

    // Rescaled Koebe extension at its maximum: lambda <= 1 / F1.
    const double r = 0.5;
    auto f = std::make_shared<ExtendedMap>(roper_suffridge(Func1D::koebe(), 2));
    const SphereExtremum m = sphere_extremum(*f, r, Extremum::max, 400, 5);
    const RescaledMap g(f, r, m.value);
    const BoundaryData bk = boundary_lambda(g, m.z * Complex(1 / r));
    const DistortionFactors fac = distortion_factors(-1, 1, {}, r);
    CHECK(1 / fac.f1 - bk.lambda >= -1e-7);
    CHECK(bk.lambda > 0);
}

TEST_CASE("certified families")
{
    const auto g = gstarlike_1d_family(reference_kernels(), 3, 7);
    CHECK(g.size() == 12);
    const auto g2 = gstarlike_1d_family(reference_kernels(), 3, 7);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(g[i].provenance == g2[i].provenance);
    }
    const auto rs = rs_extension_family({2, 3}, 7);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].map->dim() == 2);
    CHECK(rs[1].map->dim() == 3);
    const auto dist = distortion_family(4, 7);
    CHECK(dist.size() == 4);
    for (const auto &m : dist) {
        CHECK(m.map->dim() == 2);
    }
    const auto l = lemma23_family(6, 7);
    CHECK(l.size() == 6);
}

TEST_CASE("suite configuration")
{
    SuiteConfig empty;
    const SuiteReport r = run_suite(empty);
    CHECK(r.records.empty());
    CHECK(r.pass());

    const SuiteConfig d = default_suite_config();
    CHECK(d.families == suite_families());
    CHECK(suite_check_names().size() == 20);

    const SuiteConfig p = parse_suite_config(R"({"seed": 5, "families": ["kernels"], "checks": ["classical_growth"]})");
    CHECK(p.seed == 5);
    CHECK_THROWS_AS(parse_suite_config(R"({"seed": 5, "colour": 1})"), ParseError);
    CHECK_THROWS_AS(parse_suite_config(R"({"families": ["nope"]})"), ParseError);
    CHECK_THROWS_AS(parse_suite_config(R"({"checks": ["nope"]})"), ParseError);
    CHECK_THROWS_AS(parse_suite_config(R"({"tolerances": {"growth": 1e-9, "bogus": 1}})"), ParseError);

    const SuiteReport k = run_suite(p);
    REQUIRE(k.records.size() == 1);
    CHECK(k.records[0].name == "classical_growth");
    CHECK(k.pass());
    const std::string csv = suite_report_csv(k);
    CHECK(csv.rfind("name,cites,samples,worst_margin,tolerance,pass\n", 0) == 0);
    CHECK(suite_report_json(k).find("\"classical_growth\"") != std::string::npos);
}

TEST_CASE("a halved upper growth bound is caught")
{
    SuiteConfig c;
    c.families = {"gstarlike-1d"};
    c.checks = {"growth_sandwich"};
    c.members_per_kernel = 2;
    c.sizes.radii = 5;
    c.sizes.dirs = 5;
    const SuiteReport ok = run_suite(c);
    REQUIRE(ok.records.size() == 1);
    CHECK(ok.records[0].pass);

    c.bound_scale.phi2 = 0.5;
    const SuiteReport bad = run_suite(c);
    REQUIRE(bad.records.size() == 1);
    CHECK_FALSE(bad.records[0].pass);
    CHECK(bad.records[0].worst_margin < 0);
}
