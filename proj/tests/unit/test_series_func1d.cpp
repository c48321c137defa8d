#include <doctest.h>

#include <cmath>

#include <ballmap/error.hpp>
#include <ballmap/func1d.hpp>
#include <ballmap/json_io.hpp>
#include <ballmap/series.hpp>

#include "test_support.hpp"

using namespace ballmap;
using ballmap::test::cdist;

TEST_CASE("series arithmetic against closed forms")
{
    // 1/(1 - z) = sum z^k
    const series::Series one_minus_z{1.0, -1.0};
    const auto geo = series::reciprocal(one_minus_z, 10);
    REQUIRE(geo.size() == 11);
    for (const auto &c : geo) {
        CHECK(cdist(c, 1.0) < 1e-15);
    }

    // exp(z) coefficients 1/k!
    const auto e = series::exp(series::Series{0.0, 1.0}, 12);
    double fact = 1;
    for (std::size_t k = 0; k <= 12; ++k) {
        if (k > 0) {
            fact *= static_cast<double>(k);
        }
        CHECK(cdist(e[k], 1.0 / fact) < 1e-15);
    }

    // (1 + z)^2
    const auto sq = series::multiply({1.0, 1.0}, {1.0, 1.0}, 5);
    CHECK(cdist(sq[0], 1.0) == 0.0);
    CHECK(cdist(sq[1], 2.0) == 0.0);
    CHECK(cdist(sq[2], 1.0) == 0.0);

    const auto integ = series::integrate({1.0, 2.0, 3.0}, 5);
    CHECK(cdist(integ[0], 0.0) == 0.0);
    CHECK(cdist(integ[1], 1.0) == 0.0);
    CHECK(cdist(integ[3], 1.0) == 0.0);

    CHECK(cdist(series::evaluate({1.0, 2.0, 3.0}, 0.5), 1.0 + 1.0 + 0.75) < 1e-15);
    const auto rs = series::rescale({1.0, 1.0, 1.0}, Complex(0, 2));
    CHECK(cdist(rs[2], -4.0) < 1e-15);
}

TEST_CASE("builtin functions and their jets")
{
    const Func1D k = Func1D::koebe();
    const Complex z(0.3, -0.2);
    CHECK(cdist(k.value(z), z / ((1.0 - z) * (1.0 - z))) < 1e-15);
    CHECK(cdist(k.derivative(z), (1.0 + z) / std::pow(1.0 - z, 3)) < 1e-14);
    CHECK(k.normalized());

    // mobius-starlike with A = -1, B = 1, c = 1 is the Koebe function.
    const Func1D m = Func1D::mobius_starlike(-1, 1);
    CHECK(cdist(m.value(z), k.value(z)) < 1e-14);
    CHECK(cdist(m.derivative(z), k.derivative(z)) < 1e-13);

    // A = 0: z exp(B c z)
    const Func1D e = Func1D::mobius_starlike(0, 0.5, Complex(0, 1));
    CHECK(cdist(e.value(z), z * std::exp(Complex(0, 0.5) * z)) < 1e-15);

    CHECK_THROWS_AS(Func1D::mobius_starlike(0.5, 0.2), DomainError);
    CHECK_THROWS_AS(Func1D::mobius_starlike(-1, 1, 2.0), DomainError);
}

TEST_CASE("series functions: derivatives by finite differences")
{
    const Func1D f = Func1D::from_series({0.0, 1.0, Complex(0.2, 0.1), -0.05, Complex(0, 0.02)});
    const Complex z(0.4, 0.3);
    const double h = 1e-5;
    const Complex fd = (f.value(z + h) - f.value(z - h)) / (2 * h);
    CHECK(cdist(f.derivative(z), fd) < 1e-9);
    const Jet1D j = f.jet(z);
    const Complex fd2 = (f.derivative(z + h) - f.derivative(z - h)) / (2 * h);
    CHECK(cdist(j.d2f, fd2) < 1e-9);
    CHECK(cdist(j.ratio, j.f / z) < 1e-14);
}

TEST_CASE("Func1D JSON")
{
    const Func1D k = func1d_from_json(R"({"builtin": "koebe"})");
    CHECK(k.kind() == Func1D::Kind::koebe);
    const Func1D m = func1d_from_json(R"({"builtin": "mobius-starlike", "params": {"A": -1, "B": 0, "c": [0.5, 0]}})");
    const Complex z(0.2, 0.1);
    // z (1 - c z)^{-1}
    CHECK(cdist(m.value(z), z / (1.0 - 0.5 * z)) < 1e-15);
    const Func1D s = func1d_from_json(R"({"series": [[0, 0], [1, 0], [0.5, -0.5]]})");
    CHECK(cdist(s.value(z), z + Complex(0.5, -0.5) * z * z) < 1e-15);
    CHECK(cdist(func1d_from_json(func1d_to_json(m)).value(z), m.value(z)) == 0.0);

    CHECK_THROWS_AS(func1d_from_json(R"({"builtin": "koebe", "bogus": 1})"), ParseError);
    CHECK_THROWS_AS(func1d_from_json(R"({"builtin": "nope"})"), ParseError);
}
