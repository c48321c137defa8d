#include <ballmap/func1d.hpp>

#include <cmath>
#include <string>

#include <ballmap/error.hpp>

namespace ballmap
{

Func1D Func1D::identity()
{
    return Func1D(Kind::identity, "identity", [](Complex z) {
        return Jet1D{z, 1.0, 0.0, 1.0, 0.0};
    });
}

Func1D Func1D::koebe()
{
    return Func1D(Kind::koebe, "koebe", [](Complex z) {
        const Complex w = 1.0 - z;
        const Complex w2 = w * w;
        const Complex w3 = w2 * w;
        return Jet1D{z / w2, (1.0 + z) / w3, (4.0 + 2.0 * z) / (w3 * w), 1.0 / w2, 2.0 / w3};
    });
}

Func1D Func1D::mobius_starlike(double a, double b, Complex c)
{
    if (!(a >= -1 && a < b && b <= 1)) {
        throw DomainError("mobius-starlike: need -1 <= A < B <= 1");
    }
    if (std::abs(c) > 1) {
        throw DomainError("mobius-starlike: need |c| <= 1");
    }
    JetFn jet;
    if (a == 0) {
        const Complex k = b * c;
        jet = [k](Complex z) {
            const Complex r = std::exp(k * z);
            const Complex dr = k * r;
            const Complex d2r = k * dr;
            return Jet1D{z * r, r + z * dr, 2.0 * dr + z * d2r, r, dr};
        };
    } else {
        const double e = (b - a) / a;
        const Complex k = a * c;
        jet = [e, k](Complex z) {
            const Complex u = 1.0 + k * z;
            // Re u > 0 on the disk since |k z| < 1, so the principal power is
            // the branch anchored at u = 1.
            const Complex r = std::pow(u, e);
            const Complex dr = e * k * r / u;
            const Complex d2r = (e - 1.0) * k * dr / u;
            return Jet1D{z * r, r + z * dr, 2.0 * dr + z * d2r, r, dr};
        };
    }
    Func1D f(Kind::mobius_starlike, "mobius-starlike", std::move(jet));
    f.params_ = {a, b, c.real(), c.imag()};
    return f;
}

Func1D Func1D::from_series(series::Series coeffs)
{
    if (coeffs.empty()) {
        coeffs.push_back(0.0);
    }
    auto shared = std::make_shared<const series::Series>(coeffs);
    Func1D f(Kind::series, "series", [shared](Complex z) {
        const auto &a = *shared;
        // Horner for f, f', f''; the quotient series is a shifted by one.
        Complex f0{0, 0}, f1{0, 0}, f2{0, 0};
        for (std::size_t k = a.size(); k-- > 0;) {
            f2 = f2 * z + 2.0 * f1;
            f1 = f1 * z + f0;
            f0 = f0 * z + a[k];
        }
        Complex r0{0, 0}, r1{0, 0};
        for (std::size_t k = a.size(); k-- > 1;) {
            r1 = r1 * z + r0;
            r0 = r0 * z + a[k];
        }
        if (a[0] != Complex{0, 0}) {
            // f(z)/z is singular at 0 when f(0) != 0.
            r0 = f0 / z;
            r1 = (f1 * z - f0) / (z * z);
        }
        return Jet1D{f0, f1, f2, r0, r1};
    });
    f.coeffs_ = std::move(coeffs);
    return f;
}

Func1D Func1D::from_callable(JetFn jet, std::string name)
{
    return Func1D(Kind::callable, std::move(name), std::move(jet));
}

bool Func1D::normalized(double tol) const
{
    const Jet1D j = jet(0.0);
    return std::abs(j.f) <= tol && std::abs(j.df - 1.0) <= tol;
}

CVec Func1DMap::eval(const CVec &z) const
{
    if (z.size() != 1) {
        throw DimensionMismatch("Func1DMap: expects a point of C^1");
    }
    return CVec{f_.value(z[0])};
}

CMatrix Func1DMap::jacobian(const CVec &z) const
{
    if (z.size() != 1) {
        throw DimensionMismatch("Func1DMap: expects a point of C^1");
    }
    CMatrix j(1);
    j(0, 0) = f_.derivative(z[0]);
    return j;
}

} // namespace ballmap
