#include <ballmap/series.hpp>

#include <cmath>

#include <ballmap/error.hpp>

namespace ballmap::series
{

Series truncate(Series a, std::size_t degree)
{
    a.resize(degree + 1);
    return a;
}

Series multiply(const Series &a, const Series &b, std::size_t degree)
{
    Series c(degree + 1);
    for (std::size_t i = 0; i < a.size() && i <= degree; ++i) {
        if (a[i] == Complex{0, 0}) {
            continue;
        }
        for (std::size_t j = 0; j < b.size() && i + j <= degree; ++j) {
            c[i + j] += a[i] * b[j];
        }
    }
    return c;
}

Series reciprocal(const Series &a, std::size_t degree)
{
    if (a.empty() || a[0] == Complex{0, 0}) {
        throw DomainError("series reciprocal: zero constant term");
    }
    Series r(degree + 1);
    r[0] = 1.0 / a[0];
    for (std::size_t k = 1; k <= degree; ++k) {
        Complex s{0, 0};
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) {
            s += a[j] * r[k - j];
        }
        r[k] = -s * r[0];
    }
    return r;
}

Series exp(const Series &a, std::size_t degree)
{
    // E' = a' E  =>  k e_k = sum_{j=1}^{k} j a_j e_{k-j}.
    Series e(degree + 1);
    e[0] = a.empty() ? Complex{1, 0} : std::exp(a[0]);
    for (std::size_t k = 1; k <= degree; ++k) {
        Complex s{0, 0};
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) {
            s += static_cast<double>(j) * a[j] * e[k - j];
        }
        e[k] = s / static_cast<double>(k);
    }
    return e;
}

Series integrate(const Series &a, std::size_t degree)
{
    Series r(degree + 1);
    for (std::size_t k = 1; k <= degree && k - 1 < a.size(); ++k) {
        r[k] = a[k - 1] / static_cast<double>(k);
    }
    return r;
}

Series rescale(const Series &a, Complex c)
{
    Series r(a.size());
    Complex p{1, 0};
    for (std::size_t k = 0; k < a.size(); ++k) {
        r[k] = a[k] * p;
        p *= c;
    }
    return r;
}

Complex evaluate(const Series &a, Complex z)
{
    Complex s{0, 0};
    for (std::size_t k = a.size(); k-- > 0;) {
        s = s * z + a[k];
    }
    return s;
}

} // namespace ballmap::series
