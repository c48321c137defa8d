#ifndef BALLMAP_SERIES_HPP
#define BALLMAP_SERIES_HPP

#include <cstddef>
#include <vector>

#include <ballmap/linalg.hpp>

// Truncated formal power series in one complex variable. A series of
// degree D is stored as its D + 1 coefficients a_0, ..., a_D.
namespace ballmap::series
{

using Series = std::vector<Complex>;

// Truncates or zero-pads to the given degree.
Series truncate(Series a, std::size_t degree);

Series multiply(const Series &a, const Series &b, std::size_t degree);

// 1 / a, requires a_0 != 0.
Series reciprocal(const Series &a, std::size_t degree);

// exp(a); the constant term contributes the factor exp(a_0).
Series exp(const Series &a, std::size_t degree);

// Antiderivative vanishing at 0.
Series integrate(const Series &a, std::size_t degree);

// a(c u) as a series in u.
Series rescale(const Series &a, Complex c);

// Horner evaluation.
Complex evaluate(const Series &a, Complex z);

} // namespace ballmap::series

#endif
