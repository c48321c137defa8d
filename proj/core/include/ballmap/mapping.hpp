#ifndef BALLMAP_MAPPING_HPP
#define BALLMAP_MAPPING_HPP

#include <cstddef>
#include <string>

#include <ballmap/linalg.hpp>

namespace ballmap
{

// A holomorphic mapping from (a subset of) C^n into C^n with an exact
// Jacobian. Implementations are immutable and safe to share across threads.
class Mapping
{
public:
    virtual ~Mapping() = default;

    [[nodiscard]] virtual std::size_t dim() const = 0;
    [[nodiscard]] virtual CVec eval(const CVec &z) const = 0;
    [[nodiscard]] virtual CMatrix jacobian(const CVec &z) const = 0;
    [[nodiscard]] virtual std::string name() const
    {
        return "map";
    }
};

// Solves J_f(z) x = w. Propagates SingularJacobian.
LinearSolution solve_jacobian(const Mapping &f, const CVec &z, const CVec &w);

// [J_f(z)]^{-1} f(z), the vector field attached to f.
CVec inverse_jacobian_field(const Mapping &f, const CVec &z);

} // namespace ballmap

#endif
