#ifndef BALLMAP_HOLOMAP_HPP
#define BALLMAP_HOLOMAP_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <ballmap/linalg.hpp>
#include <ballmap/mapping.hpp>

namespace ballmap
{

// One monomial coefficient * z^idx in output component `out`.
struct Term {
    std::size_t out = 0;
    std::vector<int> idx;
    Complex coeff;
};

// Polynomial mapping C^n -> C^n stored as a multi-index coefficient table.
// Duplicate (out, idx) entries are merged at construction; exact zeros are
// dropped.
class HoloMap final : public Mapping
{
public:
    static constexpr int kDefaultDegreeCap = 8;

    HoloMap(std::size_t n, std::vector<Term> terms, int degree_cap = kDefaultDegreeCap);

    static HoloMap identity(std::size_t n);
    static HoloMap zero(std::size_t n);
    // s * identity.
    static HoloMap scaled_identity(std::size_t n, Complex s);

    [[nodiscard]] std::size_t dim() const override
    {
        return n_;
    }
    [[nodiscard]] CVec eval(const CVec &z) const override;
    [[nodiscard]] CMatrix jacobian(const CVec &z) const override;
    [[nodiscard]] std::string name() const override
    {
        return "holomap";
    }

    // Second derivatives: result[i](j, k) = d^2 f_i / dz_j dz_k.
    [[nodiscard]] std::vector<CMatrix> hessians(const CVec &z) const;

    [[nodiscard]] const std::vector<Term> &terms() const noexcept
    {
        return terms_;
    }
    [[nodiscard]] int degree_cap() const noexcept
    {
        return degree_cap_;
    }
    [[nodiscard]] int degree() const noexcept;
    // Coefficient of z^idx in component `out` (0 if absent).
    [[nodiscard]] Complex coefficient(std::size_t out, const std::vector<int> &idx) const;
    // f(0) = 0 and J_f(0) = I to within `tol`.
    [[nodiscard]] bool normalized(double tol = 1e-14) const;

private:
    void check_point(const CVec &z) const;
    // powers[j][k] = z_j^k for k <= degree().
    [[nodiscard]] std::vector<std::vector<Complex>> powers(const CVec &z) const;

    std::size_t n_;
    std::vector<Term> terms_;
    int degree_cap_;
};

} // namespace ballmap

#endif
