#ifndef BALLMAP_LINALG_HPP
#define BALLMAP_LINALG_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ballmap
{

using Complex = std::complex<double>;

// A point of C^n, stored as a column vector (z_1, ..., z_n)'.
class CVec
{
public:
    CVec() = default;
    explicit CVec(std::size_t n) : data_(n) {}
    CVec(std::initializer_list<Complex> init) : data_(init) {}
    explicit CVec(std::vector<Complex> data) : data_(std::move(data)) {}

    [[nodiscard]] std::size_t size() const noexcept
    {
        return data_.size();
    }
    Complex &operator[](std::size_t i) noexcept
    {
        return data_[i];
    }
    const Complex &operator[](std::size_t i) const noexcept
    {
        return data_[i];
    }
    auto begin() noexcept
    {
        return data_.begin();
    }
    auto end() noexcept
    {
        return data_.end();
    }
    [[nodiscard]] auto begin() const noexcept
    {
        return data_.begin();
    }
    [[nodiscard]] auto end() const noexcept
    {
        return data_.end();
    }
    [[nodiscard]] std::span<const Complex> view() const noexcept
    {
        return data_;
    }
    [[nodiscard]] const std::vector<Complex> &values() const noexcept
    {
        return data_;
    }

    // Sum of |z_j|^2, accumulated with a scaled two-pass scheme.
    [[nodiscard]] double norm2() const noexcept;
    [[nodiscard]] double norm() const noexcept;

    CVec &operator+=(const CVec &other);
    CVec &operator-=(const CVec &other);
    CVec &operator*=(Complex s) noexcept;

    friend bool operator==(const CVec &, const CVec &) = default;

private:
    std::vector<Complex> data_;
};

CVec operator+(CVec a, const CVec &b);
CVec operator-(CVec a, const CVec &b);
CVec operator*(Complex s, CVec a);
CVec operator*(CVec a, Complex s);

// <z, w> = sum z_j conj(w_j); conjugate-linear in the second slot.
Complex inner(const CVec &z, const CVec &w);

// Dense row-major n x n complex matrix. J(i, j) = d f_i / d z_j.
class CMatrix
{
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t n) : n_(n), a_(n * n) {}

    static CMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept
    {
        return n_;
    }
    Complex &operator()(std::size_t i, std::size_t j) noexcept
    {
        return a_[i * n_ + j];
    }
    const Complex &operator()(std::size_t i, std::size_t j) const noexcept
    {
        return a_[i * n_ + j];
    }

    [[nodiscard]] CVec apply(const CVec &x) const;
    // Conjugate transpose.
    [[nodiscard]] CMatrix adjoint() const;
    [[nodiscard]] double norm1() const noexcept;
    [[nodiscard]] double max_abs() const noexcept;

private:
    std::size_t n_ = 0;
    std::vector<Complex> a_;
};

// Partial-pivoting LU factorization of a small dense complex matrix.
class LuFactorization
{
public:
    // Relative pivot threshold: |pivot| < kSingularThreshold * (max row
    // magnitude of the original row) raises SingularJacobian.
    static constexpr double kSingularThreshold = 1e-13;

    explicit LuFactorization(const CMatrix &m);

    [[nodiscard]] CVec solve(const CVec &b) const;
    [[nodiscard]] Complex determinant() const noexcept;
    [[nodiscard]] CMatrix inverse() const;
    // ||A||_1 * ||A^{-1}||_1, computed from the explicit inverse (n is small).
    [[nodiscard]] double condition_estimate() const;

private:
    CMatrix lu_;
    std::vector<std::size_t> perm_;
    double norm1_ = 0;
    int sign_ = 1;
};

struct LinearSolution {
    CVec x;
    double condition_estimate = 0;
};

LinearSolution lu_solve(const CMatrix &m, const CVec &b);

// Determinant via LU; singular matrices return 0 instead of throwing.
Complex determinant(const CMatrix &m);

// exp(p * Log w) with the principal logarithm. Throws BranchCut when w lies
// on the closed negative real axis (including 0).
Complex principal_power(Complex w, double p);

// Checks that a sampled path w_0, ..., w_k starting from w_0 (expected close
// to 1) can be continued without the accumulated argument reaching +-pi.
// On success the continued branch agrees with the principal one at w_k.
void check_branch_path(std::span<const Complex> path);

} // namespace ballmap

#endif
