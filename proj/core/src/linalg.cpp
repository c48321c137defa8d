#include <ballmap/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <ballmap/error.hpp>

namespace ballmap
{

namespace
{

void require_same_size(std::size_t a, std::size_t b, const char *what)
{
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) + " vs "
                                + std::to_string(b));
    }
}

} // namespace

double CVec::norm2() const noexcept
{
    const double n = norm();
    return n * n;
}

double CVec::norm() const noexcept
{
    double scale = 0;
    for (const auto &c : data_) {
        scale = std::max({scale, std::abs(c.real()), std::abs(c.imag())});
    }
    if (scale == 0 || !std::isfinite(scale)) {
        return scale;
    }
    double s = 0;
    for (const auto &c : data_) {
        const double re = c.real() / scale;
        const double im = c.imag() / scale;
        s += re * re + im * im;
    }
    return scale * std::sqrt(s);
}

CVec &CVec::operator+=(const CVec &other)
{
    require_same_size(size(), other.size(), "CVec +");
    for (std::size_t i = 0; i < size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

CVec &CVec::operator-=(const CVec &other)
{
    require_same_size(size(), other.size(), "CVec -");
    for (std::size_t i = 0; i < size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

CVec &CVec::operator*=(Complex s) noexcept
{
    for (auto &c : data_) {
        c *= s;
    }
    return *this;
}

CVec operator+(CVec a, const CVec &b)
{
    a += b;
    return a;
}

CVec operator-(CVec a, const CVec &b)
{
    a -= b;
    return a;
}

CVec operator*(Complex s, CVec a)
{
    a *= s;
    return a;
}

CVec operator*(CVec a, Complex s)
{
    a *= s;
    return a;
}

Complex inner(const CVec &z, const CVec &w)
{
    require_same_size(z.size(), w.size(), "inner");
    Complex s{0, 0};
    for (std::size_t j = 0; j < z.size(); ++j) {
        s += z[j] * std::conj(w[j]);
    }
    return s;
}

CMatrix CMatrix::identity(std::size_t n)
{
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

CVec CMatrix::apply(const CVec &x) const
{
    require_same_size(n_, x.size(), "CMatrix::apply");
    CVec y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        Complex s{0, 0};
        for (std::size_t j = 0; j < n_; ++j) {
            s += (*this)(i, j) * x[j];
        }
        y[i] = s;
    }
    return y;
}

CMatrix CMatrix::adjoint() const
{
    CMatrix m(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            m(j, i) = std::conj((*this)(i, j));
        }
    }
    return m;
}

double CMatrix::norm1() const noexcept
{
    double best = 0;
    for (std::size_t j = 0; j < n_; ++j) {
        double col = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            col += std::abs((*this)(i, j));
        }
        best = std::max(best, col);
    }
    return best;
}

double CMatrix::max_abs() const noexcept
{
    double best = 0;
    for (const auto &c : a_) {
        best = std::max(best, std::abs(c));
    }
    return best;
}

LuFactorization::LuFactorization(const CMatrix &m) : lu_(m), perm_(m.size()), norm1_(m.norm1())
{
    const std::size_t n = m.size();
    std::vector<double> row_scale(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        perm_[i] = i;
        for (std::size_t j = 0; j < n; ++j) {
            row_scale[i] = std::max(row_scale[i], std::abs(m(i, j)));
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu_(i, k)) > best) {
                best = std::abs(lu_(i, k));
                p = i;
            }
        }
        const double scale = row_scale[perm_[p]];
        if (scale == 0 || best < kSingularThreshold * scale) {
            throw SingularJacobian("LU pivot " + std::to_string(best) + " below threshold in column "
                                   + std::to_string(k));
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(lu_(k, j), lu_(p, j));
            }
            std::swap(perm_[k], perm_[p]);
            sign_ = -sign_;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex factor = lu_(i, k) / lu_(k, k);
            lu_(i, k) = factor;
            for (std::size_t j = k + 1; j < n; ++j) {
                lu_(i, j) -= factor * lu_(k, j);
            }
        }
    }
}

CVec LuFactorization::solve(const CVec &b) const
{
    const std::size_t n = lu_.size();
    require_same_size(n, b.size(), "LU solve");
    CVec y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex s = b[perm_[i]];
        for (std::size_t j = 0; j < i; ++j) {
            s -= lu_(i, j) * y[j];
        }
        y[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        Complex s = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j) {
            s -= lu_(ii, j) * y[j];
        }
        y[ii] = s / lu_(ii, ii);
    }
    return y;
}

Complex LuFactorization::determinant() const noexcept
{
    Complex d{static_cast<double>(sign_), 0};
    for (std::size_t i = 0; i < lu_.size(); ++i) {
        d *= lu_(i, i);
    }
    return d;
}

CMatrix LuFactorization::inverse() const
{
    const std::size_t n = lu_.size();
    CMatrix inv(n);
    for (std::size_t j = 0; j < n; ++j) {
        CVec e(n);
        e[j] = 1;
        const CVec col = solve(e);
        for (std::size_t i = 0; i < n; ++i) {
            inv(i, j) = col[i];
        }
    }
    return inv;
}

double LuFactorization::condition_estimate() const
{
    return norm1_ * inverse().norm1();
}

LinearSolution lu_solve(const CMatrix &m, const CVec &b)
{
    const LuFactorization lu(m);
    return {lu.solve(b), lu.condition_estimate()};
}

Complex determinant(const CMatrix &m)
{
    try {
        return LuFactorization(m).determinant();
    } catch (const SingularJacobian &) {
        return {0, 0};
    }
}

Complex principal_power(Complex w, double p)
{
    if (w.imag() == 0 && w.real() <= 0) {
        throw BranchCut("principal power of a value on (-inf, 0]: " + std::to_string(w.real()));
    }
    if (w == Complex{1, 0}) {
        return {1, 0};
    }
    return std::exp(p * std::log(w));
}

void check_branch_path(std::span<const Complex> path)
{
    if (path.empty()) {
        return;
    }
    if (std::abs(path.front()) == 0) {
        throw BranchCut("branch anchor is zero");
    }
    double arg = std::arg(path.front());
    for (std::size_t k = 1; k < path.size(); ++k) {
        if (std::abs(path[k]) == 0 || !std::isfinite(std::abs(path[k]))) {
            throw BranchCut("power base vanishes or diverges along the radial path");
        }
        arg += std::arg(path[k] / path[k - 1]);
        if (std::abs(arg) >= std::numbers::pi) {
            throw BranchCut("argument of the power base leaves (-pi, pi) along the radial path");
        }
    }
}

} // namespace ballmap
