#include <ballmap/holomap.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include <ballmap/error.hpp>

namespace ballmap
{

namespace
{

// Neumaier-compensated accumulator for one complex component.
class CompensatedSum
{
public:
    void add(Complex v) noexcept
    {
        add_part(re_, cre_, v.real());
        add_part(im_, cim_, v.imag());
    }
    [[nodiscard]] Complex value() const noexcept
    {
        return {re_ + cre_, im_ + cim_};
    }

private:
    static void add_part(double &sum, double &comp, double x) noexcept
    {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }

    double re_ = 0, cre_ = 0, im_ = 0, cim_ = 0;
};

int term_degree(const Term &t)
{
    return std::accumulate(t.idx.begin(), t.idx.end(), 0);
}

} // namespace

LinearSolution solve_jacobian(const Mapping &f, const CVec &z, const CVec &w)
{
    if (z.size() != f.dim() || w.size() != f.dim()) {
        throw DimensionMismatch("solve_jacobian: point/rhs dimension does not match map");
    }
    return lu_solve(f.jacobian(z), w);
}

CVec inverse_jacobian_field(const Mapping &f, const CVec &z)
{
    return solve_jacobian(f, z, f.eval(z)).x;
}

HoloMap::HoloMap(std::size_t n, std::vector<Term> terms, int degree_cap) : n_(n), degree_cap_(degree_cap)
{
    if (n == 0) {
        throw DomainError("HoloMap: dimension must be >= 1");
    }
    std::map<std::pair<std::size_t, std::vector<int>>, Complex> merged;
    for (auto &t : terms) {
        if (t.out >= n) {
            throw DimensionMismatch("HoloMap: output index " + std::to_string(t.out) + " out of range");
        }
        if (t.idx.size() != n) {
            throw DimensionMismatch("HoloMap: multi-index length " + std::to_string(t.idx.size())
                                    + " != n = " + std::to_string(n));
        }
        if (std::any_of(t.idx.begin(), t.idx.end(), [](int e) { return e < 0; })) {
            throw DomainError("HoloMap: negative exponent in multi-index");
        }
        if (term_degree(t) > degree_cap) {
            throw DomainError("HoloMap: term degree exceeds cap " + std::to_string(degree_cap));
        }
        if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) {
            throw DomainError("HoloMap: non-finite coefficient");
        }
        merged[{t.out, std::move(t.idx)}] += t.coeff;
    }
    for (auto &[key, c] : merged) {
        if (c != Complex{0, 0}) {
            terms_.push_back(Term{key.first, key.second, c});
        }
    }
}

HoloMap HoloMap::identity(std::size_t n)
{
    return scaled_identity(n, 1.0);
}

HoloMap HoloMap::zero(std::size_t n)
{
    return HoloMap(n, {});
}

HoloMap HoloMap::scaled_identity(std::size_t n, Complex s)
{
    std::vector<Term> terms;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> idx(n, 0);
        idx[i] = 1;
        terms.push_back(Term{i, idx, s});
    }
    return HoloMap(n, std::move(terms));
}

int HoloMap::degree() const noexcept
{
    int d = 0;
    for (const auto &t : terms_) {
        d = std::max(d, term_degree(t));
    }
    return d;
}

Complex HoloMap::coefficient(std::size_t out, const std::vector<int> &idx) const
{
    for (const auto &t : terms_) {
        if (t.out == out && t.idx == idx) {
            return t.coeff;
        }
    }
    return {0, 0};
}

bool HoloMap::normalized(double tol) const
{
    const CVec zero_pt(n_);
    if (eval(zero_pt).norm() > tol) {
        return false;
    }
    const CMatrix j = jacobian(zero_pt);
    for (std::size_t r = 0; r < n_; ++r) {
        for (std::size_t c = 0; c < n_; ++c) {
            if (std::abs(j(r, c) - Complex(r == c ? 1.0 : 0.0, 0)) > tol) {
                return false;
            }
        }
    }
    return true;
}

void HoloMap::check_point(const CVec &z) const
{
    if (z.size() != n_) {
        throw DimensionMismatch("HoloMap: point has dimension " + std::to_string(z.size()) + ", map has "
                                + std::to_string(n_));
    }
}

std::vector<std::vector<Complex>> HoloMap::powers(const CVec &z) const
{
    const int d = degree();
    std::vector<std::vector<Complex>> p(n_, std::vector<Complex>(static_cast<std::size_t>(d) + 1));
    for (std::size_t j = 0; j < n_; ++j) {
        p[j][0] = 1;
        for (int k = 1; k <= d; ++k) {
            p[j][k] = p[j][k - 1] * z[j];
        }
    }
    return p;
}

CVec HoloMap::eval(const CVec &z) const
{
    check_point(z);
    const auto p = powers(z);
    std::vector<CompensatedSum> acc(n_);
    for (const auto &t : terms_) {
        Complex m = t.coeff;
        for (std::size_t j = 0; j < n_; ++j) {
            m *= p[j][t.idx[j]];
        }
        acc[t.out].add(m);
    }
    CVec out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        out[i] = acc[i].value();
    }
    return out;
}

CMatrix HoloMap::jacobian(const CVec &z) const
{
    check_point(z);
    const auto p = powers(z);
    CMatrix jac(n_);
    for (const auto &t : terms_) {
        for (std::size_t k = 0; k < n_; ++k) {
            if (t.idx[k] == 0) {
                continue;
            }
            Complex m = t.coeff * static_cast<double>(t.idx[k]);
            for (std::size_t j = 0; j < n_; ++j) {
                m *= p[j][j == k ? t.idx[j] - 1 : t.idx[j]];
            }
            jac(t.out, k) += m;
        }
    }
    return jac;
}

std::vector<CMatrix> HoloMap::hessians(const CVec &z) const
{
    check_point(z);
    const auto p = powers(z);
    std::vector<CMatrix> h(n_, CMatrix(n_));
    for (const auto &t : terms_) {
        for (std::size_t a = 0; a < n_; ++a) {
            for (std::size_t b = a; b < n_; ++b) {
                std::vector<int> e = t.idx;
                double factor = e[a];
                if (e[a] == 0) {
                    continue;
                }
                --e[a];
                factor *= e[b];
                if (e[b] == 0) {
                    continue;
                }
                --e[b];
                Complex m = t.coeff * factor;
                for (std::size_t j = 0; j < n_; ++j) {
                    m *= p[j][e[j]];
                }
                h[t.out](a, b) += m;
                if (a != b) {
                    h[t.out](b, a) += m;
                }
            }
        }
    }
    return h;
}

} // namespace ballmap
