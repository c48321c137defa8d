#include <ballmap/verify.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <utility>

#include <fmt/format.h>
#include <json.hpp>

#include <ballmap/error.hpp>
#include <ballmap/func1d.hpp>
#include <ballmap/holomap.hpp>

namespace ballmap
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

CheckRecord make_record(std::string name, std::string cites, long samples, double worst, double tolerance,
                        std::string note = {})
{
    CheckRecord r;
    r.name = std::move(name);
    r.cites = std::move(cites);
    r.samples = samples;
    r.worst_margin = worst;
    r.tolerance = tolerance;
    r.pass = !std::isnan(worst) && worst >= -tolerance;
    r.note = std::move(note);
    return r;
}

double relative_error(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), std::numeric_limits<double>::min());
}

std::vector<double> linear_grid(double lo, double hi, int count)
{
    std::vector<double> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        out.push_back(count == 1 ? hi : lo + (hi - lo) * i / (count - 1));
    }
    return out;
}

std::string format_complex(Complex c)
{
    return fmt::format("{:.6g}{:+.6g}i", c.real(), c.imag());
}

// A point of the ball with norm uniform in [rlo, rhi].
CVec random_ball_point(Rng &rng, std::size_t n, double rlo, double rhi)
{
    return random_sphere_point(rng, n, rng.uniform(rlo, rhi));
}

struct Worst {
    double margin = kInf;
    long samples = 0;

    void add(double m)
    {
        ++samples;
        if (std::isnan(m) || m < margin) {
            margin = std::isnan(margin) ? margin : m;
        }
    }
    void merge(const Worst &o)
    {
        samples += o.samples;
        if (std::isnan(o.margin) || o.margin < margin) {
            margin = std::isnan(margin) ? margin : o.margin;
        }
    }
};

Worst reduce(const std::vector<Worst> &parts)
{
    Worst w;
    for (const auto &p : parts) {
        w.merge(p);
    }
    return w;
}

Chain1D koebe_chain()
{
    return starlike_chain(Func1D::koebe(), Kernel::mobius(-1, 1));
}

Chain1D series_chain(std::uint64_t seed)
{
    Rng rng(mix_seed(seed, 0xc4a1));
    const Complex c = std::polar(0.8, rng.uniform(0, 2 * std::numbers::pi));
    const Kernel k = Kernel::mobius(-0.5, 0.5);
    return starlike_chain(synth_gstarlike_1d(k, c, 128), k);
}

} // namespace

std::vector<CVec> tangent_frame(const CVec &z)
{
    const std::size_t n = z.size();
    const double nz = z.norm();
    if (n == 0 || nz == 0) {
        throw DomainError("tangent frame needs a nonzero point");
    }
    CVec u = z;
    u *= Complex(1 / nz);
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < n; ++k) {
        order[k] = k;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&u](std::size_t a, std::size_t b) { return std::abs(u[a]) < std::abs(u[b]); });
    std::vector<CVec> basis{u};
    std::vector<CVec> frame;
    for (std::size_t k : order) {
        if (frame.size() + 1 == n) {
            break;
        }
        CVec w(n);
        w[k] = 1;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &b : basis) {
                w -= inner(w, b) * b;
            }
        }
        const double nw = w.norm();
        if (nw < 1e-8) {
            continue;
        }
        w *= Complex(1 / nw);
        basis.push_back(w);
        frame.push_back(std::move(w));
    }
    return frame;
}

SphereExtremum sphere_extremum(const Mapping &f, double r, Extremum mode, int budget, std::uint64_t seed)
{
    if (!(r > 0 && r < 1)) {
        throw DomainError("sphere radius must lie in (0, 1)");
    }
    if (budget < 1) {
        throw DomainError("extremum search needs a positive sample budget");
    }
    const std::size_t n = f.dim();
    const double sign = mode == Extremum::max ? 1.0 : -1.0;
    auto score = [&](const CVec &z) { return sign * f.eval(z).norm(); };

    SphereExtremum best;
    double best_score = -kInf;
    for (int i = 0; i < budget; ++i) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
        CVec z = random_sphere_point(rng, n, r);
        const double s = score(z);
        if (s > best_score) {
            best_score = s;
            best.z = std::move(z);
        }
    }
    double step = 1e-3;
    for (int sweep = 0; sweep < 200; ++sweep) {
        bool improved = false;
        for (std::size_t j = 0; j < n; ++j) {
            for (const Complex dir : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
                CVec cand = best.z;
                cand[j] += step * dir;
                cand *= Complex(r / cand.norm());
                const double s = score(cand);
                if (s > best_score) {
                    best_score = s;
                    best.z = std::move(cand);
                    improved = true;
                }
            }
        }
        if (!improved) {
            step *= 0.7;
        }
    }
    best.value = sign * best_score;
    return best;
}

CVec RescaledMap::eval(const CVec &w) const
{
    CVec out = f_->eval(r_ * w);
    out *= Complex(1 / m_);
    return out;
}

CMatrix RescaledMap::jacobian(const CVec &w) const
{
    CMatrix j = f_->jacobian(r_ * w);
    const std::size_t n = j.size();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            j(a, b) *= r_ / m_;
        }
    }
    return j;
}

BoundaryData boundary_lambda(const Mapping &g, const CVec &z0)
{
    if (std::abs(z0.norm() - 1) > 1e-12) {
        throw NotBoundaryPoint("z0 is not on the unit sphere");
    }
    BoundaryData d;
    d.z0 = z0;
    d.w0 = g.eval(z0);
    if (std::abs(d.w0.norm() - 1) > 1e-9) {
        throw NotBoundaryPoint(fmt::format("||g(z0)|| = {:.17g} is not 1", d.w0.norm()));
    }
    const CMatrix j = g.jacobian(z0);
    const Complex mu = inner(j.apply(z0), d.w0);
    d.lambda = mu.real();
    d.lambda_imag_residual = std::abs(mu.imag());
    const double lam = std::max(d.lambda, 0.0);
    d.tangent_margin = kInf;
    for (const auto &delta : tangent_frame(z0)) {
        d.tangent_margin = std::min(d.tangent_margin, std::sqrt(lam) - j.apply(delta).norm());
    }
    const auto n = static_cast<double>(z0.size());
    d.det_margin = std::pow(lam, (n + 1) / 2) - std::abs(determinant(j));
    return d;
}

std::vector<Kernel> reference_kernels()
{
    return {Kernel::mobius(-1, 1), Kernel::mobius(-1, 0), Kernel::mobius(-0.5, 0.5), Kernel::mobius(0, 0.8)};
}

std::vector<CertifiedMember> gstarlike_1d_family(const std::vector<Kernel> &kernels, int per_kernel,
                                                 std::uint64_t seed, int degree)
{
    std::vector<CertifiedMember> out;
    for (std::size_t ki = 0; ki < kernels.size(); ++ki) {
        for (int j = 0; j < per_kernel; ++j) {
            Rng rng(mix_seed(seed, ki, static_cast<std::uint64_t>(j)));
            const Complex c = std::polar(rng.uniform(0.2, 0.95), rng.uniform(0, 2 * std::numbers::pi));
            CertifiedMember m;
            m.kernel = kernels[ki];
            m.provenance = fmt::format("synth_gstarlike_1d(kernel={}, c={}, degree={})", kernels[ki].spec(),
                                       format_complex(c), degree);
            m.map = std::make_shared<Func1DMap>(synth_gstarlike_1d(kernels[ki], c, degree));
            out.push_back(std::move(m));
        }
    }
    return out;
}

std::vector<CertifiedMember> rs_extension_family(const std::vector<std::size_t> &dims, std::uint64_t seed,
                                                 int degree)
{
    const Kernel k = Kernel::mobius(-1, 1);
    std::vector<CertifiedMember> out;
    for (std::size_t j = 0; j < dims.size(); ++j) {
        Rng rng(mix_seed(seed, 0x125, j));
        // |c| <= 0.7 keeps arg f' inside (-pi, pi) on the ball of radius 0.9,
        // so the principal square root is the continued one.
        const Complex c = std::polar(rng.uniform(0.2, 0.7), rng.uniform(0, 2 * std::numbers::pi));
        CertifiedMember m;
        m.kernel = k;
        m.provenance = fmt::format("roper_suffridge(synth_gstarlike_1d(kernel={}, c={}, degree={}), n={})",
                                   k.spec(), format_complex(c), degree, dims[j]);
        m.map = std::make_shared<ExtendedMap>(roper_suffridge(synth_gstarlike_1d(k, c, degree), dims[j]));
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<CertifiedMember> distortion_family(int count, std::uint64_t seed, int degree)
{
    struct Cell {
        Kernel k;
        ClassParams p;
    };
    const std::vector<Cell> cells{
        {Kernel::mobius(-0.5, 0.5), ClassParams(0.1, 0)}, {Kernel::mobius(0, 0.8), ClassParams(0, 0.3)},
        {Kernel::mobius(-1, 0), ClassParams(0, 0)},       {Kernel::mobius(-0.5, 0.5), ClassParams(0, -0.3)},
        {Kernel::mobius(0, 0.8), ClassParams(0.2, 0.2)},
    };
    std::vector<CertifiedMember> out;
    for (int j = 0; j < count; ++j) {
        Rng rng(mix_seed(seed, 0xd157, static_cast<std::uint64_t>(j)));
        const Complex c = std::polar(rng.uniform(0.2, 0.8), rng.uniform(0, 2 * std::numbers::pi));
        CertifiedMember m;
        if (j % 2 == 0) {
            m.kernel = Kernel::mobius(-1, 1);
            m.provenance = fmt::format("roper_suffridge(synth_gstarlike_1d(kernel={}, c={}, degree={}), n=2)",
                                       m.kernel.spec(), format_complex(c), degree);
            m.map = std::make_shared<ExtendedMap>(roper_suffridge(synth_gstarlike_1d(m.kernel, c, degree), 2));
        } else {
            const Cell &cell = cells[static_cast<std::size_t>(j / 2) % cells.size()];
            m.kernel = cell.k;
            m.params = cell.p;
            m.provenance =
                fmt::format("modified_rs(synth_member_1d(kernel={}, alpha={}, beta={}, c={}, degree={}), (1, 0), n=2)",
                            cell.k.spec(), cell.p.alpha(), cell.p.beta(), format_complex(c), degree);
            m.map = std::make_shared<ExtendedMap>(
                modified_rs(synth_member_1d(cell.k, cell.p, c, degree), ExtensionParams(1, 0), 2));
        }
        out.push_back(std::move(m));
    }
    return out;
}

ScalarFieldMap::ScalarFieldMap(std::size_t n, Kernel k, ClassParams p, Complex c, Complex a)
    : n_(n), k_(std::move(k)), p_(p), c_(c), a_(a)
{
    if (n < 1) {
        throw DomainError("dimension must be >= 1");
    }
    if (std::abs(c) > 1 || std::abs(a) >= 1) {
        throw DomainError("Schwarz factor needs |c| <= 1 and |a| < 1");
    }
}

CVec ScalarFieldMap::eval(const CVec &z) const
{
    const Complex z1 = z[0];
    const Complex phi = c_ * z1 * (z1 - a_) / (1.0 - std::conj(a_) * z1);
    const Complex psi = tilde_inverse(k_.eval(phi), p_);
    CVec out = z;
    out *= psi;
    return out;
}

CMatrix ScalarFieldMap::jacobian(const CVec &z) const
{
    const Complex z1 = z[0];
    const Complex den = 1.0 - std::conj(a_) * z1;
    const Complex phi = c_ * z1 * (z1 - a_) / den;
    const Complex dphi = c_ * ((2.0 * z1 - a_) * den + std::conj(a_) * z1 * (z1 - a_)) / (den * den);
    const Complex psi = tilde_inverse(k_.eval(phi), p_);
    const Complex t(0, p_.tan_beta());
    const Complex dpsi = (1 - p_.alpha()) * k_.derivative(phi) * dphi / (1.0 - t);
    CMatrix j(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        j(i, i) = psi;
        j(i, 0) += z[i] * dpsi;
    }
    return j;
}

std::string ScalarFieldMap::name() const
{
    return fmt::format("z psi(z1) [kernel={}, alpha={}, beta={}, c={}, a={}]", k_.spec(), p_.alpha(), p_.beta(),
                       format_complex(c_), format_complex(a_));
}

std::vector<CertifiedMember> lemma23_family(int count, std::uint64_t seed)
{
    const std::vector<Kernel> kernels = reference_kernels();
    const std::vector<ClassParams> params{ClassParams(0, 0),   ClassParams(0, 0.5),   ClassParams(0, -0.5),
                                          ClassParams(0.3, 0), ClassParams(0.3, 0.5), ClassParams(0.3, -0.5)};
    std::vector<CertifiedMember> out;
    for (int j = 0; j < count; ++j) {
        Rng rng(mix_seed(seed, 0x1e23, static_cast<std::uint64_t>(j)));
        const Complex c = std::polar(rng.uniform(0.3, 1.0), rng.uniform(0, 2 * std::numbers::pi));
        const Complex a = rng.disk(0.8);
        CertifiedMember m;
        m.kernel = kernels[static_cast<std::size_t>(j) % kernels.size()];
        m.params = params[static_cast<std::size_t>(j) % params.size()];
        auto h = std::make_shared<ScalarFieldMap>(2 + static_cast<std::size_t>(j % 2), m.kernel, m.params, c, a);
        m.provenance = h->name();
        m.map = std::move(h);
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<CheckRecord> check_classical_reduction(const Tolerances &tol)
{
    double growth = 0;
    double dist = 0;
    long samples = 0;
    for (int i = 1; i <= 9; ++i) {
        const double r = 0.1 * i;
        const GrowthBounds g = growth_bounds_closed(-1, 1, 0, r);
        growth = std::max({growth, relative_error(g.lower, r / ((1 + r) * (1 + r))),
                           relative_error(g.upper, r / ((1 - r) * (1 - r)))});
        const DistortionBounds d = distortion_bounds(-1, 1, ClassParams(), r, 1);
        dist = std::max({dist, relative_error(d.det_upper, (1 + r) / std::pow(1 - r, 3)),
                         relative_error(d.det_lower, (1 - r) / std::pow(1 + r, 3))});
        ++samples;
    }
    return {make_record("classical_growth", "growth bounds reduce to r/(1+r)^2 and r/(1-r)^2 at A=-1, B=1",
                        samples, -growth, tol.classical_growth),
            make_record("classical_distortion",
                        "n=1 determinant bounds reduce to (1-r)/(1+r)^3 and (1+r)/(1-r)^3 at A=-1, B=1", samples,
                        -dist, tol.classical_distortion)};
}

CheckRecord check_closed_vs_quadrature(const Tolerances &tol)
{
    struct Cell {
        double a, b, alpha;
    };
    std::vector<Cell> cells;
    const std::vector<double> ab = linear_grid(-1, 1, 9);
    for (double a : ab) {
        for (double b : ab) {
            if (a < b) {
                for (double alpha : {0.0, 0.2, 0.4, 0.6, 0.8}) {
                    cells.push_back({a, b, alpha});
                }
            }
        }
    }
    // |T| = |A(1 - alpha) + B alpha| below 1e-6.
    cells.push_back({-0.5, 0.5, 0.5 + 1e-7});
    cells.push_back({-1, 1, 0.5});
    cells.push_back({-0.75, 0.25, 0.75 + 4e-8});
    const std::function<Worst(std::size_t)> run = [&](std::size_t i) {
        const Cell &c = cells[i];
        const Kernel k = Kernel::mobius(c.a, c.b);
        Worst w;
        for (int j = 1; j <= 9; ++j) {
            const double r = 0.1 * j;
            const GrowthBounds q = growth_bounds_quadrature(k, c.alpha, r);
            const GrowthBounds e = growth_bounds_closed(c.a, c.b, c.alpha, r);
            w.add(-std::max(relative_error(q.lower, e.lower), relative_error(q.upper, e.upper)));
        }
        return w;
    };
    const Worst w = reduce(parallel_map<Worst>(cells.size(), run));
    return make_record("closed_vs_quadrature",
                       "closed-form growth bounds agree with the growth integrals (relative discrepancy)", w.samples,
                       w.margin, tol.quadrature);
}

CheckRecord check_growth_sandwich(const std::vector<CertifiedMember> &family, const CheckSizes &sizes,
                                  std::uint64_t seed, const Tolerances &tol, const BoundScale &scale)
{
    const std::vector<double> radii = linear_grid(0.05, 0.9, sizes.radii);
    const std::function<Worst(std::size_t)> run = [&](std::size_t mi) {
        const CertifiedMember &m = family[mi];
        const auto &mk = m.kernel.as_mobius();
        Worst w;
        for (std::size_t ri = 0; ri < radii.size(); ++ri) {
            const double r = radii[ri];
            const GrowthBounds g = growth_bounds_closed(mk.a, mk.b, m.params.alpha(), r);
            const double lo = g.lower * scale.phi1;
            const double hi = g.upper * scale.phi2;
            for (int d = 0; d < sizes.dirs; ++d) {
                Rng rng(mix_seed(seed, mi, ri * static_cast<std::size_t>(sizes.dirs) + d));
                const double v = m.map->eval(random_sphere_point(rng, m.map->dim(), r)).norm();
                w.add(std::min(v - lo, hi - v));
            }
        }
        return w;
    };
    const Worst w = reduce(parallel_map<Worst>(family.size(), run));
    return make_record("growth_sandwich", "growth theorem: Phi1(r) <= ||F(z)|| <= Phi2(r) on certified members",
                       w.samples, w.margin, tol.growth, fmt::format("{} members", family.size()));
}

CheckRecord check_lemma23_sandwich(const std::vector<CertifiedMember> &family, const CheckSizes &sizes,
                                   std::uint64_t seed, const Tolerances &tol)
{
    const std::vector<double> radii = linear_grid(0.05, 0.95, sizes.radii);
    const std::function<Worst(std::size_t)> run = [&](std::size_t mi) {
        const CertifiedMember &m = family[mi];
        const Complex rot = std::exp(Complex(0, -m.params.beta()));
        Worst w;
        for (std::size_t ri = 0; ri < radii.size(); ++ri) {
            const double r = radii[ri];
            const Lemma23Bounds b = lemma23_bounds(m.kernel, m.params, r);
            for (int d = 0; d < sizes.dirs; ++d) {
                Rng rng(mix_seed(seed, mi, ri * static_cast<std::size_t>(sizes.dirs) + d));
                const CVec z = random_sphere_point(rng, m.map->dim(), r);
                const Complex ip = inner(m.map->eval(z), z);
                const double re = (rot * ip).real();
                const double mod = std::abs(ip);
                w.add(std::min({re - b.b1, b.b2 - re, mod - b.b3, b.b4 - mod}));
            }
        }
        return w;
    };
    const Worst w = reduce(parallel_map<Worst>(family.size(), run));
    return make_record("lemma23_sandwich",
                       "B1 <= Re<e^{-i beta} h(z), z> <= B2 and B3 <= |<h(z), z>| <= B4 for constructed fields",
                       w.samples, w.margin, tol.lemma23, fmt::format("{} fields", family.size()));
}

CheckRecord check_coefficient_bound(const Tolerances &tol)
{
    const CoefficientBound cb = coeff_bound(Kernel::mobius(-1, 1), ClassParams());
    const double err = std::max({std::abs(cb.a1 - 1), std::abs(cb.a2 - 2), std::abs(cb.q_bound - 1.5 * std::sqrt(3.0))});
    return make_record("coefficient_bound", "a1 = 1, a2 = 2 and q bound 3 sqrt(3)/2 for A=-1, B=1, alpha=beta=0", 1,
                       -err, tol.coefficient,
                       fmt::format("a1={:.12g} a2={:.12g} q_bound={:.12g}", cb.a1, cb.a2, cb.q_bound));
}

CheckRecord check_shearing_sup(const CheckSizes &sizes, std::uint64_t seed, const Tolerances &tol)
{
    const std::vector<Complex> qs{Complex(1, 0), Complex(0.6, -0.8) * 1.5};
    double worst = 0;
    long samples = 0;
    for (std::size_t qi = 0; qi < qs.size(); ++qi) {
        const HoloMap h = ShearedMap{1, 1, qs[qi]}.to_holomap();
        constexpr std::size_t chunks = 64;
        const std::size_t per = static_cast<std::size_t>(sizes.shearing_samples) / chunks;
        const std::function<double(std::size_t)> run = [&](std::size_t ci) {
            double sup = 0;
            for (std::size_t i = 0; i < per; ++i) {
                Rng rng(mix_seed(seed, qi, ci * per + i));
                const CVec z = random_sphere_point(rng, 2, 1.0);
                sup = std::max(sup, std::abs(inner(h.eval(z), z) / z.norm2() - 1.0));
            }
            return sup;
        };
        const auto sups = parallel_map<double>(chunks, run);
        const double sup = *std::max_element(sups.begin(), sups.end());
        worst = std::max(worst, std::abs(sup - std::abs(qs[qi]) * 2 / (3 * std::sqrt(3.0))));
        samples += static_cast<long>(per * chunks);
    }
    return make_record("shearing_sup", "sup over the unit sphere of |<h^[c](z), z>/||z||^2 - 1| = |q| 2/(3 sqrt 3)",
                       samples, -worst, tol.shearing);
}

std::vector<CheckRecord> check_distortion(const std::vector<CertifiedMember> &family,
                                          const std::vector<double> &radii, const CheckSizes &sizes,
                                          std::uint64_t seed, const Tolerances &tol)
{
    struct CellResult {
        Worst upper, lower, unitvec, lambda;
        double imag_residual = 0;
    };
    const std::size_t cells = family.size() * radii.size();
    const std::function<CellResult(std::size_t)> run = [&](std::size_t idx) {
        const std::size_t mi = idx / radii.size();
        const std::size_t ri = idx % radii.size();
        const CertifiedMember &m = family[mi];
        const auto &mk = m.kernel.as_mobius();
        const double r = radii[ri];
        const std::size_t n = m.map->dim();
        const DistortionBounds db = distortion_bounds(mk.a, mk.b, m.params, r, static_cast<int>(n));
        const DistortionFactors df = distortion_factors(mk.a, mk.b, m.params, r);
        CellResult out;

        const SphereExtremum mx = sphere_extremum(*m.map, r, Extremum::max, sizes.extremum_budget,
                                                  mix_seed(seed, idx, 1));
        const CMatrix jmax = m.map->jacobian(mx.z);
        out.upper.add(db.det_upper - std::abs(determinant(jmax)));
        for (const auto &delta : tangent_frame(mx.z)) {
            out.upper.add(db.tangent_upper - jmax.apply(delta).norm());
        }

        const SphereExtremum mn = sphere_extremum(*m.map, r, Extremum::min, sizes.extremum_budget,
                                                  mix_seed(seed, idx, 2));
        const CMatrix jmin = m.map->jacobian(mn.z);
        out.lower.add(std::abs(determinant(jmin)) - db.det_lower);
        for (const auto &delta : tangent_frame(mn.z)) {
            out.lower.add(jmin.apply(delta).norm() - db.tangent_lower);
        }

        for (int d = 0; d < sizes.dirs; ++d) {
            Rng rng(mix_seed(seed, idx, 3 + static_cast<std::uint64_t>(d)));
            const CVec z = random_sphere_point(rng, n, r);
            CVec v = solve_jacobian(*m.map, z, m.map->eval(z)).x;
            v *= Complex(1 / v.norm());
            out.unitvec.add(db.unitvec_upper - m.map->jacobian(z).apply(v).norm());
        }

        CVec z0 = mx.z;
        z0 *= Complex(1 / r);
        const RescaledMap g(m.map, r, mx.value);
        const BoundaryData bd = boundary_lambda(g, z0);
        out.lambda.add(1 / df.f1 - bd.lambda);
        out.imag_residual = bd.lambda_imag_residual;
        return out;
    };
    const auto parts = parallel_map<CellResult>(cells, run);
    Worst upper, lower, unitvec, lambda;
    double imag = 0;
    for (const auto &p : parts) {
        upper.merge(p.upper);
        lower.merge(p.lower);
        unitvec.merge(p.unitvec);
        lambda.merge(p.lambda);
        imag = std::max(imag, p.imag_residual);
    }
    const std::string fam = fmt::format("{} members x {} radii", family.size(), radii.size());
    return {
        make_record("distortion_max",
                    "|det J_f| and ||J_f delta|| upper bounds at the sphere maximum of ||f||", upper.samples,
                    upper.margin, tol.distortion, fam),
        make_record("distortion_min",
                    "|det J_f| and ||J_f delta|| lower bounds at the sphere minimum of ||f||", lower.samples,
                    lower.margin, tol.distortion, fam),
        make_record("unitvec_distortion", "||J_F(z) v(z)|| upper bound for v = J_F^{-1} F / ||J_F^{-1} F||",
                    unitvec.samples, unitvec.margin, tol.distortion, fam),
        make_record("boundary_lambda", "boundary Schwarz quantity lambda <= 1/F1 at the rescaled sphere maximum",
                    lambda.samples, lambda.margin, tol.distortion,
                    fmt::format("{}; max |Im lambda| = {:.3g}", fam, imag)),
    };
}

CheckRecord check_specializations(const Tolerances &tol)
{
    double worst = 0;
    long samples = 0;
    auto compare = [&](const DistortionBounds &a, const DistortionBounds &b) {
        worst = std::max({worst, relative_error(a.det_upper, b.det_upper), relative_error(a.det_lower, b.det_lower),
                          relative_error(a.tangent_upper, b.tangent_upper),
                          relative_error(a.tangent_lower, b.tangent_lower)});
        ++samples;
    };
    const std::vector<double> ab = linear_grid(-1, 1, 9);
    for (int n = 1; n <= 3; ++n) {
        for (int j = 1; j <= 9; ++j) {
            const double r = 0.1 * j;
            for (double a : ab) {
                for (double b : ab) {
                    if (a < b) {
                        compare(distortion_bounds(a, b, ClassParams(), r, n), gstarlike_distortion_bounds(a, b, r, n));
                    }
                }
            }
            for (double gamma : {0.1, 0.3, 0.5, 0.7, 0.9}) {
                compare(distortion_bounds(-1, 1 - 2 * gamma, ClassParams(), r, n),
                        order_gamma_distortion_bounds(gamma, r, n));
            }
        }
    }
    return make_record("specializations",
                       "g-starlike and order-gamma distortion formulas agree with the general bounds", samples, -worst,
                       tol.specialization);
}

namespace
{

struct ChainCase {
    std::string label;
    ChainND chain;
};

std::vector<ChainCase> chain_cases(std::uint64_t seed)
{
    const Chain1D koebe = koebe_chain();
    const Chain1D series = series_chain(seed);
    return {
        {"koebe (0,1/2)", rs_chain(koebe, ExtensionParams(0, 0.5), 2)},
        {"koebe (1/2,1/2)", rs_chain(koebe, ExtensionParams(0.5, 0.5), 2)},
        {"koebe (1,0) n=3", rs_chain(koebe, ExtensionParams(1, 0), 3)},
        {"series (1/4,1/2)", rs_chain(series, ExtensionParams(0.25, 0.5), 2)},
    };
}

// 0 <= s <= t <= u <= 1.
std::array<double, 3> ordered_times(Rng &rng)
{
    std::array<double, 3> t{rng.uniform(), rng.uniform(), rng.uniform()};
    std::sort(t.begin(), t.end());
    return t;
}

} // namespace

CheckRecord check_transition_subordination(const CheckSizes &sizes, std::uint64_t seed, const Tolerances &tol)
{
    const auto cases = chain_cases(seed);
    const std::function<Worst(std::size_t)> run = [&](std::size_t idx) {
        const std::size_t ci = idx / static_cast<std::size_t>(sizes.chain_points);
        const ChainND &c = cases[ci].chain;
        Rng rng(mix_seed(seed, 0x5b, idx));
        const CVec z = random_ball_point(rng, c.dim(), 0.05, 0.8);
        const auto tm = ordered_times(rng);
        const CVec v = transition_nd(c, z, tm[0], tm[1]);
        Worst w;
        w.add(-(c.eval(z, tm[0]) - c.eval(v, tm[1])).norm());
        // Schwarz property of the transition.
        w.add(std::min(0.0, z.norm() - v.norm()));
        return w;
    };
    const Worst w = reduce(parallel_map<Worst>(cases.size() * static_cast<std::size_t>(sizes.chain_points), run));
    return make_record("transition_subordination", "F(z, s) = F(V(z, s, t), t) and ||V(z, s, t)|| <= ||z||",
                       w.samples, w.margin, tol.subordination);
}

CheckRecord check_transition_semigroup(const CheckSizes &sizes, std::uint64_t seed, const Tolerances &tol)
{
    const auto cases = chain_cases(seed);
    const std::function<Worst(std::size_t)> run = [&](std::size_t idx) {
        const std::size_t ci = idx / static_cast<std::size_t>(sizes.chain_points);
        const ChainND &c = cases[ci].chain;
        Rng rng(mix_seed(seed, 0x5e, idx));
        const CVec z = random_ball_point(rng, c.dim(), 0.05, 0.8);
        const auto tm = ordered_times(rng);
        const CVec direct = transition_nd(c, z, tm[0], tm[2]);
        const CVec composed = transition_nd(c, transition_nd(c, z, tm[0], tm[1]), tm[1], tm[2]);
        Worst w;
        w.add(-(direct - composed).norm());
        return w;
    };
    const Worst w = reduce(parallel_map<Worst>(cases.size() * static_cast<std::size_t>(sizes.chain_points), run));
    return make_record("transition_semigroup", "V(z, s, u) = V(V(z, s, t), t, u)", w.samples, w.margin,
                       tol.semigroup);
}

CheckRecord check_pde_residual(const CheckSizes &sizes, std::uint64_t seed, const Tolerances &tol)
{
    const std::vector<Chain1D> chains{Chain1D(Func1D::identity()), koebe_chain(), series_chain(seed)};
    const std::function<Worst(std::size_t)> run = [&](std::size_t idx) {
        const std::size_t ci = idx / static_cast<std::size_t>(sizes.chain_points);
        Rng rng(mix_seed(seed, 0x9de, idx));
        const Complex z = std::polar(rng.uniform(0.05, 0.8), rng.uniform(0, 2 * std::numbers::pi));
        const double t = rng.uniform(0.1, 1.0);
        Worst w;
        w.add(-pde_residual(chains[ci], z, t, kDefaultTimeStep));
        return w;
    };
    const Worst w = reduce(parallel_map<Worst>(chains.size() * static_cast<std::size_t>(sizes.chain_points), run));
    return make_record("pde_residual", "Loewner equation df/dt = f'(z, t) h(z) for starlike chains, dt = 1e-4",
                       w.samples, w.margin, tol.pde);
}

CheckRecord check_chain_field(const CheckSizes &sizes, std::uint64_t seed, const Tolerances &tol)
{
    struct FieldCase {
        ChainND chain;
        Kernel k;
    };
    const Kernel starlike = Kernel::mobius(-1, 1);
    const Kernel mid = Kernel::mobius(-0.5, 0.5);
    const std::vector<FieldCase> cases{
        {rs_chain(koebe_chain(), ExtensionParams(0, 0.5), 2), starlike},
        {rs_chain(koebe_chain(), ExtensionParams(0.5, 0.5), 2), starlike},
        {rs_chain(series_chain(seed), ExtensionParams(1, 0), 2), mid},
    };
    const std::function<Worst(std::size_t)> run = [&](std::size_t idx) {
        const std::size_t ci = idx / static_cast<std::size_t>(sizes.chain_points);
        Rng rng(mix_seed(seed, 0xf1e, idx));
        const CVec z = random_ball_point(rng, 2, 0.05, 0.8);
        const double t = rng.uniform(0.1, 1.0);
        Worst w;
        w.add(pde_residual(cases[ci].chain, cases[ci].k, ClassParams(), z, t).margin);
        return w;
    };
    const Worst w = reduce(parallel_map<Worst>(cases.size() * static_cast<std::size_t>(sizes.chain_points), run));
    return make_record("chain_field", "recovered chain vector field J_F^{-1} dF/dt lies in M_g (kernel margin)",
                       w.samples, w.margin, tol.chain_field);
}

CheckRecord check_commutation(const CheckSizes &sizes, std::uint64_t seed, const Tolerances &tol)
{
    struct CommCase {
        Func1D m;
        Chain1D c;
        ExtensionParams p;
    };
    const Chain1D koebe = koebe_chain();
    const Chain1D series = series_chain(seed);
    const std::vector<CommCase> cases{
        {Func1D::koebe(), koebe, ExtensionParams(0.5, 0.5)},
        {Func1D::identity(), koebe, ExtensionParams(0.5, 0.5)},
        {Func1D::mobius_starlike(-0.5, 0.5), series, ExtensionParams(0.25, 0.5)},
    };
    const std::function<Worst(std::size_t)> run = [&](std::size_t idx) {
        const std::size_t ci = idx / static_cast<std::size_t>(sizes.chain_points);
        Rng rng(mix_seed(seed, 0xc0, idx));
        const CVec z = random_ball_point(rng, 2, 0.05, 0.7);
        const double t = rng.uniform(0, 1);
        Worst w;
        w.add(-commutation_identity_check(cases[ci].m, cases[ci].c, cases[ci].p, 2, t, z));
        return w;
    };
    const Worst w = reduce(parallel_map<Worst>(cases.size() * static_cast<std::size_t>(sizes.chain_points), run));
    return make_record("commutation", "e^t Phi(m)(V(z, t)) = Phi(e^t (m o v_t))(z)", w.samples, w.margin,
                       tol.commutation);
}

std::vector<CheckRecord> check_flows(const CheckSizes &sizes, std::uint64_t seed, const Tolerances &tol)
{
    struct FlowCase {
        std::shared_ptr<const Mapping> f;
        double beta;
    };
    Rng crng(mix_seed(seed, 0xf10));
    const Complex c = std::polar(0.5, crng.uniform(0, 2 * std::numbers::pi));
    const double spiral = 0.5;
    const auto spiral_map = std::make_shared<ExtendedMap>(modified_rs(
        synth_member_1d(Kernel::mobius(-1, 1), ClassParams(0, spiral), c, 64), ExtensionParams(1, 0), 2));
    const std::vector<FlowCase> cases{
        {std::make_shared<HoloMap>(HoloMap::identity(2)), 0},
        {std::make_shared<HoloMap>(HoloMap::identity(2)), std::numbers::pi / 4},
        {std::make_shared<ExtendedMap>(roper_suffridge(Func1D::koebe(), 2)), 0},
        {spiral_map, spiral},
    };
    struct FlowResult {
        double law = 0;
        double decrement = kInf;
        std::string direction;
        double ratio_err = 0;
        long steps = 0;
    };
    const std::function<FlowResult(std::size_t)> run = [&](std::size_t ci) {
        const FlowCase &fc = cases[ci];
        Rng rng(mix_seed(seed, 0xf11, ci));
        const CVec z = random_sphere_point(rng, fc.f->dim(), 0.5);
        FlowResult out;
        const FlowTrajectory shortrun = spirallike_flow(*fc.f, z, fc.beta, 2.0, 2 * sizes.flow_steps_per_unit);
        const double f0 = shortrun.f_norms.front();
        for (std::size_t i = 0; i < shortrun.times.size(); ++i) {
            const double conserved = shortrun.f_norms[i] * std::exp(shortrun.times[i] * std::cos(fc.beta));
            out.law = std::max(out.law, std::abs(conserved - f0) / f0);
        }
        const FlowTrajectory longrun = spirallike_flow(*fc.f, z, fc.beta, 20.0, 20 * sizes.flow_steps_per_unit);
        for (std::size_t i = 1; i < longrun.z_norms.size(); ++i) {
            out.decrement = std::min(out.decrement, (longrun.z_norms[i - 1] - longrun.z_norms[i]) / longrun.z_norms[i - 1]);
        }
        out.direction = longrun.norm_direction;
        out.ratio_err = std::abs(longrun.f_norms.back() / longrun.z_norms.back() - 1);
        out.steps = static_cast<long>(shortrun.times.size() + longrun.times.size());
        return out;
    };
    const auto parts = parallel_map<FlowResult>(cases.size(), run);
    double law = 0;
    double dec = kInf;
    double ratio = 0;
    long samples = 0;
    std::set<std::string> dirs;
    for (const auto &p : parts) {
        law = std::max(law, p.law);
        dec = std::min(dec, p.decrement);
        ratio = std::max(ratio, p.ratio_err);
        samples += p.steps;
        dirs.insert(p.direction);
    }
    std::string measured;
    for (const auto &d : dirs) {
        measured += measured.empty() ? d : "/" + d;
    }
    return {
        make_record("flow_norm_law", "||F(z(t))|| e^{t cos beta} is constant along dz/dt = -e^{-i beta} J_F^{-1} F",
                    samples, -law, tol.flow_law),
        make_record("flow_monotone", "||z(t)|| is strictly monotone along the spirallike flow", samples,
                    dec > 0 ? dec : -kInf, 0,
                    fmt::format("measured direction: {}; flag: stated direction is increasing", measured)),
        make_record("flow_limit_ratio", "||F(z(t))|| / ||z(t)|| tends to 1 (checked at t = 20)",
                    static_cast<long>(cases.size()), -ratio, tol.flow_ratio),
    };
}

const std::vector<std::string> &suite_families()
{
    static const std::vector<std::string> names{"kernels",       "gstarlike-1d", "rs-extension", "lemma23-field",
                                                "distortion-n2", "chains",       "flows"};
    return names;
}

const std::vector<std::string> &suite_check_names()
{
    static const std::vector<std::string> names{
        "classical_growth",   "classical_distortion",     "closed_vs_quadrature", "coefficient_bound",
        "shearing_sup",       "specializations",          "growth_sandwich",      "lemma23_sandwich",
        "distortion_max",     "distortion_min",           "unitvec_distortion",   "boundary_lambda",
        "transition_subordination", "transition_semigroup", "pde_residual",       "chain_field",
        "commutation",        "flow_norm_law",            "flow_monotone",        "flow_limit_ratio"};
    return names;
}

SuiteConfig default_suite_config()
{
    SuiteConfig c;
    c.families = suite_families();
    return c;
}

namespace
{

using nlohmann::json;

void reject_unknown(const json &j, std::initializer_list<const char *> allowed, const std::string &where)
{
    if (!j.is_object()) {
        throw ParseError(fmt::format("{} must be a JSON object", where));
    }
    for (const auto &[key, value] : j.items()) {
        bool ok = false;
        for (const char *a : allowed) {
            ok = ok || key == a;
        }
        if (!ok) {
            throw ParseError(fmt::format("unknown field '{}' in {}", key, where));
        }
    }
}

template <typename T>
void read_field(const json &j, const char *key, T &out)
{
    if (j.contains(key)) {
        out = j.at(key).get<T>();
    }
}

} // namespace

SuiteConfig parse_suite_config(const std::string &json_text)
{
    SuiteConfig c;
    try {
        const json j = json::parse(json_text);
        reject_unknown(j,
                       {"seed", "families", "checks", "sizes", "tolerances", "bound_scale", "members_per_kernel",
                        "rs_members", "lemma23_members", "distortion_members", "distortion_radii"},
                       "suite config");
        read_field(j, "seed", c.seed);
        read_field(j, "families", c.families);
        read_field(j, "checks", c.checks);
        read_field(j, "members_per_kernel", c.members_per_kernel);
        read_field(j, "rs_members", c.rs_members);
        read_field(j, "lemma23_members", c.lemma23_members);
        read_field(j, "distortion_members", c.distortion_members);
        read_field(j, "distortion_radii", c.distortion_radii);
        if (j.contains("sizes")) {
            const json &s = j.at("sizes");
            reject_unknown(s,
                           {"radii", "dirs", "extremum_budget", "shearing_samples", "chain_points",
                            "flow_steps_per_unit"},
                           "sizes");
            read_field(s, "radii", c.sizes.radii);
            read_field(s, "dirs", c.sizes.dirs);
            read_field(s, "extremum_budget", c.sizes.extremum_budget);
            read_field(s, "shearing_samples", c.sizes.shearing_samples);
            read_field(s, "chain_points", c.sizes.chain_points);
            read_field(s, "flow_steps_per_unit", c.sizes.flow_steps_per_unit);
        }
        if (j.contains("tolerances")) {
            const json &t = j.at("tolerances");
            reject_unknown(t,
                           {"growth", "lemma23", "distortion", "coefficient", "shearing", "specialization",
                            "classical_growth", "classical_distortion", "quadrature", "subordination", "semigroup",
                            "pde", "commutation", "chain_field", "flow_law", "flow_ratio"},
                           "tolerances");
            Tolerances &tl = c.tolerances;
            read_field(t, "growth", tl.growth);
            read_field(t, "lemma23", tl.lemma23);
            read_field(t, "distortion", tl.distortion);
            read_field(t, "coefficient", tl.coefficient);
            read_field(t, "shearing", tl.shearing);
            read_field(t, "specialization", tl.specialization);
            read_field(t, "classical_growth", tl.classical_growth);
            read_field(t, "classical_distortion", tl.classical_distortion);
            read_field(t, "quadrature", tl.quadrature);
            read_field(t, "subordination", tl.subordination);
            read_field(t, "semigroup", tl.semigroup);
            read_field(t, "pde", tl.pde);
            read_field(t, "commutation", tl.commutation);
            read_field(t, "chain_field", tl.chain_field);
            read_field(t, "flow_law", tl.flow_law);
            read_field(t, "flow_ratio", tl.flow_ratio);
        }
        if (j.contains("bound_scale")) {
            const json &b = j.at("bound_scale");
            reject_unknown(b, {"phi1", "phi2"}, "bound_scale");
            read_field(b, "phi1", c.bound_scale.phi1);
            read_field(b, "phi2", c.bound_scale.phi2);
        }
    } catch (const json::exception &e) {
        throw ParseError(fmt::format("suite config: {}", e.what()));
    }
    for (const auto &f : c.families) {
        if (std::find(suite_families().begin(), suite_families().end(), f) == suite_families().end()) {
            throw ParseError(fmt::format("unknown family '{}'", f));
        }
    }
    for (const auto &n : c.checks) {
        if (std::find(suite_check_names().begin(), suite_check_names().end(), n) == suite_check_names().end()) {
            throw ParseError(fmt::format("unknown check '{}'", n));
        }
    }
    if (c.sizes.radii < 1 || c.sizes.dirs < 1 || c.sizes.extremum_budget < 1 || c.sizes.shearing_samples < 64 ||
        c.sizes.chain_points < 1 || c.sizes.flow_steps_per_unit < 1) {
        throw ParseError("suite sizes must be positive (shearing_samples >= 64)");
    }
    return c;
}

bool SuiteReport::pass() const
{
    return std::all_of(records.begin(), records.end(), [](const CheckRecord &r) { return r.pass; });
}

SuiteReport run_suite(const SuiteConfig &config)
{
    const auto start = std::chrono::steady_clock::now();
    SuiteReport report;
    report.seed = config.seed;
    auto has_family = [&](const std::string &f) {
        return std::find(config.families.begin(), config.families.end(), f) != config.families.end();
    };
    auto wanted = [&](const std::string &name) {
        return config.checks.empty() || std::find(config.checks.begin(), config.checks.end(), name) != config.checks.end();
    };
    auto any_wanted = [&](std::initializer_list<const char *> names) {
        return std::any_of(names.begin(), names.end(), [&](const char *n) { return wanted(n); });
    };
    // Runs `fn` and appends the records it produces, or failure records for
    // `names` if it throws.
    auto guarded = [&](std::initializer_list<const char *> names, const std::function<std::vector<CheckRecord>()> &fn) {
        if (!any_wanted(names)) {
            return;
        }
        try {
            for (auto &r : fn()) {
                if (wanted(r.name)) {
                    report.records.push_back(std::move(r));
                }
            }
        } catch (const std::exception &e) {
            for (const char *n : names) {
                if (wanted(n)) {
                    CheckRecord r = make_record(n, "", 0, -kInf, 0, fmt::format("error: {}", e.what()));
                    report.records.push_back(std::move(r));
                }
            }
        }
    };
    const std::uint64_t seed = config.seed;
    const Tolerances &tol = config.tolerances;
    const CheckSizes &sizes = config.sizes;

    if (has_family("kernels")) {
        guarded({"classical_growth", "classical_distortion"}, [&] { return check_classical_reduction(tol); });
        guarded({"closed_vs_quadrature"}, [&] { return std::vector{check_closed_vs_quadrature(tol)}; });
        guarded({"coefficient_bound"}, [&] { return std::vector{check_coefficient_bound(tol)}; });
        guarded({"shearing_sup"}, [&] { return std::vector{check_shearing_sup(sizes, mix_seed(seed, 1), tol)}; });
        guarded({"specializations"}, [&] { return std::vector{check_specializations(tol)}; });
    }
    if (has_family("gstarlike-1d") || has_family("rs-extension")) {
        guarded({"growth_sandwich"}, [&] {
            std::vector<CertifiedMember> family;
            if (has_family("gstarlike-1d")) {
                family = gstarlike_1d_family(reference_kernels(), config.members_per_kernel, mix_seed(seed, 2));
            }
            if (has_family("rs-extension")) {
                std::vector<std::size_t> dims;
                for (int i = 0; i < config.rs_members; ++i) {
                    dims.push_back(i < config.rs_members / 2 ? 2 : 3);
                }
                auto rs = rs_extension_family(dims, mix_seed(seed, 3));
                family.insert(family.end(), rs.begin(), rs.end());
            }
            return std::vector{check_growth_sandwich(family, sizes, mix_seed(seed, 4), tol, config.bound_scale)};
        });
    }
    if (has_family("lemma23-field")) {
        guarded({"lemma23_sandwich"}, [&] {
            const auto family = lemma23_family(config.lemma23_members, mix_seed(seed, 5));
            return std::vector{check_lemma23_sandwich(family, sizes, mix_seed(seed, 6), tol)};
        });
    }
    if (has_family("distortion-n2")) {
        guarded({"distortion_max", "distortion_min", "unitvec_distortion", "boundary_lambda"}, [&] {
            const auto family = distortion_family(config.distortion_members, mix_seed(seed, 7));
            return check_distortion(family, config.distortion_radii, sizes, mix_seed(seed, 8), tol);
        });
    }
    if (has_family("chains")) {
        guarded({"transition_subordination"},
                [&] { return std::vector{check_transition_subordination(sizes, mix_seed(seed, 9), tol)}; });
        guarded({"transition_semigroup"},
                [&] { return std::vector{check_transition_semigroup(sizes, mix_seed(seed, 10), tol)}; });
        guarded({"pde_residual"}, [&] { return std::vector{check_pde_residual(sizes, mix_seed(seed, 11), tol)}; });
        guarded({"chain_field"}, [&] { return std::vector{check_chain_field(sizes, mix_seed(seed, 12), tol)}; });
        guarded({"commutation"}, [&] { return std::vector{check_commutation(sizes, mix_seed(seed, 13), tol)}; });
    }
    if (has_family("flows")) {
        guarded({"flow_norm_law", "flow_monotone", "flow_limit_ratio"},
                [&] { return check_flows(sizes, mix_seed(seed, 14), tol); });
    }
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string suite_report_json(const SuiteReport &report)
{
    json j;
    j["seed"] = report.seed;
    j["pass"] = report.pass();
    j["wall_time_s"] = report.wall_time_s;
    j["records"] = json::array();
    for (const auto &r : report.records) {
        json rec{{"name", r.name},         {"cites", r.cites},         {"samples", r.samples},
                 {"tolerance", r.tolerance}, {"pass", r.pass},           {"note", r.note}};
        if (std::isfinite(r.worst_margin)) {
            rec["worst_margin"] = r.worst_margin;
        } else {
            rec["worst_margin"] = fmt::format("{}", r.worst_margin);
        }
        j["records"].push_back(std::move(rec));
    }
    return j.dump(2) + "\n";
}

std::string suite_report_csv(const SuiteReport &report)
{
    std::string out = "name,cites,samples,worst_margin,tolerance,pass\n";
    for (const auto &r : report.records) {
        std::string cites = r.cites;
        std::string quoted;
        for (char ch : cites) {
            quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        }
        out += fmt::format("{},\"{}\",{},{:.17g},{:.17g},{}\n", r.name, quoted, r.samples, r.worst_margin,
                           r.tolerance, r.pass ? "true" : "false");
    }
    return out;
}

} // namespace ballmap
