// Runs the nine acceptance criteria and prints one PASS/FAIL line for each.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <fmt/format.h>

#include <ballmap/bounds.hpp>
#include <ballmap/classes.hpp>
#include <ballmap/holomap.hpp>
#include <ballmap/sampling.hpp>
#include <ballmap/verify.hpp>

using namespace ballmap;

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
    bool pass = true;
    std::string detail;
};

double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

bool records_pass(const std::vector<CheckRecord> &records, std::string &detail)
{
    bool ok = true;
    for (const auto &r : records) {
        ok = ok && r.pass;
        detail += fmt::format(" {}={:.3g}{}", r.name, r.worst_margin, r.pass ? "" : "(fail)");
    }
    return ok;
}

Outcome classical_reduction()
{
    double growth = 0;
    double dist = 0;
    for (int i = 1; i <= 9; ++i) {
        const double r = 0.1 * i;
        const GrowthBounds g = growth_bounds_closed(-1, 1, 0, r);
        growth = std::max({growth, rel(g.lower, r / ((1 + r) * (1 + r))), rel(g.upper, r / ((1 - r) * (1 - r)))});
        const DistortionBounds d = distortion_bounds(-1, 1, {}, r, 1);
        dist = std::max({dist, rel(d.det_upper, (1 + r) / std::pow(1 - r, 3)),
                         rel(d.det_lower, (1 - r) / std::pow(1 + r, 3))});
    }
    return {growth <= 1e-12 && dist <= 1e-10,
            fmt::format("growth rel err {:.2e} (tol 1e-12), n=1 distortion rel err {:.2e} (tol 1e-10)", growth, dist)};
}

Outcome closed_vs_quadrature()
{
    struct Cell {
        double a, b, alpha;
    };
    std::vector<Cell> cells;
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) {
            const double a = -1 + 0.25 * i;
            const double b = -1 + 0.25 * j;
            if (a < b) {
                for (double alpha : {0.0, 0.2, 0.4, 0.6, 0.8}) {
                    cells.push_back({a, b, alpha});
                }
            }
        }
    }
    // |T| = |A (1 - alpha) + B alpha| < 1e-6
    const std::size_t grid_cells = cells.size();
    for (double alpha : {0.5 + 1e-7, 0.5 - 3e-7}) {
        cells.push_back({-0.5, 0.5, alpha});
    }
    cells.push_back({-0.75, 0.25, 0.75 + 4e-8});
    cells.push_back({-1, 1, 0.5});
    double worst = 0;
    double stress_t = 0;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const Cell &c = cells[ci];
        if (ci >= grid_cells) {
            stress_t = std::max(stress_t, std::abs(c.a - c.a * c.alpha + c.b * c.alpha));
        }
        for (int ri = 1; ri <= 9; ++ri) {
            const double r = 0.1 * ri;
            const GrowthBounds q = growth_bounds_quadrature(Kernel::mobius(c.a, c.b), c.alpha, r);
            const GrowthBounds e = growth_bounds_closed(c.a, c.b, c.alpha, r);
            worst = std::max({worst, rel(q.lower, e.lower), rel(q.upper, e.upper)});
        }
    }
    return {worst <= 1e-8 && stress_t < 1e-6,
            fmt::format("{} (A,B,alpha) cells x 9 radii, max |T| on stress line {:.1e}, max rel discrepancy {:.2e} "
                        "(tol 1e-8)",
                        cells.size(), stress_t, worst)};
}

Outcome growth_sandwich(std::uint64_t seed)
{
    std::vector<CertifiedMember> family = gstarlike_1d_family(reference_kernels(), 20, seed);
    std::vector<std::size_t> dims;
    for (int i = 0; i < 20; ++i) {
        dims.push_back(i % 2 == 0 ? 2 : 3);
    }
    const auto rs = rs_extension_family(dims, seed);
    family.insert(family.end(), rs.begin(), rs.end());

    double worst = kInf;
    long samples = 0;
    for (std::size_t mi = 0; mi < family.size(); ++mi) {
        const CertifiedMember &m = family[mi];
        const MobiusKernel &k = m.kernel.as_mobius();
        for (int ri = 0; ri < 20; ++ri) {
            const double r = 0.05 + (0.9 - 0.05) * ri / 19;
            const GrowthBounds g = growth_bounds_closed(k.a, k.b, m.params.alpha(), r);
            for (const CVec &z : sphere_sample(m.map->dim(), r, 50, mix_seed(seed, mi, ri))) {
                const double nf = m.map->eval(z).norm();
                worst = std::min({worst, nf - g.lower, g.upper - nf});
                ++samples;
            }
        }
    }
    return {worst >= -1e-9, fmt::format("{} members, {} samples, worst slack {:.3e} (tol 1e-9)", family.size(),
                                        samples, worst)};
}

Outcome lemma23_sandwich(std::uint64_t seed)
{
    const auto family = lemma23_family(50, seed);
    double worst = kInf;
    long samples = 0;
    for (std::size_t mi = 0; mi < family.size(); ++mi) {
        const CertifiedMember &m = family[mi];
        const double beta = m.params.beta();
        for (int ri = 0; ri < 20; ++ri) {
            const double r = 0.05 + (0.95 - 0.05) * ri / 19;
            const Lemma23Bounds b = lemma23_bounds(m.kernel, m.params, r);
            for (const CVec &z : sphere_sample(m.map->dim(), r, 50, mix_seed(seed, mi, ri))) {
                const Complex hz = inner(m.map->eval(z), z);
                const double re = (std::exp(Complex(0, -beta)) * hz).real();
                const double mod = std::abs(hz);
                worst = std::min({worst, re - b.b1, b.b2 - re, mod - b.b3, b.b4 - mod});
                ++samples;
            }
        }
    }
    return {worst >= -1e-9 && family.size() == 50,
            fmt::format("{} fields, {} samples, worst slack {:.3e} (tol 1e-9)", family.size(), samples, worst)};
}

Outcome coefficient_bound(std::uint64_t seed)
{
    const CoefficientBound c = coeff_bound(Kernel::mobius(-1, 1), {});
    const double qc = 3 * std::sqrt(3.0) / 2;
    const double coef_err = std::max({std::abs(c.a1 - 1), std::abs(c.a2 - 2), std::abs(c.q_bound - qc)});

    // sup over the unit sphere of |<h(z), z> - 1| for h = (z1 + q z2^2, z2)
    const Complex q(0.6, -0.8);
    const HoloMap h = ShearedMap{1, 1, q}.to_holomap();
    double sup = 0;
    constexpr int samples = 1000000;
    Rng rng(seed);
    for (int i = 0; i < samples; ++i) {
        const CVec z = random_sphere_point(rng, 2, 1.0);
        sup = std::max(sup, std::abs(inner(h.eval(z), z) / z.norm2() - 1.0));
    }
    const double shear_err = std::abs(sup - std::abs(q) * 2 / (3 * std::sqrt(3.0)));
    return {coef_err <= 1e-6 && shear_err <= 1e-6,
            fmt::format("a1={:.9f} a2={:.9f} q_bound={:.9f} (err {:.2e}); shearing sup err {:.2e} over {} samples "
                        "(tol 1e-6)",
                        c.a1, c.a2, c.q_bound, coef_err, shear_err, samples)};
}

Outcome distortion(std::uint64_t seed)
{
    const CheckSizes sizes;
    const Tolerances tol;
    auto records = check_distortion(distortion_family(20, seed), {0.3, 0.5, 0.7}, sizes, seed, tol);
    records.push_back(check_specializations(tol));
    Outcome o;
    o.pass = records_pass(records, o.detail);
    return o;
}

Outcome loewner(std::uint64_t seed)
{
    const CheckSizes sizes;
    const Tolerances tol;
    const std::vector<CheckRecord> records{
        check_transition_subordination(sizes, seed, tol), check_transition_semigroup(sizes, seed, tol),
        check_pde_residual(sizes, seed, tol),             check_commutation(sizes, seed, tol),
        check_chain_field(sizes, seed, tol),
    };
    Outcome o;
    o.pass = records_pass(records, o.detail);
    return o;
}

Outcome flows(std::uint64_t seed)
{
    const auto records = check_flows(CheckSizes{}, seed, Tolerances{});
    Outcome o;
    o.pass = records_pass(records, o.detail);
    for (const auto &r : records) {
        if (!r.note.empty()) {
            o.detail += fmt::format(" [{}: {}]", r.name, r.note);
        }
    }
    return o;
}

Outcome determinism(std::uint64_t seed)
{
    SuiteConfig c = default_suite_config();
    c.seed = seed;
    c.members_per_kernel = 3;
    c.rs_members = 4;
    c.lemma23_members = 6;
    c.distortion_members = 4;
    c.sizes.radii = 5;
    c.sizes.dirs = 8;
    c.sizes.extremum_budget = 60;
    c.sizes.shearing_samples = 20000;
    c.sizes.chain_points = 10;
    c.sizes.flow_steps_per_unit = 100;
    c.checks.clear();
    for (const auto &name : suite_check_names()) {
        if (name != "closed_vs_quadrature") {
            c.checks.push_back(name);
        }
    }
    std::vector<std::string> csvs;
    for (const char *threads : {"1", "1", "2", "4"}) {
        setenv("BALLMAP_THREADS", threads, 1);
        csvs.push_back(suite_report_csv(run_suite(c)));
    }
    unsetenv("BALLMAP_THREADS");
    const bool same = std::all_of(csvs.begin(), csvs.end(), [&](const std::string &s) { return s == csvs[0]; });
    return {same, fmt::format("{} runs (workers 1, 1, 2, 4), CSV {} bytes, {}", csvs.size(), csvs[0].size(),
                              same ? "byte-identical" : "differ")};
}

} // namespace

int main()
{
    const std::uint64_t seed = 20240601;
    struct Criterion {
        int id;
        const char *name;
        double time_limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "classical reduction", 1, classical_reduction},
        {2, "closed form vs quadrature", 10, closed_vs_quadrature},
        {3, "growth sandwich", 60, [&] { return growth_sandwich(seed); }},
        {4, "real-part and modulus sandwich", kInf, [&] { return lemma23_sandwich(seed); }},
        {5, "coefficient bound and shearing sup", kInf, [&] { return coefficient_bound(seed); }},
        {6, "distortion at extremal points", kInf, [&] { return distortion(seed); }},
        {7, "Loewner chain machinery", kInf, [&] { return loewner(seed); }},
        {8, "spirallike flow", kInf, [&] { return flows(seed); }},
        {9, "determinism", kInf, [&] { return determinism(seed); }},
    };
    bool all = true;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, fmt::format("exception: {}", e.what())};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.time_limit_s;
        const bool pass = o.pass && in_time;
        all = all && pass;
        std::string limit = std::isfinite(c.time_limit_s) ? fmt::format(" (limit {:.0f} s)", c.time_limit_s) : "";
        fmt::print("criterion {} {}: {} [{:.2f} s{}] {}\n", c.id, c.name, pass ? "PASS" : "FAIL", secs, limit,
                   o.detail);
    }
    return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
