#include <benchmark/benchmark.h>

#include <ballmap/bounds.hpp>
#include <ballmap/classes.hpp>
#include <ballmap/extension.hpp>
#include <ballmap/func1d.hpp>
#include <ballmap/holomap.hpp>
#include <ballmap/loewner.hpp>
#include <ballmap/sampling.hpp>

using namespace ballmap;

namespace
{

HoloMap cubic_map(std::size_t n)
{
    std::vector<Term> terms;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> lin(n, 0);
        lin[i] = 1;
        terms.push_back({i, lin, 1.0});
        std::vector<int> sq(n, 0);
        sq[(i + 1) % n] = 2;
        terms.push_back({i, sq, Complex(0.1, 0.05)});
        std::vector<int> cube(n, 0);
        cube[i] = 1;
        cube[(i + 1) % n] += 2;
        terms.push_back({i, cube, Complex(-0.02, 0.03)});
    }
    return HoloMap(n, terms);
}

} // namespace

static void BM_GrowthClosed(benchmark::State &state)
{
    double r = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(growth_bounds_closed(-0.5, 0.8, 0.3, r));
        r = r < 0.9 ? r + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_GrowthClosed);

static void BM_GrowthQuadrature(benchmark::State &state)
{
    const Kernel k = Kernel::mobius(-0.5, 0.8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(growth_bounds_quadrature(k, 0.3, 0.7));
    }
}
BENCHMARK(BM_GrowthQuadrature);

static void BM_GrowthQuadratureGeneric(benchmark::State &state)
{
    const Kernel k = Kernel::generic("exp");
    for (auto _ : state) {
        benchmark::DoNotOptimize(growth_bounds_quadrature(k, 0.3, 0.7));
    }
}
BENCHMARK(BM_GrowthQuadratureGeneric);

static void BM_CoefficientBound(benchmark::State &state)
{
    const Kernel k = Kernel::mobius(-1, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(coeff_bound(k, {}));
    }
}
BENCHMARK(BM_CoefficientBound);

static void BM_HoloMapEval(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const HoloMap f = cubic_map(n);
    Rng rng(1);
    const CVec z = random_sphere_point(rng, n, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.eval(z));
    }
}
BENCHMARK(BM_HoloMapEval)->Arg(2)->Arg(4)->Arg(8);

static void BM_HoloMapJacobian(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const HoloMap f = cubic_map(n);
    Rng rng(2);
    const CVec z = random_sphere_point(rng, n, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.jacobian(z));
    }
}
BENCHMARK(BM_HoloMapJacobian)->Arg(2)->Arg(4)->Arg(8);

static void BM_ModifiedRsEval(benchmark::State &state)
{
    const ExtendedMap m = modified_rs(Func1D::koebe(), ExtensionParams(0.3, 0.4), 3);
    Rng rng(3);
    const CVec z = random_sphere_point(rng, 3, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(m.eval(z));
    }
}
BENCHMARK(BM_ModifiedRsEval);

static void BM_MembershipVerdict(benchmark::State &state)
{
    const Kernel k = Kernel::mobius(-1, 1);
    const ExtendedMap m = roper_suffridge(Func1D::koebe(), 2);
    const SamplePlan plan{8, static_cast<int>(state.range(0)), 0.05, 0.6, 7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(membership_verdict(m, Mode::s_g_star, k, {}, plan));
    }
}
BENCHMARK(BM_MembershipVerdict)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

static void BM_Transition(benchmark::State &state)
{
    const Chain1D c = starlike_chain(Func1D::koebe(), Kernel::mobius(-1, 1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(transition_1d(c, Complex(0.4, -0.3), 0.0, 1.0));
    }
}
BENCHMARK(BM_Transition);

static void BM_SphereSample(benchmark::State &state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(sphere_sample(3, 0.5, 1000, 9));
    }
}
BENCHMARK(BM_SphereSample);

BENCHMARK_MAIN();
