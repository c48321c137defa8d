#include <ballmap/sampling.hpp>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include <ballmap/error.hpp>

namespace ballmap
{

namespace
{

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept
{
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0xd6e8feb86659fd93ULL));
}

double Rng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    const double rad = std::sqrt(-2 * std::log(u1));
    const double th = 2 * std::numbers::pi * u2;
    spare_ = rad * std::sin(th);
    has_spare_ = true;
    return rad * std::cos(th);
}

Complex Rng::disk(double radius)
{
    const double rho = radius * std::sqrt(uniform());
    return std::polar(rho, 2 * std::numbers::pi * uniform());
}

CVec random_sphere_point(Rng &rng, std::size_t n, double r)
{
    CVec z(n);
    double nrm = 0;
    do {
        for (auto &c : z) {
            c = {rng.normal(), rng.normal()};
        }
        nrm = z.norm();
    } while (nrm < 1e-300);
    for (auto &c : z) {
        c *= r / nrm;
    }
    return z;
}

std::vector<CVec> sphere_sample(std::size_t n, double r, std::size_t count, std::uint64_t seed)
{
    if (!(r > 0 && r < 1)) {
        throw DomainError("sphere_sample: radius must lie in (0, 1)");
    }
    if (n == 0) {
        throw DomainError("sphere_sample: dimension must be >= 1");
    }
    Rng rng(seed);
    std::vector<CVec> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        pts.push_back(random_sphere_point(rng, n, r));
    }
    return pts;
}

unsigned worker_count()
{
    if (const char *env = std::getenv("BALLMAP_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1) {
                return static_cast<unsigned>(v);
            }
        } catch (...) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace ballmap
