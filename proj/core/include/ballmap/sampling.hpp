#ifndef BALLMAP_SAMPLING_HPP
#define BALLMAP_SAMPLING_HPP

#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <random>
#include <thread>
#include <vector>

#include <ballmap/linalg.hpp>

namespace ballmap
{

// Stateless 64-bit mixer used to derive independent per-sample seeds, so
// that results do not depend on evaluation order or worker count.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept;

// Portable random stream: mt19937_64 with hand-written uniform/normal
// transforms so output is identical across standard libraries.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1).
    double uniform();
    double uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }
    double normal();
    // Uniform in the closed disk of the given radius.
    Complex disk(double radius);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0;
};

// Uniform point on ||z|| = r in C^n (normalized complex Gaussian).
CVec random_sphere_point(Rng &rng, std::size_t n, double r);

// `count` points uniform on the sphere of radius r in C^n, deterministic per seed.
std::vector<CVec> sphere_sample(std::size_t n, double r, std::size_t count, std::uint64_t seed);

// Worker count: BALLMAP_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();

// Evaluates fn(i) for i in [0, count) across up to `workers` threads and
// returns the results in index order. The first exception (by index) is
// rethrown after all workers finish.
template <typename T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)> &fn, unsigned workers = 0)
{
    if (workers == 0) {
        workers = worker_count();
    }
    std::vector<T> out(count);
    std::vector<std::exception_ptr> errors(count);
    auto run = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < count; i += stride) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1 || count <= 1) {
        run(0, 1);
    } else {
        const std::size_t nthreads = std::min<std::size_t>(workers, count);
        std::vector<std::thread> threads;
        threads.reserve(nthreads);
        for (std::size_t t = 0; t < nthreads; ++t) {
            threads.emplace_back(run, t, nthreads);
        }
        for (auto &th : threads) {
            th.join();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

} // namespace ballmap

#endif
