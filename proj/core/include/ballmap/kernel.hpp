#ifndef BALLMAP_KERNEL_HPP
#define BALLMAP_KERNEL_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <ballmap/linalg.hpp>
#include <ballmap/series.hpp>

namespace ballmap
{

// g(zeta) = (1 + A zeta) / (1 + B zeta), -1 <= A < B <= 1.
struct MobiusKernel {
    double a = -1;
    double b = 1;
};

// Extrema of Re g on |zeta| = r.
struct CircleExtrema {
    double min_re = 1;
    double max_re = 1;
};

struct GenericKernel {
    std::string name;
    std::function<Complex(Complex)> g;
    std::function<Complex(Complex)> dg;
    // Optional closed-form circle extrema; sampled otherwise.
    std::function<CircleExtrema(double)> extrema;
};

// The disk function g: g(0) = 1, real coefficients, Re g > 0, with the
// circle-extrema property min/max_{|zeta|=r} Re g = min/max{g(r), g(-r)}.
class Kernel
{
public:
    // Number of circle points used when a generic kernel has no closed form.
    static constexpr int kSampledExtremaPoints = 2048;

    static Kernel mobius(double a, double b);
    // Looks up a named generic kernel: "cayley", "exp", "sqrt-cayley".
    static Kernel generic(const std::string &name);
    static Kernel generic(GenericKernel k);
    // Parses "mobius:A,B" or "generic:NAME".
    static Kernel parse(const std::string &spec);
    static std::vector<std::string> generic_names();

    [[nodiscard]] bool is_mobius() const noexcept
    {
        return std::holds_alternative<MobiusKernel>(variant_);
    }
    // Throws Unsupported for generic kernels.
    [[nodiscard]] const MobiusKernel &as_mobius() const;
    [[nodiscard]] std::string spec() const;

    // g(zeta), |zeta| < 1.
    [[nodiscard]] Complex eval(Complex zeta) const;
    [[nodiscard]] Complex derivative(Complex zeta) const;
    // (min{g(r), g(-r)}, max{g(r), g(-r)}), 0 <= r < 1.
    [[nodiscard]] CircleExtrema circle_extrema(double r) const;

    // Preimage zeta with g(zeta) = w, if one can be located. Mobius kernels
    // return the closed-form inverse (nullopt only for the pole image A/B);
    // generic kernels run Newton from 0 and 64 grid restarts and throw
    // NoConvergence when no root reproduces w to 1e-10.
    [[nodiscard]] std::optional<Complex> preimage(Complex w) const;
    // w in g(D).
    [[nodiscard]] bool contains(Complex w) const;
    // 1 - |zeta(w)|: positive inside g(D), negative outside.
    [[nodiscard]] double margin(Complex w) const;

    // Taylor coefficients g_0..g_degree (exact for Mobius, Cauchy
    // integral on |zeta| = 0.9 otherwise).
    [[nodiscard]] series::Series taylor(std::size_t degree) const;

private:
    explicit Kernel(std::variant<MobiusKernel, GenericKernel> v) : variant_(std::move(v)) {}

    std::variant<MobiusKernel, GenericKernel> variant_;
};

} // namespace ballmap

#endif
