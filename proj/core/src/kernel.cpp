#include <ballmap/kernel.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <ballmap/error.hpp>

namespace ballmap
{

namespace
{

void require_open_disk(Complex zeta)
{
    if (!(std::abs(zeta) < 1)) {
        throw DomainError("kernel evaluated outside the unit disk");
    }
}

void require_radius(double r)
{
    if (!(r >= 0 && r < 1)) {
        throw DomainError("circle radius must lie in [0, 1)");
    }
}

CircleExtrema mobius_extrema(const MobiusKernel &m, double r)
{
    // g is real-decreasing on (-1, 1) when A < B.
    return {(1 + m.a * r) / (1 + m.b * r), (1 - m.a * r) / (1 - m.b * r)};
}

std::map<std::string, GenericKernel> build_registry()
{
    std::map<std::string, GenericKernel> reg;
    reg["cayley"] = GenericKernel{
        "cayley",
        [](Complex z) { return (1.0 - z) / (1.0 + z); },
        [](Complex z) { return -2.0 / ((1.0 + z) * (1.0 + z)); },
        {},
    };
    reg["exp"] = GenericKernel{
        "exp",
        [](Complex z) { return std::exp(-z); },
        [](Complex z) { return -std::exp(-z); },
        {},
    };
    reg["sqrt-cayley"] = GenericKernel{
        "sqrt-cayley",
        [](Complex z) { return std::sqrt((1.0 - z) / (1.0 + z)); },
        [](Complex z) {
            const Complex s = std::sqrt((1.0 - z) / (1.0 + z));
            return -1.0 / (s * (1.0 + z) * (1.0 + z));
        },
        {},
    };
    return reg;
}

const std::map<std::string, GenericKernel> &registry()
{
    static const auto reg = build_registry();
    return reg;
}

double parse_double(const std::string &s)
{
    std::istringstream in(s);
    double v = 0;
    in >> v;
    if (!in || !in.eof()) {
        throw ParseError("not a number: '" + s + "'");
    }
    return v;
}

} // namespace

Kernel Kernel::mobius(double a, double b)
{
    if (!(a >= -1 && a < b && b <= 1)) {
        throw DomainError("Mobius kernel requires -1 <= A < B <= 1");
    }
    return Kernel(MobiusKernel{a, b});
}

Kernel Kernel::generic(const std::string &name)
{
    const auto &reg = registry();
    const auto it = reg.find(name);
    if (it == reg.end()) {
        throw ParseError("unknown generic kernel '" + name + "'");
    }
    return Kernel(it->second);
}

Kernel Kernel::generic(GenericKernel k)
{
    if (!k.g || !k.dg) {
        throw DomainError("generic kernel needs value and derivative callbacks");
    }
    return Kernel(std::move(k));
}

Kernel Kernel::parse(const std::string &spec)
{
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw ParseError("kernel spec must be 'mobius:A,B' or 'generic:NAME'");
    }
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    if (kind == "mobius") {
        const auto comma = rest.find(',');
        if (comma == std::string::npos) {
            throw ParseError("mobius kernel spec needs 'A,B'");
        }
        return mobius(parse_double(rest.substr(0, comma)), parse_double(rest.substr(comma + 1)));
    }
    if (kind == "generic") {
        return generic(rest);
    }
    throw ParseError("unknown kernel kind '" + kind + "'");
}

std::vector<std::string> Kernel::generic_names()
{
    std::vector<std::string> names;
    for (const auto &[k, v] : registry()) {
        names.push_back(k);
    }
    return names;
}

const MobiusKernel &Kernel::as_mobius() const
{
    if (const auto *m = std::get_if<MobiusKernel>(&variant_)) {
        return *m;
    }
    throw Unsupported("operation requires a Mobius kernel");
}

std::string Kernel::spec() const
{
    if (const auto *m = std::get_if<MobiusKernel>(&variant_)) {
        std::ostringstream out;
        out.precision(17);
        out << "mobius:" << m->a << "," << m->b;
        return out.str();
    }
    return "generic:" + std::get<GenericKernel>(variant_).name;
}

Complex Kernel::eval(Complex zeta) const
{
    require_open_disk(zeta);
    if (const auto *m = std::get_if<MobiusKernel>(&variant_)) {
        return (1.0 + m->a * zeta) / (1.0 + m->b * zeta);
    }
    return std::get<GenericKernel>(variant_).g(zeta);
}

Complex Kernel::derivative(Complex zeta) const
{
    require_open_disk(zeta);
    if (const auto *m = std::get_if<MobiusKernel>(&variant_)) {
        const Complex d = 1.0 + m->b * zeta;
        return (m->a - m->b) / (d * d);
    }
    return std::get<GenericKernel>(variant_).dg(zeta);
}

CircleExtrema Kernel::circle_extrema(double r) const
{
    require_radius(r);
    if (const auto *m = std::get_if<MobiusKernel>(&variant_)) {
        return mobius_extrema(*m, r);
    }
    const auto &gk = std::get<GenericKernel>(variant_);
    if (gk.extrema) {
        return gk.extrema(r);
    }
    const double gp = gk.g(Complex(r, 0)).real();
    const double gm = gk.g(Complex(-r, 0)).real();
    CircleExtrema e{std::min(gp, gm), std::max(gp, gm)};
    // Sampled fallback; the min/max at +-r are included exactly.
    for (int k = 0; k < kSampledExtremaPoints; ++k) {
        const double th = 2 * std::numbers::pi * k / kSampledExtremaPoints;
        const double re = gk.g(std::polar(r, th)).real();
        e.min_re = std::min(e.min_re, re);
        e.max_re = std::max(e.max_re, re);
    }
    return e;
}

std::optional<Complex> Kernel::preimage(Complex w) const
{
    if (const auto *m = std::get_if<MobiusKernel>(&variant_)) {
        const Complex den = w * m->b - m->a;
        if (den == Complex{0, 0}) {
            return std::nullopt;
        }
        return (1.0 - w) / den;
    }
    const auto &gk = std::get<GenericKernel>(variant_);
    const double tol = 1e-10 * std::max(1.0, std::abs(w));
    std::vector<Complex> starts{0.0};
    for (int i = 1; i <= 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            starts.push_back(std::polar(0.95 * i / 8.0, 2 * std::numbers::pi * j / 8.0 + 0.1 * i));
        }
    }
    std::optional<Complex> best;
    for (Complex z : starts) {
        for (int it = 0; it < 100; ++it) {
            const Complex gz = gk.g(z);
            const Complex dz = gk.dg(z);
            if (!std::isfinite(std::abs(gz)) || !std::isfinite(std::abs(dz)) || dz == Complex{0, 0}) {
                break;
            }
            const Complex step = (gz - w) / dz;
            z -= step;
            if (!std::isfinite(std::abs(z)) || std::abs(z) > 1e6) {
                break;
            }
            if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) {
                break;
            }
        }
        const Complex gz = gk.g(z);
        if (std::isfinite(std::abs(gz)) && std::abs(gz - w) <= tol) {
            if (!best || std::abs(z) < std::abs(*best)) {
                best = z;
            }
            if (std::abs(z) < 1) {
                return best;
            }
        }
    }
    if (!best) {
        throw NoConvergence("generic kernel inversion found no preimage; membership indeterminate");
    }
    return best;
}

bool Kernel::contains(Complex w) const
{
    return margin(w) > 0;
}

double Kernel::margin(Complex w) const
{
    const auto z = preimage(w);
    if (!z) {
        return -std::numeric_limits<double>::infinity();
    }
    return 1.0 - std::abs(*z);
}

series::Series Kernel::taylor(std::size_t degree) const
{
    series::Series c(degree + 1);
    if (const auto *m = std::get_if<MobiusKernel>(&variant_)) {
        c[0] = 1;
        double p = 1; // (-B)^{k-1}
        for (std::size_t k = 1; k <= degree; ++k) {
            c[k] = p * (m->a - m->b);
            p *= -m->b;
        }
        return c;
    }
    const auto &gk = std::get<GenericKernel>(variant_);
    constexpr double rho = 0.9;
    const std::size_t n = std::max<std::size_t>(1024, 4 * (degree + 1));
    std::vector<Complex> samples(n);
    for (std::size_t j = 0; j < n; ++j) {
        samples[j] = gk.g(std::polar(rho, 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n)));
    }
    double scale = 1;
    for (std::size_t k = 0; k <= degree; ++k) {
        Complex s{0, 0};
        for (std::size_t j = 0; j < n; ++j) {
            const double th = -2 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
            s += samples[j] * std::polar(1.0, th);
        }
        c[k] = s / (static_cast<double>(n) * scale);
        scale *= rho;
    }
    // Real coefficients by assumption; drop the quadrature noise.
    for (auto &v : c) {
        v = {v.real(), 0};
    }
    c[0] = 1;
    return c;
}

} // namespace ballmap
