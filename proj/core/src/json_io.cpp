#include <ballmap/json_io.hpp>

#include <cmath>
#include <initializer_list>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include <ballmap/error.hpp>

namespace ballmap
{

namespace
{

using nlohmann::json;

void reject_unknown(const json &j, std::initializer_list<const char *> allowed, const char *where)
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

json parse(const std::string &text)
{
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        throw ParseError(e.what());
    }
}

// Runs `fn`, translating JSON type errors into ParseError.
template <typename Fn>
auto guarded(Fn fn)
{
    try {
        return fn();
    } catch (const json::exception &e) {
        throw ParseError(e.what());
    }
}

Complex read_complex(const json &j)
{
    if (j.is_number()) {
        return {j.get<double>(), 0};
    }
    if (!j.is_array() || j.size() != 2) {
        throw ParseError("complex numbers are written as [re, im]");
    }
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json write_complex(Complex c)
{
    return json::array({c.real(), c.imag()});
}

} // namespace

HoloMap holomap_from_json(const std::string &text)
{
    const json j = parse(text);
    return guarded([&] {
        reject_unknown(j, {"n", "terms", "degree_cap"}, "HoloMap");
        const auto n = j.at("n").get<std::size_t>();
        const int cap = j.value("degree_cap", HoloMap::kDefaultDegreeCap);
        std::vector<Term> terms;
        for (const auto &t : j.at("terms")) {
            reject_unknown(t, {"out", "idx", "re", "im"}, "HoloMap term");
            terms.push_back(Term{t.at("out").get<std::size_t>(), t.at("idx").get<std::vector<int>>(),
                                 Complex(t.value("re", 0.0), t.value("im", 0.0))});
        }
        return HoloMap(n, std::move(terms), cap);
    });
}

std::string holomap_to_json(const HoloMap &f)
{
    json terms = json::array();
    for (const auto &t : f.terms()) {
        terms.push_back({{"out", t.out}, {"idx", t.idx}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
    }
    return json{{"n", f.dim()}, {"degree_cap", f.degree_cap()}, {"terms", terms}}.dump();
}

Func1D func1d_from_json(const std::string &text)
{
    const json j = parse(text);
    return guarded([&] {
        reject_unknown(j, {"builtin", "params", "series"}, "Func1D");
        if (j.contains("series")) {
            if (j.contains("builtin") || j.contains("params")) {
                throw ParseError("Func1D has either 'series' or 'builtin'");
            }
            series::Series s;
            for (const auto &c : j.at("series")) {
                s.push_back(read_complex(c));
            }
            if (s.empty()) {
                throw ParseError("empty series");
            }
            return Func1D::from_series(std::move(s));
        }
        const auto name = j.at("builtin").get<std::string>();
        const json params = j.value("params", json::object());
        if (name == "identity" || name == "koebe") {
            if (!params.empty()) {
                throw ParseError(fmt::format("builtin '{}' takes no parameters", name));
            }
            return name == "identity" ? Func1D::identity() : Func1D::koebe();
        }
        if (name == "mobius-starlike") {
            reject_unknown(params, {"A", "B", "c"}, "mobius-starlike params");
            const Complex c = params.contains("c") ? read_complex(params.at("c")) : Complex(1);
            return Func1D::mobius_starlike(params.at("A").get<double>(), params.at("B").get<double>(), c);
        }
        throw ParseError(fmt::format("unknown builtin function '{}'", name));
    });
}

std::string func1d_to_json(const Func1D &f)
{
    switch (f.kind()) {
    case Func1D::Kind::identity:
        return json{{"builtin", "identity"}}.dump();
    case Func1D::Kind::koebe:
        return json{{"builtin", "koebe"}}.dump();
    case Func1D::Kind::mobius_starlike: {
        const auto &p = f.params();
        return json{{"builtin", "mobius-starlike"},
                    {"params", {{"A", p[0]}, {"B", p[1]}, {"c", json::array({p[2], p[3]})}}}}
            .dump();
    }
    case Func1D::Kind::series: {
        json s = json::array();
        for (const auto &c : f.coefficients()) {
            s.push_back(write_complex(c));
        }
        return json{{"series", s}}.dump();
    }
    case Func1D::Kind::callable:
        break;
    }
    throw Unsupported("callable functions have no JSON form");
}

Kernel kernel_from_json(const std::string &text)
{
    const json j = parse(text);
    return guarded([&] {
        reject_unknown(j, {"mobius", "generic"}, "Kernel");
        if (j.contains("mobius") == j.contains("generic")) {
            throw ParseError("Kernel needs exactly one of 'mobius' and 'generic'");
        }
        if (j.contains("mobius")) {
            const json &m = j.at("mobius");
            reject_unknown(m, {"A", "B"}, "mobius kernel");
            return Kernel::mobius(m.at("A").get<double>(), m.at("B").get<double>());
        }
        return Kernel::generic(j.at("generic").get<std::string>());
    });
}

std::string kernel_to_json(const Kernel &k)
{
    if (k.is_mobius()) {
        return json{{"mobius", {{"A", k.as_mobius().a}, {"B", k.as_mobius().b}}}}.dump();
    }
    const std::string spec = k.spec();
    return json{{"generic", spec.substr(spec.find(':') + 1)}}.dump();
}

SamplePlan sample_plan_from_json(const std::string &text)
{
    const json j = parse(text);
    return guarded([&] {
        reject_unknown(j, {"radii", "dirs", "rmin", "rmax", "seed"}, "SamplePlan");
        SamplePlan p;
        p.radii = j.value("radii", p.radii);
        p.dirs = j.value("dirs", p.dirs);
        p.rmin = j.value("rmin", p.rmin);
        p.rmax = j.value("rmax", p.rmax);
        p.seed = j.value("seed", p.seed);
        if (p.radii < 1 || p.dirs < 1 || !(p.rmin > 0) || !(p.rmax < 1) || p.rmin > p.rmax) {
            throw ParseError("SamplePlan needs radii, dirs >= 1 and 0 < rmin <= rmax < 1");
        }
        return p;
    });
}

std::string sample_plan_to_json(const SamplePlan &p)
{
    return json{{"radii", p.radii}, {"dirs", p.dirs}, {"rmin", p.rmin}, {"rmax", p.rmax}, {"seed", p.seed}}.dump();
}

std::string verdict_to_json(const Verdict &v, Mode mode, const Kernel &k, const ClassParams &p)
{
    json witness = json::array();
    for (const auto &c : v.witness) {
        witness.push_back(write_complex(c));
    }
    json j{{"member", v.member},
           {"mode", to_string(mode)},
           {"kernel", k.spec()},
           {"alpha", p.alpha()},
           {"beta", p.beta()},
           {"samples_used", v.samples_used},
           {"witness", witness}};
    if (std::isfinite(v.worst_margin)) {
        j["worst_margin"] = v.worst_margin;
    } else {
        j["worst_margin"] = fmt::format("{}", v.worst_margin);
    }
    return j.dump(2);
}

std::string metadata_to_json(const OperatorMetadata &m)
{
    return json{{"operator", m.op},
                {"base", m.base},
                {"n", m.n},
                {"alpha_hat", m.alpha_hat},
                {"beta_hat", m.beta_hat},
                {"chain_regime", m.chain_regime},
                {"classical_pfaltzgraff_suffridge", m.classical_pfaltzgraff_suffridge}}
        .dump(2);
}

} // namespace ballmap
