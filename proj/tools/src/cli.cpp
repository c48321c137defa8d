#include <ballmap_cli/cli.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <ballmap/bounds.hpp>
#include <ballmap/classes.hpp>
#include <ballmap/error.hpp>
#include <ballmap/extension.hpp>
#include <ballmap/func1d.hpp>
#include <ballmap/holomap.hpp>
#include <ballmap/json_io.hpp>
#include <ballmap/kernel.hpp>
#include <ballmap/loewner.hpp>
#include <ballmap/sampling.hpp>
#include <ballmap/verify.hpp>

namespace ballmap::cli
{

namespace
{

// Raised for argument problems found after CLI11 parsing.
struct InvalidInput : Error {
    using Error::Error;
};

std::string num(double x)
{
    return fmt::format("{:.17g}", x);
}

double to_double(const std::string &s)
{
    double v = 0;
    const char *first = s.data();
    const char *last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw InvalidInput(fmt::format("not a number: '{}'", s));
    }
    return v;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput(fmt::format("cannot read '{}'", path));
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidInput(fmt::format("cannot write '{}'", path));
    }
    out << text;
}

// Writes to the named file, or to `fallback` when the path is empty.
class Sink
{
public:
    Sink(const std::string &path, std::ostream &fallback) : path_(path), fallback_(fallback) {}
    ~Sink() = default;

    std::ostream &stream()
    {
        return path_.empty() ? fallback_ : buffer_;
    }
    void finish()
    {
        if (!path_.empty()) {
            write_file(path_, buffer_.str());
        }
    }

private:
    std::string path_;
    std::ostream &fallback_;
    std::ostringstream buffer_;
};

// "re,im;re,im;..." with an optional imaginary part.
CVec parse_point(const std::string &spec)
{
    std::vector<Complex> entries;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';')) {
        const auto comma = item.find(',');
        if (comma == std::string::npos) {
            entries.emplace_back(to_double(item), 0);
        } else {
            entries.emplace_back(to_double(item.substr(0, comma)), to_double(item.substr(comma + 1)));
        }
    }
    if (entries.empty()) {
        throw InvalidInput("empty point");
    }
    return CVec(std::move(entries));
}

bool is_json_path(const std::string &s)
{
    return s.size() > 5 && s.substr(s.size() - 5) == ".json";
}

// identity | neg-identity | koebe | <file>.json (HoloMap or Func1D).
std::shared_ptr<const Mapping> load_map(const std::string &spec, std::size_t n)
{
    if (spec == "identity") {
        return std::make_shared<HoloMap>(HoloMap::identity(n));
    }
    if (spec == "neg-identity") {
        return std::make_shared<HoloMap>(HoloMap::scaled_identity(n, -1.0));
    }
    if (spec == "koebe") {
        return std::make_shared<Func1DMap>(Func1D::koebe());
    }
    if (spec == "koebe-rs") {
        return std::make_shared<ExtendedMap>(roper_suffridge(Func1D::koebe(), n));
    }
    if (!is_json_path(spec)) {
        throw InvalidInput(fmt::format("unknown map '{}'", spec));
    }
    const std::string text = read_file(spec);
    if (text.find("\"terms\"") != std::string::npos) {
        return std::make_shared<HoloMap>(holomap_from_json(text));
    }
    return std::make_shared<Func1DMap>(func1d_from_json(text));
}

Func1D load_func(const std::string &spec)
{
    if (spec == "identity") {
        return Func1D::identity();
    }
    if (spec == "koebe") {
        return Func1D::koebe();
    }
    if (!is_json_path(spec)) {
        throw InvalidInput(fmt::format("unknown function '{}'", spec));
    }
    return func1d_from_json(read_file(spec));
}

HoloMap load_holomap(const std::string &spec, std::size_t n)
{
    if (spec == "identity") {
        return HoloMap::identity(n);
    }
    if (!is_json_path(spec)) {
        throw InvalidInput(fmt::format("unknown polynomial map '{}'", spec));
    }
    return holomap_from_json(read_file(spec));
}

std::string point_header(const char *prefix, std::size_t n)
{
    std::string h;
    for (std::size_t k = 1; k <= n; ++k) {
        h += fmt::format(",{0}{1}_re,{0}{1}_im", prefix, k);
    }
    return h;
}

std::string point_cells(const CVec &z)
{
    std::string s;
    for (const auto &c : z) {
        s += "," + num(c.real()) + "," + num(c.imag());
    }
    return s;
}

struct Common {
    std::string kernel = "mobius:-1,1";
    double alpha = 0;
    double beta = 0;
};

void add_class_options(CLI::App &cmd, Common &c)
{
    cmd.add_option("--kernel", c.kernel, "Kernel: mobius:A,B or generic:NAME")->capture_default_str();
    cmd.add_option("--alpha", c.alpha, "alpha in [0, 1)")->capture_default_str();
    cmd.add_option("--beta", c.beta, "beta in (-pi/2, pi/2)")->capture_default_str();
}

int cmd_bounds(const Common &c, const std::string &radii_spec, int n, bool compare, const std::string &out_path,
               std::ostream &out, std::ostream &err)
{
    const Kernel k = Kernel::parse(c.kernel);
    const ClassParams p(c.alpha, c.beta);
    const std::vector<double> radii = parse_radii(radii_spec);
    if (n < 1) {
        throw InvalidInput("--n must be >= 1");
    }
    Sink sink(out_path, out);
    std::ostream &os = sink.stream();
    os << bound_report_csv_header();
    if (compare) {
        os << ",phi1_quad,phi2_quad,max_rel_discrepancy";
    }
    os << '\n';
    double worst = 0;
    for (double r : radii) {
        const BoundReport row = bound_report(k, p, r, n);
        os << to_csv_row(row);
        if (compare) {
            const GrowthBounds q = growth_bounds_quadrature(k, p.alpha(), r);
            double disc = 0;
            if (r > 0) {
                disc = std::max(std::abs(q.lower - row.phi1) / row.phi1, std::abs(q.upper - row.phi2) / row.phi2);
            }
            worst = std::max(worst, disc);
            os << ',' << num(q.lower) << ',' << num(q.upper) << ',' << num(disc);
        }
        os << '\n';
    }
    sink.finish();
    if (compare) {
        err << "max relative discrepancy closed vs quadrature: " << num(worst) << '\n';
    }
    return kExitOk;
}

int cmd_check(const Common &c, const std::string &map_spec, std::size_t n, const std::string &mode_name,
              const std::string &plan_path, std::optional<std::uint64_t> seed, std::ostream &out)
{
    const Kernel k = Kernel::parse(c.kernel);
    const ClassParams p(c.alpha, c.beta);
    const Mode mode = parse_mode(mode_name);
    SamplePlan plan;
    if (!plan_path.empty()) {
        plan = sample_plan_from_json(read_file(plan_path));
    }
    if (seed) {
        plan.seed = *seed;
    }
    const auto subject = load_map(map_spec, n);
    Verdict v;
    try {
        v = membership_verdict(*subject, mode, k, p, plan);
    } catch (const SingularJacobian &e) {
        // A sampled point where the map is not locally biholomorphic.
        v.member = false;
        v.worst_margin = -std::numeric_limits<double>::infinity();
        v.samples_used = 0;
    }
    out << verdict_to_json(v, mode, k, p) << '\n';
    return v.member ? kExitOk : kExitNonMember;
}

struct ExtendArgs {
    std::string f = "koebe";
    std::string map;
    std::string op = "modified-rs";
    double ahat = 0;
    double bhat = 0.5;
    std::size_t n = 2;
    int samples = 16;
    double radius = 0.5;
    std::uint64_t seed = 1;
    std::string out_path;
    std::string meta_path;
};

int cmd_extend(const ExtendArgs &a, std::ostream &out)
{
    std::optional<ExtendedMap> m;
    if (a.op == "modified-rs") {
        m.emplace(modified_rs(load_func(a.f), ExtensionParams(a.ahat, a.bhat), a.n));
    } else if (a.op == "roper-suffridge") {
        m.emplace(roper_suffridge(load_func(a.f), a.n));
    } else if (a.op == "pfaltzgraff-suffridge") {
        if (a.map.empty()) {
            throw InvalidInput("pfaltzgraff-suffridge needs --map (a polynomial map)");
        }
        m.emplace(pfaltzgraff_suffridge(load_holomap(a.map, a.n), a.ahat));
    } else {
        throw InvalidInput(fmt::format("unknown operator '{}'", a.op));
    }
    if (!(a.radius > 0 && a.radius < 1) || a.samples < 1) {
        throw InvalidInput("--radius must lie in (0, 1) and --samples must be >= 1");
    }
    const std::size_t dim = m->dim();
    const auto points = sphere_sample(dim, a.radius, static_cast<std::size_t>(a.samples), a.seed);
    Sink sink(a.out_path, out);
    std::ostream &os = sink.stream();
    os << "i" << point_header("z", dim) << point_header("w", dim) << '\n';
    for (std::size_t i = 0; i < points.size(); ++i) {
        os << i << point_cells(points[i]) << point_cells(m->eval(points[i])) << '\n';
    }
    sink.finish();
    if (!a.meta_path.empty()) {
        write_file(a.meta_path, metadata_to_json(m->metadata()) + "\n");
    }
    return kExitOk;
}

struct ChainArgs {
    bool flow = false;
    std::string map = "identity";
    std::string f = "koebe";
    std::string kernel = "mobius:-1,1";
    double beta = 0;
    double ahat = 0;
    double bhat = 0.5;
    std::size_t n = 2;
    std::string z = "0.3,0.1;0.2,-0.2";
    double t_end = 2;
    int steps = 2000;
    std::string out_path;
};

int cmd_chain(const ChainArgs &a, std::ostream &out, std::ostream &err)
{
    const CVec z = parse_point(a.z);
    if (a.steps < 1 || !(a.t_end > 0)) {
        throw InvalidInput("--steps must be >= 1 and --t-end > 0");
    }
    Sink sink(a.out_path, out);
    std::ostream &os = sink.stream();
    if (a.flow) {
        const auto f = load_map(a.map, z.size());
        const FlowTrajectory tr = spirallike_flow(*f, z, a.beta, a.t_end, a.steps);
        const std::size_t n = z.size();
        os << "t" << point_header("z", n) << ",z_norm,F_norm,norm_law_residual\n";
        const double f0 = tr.f_norms.front();
        for (std::size_t i = 0; i < tr.times.size(); ++i) {
            const double law = tr.f_norms[i] * std::exp(tr.times[i] * std::cos(a.beta)) - f0;
            os << num(tr.times[i]) << point_cells(tr.states[i]) << ',' << num(tr.z_norms[i]) << ','
               << num(tr.f_norms[i]) << ',' << num(law) << '\n';
        }
        sink.finish();
        err << "norm direction: " << tr.norm_direction << " (flag: stated direction is increasing)\n";
        return kExitOk;
    }
    const Kernel k = Kernel::parse(a.kernel);
    const ChainND chain = rs_chain(starlike_chain(load_func(a.f), k), ExtensionParams(a.ahat, a.bhat), z.size());
    const CVec f0 = chain.eval(z, 0);
    os << "t" << point_header("V", z.size()) << ",V_norm,subordination_residual,field_margin\n";
    for (int i = 0; i <= a.steps; ++i) {
        const double t = a.t_end * i / a.steps;
        const CVec v = transition_nd(chain, z, 0, t);
        const double sub = (f0 - chain.eval(v, t)).norm();
        double margin = std::numeric_limits<double>::quiet_NaN();
        if (t >= kDefaultTimeStep) {
            margin = pde_residual(chain, k, ClassParams(), z, t).margin;
        }
        os << num(t) << point_cells(v) << ',' << num(v.norm()) << ',' << num(sub) << ',' << num(margin) << '\n';
    }
    sink.finish();
    return kExitOk;
}

int cmd_suite(const std::string &config, const std::string &out_path, const std::string &csv_path,
              std::ostream &out, std::ostream &err)
{
    const SuiteConfig cfg = config == "default" ? default_suite_config() : parse_suite_config(read_file(config));
    const SuiteReport report = run_suite(cfg);
    for (const auto &r : report.records) {
        err << fmt::format("{:<26} {} worst_margin={:.3e} tolerance={:.1e}{}\n", r.name, r.pass ? "PASS" : "FAIL",
                           r.worst_margin, r.tolerance, r.note.empty() ? "" : "  [" + r.note + "]");
    }
    if (out_path.empty()) {
        out << suite_report_json(report);
    } else {
        write_file(out_path, suite_report_json(report));
    }
    if (!csv_path.empty()) {
        write_file(csv_path, suite_report_csv(report));
    }
    return report.pass() ? kExitOk : kExitNonMember;
}

} // namespace

std::vector<double> parse_radii(const std::string &spec)
{
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(item);
    }
    std::vector<double> radii;
    if (parts.size() == 1) {
        radii.push_back(to_double(parts[0]));
    } else if (parts.size() == 3) {
        const double a = to_double(parts[0]);
        const double b = to_double(parts[1]);
        int count = 0;
        const auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
        if (ec != std::errc() || ptr != parts[2].data() + parts[2].size() || count < 1) {
            throw InvalidInput(fmt::format("bad radius count '{}'", parts[2]));
        }
        for (int i = 0; i < count; ++i) {
            radii.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
        }
    } else {
        throw InvalidInput("radii must be 'start:end:count' or a single value");
    }
    for (double r : radii) {
        if (!(r >= 0 && r < 1)) {
            throw InvalidInput("radii must lie in [0, 1)");
        }
    }
    return radii;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Growth, distortion and Loewner-chain numerics for starlike-type mappings of the unit ball"};
    app.name("ballmap");
    app.require_subcommand(1);

    Common common;
    std::string radii = "0.1:0.9:9";
    int bounds_n = 2;
    bool compare = false;
    std::string bounds_out;
    auto *bounds = app.add_subcommand("bounds", "Tabulate growth, real-part/modulus and distortion bounds over radii");
    add_class_options(*bounds, common);
    bounds->add_option("--radii", radii, "start:end:count or a single radius")->capture_default_str();
    bounds->add_option("--n", bounds_n, "Dimension for the determinant bounds")->capture_default_str();
    bounds->add_flag("--compare-quadrature", compare, "Add quadrature growth columns and a discrepancy summary");
    bounds->add_option("--out", bounds_out, "CSV output path (default stdout)");

    std::string map_spec = "identity";
    std::size_t check_n = 2;
    std::string mode = "s_g_star";
    std::string plan_path;
    std::optional<std::uint64_t> check_seed;
    auto *check = app.add_subcommand("check", "Sampled class-membership test");
    add_class_options(*check, common);
    check->add_option("--map", map_spec, "identity | neg-identity | koebe | koebe-rs | FILE.json")
        ->capture_default_str();
    check->add_option("--n", check_n, "Dimension for identity-type maps")->capture_default_str();
    check->add_option("--mode", mode, "m | m_g | m_tilde | s_hat | s_g_star | spirallike | almost_starlike")
        ->capture_default_str();
    check->add_option("--plan", plan_path, "SamplePlan JSON");
    check->add_option("--seed", check_seed, "Override the plan seed");

    ExtendArgs ext;
    auto *extend = app.add_subcommand("extend", "Apply an extension operator and sample it on a sphere");
    extend->add_option("--f", ext.f, "Base function: identity | koebe | FILE.json")->capture_default_str();
    extend->add_option("--map", ext.map, "Base polynomial map for pfaltzgraff-suffridge: identity | FILE.json");
    extend->add_option("--op", ext.op, "modified-rs | roper-suffridge | pfaltzgraff-suffridge")
        ->capture_default_str();
    extend->add_option("--ahat", ext.ahat, "alpha_hat")->capture_default_str();
    extend->add_option("--bhat", ext.bhat, "beta_hat")->capture_default_str();
    extend->add_option("--n", ext.n, "Dimension (base dimension for pfaltzgraff-suffridge)")->capture_default_str();
    extend->add_option("--samples", ext.samples, "Number of sphere samples")->capture_default_str();
    extend->add_option("--radius", ext.radius, "Sampling radius")->capture_default_str();
    extend->add_option("--seed", ext.seed, "Sampling seed")->capture_default_str();
    extend->add_option("--out", ext.out_path, "CSV output path (default stdout)");
    extend->add_option("--meta", ext.meta_path, "Write operator metadata JSON here");

    ChainArgs ch;
    auto *chain = app.add_subcommand("chain", "Loewner chain transitions or a spirallike flow trajectory");
    chain->add_flag("--flow", ch.flow, "Integrate the spirallike flow instead of chain transitions");
    chain->add_option("--map", ch.map, "Flow map: identity | koebe-rs | FILE.json")->capture_default_str();
    chain->add_option("--f", ch.f, "Chain base function: identity | koebe | FILE.json")->capture_default_str();
    chain->add_option("--kernel", ch.kernel, "Kernel for the chain")->capture_default_str();
    chain->add_option("--beta", ch.beta, "Spiral angle beta for the flow")->capture_default_str();
    chain->add_option("--ahat", ch.ahat, "alpha_hat of the chain")->capture_default_str();
    chain->add_option("--bhat", ch.bhat, "beta_hat of the chain")->capture_default_str();
    chain->add_option("--z", ch.z, "Start point 're,im;re,im;...'")->capture_default_str();
    chain->add_option("--t-end", ch.t_end, "Final time")->capture_default_str();
    chain->add_option("--steps", ch.steps, "Number of time steps")->capture_default_str();
    chain->add_option("--out", ch.out_path, "CSV output path (default stdout)");

    std::string config = "default";
    std::string suite_out;
    std::string suite_csv;
    auto *suite = app.add_subcommand("suite", "Run the verification suite");
    suite->add_option("--config", config, "Suite JSON path or 'default'")->capture_default_str();
    suite->add_option("--out", suite_out, "Report JSON path (default stdout)");
    suite->add_option("--csv", suite_csv, "Report CSV path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "ballmap: " << e.what() << '\n';
        return kExitInvalid;
    }

    try {
        if (*bounds) {
            return cmd_bounds(common, radii, bounds_n, compare, bounds_out, out, err);
        }
        if (*check) {
            return cmd_check(common, map_spec, check_n, mode, plan_path, check_seed, out);
        }
        if (*extend) {
            return cmd_extend(ext, out);
        }
        if (*chain) {
            return cmd_chain(ch, out, err);
        }
        return cmd_suite(config, suite_out, suite_csv, out, err);
    } catch (const InvalidInput &e) {
        err << "ballmap: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const ParseError &e) {
        err << "ballmap: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const DomainError &e) {
        err << "ballmap: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const DimensionMismatch &e) {
        err << "ballmap: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const NotGStarlike &e) {
        err << "ballmap: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const Error &e) {
        err << "ballmap: numerical failure: " << e.what() << '\n';
        return kExitNumeric;
    }
}

} // namespace ballmap::cli
