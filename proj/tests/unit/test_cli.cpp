#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <ballmap_cli/cli.hpp>

using ballmap::cli::run;

namespace
{

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &text)
{
    std::vector<std::string> v;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        v.push_back(line);
    }
    return v;
}

std::vector<double> cells(const std::string &line)
{
    std::vector<double> v;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        v.push_back(std::stod(cell));
    }
    return v;
}

std::filesystem::path scratch(const std::string &name)
{
    const auto dir = std::filesystem::temp_directory_path() / "ballmap_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("bounds command")
{
    const Outcome o = call({"bounds", "--kernel", "mobius:-1,1", "--alpha", "0", "--beta", "0", "--radii", "0.1:0.9:9"});
    CHECK(o.code == 0);
    const auto rows = lines(o.out);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0] == "r,phi1,phi2,B1,B2,B3,B4,T,F1,F2,det_upper,det_lower,tangent_upper,tangent_lower,unitvec_upper");
    const auto mid = cells(rows[5]);
    CHECK(mid[0] == 0.5);
    CHECK(std::abs(mid[2] - 2.0) < 1e-14);

    const Outcome zero = call({"bounds", "--radii", "0"});
    CHECK(zero.code == 0);
    const auto zr = lines(zero.out);
    REQUIRE(zr.size() == 2);
    const auto z = cells(zr[1]);
    CHECK(z[0] == 0.0);
    CHECK(z[1] == 0.0);
    CHECK(z[2] == 0.0);

    CHECK(call({"bounds", "--alpha", "1.0"}).code == 2);
    CHECK(call({"bounds", "--radii", "0.1:0.9"}).code == 2);
    CHECK(call({"bounds", "--kernel", "mobius:1,-1"}).code == 2);
    CHECK(call({"bounds", "--no-such-flag"}).code == 2);
    CHECK(call({"--help"}).code == 0);

    const Outcome q = call({"bounds", "--radii", "0.2:0.8:4", "--compare-quadrature"});
    CHECK(q.code == 0);
    CHECK(lines(q.out)[0].find("phi1_quad,phi2_quad,max_rel_discrepancy") != std::string::npos);
    CHECK(q.err.find("max relative discrepancy") != std::string::npos);

    // 17 significant digits
    CHECK(rows[5].rfind("0.5,0.22222222222222221,2,", 0) == 0);
    CHECK(cells(rows[1])[0] == 0.1);
}

TEST_CASE("check command")
{
    const Outcome id = call({"check", "--map", "identity", "--mode", "m"});
    CHECK(id.code == 0);
    CHECK(id.out.find("\"member\": true") != std::string::npos);
    const auto at = id.out.find("\"worst_margin\": ");
    REQUIRE(at != std::string::npos);
    CHECK(std::abs(std::stod(id.out.substr(at + 16)) - 1.0) < 1e-12);

    CHECK(call({"check", "--map", "koebe", "--mode", "s_g_star", "--kernel", "mobius:-1,1"}).code == 0);
    CHECK(call({"check", "--map", "neg-identity", "--mode", "m"}).code == 1);
    CHECK(call({"check", "--map", "no-such-map"}).code == 2);
    CHECK(call({"check", "--mode", "bogus"}).code == 2);

    const auto path = scratch("map.json");
    std::ofstream(path) << R"({"n": 2, "terms": [{"out": 0, "idx": [1, 0], "re": 1, "im": 0},
                                                  {"out": 1, "idx": [0, 1], "re": 1, "im": 0},
                                                  {"out": 0, "idx": [0, 2], "re": 0.1, "im": 0}]})";
    CHECK(call({"check", "--map", path.string(), "--mode", "m"}).code == 0);
    std::ofstream(path) << R"({"n": 2, "terms": [], "junk": true})";
    CHECK(call({"check", "--map", path.string()}).code == 2);
}

TEST_CASE("extend command")
{
    const Outcome a = call({"extend", "--f", "koebe", "--ahat", "0", "--bhat", "0.5", "--n", "2"});
    const Outcome b = call({"extend", "--f", "koebe", "--op", "roper-suffridge", "--n", "2"});
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    const auto ra = lines(a.out);
    const auto rb = lines(b.out);
    REQUIRE(ra.size() == rb.size());
    double worst = 0;
    for (std::size_t i = 1; i < ra.size(); ++i) {
        const auto ca = cells(ra[i]);
        const auto cb = cells(rb[i]);
        REQUIRE(ca.size() == cb.size());
        for (std::size_t k = 0; k < ca.size(); ++k) {
            worst = std::max(worst, std::abs(ca[k] - cb[k]));
        }
    }
    CHECK(worst <= 1e-14);
    CHECK(lines(a.out)[0] == "i,z1_re,z1_im,z2_re,z2_im,w1_re,w1_im,w2_re,w2_im");

    const auto meta = scratch("meta.json");
    CHECK(call({"extend", "--op", "pfaltzgraff-suffridge", "--map", "identity", "--n", "2", "--ahat",
                "0.3333333333333333", "--meta", meta.string()})
              .code
          == 0);
    std::ifstream in(meta);
    const std::string js((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(js.find("\"classical_pfaltzgraff_suffridge\": true") != std::string::npos);

    CHECK(call({"extend", "--op", "bogus"}).code == 2);
    CHECK(call({"extend", "--ahat", "-1"}).code == 2);
    CHECK(call({"extend", "--samples", "4", "--seed", "3"}).out == call({"extend", "--samples", "4", "--seed", "3"}).out);
}

TEST_CASE("chain command")
{
    const double beta = std::numbers::pi / 4;
    const Outcome f = call({"chain", "--flow", "--beta", "0.7853981633974483", "--map", "identity", "--z",
                            "0.3,0.1;0.2,-0.2", "--t-end", "2", "--steps", "2000"});
    CHECK(f.code == 0);
    CHECK(f.err.find("decreasing") != std::string::npos);
    const auto rows = lines(f.out);
    REQUIRE(rows.size() == 2002);
    CHECK(rows[0] == "t,z1_re,z1_im,z2_re,z2_im,z_norm,F_norm,norm_law_residual");
    const std::complex<double> z1(0.3, 0.1);
    const std::complex<double> rate = std::exp(std::complex<double>(0, -beta));
    for (std::size_t i = 1; i < rows.size(); i += 200) {
        const auto c = cells(rows[i]);
        const auto expect = std::exp(-rate * c[0]) * z1;
        CHECK(std::abs(std::complex<double>(c[1], c[2]) - expect) < 1e-12);
        CHECK(std::abs(c[7]) < 1e-12);
    }

    const Outcome t = call({"chain", "--f", "koebe", "--z", "0.3,0;0.1,0.1", "--t-end", "1", "--steps", "4"});
    CHECK(t.code == 0);
    const auto tr = lines(t.out);
    REQUIRE(tr.size() == 6);
    CHECK(tr[0] == "t,V1_re,V1_im,V2_re,V2_im,V_norm,subordination_residual,field_margin");
    for (std::size_t i = 1; i < tr.size(); ++i) {
        const auto c = cells(tr[i]);
        CHECK(c[6] < 1e-8);
        if (i > 1) {
            CHECK(c[7] >= -1e-6);
        }
    }
    CHECK(call({"chain", "--bhat", "0.9"}).code == 2);
    CHECK(call({"chain", "--z", "a,b"}).code == 2);
}

TEST_CASE("suite command")
{
    const auto cfg = scratch("suite.json");
    std::ofstream(cfg) << R"({"seed": 3, "families": ["kernels"], "checks": ["classical_growth", "coefficient_bound"]})";
    const auto csv = scratch("report.csv");
    const auto out = scratch("report.json");
    const Outcome o = call({"suite", "--config", cfg.string(), "--out", out.string(), "--csv", csv.string()});
    CHECK(o.code == 0);
    CHECK(std::filesystem::exists(out));
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "name,cites,samples,worst_margin,tolerance,pass");

    std::ofstream(cfg) << R"({"families": ["kernels"], "unknown": 1})";
    CHECK(call({"suite", "--config", cfg.string()}).code == 2);
    CHECK(call({"suite", "--config", scratch("missing.json").string()}).code == 2);

    std::ofstream(cfg) << R"({"families": ["gstarlike-1d"], "checks": ["growth_sandwich"], "members_per_kernel": 1,
                            "sizes": {"radii": 3, "dirs": 3}, "bound_scale": {"phi2": 0.5}})";
    CHECK(call({"suite", "--config", cfg.string()}).code == 1);
}
