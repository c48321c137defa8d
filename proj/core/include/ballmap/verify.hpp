#ifndef BALLMAP_VERIFY_HPP
#define BALLMAP_VERIFY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <ballmap/bounds.hpp>
#include <ballmap/classes.hpp>
#include <ballmap/extension.hpp>
#include <ballmap/kernel.hpp>
#include <ballmap/linalg.hpp>
#include <ballmap/loewner.hpp>
#include <ballmap/mapping.hpp>
#include <ballmap/sampling.hpp>

namespace ballmap
{

// Orthonormal basis of {w : <w, z> = 0}, the holomorphic tangent space of
// the sphere through z.
std::vector<CVec> tangent_frame(const CVec &z);

enum class Extremum { max, min };

struct SphereExtremum {
    CVec z;
    double value = 0;
};

// Best of `budget` seeded samples on ||z|| = r, refined by 200 sweeps of
// projected coordinate search (step 1e-3, shrinking by 0.7 after a sweep
// without improvement).
SphereExtremum sphere_extremum(const Mapping &f, double r, Extremum mode, int budget, std::uint64_t seed);

// w -> f(r w) / m.
class RescaledMap final : public Mapping
{
public:
    RescaledMap(std::shared_ptr<const Mapping> f, double r, double m) : f_(std::move(f)), r_(r), m_(m) {}

    [[nodiscard]] std::size_t dim() const override
    {
        return f_->dim();
    }
    [[nodiscard]] CVec eval(const CVec &w) const override;
    [[nodiscard]] CMatrix jacobian(const CVec &w) const override;

private:
    std::shared_ptr<const Mapping> f_;
    double r_;
    double m_;
};

struct BoundaryData {
    CVec z0;
    CVec w0;
    double lambda = 0;
    double lambda_imag_residual = 0;
    // min over the tangent frame of sqrt(lambda) - ||J delta||.
    double tangent_margin = 0;
    // lambda^{(n+1)/2} - |det J|.
    double det_margin = 0;
};

// Boundary Schwarz quantities of a self-map of the ball at a contact point
// z0 (||z0|| = 1, ||g(z0)|| = 1 to 1e-9; NotBoundaryPoint otherwise).
BoundaryData boundary_lambda(const Mapping &g, const CVec &z0);

// A map known to belong to the class with the given kernel and parameters,
// together with a description of how it was built.
struct CertifiedMember {
    std::string provenance;
    std::shared_ptr<const Mapping> map;
    Kernel kernel = Kernel::mobius(-1, 1);
    ClassParams params;
};

// The Mobius kernels used for the 1-D families.
std::vector<Kernel> reference_kernels();

// `per_kernel` truncated-series g-starlike functions f / (z f') = g(c z) per
// kernel, with c drawn from the seed.
std::vector<CertifiedMember> gstarlike_1d_family(const std::vector<Kernel> &kernels, int per_kernel,
                                                 std::uint64_t seed, int degree = 256);

// Roper-Suffridge extensions of starlike (A = -1, B = 1) series, one per
// entry of `dims`.
std::vector<CertifiedMember> rs_extension_family(const std::vector<std::size_t> &dims, std::uint64_t seed,
                                                 int degree = 256);

// Two-dimensional members for the distortion checks: Roper-Suffridge
// extensions of starlike series and (f(z1), z2 f(z1)/z1) extensions of
// class members for several (kernel, alpha, beta) with F1 > 0 up to r = 0.7.
std::vector<CertifiedMember> distortion_family(int count, std::uint64_t seed, int degree = 128);

// h(z) = z psi(z1) with psi = tilde_inverse(g(phi(z1))) for a Schwarz
// function phi(z1) = c z1 (z1 - a)/(1 - conj(a) z1).
class ScalarFieldMap final : public Mapping
{
public:
    ScalarFieldMap(std::size_t n, Kernel k, ClassParams p, Complex c, Complex a);

    [[nodiscard]] std::size_t dim() const override
    {
        return n_;
    }
    [[nodiscard]] CVec eval(const CVec &z) const override;
    [[nodiscard]] CMatrix jacobian(const CVec &z) const override;
    [[nodiscard]] std::string name() const override;

private:
    std::size_t n_;
    Kernel k_;
    ClassParams p_;
    Complex c_;
    Complex a_;
};

std::vector<CertifiedMember> lemma23_family(int count, std::uint64_t seed);

// Tolerances of the individual checks; a check passes when its worst margin
// is >= -tolerance.
struct Tolerances {
    double growth = 1e-9;
    double lemma23 = 1e-9;
    double distortion = 1e-7;
    double coefficient = 1e-6;
    double shearing = 1e-6;
    double specialization = 1e-12;
    double classical_growth = 1e-12;
    double classical_distortion = 1e-10;
    double quadrature = 1e-8;
    double subordination = 1e-8;
    double semigroup = 1e-9;
    double pde = 1e-6;
    double commutation = 1e-9;
    double chain_field = 1e-6;
    double flow_law = 1e-6;
    double flow_ratio = 1e-2;
};

struct CheckRecord {
    std::string name;
    std::string cites;
    long samples = 0;
    double worst_margin = 0;
    double tolerance = 0;
    bool pass = true;
    std::string note;
};

// Multiplies the evaluated bounds, to confirm that checks can fail.
struct BoundScale {
    double phi1 = 1;
    double phi2 = 1;
};

struct CheckSizes {
    int radii = 20;
    int dirs = 50;
    int extremum_budget = 400;
    int shearing_samples = 1000000;
    int chain_points = 100;
    int flow_steps_per_unit = 1000;
};

// Growth and n = 1 distortion at A = -1, B = 1 against the classical
// one-variable formulas.
std::vector<CheckRecord> check_classical_reduction(const Tolerances &tol);
CheckRecord check_closed_vs_quadrature(const Tolerances &tol);
CheckRecord check_growth_sandwich(const std::vector<CertifiedMember> &family, const CheckSizes &sizes,
                                  std::uint64_t seed, const Tolerances &tol, const BoundScale &scale = {});
CheckRecord check_lemma23_sandwich(const std::vector<CertifiedMember> &family, const CheckSizes &sizes,
                                   std::uint64_t seed, const Tolerances &tol);
CheckRecord check_coefficient_bound(const Tolerances &tol);
CheckRecord check_shearing_sup(const CheckSizes &sizes, std::uint64_t seed, const Tolerances &tol);
// Distortion at heuristic sphere extrema, in order: upper bounds at the
// maximum, lower bounds at the minimum, the unit-vector bound at random
// points, and the boundary Schwarz quantity lambda <= 1/F1 at the maximum.
std::vector<CheckRecord> check_distortion(const std::vector<CertifiedMember> &family,
                                          const std::vector<double> &radii, const CheckSizes &sizes,
                                          std::uint64_t seed, const Tolerances &tol);
CheckRecord check_specializations(const Tolerances &tol);
CheckRecord check_transition_subordination(const CheckSizes &sizes, std::uint64_t seed, const Tolerances &tol);
CheckRecord check_transition_semigroup(const CheckSizes &sizes, std::uint64_t seed, const Tolerances &tol);
CheckRecord check_pde_residual(const CheckSizes &sizes, std::uint64_t seed, const Tolerances &tol);
CheckRecord check_chain_field(const CheckSizes &sizes, std::uint64_t seed, const Tolerances &tol);
CheckRecord check_commutation(const CheckSizes &sizes, std::uint64_t seed, const Tolerances &tol);
// Spirallike flows: the norm law ||F(z(t))|| e^{t cos beta} = ||F(z)|| on
// [0, 2], monotone decrease of ||z(t)||, and ||F(z(t))|| / ||z(t)|| near 1
// at t = 20.
std::vector<CheckRecord> check_flows(const CheckSizes &sizes, std::uint64_t seed, const Tolerances &tol);

struct SuiteConfig {
    std::uint64_t seed = 20240601;
    // Families: "gstarlike-1d", "rs-extension", "lemma23-field",
    // "distortion-n2", "kernels", "chains", "flows".
    std::vector<std::string> families;
    // Check names to run; empty runs every check whose family is present.
    std::vector<std::string> checks;
    CheckSizes sizes;
    Tolerances tolerances;
    BoundScale bound_scale;
    int members_per_kernel = 20;
    int rs_members = 20;
    int lemma23_members = 50;
    int distortion_members = 20;
    std::vector<double> distortion_radii{0.3, 0.5, 0.7};
};

// Parses the suite JSON; unknown fields raise ParseError.
SuiteConfig parse_suite_config(const std::string &json_text);
SuiteConfig default_suite_config();

// Every family and every check name, in execution order.
const std::vector<std::string> &suite_families();
const std::vector<std::string> &suite_check_names();

struct SuiteReport {
    std::uint64_t seed = 0;
    std::vector<CheckRecord> records;
    double wall_time_s = 0;
    [[nodiscard]] bool pass() const;
};

// Runs the selected checks. A check that throws is recorded as failed with
// the error text; the suite itself does not abort.
SuiteReport run_suite(const SuiteConfig &config);

std::string suite_report_json(const SuiteReport &report);
// name,cites,samples,worst_margin,tolerance,pass (no timing, so reruns are byte-identical).
std::string suite_report_csv(const SuiteReport &report);

} // namespace ballmap

#endif
