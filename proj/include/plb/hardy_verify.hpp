#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plb/core_params.hpp"
#include "plb/radial.hpp"

namespace plb {

enum class CheckKind { inequality, equality, bracket };
std::string to_string(CheckKind c);

struct VerificationReport {
    std::string case_name;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double lhs_error_est = 0.0;
    double rhs_error_est = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    CheckKind check = CheckKind::inequality;
    double target = 1.0;  // equality checks
    double lower = 0.0;   // bracket checks
    double upper = 0.0;
    bool strict = false;  // bracket: ratio must avoid both ends
    std::map<std::string, double> extras;
    std::string error;  // set when the case threw instead of producing numbers
};

// Recomputes pass from ratio, check kind and tolerance.
void judge(VerificationReport& r);

// Built-in radial test functions, all vanishing at rho = R.
enum class TestFunction { linear_sq, radial_sq, cosine };
const std::vector<TestFunction>& all_test_functions();
std::string to_string(TestFunction t);
std::optional<TestFunction> parse_test_function(const std::string& s);

struct RadialValue {
    double u;
    double du;  // d u / d rho
};
// Evaluated from d = R - rho so that values near the boundary keep precision.
RadialValue eval_test_function(TestFunction t, double R, double rho, double d);

// Annulus r < |x| < R. p != n uses u_k = ((R^m - rho^m)/m)^k, p = n uses
// u_s = ln(R/rho)^s. Equality check against 1.
VerificationReport verify_annulus_sharpness(const ProblemParams& pp, double r, double k_or_s,
                                            double amplitude = 1.0, double tol = 1e-6);

// Ball, p > n, u_k with the u(0) boundary term.
VerificationReport verify_ball_sharpness(const ProblemParams& pp, double k, double amplitude = 1.0,
                                         double tol = 1e-6);

// p < n: u_eps family, ratio strictly inside (1, (1+eps)^p).
// p = n: truncated u_s with s = (n-1)(1+eps)/n, ratio equal to (1+eps)^{n-1}.
// r0 is the truncation radius as a fraction of R (p = n only).
VerificationReport verify_optimality_sweep(const ProblemParams& pp, double eps, double r0 = 0.2,
                                           double amplitude = 1.0, double tol = 1e-6);

// u_k = |x|^k on B_R with weight |x|^l; compares L against
// (1/p)^p |K3 + (p-1) K|^p / K^{p-1}.
VerificationReport verify_trace_sharpness(const ProblemParams& pp, double l, double k,
                                          double amplitude = 1.0, double tol = 1e-10);

// p = 2, n = 3, unit ball, u = sin(pi r)/(pi r) against the eigenfunction weight.
VerificationReport verify_eigenweight_case(double tol = 1e-6, double amplitude = 1.0);

// One-parameter family at delta in (0, n); delta = p uses the logarithmic form.
VerificationReport verify_oneparam_inequality(const ProblemParams& pp, double delta, TestFunction t,
                                              double amplitude = 1.0, double tol = 1e-9);

// B_1 with alpha = beta = 1; mu is the plateau radius used when p = n.
VerificationReport verify_sweep_starshaped(const ProblemParams& pp, double eps, double mu = 0.2,
                                           double amplitude = 1.0, double tol = 1e-6);

// p > n, logarithmic remainder term.
VerificationReport verify_log_term_inequality(const ProblemParams& pp, TestFunction t,
                                              double amplitude = 1.0, double tol = 1e-9);

struct LogTermConstants {
    double a;
    double y0;
    double tau0;
};
LogTermConstants log_term_constants(double p);

enum class PointwiseLemma {
    power_weight,    // delta != p, 1 < delta < n
    log_weight,      // delta = p < n
    ball_profile,    // p > n
    star_distance    // p < n, plus the min(rho/k, R - rho) form
};
const std::vector<PointwiseLemma>& all_pointwise_lemmas();
std::string to_string(PointwiseLemma l);

// Grid minimum of (lhs - rhs) in the lemma's polynomial form over [0, R]
// (or (0, R] when rho = 0 is singular). ratio = 1 + min / scale.
VerificationReport verify_pointwise_lemma(const ProblemParams& pp, PointwiseLemma lemma,
                                          double delta = 0.0, int grid_points = 10000,
                                          double tol = 1e-12);

enum class Suite { sharpness, inequalities, pointwise, sweeps, all };
std::string to_string(Suite s);
std::optional<Suite> parse_suite(const std::string& s);

// Runs the built-in case matrix. A tolerance overrides every case default.
// Cases that throw come back with pass = false and error set.
std::vector<VerificationReport> run_suite(Suite s, std::optional<double> tol = std::nullopt);

}  // namespace plb
