#pragma once

#include <vector>

#include "plb/core_params.hpp"

namespace plb {

struct RadialGrid {
    std::vector<double> nodes;   // 0 = nodes[0] < ... < nodes[N] = R
    std::vector<double> values;  // same length as nodes
};

// N + 1 equally spaced nodes on [0, R].
RadialGrid uniform_grid(double R, int N);

// phi(rho) = int_rho^R t^{(1-n)/(p-1)} (int_0^t s^{n-1} w(s) ds)^{1/(p-1)} dt,
// the radial solution of -Delta_p phi = w with phi(R) = 0.
// Both integrals assume a power law inside each cell (linear when a value
// is not positive); the first cell reuses the exponent of the second.
// w may be +inf at rho = 0 (a singular source such as s^{-delta}).
// DomainError on negative or NaN w, NumericError when a nonzero w
// underflows to a zero inner integral everywhere. w == 0 gives phi == 0.
RadialGrid poisson_solve_radial(const RadialGrid& w, const ProblemParams& pp);

struct EigenResult {
    double lambda = 0.0;
    int iterations = 0;
    double residual = 0.0;  // relative change of lambda in the last step
    RadialGrid profile;     // unit L^p norm
};

// Inverse power iteration from u = 1. ConvergenceError after max_iter steps.
EigenResult inverse_power_iterate(const ProblemParams& pp, int grid_n = 2048, double tol = 1e-8,
                                  int max_iter = 500);

// sigma_n int rho^{n-1} |u'|^p / sigma_n int rho^{n-1} |u|^p with centred
// differences and the trapezoid rule. DomainError when the denominator is
// below 1e-300.
double rayleigh_quotient(const RadialGrid& profile, const ProblemParams& pp);

// (sigma_n int_0^R rho^{n-1} |u|^p)^{1/p}, trapezoid rule.
double lp_norm(const RadialGrid& u, const ProblemParams& pp);

}  // namespace plb
