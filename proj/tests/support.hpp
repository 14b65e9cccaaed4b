#pragma once

#include <string>
#include <vector>

#include "plb/core_params.hpp"
#include "plb/eigen_solver.hpp"

namespace support {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};
CliRun run_cli(const std::vector<std::string>& args);

// J0 by its power series, first zero by plain bisection on [2, 3].
double bessel_j0(double x);
double bessel_j01();

// phi for w = s^-delta on B_R (log profile when delta = p).
double poisson_closed_form(double delta, const plb::ProblemParams& pp, double rho);
// Max relative error of the solver against the closed form over interior nodes.
double poisson_max_rel_error(double delta, double p, int n, int grid_n = 2048);

struct Outcome {
    bool ok = true;
    double worst = 0.0;  // largest observed deviation
    std::string detail;
};

// Closed-form radial integrals (annulus I_m, log I_0, power law) against
// integrate_radial on `draws` random admissible parameter sets each.
Outcome radial_oracle_draws(int draws, unsigned seed);
// Every amplitude-taking verification case at c = 0.5 and 3 against c = 1.
Outcome report_homogeneity();
// bound(p, n, cR) = c^-p bound(p, n, R) for every kind.
Outcome bound_scaling();
// Same argv twice, byte-identical output.
Outcome cli_determinism();

}  // namespace support
