#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace plb {

using ScalarFn = std::function<double(double)>;

// Bracketed root: bisection safeguard around secant / inverse quadratic steps.
// Needs f(a) f(b) <= 0, else BracketError. Stops when the bracket is below tol
// (relative to |x|) or f hits zero.
double find_root(const ScalarFn& f, double a, double b, double tol = 1e-14, int max_iter = 200);

// Sub-intervals of [lo, hi] of width step where f changes sign, in increasing order.
std::vector<std::pair<double, double>> sign_changes(const ScalarFn& f, double lo, double hi,
                                                    double step);

struct MaxResult {
    double x;
    double fx;
};

// Golden-section maximization on [a, b] down to an x-interval of width tol.
MaxResult golden_max(const ScalarFn& f, double a, double b, double tol);

// Uniform grid of `points` nodes over [a, b], then golden refinement between
// the neighbours of the best node.
MaxResult grid_golden_max(const ScalarFn& f, double a, double b, int points, double tol);

}  // namespace plb
