#pragma once

#include <functional>
#include <vector>

#include "plb/quadrature.hpp"

namespace plb {

// Radial function f on (a, b). The evaluator receives rho and the exact
// distance b - rho, so factors like (R^m - rho^m) can be formed without
// cancellation near b. The rho^{n-1} Jacobian is applied by integrate_radial.
struct RadialIntegrand {
    std::function<double(double rho, double dist_b)> evaluator;
    double a = 0.0;
    double b = 1.0;
    double singular_at_a = 0.0;  // f ~ (rho - a)^s near a (rho^s when a = 0)
    double singular_at_b = 0.0;  // f ~ (b - rho)^s near b
    std::vector<double> kinks;   // interior points where f is not smooth
};

struct IntegralValue {
    double value = 0.0;
    double error = 0.0;
};

// sigma_n * int_a^b rho^{n-1} f(rho) d rho.
// DivergenceError when an endpoint exponent (with rho^{n-1} at a = 0) is <= -1,
// NumericError when the rule does not converge.
IntegralValue integrate_radial(const RadialIntegrand& f, int n, double abs_tol = 0.0);

// sigma_n * int_0^c rho^{n-1} f(rho) d rho through rho = c e^{-s}.
// g(rho, s) must return rho^n f(rho); s = ln(c / rho) is passed so that
// logarithmic factors can be formed exactly.
IntegralValue integrate_log_origin(const std::function<double(double rho, double s)>& g, double c,
                                   int n, double abs_tol = 0.0);

// R^e - rho^e where d = R - rho is known exactly.
double pow_diff(double R, double rho, double d, double e);

// ln(R / rho) with d = R - rho.
double log_ratio(double R, double rho, double d);

}  // namespace plb
