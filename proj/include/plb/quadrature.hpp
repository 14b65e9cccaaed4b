#pragma once

#include <functional>

namespace plb {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // |I_h - I_{2h}| at the accepted level
    long evals = 0;
};

struct QuadOptions {
    double abs_tol = 0.0;
    double rel_tol = 1e-12;
    int max_level = 11;
};

// Integrand gets the abscissa plus its distances to a and b. Near an endpoint
// the distance is exact while x itself has rounded onto the endpoint.
using EndpointIntegrand = std::function<double(double x, double dist_a, double dist_b)>;

// Double-exponential rule on a finite interval. Throws NumericError when the
// level budget runs out before the tolerance is met.
QuadResult tanh_sinh(const EndpointIntegrand& f, double a, double b, const QuadOptions& opt = {});

// Same idea on [0, inf): x = exp(pi/2 sinh t).
QuadResult exp_sinh(const std::function<double(double)>& f, const QuadOptions& opt = {});

}  // namespace plb
