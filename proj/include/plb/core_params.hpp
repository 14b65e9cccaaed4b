#pragma once

namespace plb {

// Unit sphere surface measure and unit ball volume in R^n.
struct MeasureConstants {
    double sigma_n;
    double nu_n;
};

struct ProblemParams {
    double p;
    int n;
    double R;
    double m;       // (p-n)/(p-1)
    double p_conj;  // p/(p-1)
    MeasureConstants measure;
};

// Throws DomainError naming the offending field.
ProblemParams derive(double p, int n, double R);

MeasureConstants measure_constants(int n);

// Lanczos, g=7 with 9 coefficients. Domain x > 0.
double gamma_fn(double x);

}  // namespace plb
