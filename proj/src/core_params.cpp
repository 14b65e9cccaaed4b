#include "plb/core_params.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "plb/errors.hpp"

namespace plb {

namespace {

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos(double x) {
    // Gamma(x) for x >= 0.5
    const double g = 7.0;
    x -= 1.0;
    double a = kLanczos[0];
    const double t = x + g + 0.5;
    for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (x + double(i));
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        std::ostringstream os;
        os << "gamma_fn: x must be positive and finite, got " << x;
        throw DomainError(os.str());
    }
    if (x < 0.5) {
        // reflection keeps the Lanczos sum in its accurate range
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos(1.0 - x));
    }
    return lanczos(x);
}

MeasureConstants measure_constants(int n) {
    if (n < 2) throw DomainError("measure_constants: n must be >= 2");
    const double sigma = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / gamma_fn(0.5 * n);
    return {sigma, sigma / n};
}

ProblemParams derive(double p, int n, double R) {
    if (!(p > 1.0) || !std::isfinite(p)) {
        std::ostringstream os;
        os << "p must satisfy p > 1 (got " << p << ")";
        throw DomainError(os.str());
    }
    if (n < 2) {
        std::ostringstream os;
        os << "n must satisfy n >= 2 (got " << n << ")";
        throw DomainError(os.str());
    }
    if (!(R > 0.0) || !std::isfinite(R)) {
        std::ostringstream os;
        os << "R must satisfy R > 0 (got " << R << ")";
        throw DomainError(os.str());
    }
    ProblemParams out{};
    out.p = p;
    out.n = n;
    out.R = R;
    out.m = (p - n) / (p - 1.0);
    out.p_conj = p / (p - 1.0);
    out.measure = measure_constants(n);
    if (!std::isfinite(out.m) || !std::isfinite(out.p_conj)) throw NumericError("derive: derived exponents not finite");
    return out;
}

}  // namespace plb
