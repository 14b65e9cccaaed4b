#include "plb/eigen_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "plb/errors.hpp"

namespace plb {

namespace {

void check_grid(const RadialGrid& g, const char* who) {
    const std::size_t N = g.nodes.size();
    if (N < 3 || g.values.size() != N) {
        std::ostringstream os;
        os << who << ": grid needs at least 3 nodes and matching values";
        throw DomainError(os.str());
    }
    if (g.nodes.front() != 0.0) throw DomainError(std::string(who) + ": first node must be 0");
    for (std::size_t i = 1; i < N; ++i)
        if (!(g.nodes[i] > g.nodes[i - 1])) throw DomainError(std::string(who) + ": nodes must increase");
}

// x expm1(x)/x, equal to 1 at x = 0
double expm1_ratio(double x) {
    return std::abs(x) < 1e-300 ? 1.0 : std::expm1(x) / x;
}

// int_a^b g when g(a) = ga, g(b) = gb and g is a power of s on the cell
double power_cell(double a, double b, double ga, double gb) {
    if (!(ga > 0.0) || !(gb > 0.0) || !std::isfinite(ga) || !std::isfinite(gb))
        return 0.5 * (b - a) * (ga + gb);
    const double L = std::log(b / a);
    const double e = std::log(gb / ga) / L;  // g ~ s^e
    // ga a ((b/a)^{e+1} - 1)/(e+1)
    return ga * a * L * expm1_ratio((e + 1.0) * L);
}

// int_0^{x1} g with g ~ s^e and e taken from the second cell
double first_cell(double x1, double x2, double g1, double g2) {
    if (!(g1 > 0.0) || !(g2 > 0.0) || !std::isfinite(g1) || !std::isfinite(g2)) return 0.5 * x1 * g1;
    const double e = std::log(g2 / g1) / std::log(x2 / x1);
    if (!(e > -1.0)) return std::numeric_limits<double>::infinity();
    return g1 * x1 / (e + 1.0);
}

// cumulative int_0^{x_i} of g on the nodes
std::vector<double> cumulative(const std::vector<double>& x, const std::vector<double>& g) {
    const std::size_t N = x.size();
    std::vector<double> F(N, 0.0);
    F[1] = first_cell(x[1], x[2], g[1], g[2]);
    if (std::isinf(F[1])) throw DivergenceError("poisson_solve_radial: source not integrable at the origin");
    for (std::size_t i = 2; i < N; ++i) F[i] = F[i - 1] + power_cell(x[i - 1], x[i], g[i - 1], g[i]);
    return F;
}

}  // namespace

RadialGrid uniform_grid(double R, int N) {
    if (!(R > 0.0) || N < 2) throw DomainError("uniform_grid: need R > 0 and N >= 2");
    RadialGrid g;
    g.nodes.resize(N + 1);
    g.values.assign(N + 1, 0.0);
    for (int i = 0; i <= N; ++i) g.nodes[i] = R * double(i) / N;
    g.nodes[N] = R;
    return g;
}

RadialGrid poisson_solve_radial(const RadialGrid& w, const ProblemParams& pp) {
    check_grid(w, "poisson_solve_radial");
    const std::vector<double>& x = w.nodes;
    const std::size_t N = x.size();
    const double p = pp.p;
    const int n = pp.n;
    bool all_zero = true;
    for (std::size_t i = 0; i < N; ++i) {
        const double v = w.values[i];
        if (std::isnan(v) || v < 0.0) throw DomainError("poisson_solve_radial: w must be nonnegative");
        if (std::isinf(v) && i != 0) throw DomainError("poisson_solve_radial: w infinite away from the origin");
        if (v != 0.0) all_zero = false;
    }
    RadialGrid out{x, std::vector<double>(N, 0.0)};
    if (all_zero) return out;

    std::vector<double> g(N, 0.0);
    for (std::size_t i = 1; i < N; ++i) g[i] = std::pow(x[i], n - 1.0) * w.values[i];
    const std::vector<double> F = cumulative(x, g);
    bool any = false;
    for (double f : F) any = any || f > 0.0;
    if (!any) throw NumericError("poisson_solve_radial: inner integral underflowed to zero");

    std::vector<double> h(N, 0.0);
    const double q = 1.0 / (p - 1.0);
    for (std::size_t i = 1; i < N; ++i)
        h[i] = F[i] > 0.0 ? std::exp(q * ((1.0 - n) * std::log(x[i]) + std::log(F[i]))) : 0.0;

    // outer integral from the right end
    double acc = 0.0;
    for (std::size_t i = N - 1; i-- > 1;) {
        acc += power_cell(x[i], x[i + 1], h[i], h[i + 1]);
        out.values[i] = acc;
    }
    // origin: the source may be singular there, in which case so is phi
    const double c0 = first_cell(x[1], x[2], h[1], h[2]);
    out.values[0] = out.values[1] + c0;
    return out;
}

double lp_norm(const RadialGrid& u, const ProblemParams& pp) {
    const std::vector<double>& x = u.nodes;
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = std::pow(x[i], pp.n - 1.0) * std::pow(std::abs(u.values[i]), pp.p);
        const double b = std::pow(x[i + 1], pp.n - 1.0) * std::pow(std::abs(u.values[i + 1]), pp.p);
        s += 0.5 * (x[i + 1] - x[i]) * (a + b);
    }
    return std::pow(pp.measure.sigma_n * s, 1.0 / pp.p);
}

EigenResult inverse_power_iterate(const ProblemParams& pp, int grid_n, double tol, int max_iter) {
    if (grid_n < 256) throw DomainError("inverse_power_iterate: grid_n must be at least 256");
    if (!(tol > 0.0)) throw DomainError("inverse_power_iterate: tol must be positive");
    if (max_iter < 10) throw DomainError("inverse_power_iterate: max_iter must be at least 10");
    const double p = pp.p;
    RadialGrid u = uniform_grid(pp.R, grid_n);
    std::fill(u.values.begin(), u.values.end(), 1.0);
    RadialGrid w = u;
    double lambda = 0.0, residual = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iter; ++it) {
        const double norm = lp_norm(u, pp);
        if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericError("inverse_power_iterate: iterate lost its norm");
        for (std::size_t i = 0; i < u.values.size(); ++i) w.values[i] = std::pow(u.values[i] / norm, p - 1.0);
        u = poisson_solve_radial(w, pp);
        const double next = std::pow(lp_norm(u, pp), 1.0 - p);
        if (!std::isfinite(next)) throw NumericError("inverse_power_iterate: eigenvalue estimate not finite");
        residual = lambda > 0.0 ? std::abs(next - lambda) / next : std::numeric_limits<double>::infinity();
        lambda = next;
        if (residual < tol) {
            const double nu = lp_norm(u, pp);
            for (double& v : u.values) v /= nu;
            return {lambda, it, residual, u};
        }
    }
    std::ostringstream os;
    os << "inverse_power_iterate: no convergence in " << max_iter << " steps";
    throw ConvergenceError(os.str(), lambda, residual);
}

double rayleigh_quotient(const RadialGrid& profile, const ProblemParams& pp) {
    check_grid(profile, "rayleigh_quotient");
    const std::vector<double>& x = profile.nodes;
    const std::vector<double>& u = profile.values;
    const std::size_t N = x.size();
    std::vector<double> du(N);
    du[0] = (u[1] - u[0]) / (x[1] - x[0]);
    du[N - 1] = (u[N - 1] - u[N - 2]) / (x[N - 1] - x[N - 2]);
    for (std::size_t i = 1; i + 1 < N; ++i) du[i] = (u[i + 1] - u[i - 1]) / (x[i + 1] - x[i - 1]);
    double top = 0.0, bottom = 0.0;
    for (std::size_t i = 0; i + 1 < N; ++i) {
        const double h = x[i + 1] - x[i];
        const double wa = std::pow(x[i], pp.n - 1.0), wb = std::pow(x[i + 1], pp.n - 1.0);
        top += 0.5 * h * (wa * std::pow(std::abs(du[i]), pp.p) + wb * std::pow(std::abs(du[i + 1]), pp.p));
        bottom += 0.5 * h * (wa * std::pow(std::abs(u[i]), pp.p) + wb * std::pow(std::abs(u[i + 1]), pp.p));
    }
    if (!(bottom >= 1e-300)) throw DomainError("rayleigh_quotient: profile is zero");
    return top / bottom;
}

}  // namespace plb
