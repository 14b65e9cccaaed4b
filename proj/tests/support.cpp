#include "support.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "plb/bounds.hpp"
#include "plb/cli.hpp"
#include "plb/hardy_verify.hpp"
#include "plb/radial.hpp"

namespace support {

CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliRun r;
    r.code = plb::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

double bessel_j0(double x) {
    double term = 1.0, sum = 1.0;
    const double q = x * x / 4.0;
    for (int k = 1; k < 60; ++k) {
        term *= -q / (double(k) * double(k));
        sum += term;
    }
    return sum;
}

double bessel_j01() {
    double a = 2.0, b = 3.0;
    for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
        const double c = 0.5 * (a + b);
        if ((bessel_j0(a) > 0) == (bessel_j0(c) > 0))
            a = c;
        else
            b = c;
    }
    return 0.5 * (a + b);
}

double poisson_closed_form(double delta, const plb::ProblemParams& pp, double rho) {
    const double p = pp.p, n = pp.n, R = pp.R;
    if (delta == p) return std::pow(n - p, -1.0 / (p - 1.0)) * std::log(R / rho);
    const double q = (p - delta) / (p - 1.0);
    return (p - 1.0) / (p - delta) * std::pow(n - delta, -1.0 / (p - 1.0)) * (std::pow(R, q) - std::pow(rho, q));
}

double poisson_max_rel_error(double delta, double p, int n, int grid_n) {
    const auto pp = plb::derive(p, n, 1.0);
    auto w = plb::uniform_grid(1.0, grid_n);
    for (std::size_t i = 0; i < w.nodes.size(); ++i)
        w.values[i] = i == 0 ? std::numeric_limits<double>::infinity() : std::pow(w.nodes[i], -delta);
    const auto phi = plb::poisson_solve_radial(w, pp);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < phi.nodes.size(); ++i) {
        const double exact = poisson_closed_form(delta, pp, phi.nodes[i]);
        worst = std::max(worst, std::abs(phi.values[i] - exact) / std::abs(exact));
    }
    return worst;
}

namespace {

void note(Outcome& o, double err, double tol, const std::string& what) {
    if (!(err <= tol)) {
        o.ok = false;
        if (o.detail.empty()) o.detail = what;
    }
    if (std::isnan(err) || err > o.worst) o.worst = err;
}

std::string describe(const char* tag, double a, double b, double c) {
    std::ostringstream os;
    os << tag << " (" << a << ", " << b << ", " << c << ")";
    return os.str();
}

}  // namespace

Outcome radial_oracle_draws(int draws, unsigned seed) {
    Outcome o;
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::uniform_int_distribution<int> N(2, 6);
    for (int i = 0; i < draws; ++i) {
        // annulus I_m
        {
            const int n = N(gen);
            double p = 1.2 + 4.8 * U(gen);
            if (std::abs(p - n) < 0.05) p += 0.1;
            const double R = 0.5 + 2.5 * U(gen), r = R * (0.05 + 0.85 * U(gen));
            const auto pp = plb::derive(p, n, R);
            const double k = 1.0 / pp.p_conj + 0.01 + 2.0 * U(gen);
            const double m = pp.m, a = k * p - p;
            plb::RadialIntegrand f;
            f.a = r;
            f.b = R;
            f.singular_at_b = a;
            f.evaluator = [=](double rho, double d) {
                return std::pow(rho, -(n - 1) * pp.p_conj) * std::pow(std::abs(plb::pow_diff(R, rho, d, m)), a);
            };
            const double got = plb::integrate_radial(f, n).value;
            const double want =
                pp.measure.sigma_n / std::abs(m) * std::pow(std::abs(std::pow(R, m) - std::pow(r, m)), a + 1) / (a + 1);
            note(o, std::abs(got - want) / want, 1e-8, describe("I_m p,n,k", p, n, k));
        }
        // I_0, p = n
        {
            const int n = N(gen);
            const double R = 0.5 + 2.5 * U(gen), r = R * (0.05 + 0.85 * U(gen));
            const double s = (n - 1.0) / n + 0.01 + 2.0 * U(gen);
            const double e = n * (s - 1.0);
            plb::RadialIntegrand f;
            f.a = r;
            f.b = R;
            f.singular_at_b = e;
            f.evaluator = [=](double rho, double d) {
                return std::pow(rho, -double(n)) * std::pow(plb::log_ratio(R, rho, d), e);
            };
            const double got = plb::integrate_radial(f, n).value;
            const double want = plb::measure_constants(n).sigma_n * std::pow(std::log(R / r), e + 1) / (e + 1);
            note(o, std::abs(got - want) / want, 1e-8, describe("I_0 n,r,s", n, r, s));
        }
        // power law on the ball
        {
            const int n = N(gen);
            const double R = 0.5 + 2.5 * U(gen), e = -n + 0.2 + 5.0 * U(gen);
            plb::RadialIntegrand f;
            f.a = 0.0;
            f.b = R;
            f.singular_at_a = e;
            f.evaluator = [=](double rho, double) { return std::pow(rho, e); };
            const double got = plb::integrate_radial(f, n).value;
            const double want = plb::measure_constants(n).sigma_n * std::pow(R, e + n) / (e + n);
            note(o, std::abs(got - want) / want, 1e-8, describe("power n,R,e", n, R, e));
        }
    }
    return o;
}

Outcome report_homogeneity() {
    using namespace plb;
    using Run = std::function<VerificationReport(double)>;
    std::vector<std::pair<std::string, Run>> cases = {
        {"annulus_uk", [](double c) { return verify_annulus_sharpness(derive(3, 2, 1), 0.3, 0.8, c); }},
        {"annulus_us", [](double c) { return verify_annulus_sharpness(derive(3, 3, 1), 0.3, 0.8, c); }},
        {"ball_uk", [](double c) { return verify_ball_sharpness(derive(4, 3, 2), 1.0, c); }},
        {"trace_uk", [](double c) { return verify_trace_sharpness(derive(2, 3, 1), 0.0, 2.0, c); }},
        {"eigenweight", [](double c) { return verify_eigenweight_case(1e-6, c); }},
        {"sweep_us", [](double c) { return verify_optimality_sweep(derive(3, 3, 1), 0.2, 0.2, c); }},
        {"sweep_ueps", [](double c) { return verify_optimality_sweep(derive(2, 3, 1), 0.1, 0.2, c); }},
        {"star_a", [](double c) { return verify_sweep_starshaped(derive(2, 3, 1), 0.3, 0.2, c); }},
        {"star_b", [](double c) { return verify_sweep_starshaped(derive(4, 3, 1), 0.2, 0.2, c); }},
        {"star_c", [](double c) { return verify_sweep_starshaped(derive(3, 3, 1), 0.4, 0.2, c); }},
    };
    for (TestFunction t : all_test_functions()) {
        cases.push_back({"oneparam_" + to_string(t),
                         [t](double c) { return verify_oneparam_inequality(derive(2, 3, 1), 1.0, t, c); }});
        cases.push_back({"oneparam_log_" + to_string(t),
                         [t](double c) { return verify_oneparam_inequality(derive(2, 3, 1), 2.0, t, c); }});
        cases.push_back({"logterm_" + to_string(t),
                         [t](double c) { return verify_log_term_inequality(derive(4, 2, 1), t, c); }});
    }
    Outcome o;
    for (const auto& [name, run] : cases) {
        const double base = run(1.0).ratio;
        for (double c : {0.5, 3.0}) note(o, std::abs(run(c).ratio - base) / std::abs(base), 1e-10, name);
    }
    return o;
}

Outcome bound_scaling() {
    using namespace plb;
    Outcome o;
    const std::pair<double, int> pn[] = {{1.5, 2}, {2.0, 3}, {3.0, 3}, {4.0, 2}, {2.5, 4}, {1.3, 5}};
    for (auto [p, n] : pn) {
        for (BoundKind k : all_bound_kinds()) {
            BoundRequest req;
            req.kind = k;
            if (k == BoundKind::family_point) req.delta = 1.0;
            const auto base = compute_bound(derive(p, n, 1.0), req);
            for (double c : {0.5, 2.0, 3.0}) {
                const auto scaled = compute_bound(derive(p, n, c), req);
                if (scaled.applicable != base.applicable) {
                    note(o, std::numeric_limits<double>::infinity(), 0, "applicable flips for " + to_string(k));
                    continue;
                }
                if (!base.applicable) continue;
                const double want = std::pow(c, -p) * base.value;
                note(o, std::abs(scaled.value - want) / want, 1e-12, describe(to_string(k).c_str(), p, n, c));
            }
        }
    }
    return o;
}

Outcome cli_determinism() {
    const std::vector<std::vector<std::string>> argvs = {
        {"bound", "--p", "2.5", "--n", "3", "--format", "json"},
        {"bound", "--p", "3", "--n", "2", "--volume", "5", "--format", "csv"},
        {"sweep", "--p-range", "1.3:5:0.1", "--n-list", "4,2,3", "--methods", "all"},
        {"sweep", "--p-range", "1.5:3:0.25", "--n-list", "3", "--methods", "family_sup,picone", "--format", "json"},
        {"verify", "--suite", "all", "--format", "json"},
        {"eig", "--p", "2", "--n", "3", "--format", "json"},
        {"compare", "--which", "table1", "--n", "5", "--format", "json"},
        {"tables", "--which", "2", "--format", "csv"},
    };
    Outcome o;
    for (const auto& a : argvs) {
        const auto first = run_cli(a), second = run_cli(a);
        std::string joined;
        for (const auto& s : a) joined += s + ' ';
        note(o, first.out == second.out && first.code == second.code && !first.out.empty() ? 0.0 : 1.0, 0.0, joined);
    }
    return o;
}

}  // namespace support
