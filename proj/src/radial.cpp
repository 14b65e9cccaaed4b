#include "plb/radial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "plb/core_params.hpp"
#include "plb/errors.hpp"

namespace plb {

double pow_diff(double R, double rho, double d, double e) {
    if (rho > 0.5 * R) return -std::pow(R, e) * std::expm1(e * std::log1p(-d / R));
    return std::pow(R, e) - std::pow(rho, e);
}

double log_ratio(double R, double rho, double d) {
    if (rho > 0.5 * R) return -std::log1p(-d / R);
    return std::log(R / rho);
}

IntegralValue integrate_radial(const RadialIntegrand& f, int n, double abs_tol) {
    if (!(f.b > f.a) || f.a < 0.0) throw DomainError("integrate_radial: need 0 <= a < b");
    const double jac_a = f.a == 0.0 ? n - 1.0 : 0.0;
    const double ea = f.singular_at_a + jac_a;
    if (ea <= -1.0 || f.singular_at_b <= -1.0) {
        std::ostringstream os;
        os << "integrate_radial: endpoint exponent " << (ea <= -1.0 ? ea : f.singular_at_b)
           << " is not integrable";
        throw DivergenceError(os.str());
    }
    std::vector<double> cuts{f.a};
    for (double k : f.kinks)
        if (k > f.a && k < f.b) cuts.push_back(k);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(f.b);

    const double sigma = measure_constants(n).sigma_n;
    const double span = f.b - f.a;
    QuadOptions opt;
    opt.abs_tol = abs_tol / sigma;

    auto eval = [&](double rho, double dist_b) { return std::pow(rho, n - 1.0) * f.evaluator(rho, dist_b); };

    auto plain = [&](double lo, double hi) {
        auto term = [&](double x, double da, double db) -> double {
            // rebuild rho and b - rho from the exact endpoint distances
            const double rho = (da <= db) ? lo + da : hi - db;
            const double dist_b = (f.b - hi) + db;
            const double v = eval(rho, dist_b);
            if (std::isfinite(v)) return v;
            // overflow right at an endpoint: drop it only if the neglected
            // mass (dist^{1+s}) is below double precision
            const double dist = std::min(rho - f.a, dist_b);
            const double s = (rho - f.a <= dist_b) ? ea : f.singular_at_b;
            if (dist < 1e-30 * span && std::pow(dist / span, 1.0 + s) < 1e-17) return 0.0;
            std::ostringstream os;
            os << "integrate_radial: integrand not finite at rho=" << x;
            throw NumericError(os.str());
        };
        return tanh_sinh(term, lo, hi, opt);
    };

    // Near-nonintegrable endpoint (exponent close to -1): tanh-sinh loses the
    // tail below the smallest representable distance. Substitute d = u^{1/alpha},
    // alpha = 1 + s, which turns d^s dd into a bounded integrand in u.
    auto mapped = [&](double lo, double hi, bool at_b, double s, double s_f) {
        const double alpha = 1.0 + s;
        // keep d^{s_f} (f on its own, before the Jacobian) inside double range
        const double floor = std::max(1e-290, std::pow(10.0, -250.0 / std::max(1.0, std::abs(s_f))));
        const double umax = std::pow(hi - lo, alpha);
        auto term = [&](double, double du, double) -> double {
            // d^s (dd/du) = 1/alpha exactly; what is left, f d^{-s}, is continuous,
            // so clamping d near zero changes nothing visible
            const double d = std::max(std::pow(du, 1.0 / alpha), floor);
            const double rho = at_b ? hi - d : lo + d;
            const double dist_b = at_b ? (f.b - hi) + d : f.b - rho;
            const double v = eval(rho, dist_b) * std::pow(d, -s) / alpha;
            if (std::isfinite(v)) return v;
            std::ostringstream os;
            os << "integrate_radial: integrand not finite at rho=" << rho;
            throw NumericError(os.str());
        };
        return tanh_sinh(term, 0.0, umax, opt);
    };
    constexpr double kStrong = -0.5;

    IntegralValue out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        const bool sa = i == 0 && ea < kStrong;
        const bool sb = i + 2 == cuts.size() && f.singular_at_b < kStrong;
        std::vector<QuadResult> parts;
        if (!sa && !sb) {
            parts.push_back(plain(lo, hi));
        } else {
            const double mid = 0.5 * (lo + hi);
            parts.push_back(sa ? mapped(lo, mid, false, ea, f.singular_at_a) : plain(lo, mid));
            parts.push_back(sb ? mapped(mid, hi, true, f.singular_at_b, f.singular_at_b) : plain(mid, hi));
        }
        for (const auto& q : parts) {
            out.value += q.value;
            out.error += q.error;
        }
    }
    out.value *= sigma;
    out.error *= sigma;
    return out;
}

IntegralValue integrate_log_origin(const std::function<double(double rho, double s)>& g, double c,
                                   int n, double abs_tol) {
    if (!(c > 0.0)) throw DomainError("integrate_log_origin: need c > 0");
    const double sigma = measure_constants(n).sigma_n;
    QuadOptions opt;
    opt.abs_tol = abs_tol / sigma;
    const QuadResult q = exp_sinh([&](double s) { return g(c * std::exp(-s), s); }, opt);
    return {sigma * q.value, sigma * q.error};
}

}  // namespace plb
