#include "plb/roots.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "plb/errors.hpp"

namespace plb {

double find_root(const ScalarFn& f, double a, double b, double tol, int max_iter) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (!std::isfinite(fa) || !std::isfinite(fb) || (fa > 0.0) == (fb > 0.0)) {
        std::ostringstream os;
        os << "find_root: no sign change on [" << a << ", " << b << "] (f=" << fa << ", " << fb
           << ")";
        throw BracketError(os.str());
    }
    const double eps = std::numeric_limits<double>::epsilon();
    double c = b, fc = fb, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol * std::max(1.0, std::abs(b));
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double lim1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double lim2 = std::abs(e * q);
            if (2.0 * p < std::min(lim1, lim2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if (!std::isfinite(fb)) throw NumericError("find_root: function not finite inside bracket");
    }
    throw ConvergenceError("find_root: iteration limit reached", b, std::abs(fb));
}

std::vector<std::pair<double, double>> sign_changes(const ScalarFn& f, double lo, double hi,
                                                    double step) {
    if (!(step > 0.0) || !(hi > lo)) throw DomainError("sign_changes: need lo < hi and step > 0");
    std::vector<std::pair<double, double>> out;
    const int count = int(std::ceil((hi - lo) / step - 1e-12));
    double x0 = lo;
    double f0 = f(x0);
    for (int i = 1; i <= count; ++i) {
        const double x1 = (i == count) ? hi : lo + i * step;
        const double f1 = f(x1);
        if (std::isfinite(f0) && std::isfinite(f1) && ((f0 < 0.0 && f1 >= 0.0) || (f0 > 0.0 && f1 <= 0.0)))
            out.emplace_back(x0, x1);
        x0 = x1;
        f0 = f1;
    }
    return out;
}

MaxResult golden_max(const ScalarFn& f, double a, double b, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? MaxResult{x1, f1} : MaxResult{x2, f2};
}

MaxResult grid_golden_max(const ScalarFn& f, double a, double b, int points, double tol) {
    if (points < 3) throw DomainError("grid_golden_max: need at least 3 grid points");
    const double h = (b - a) / (points - 1);
    int best = -1;
    double best_f = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < points; ++i) {
        const double x = (i == points - 1) ? b : a + i * h;
        const double fx = f(x);
        if (std::isfinite(fx) && fx > best_f) {
            best_f = fx;
            best = i;
        }
    }
    if (best < 0) throw NumericError("grid_golden_max: no finite value on the grid");
    const double lo = a + std::max(0, best - 1) * h;
    const double hi = std::min(b, a + (best + 1) * h);
    MaxResult r = golden_max(f, lo, hi, tol);
    if (!(r.fx >= best_f)) r = {a + best * h, best_f};
    return r;
}

}  // namespace plb
