#include "plb/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "plb/errors.hpp"
#include "plb/roots.hpp"

namespace plb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

BoundResult not_applicable(BoundKind k, const std::string& why) {
    BoundResult r;
    r.kind = k;
    r.value = kNaN;
    r.applicable = false;
    r.branch = why;
    return r;
}

BoundResult make(BoundKind k, double v, std::string branch = {}) {
    BoundResult r;
    r.kind = k;
    r.value = v;
    r.applicable = true;
    r.branch = std::move(branch);
    return r;
}

// [phi(a) - phi(b)] / (a - b) for phi(x) = x ln x, stable when a ~ b
double log_lambda30(double p, int n, double R) {
    if (p == double(n)) return n * std::log((n - 1.0) / (n * R)) + n;
    // ln[(n-1)^{n-1}/(p-1)^{p-1}] / (n-p), written through the divided difference
    const double slope = xlogx_slope(n - 1.0, p - 1.0);
    return -p * std::log(p * R) + p * slope;
}

}  // namespace

double xlogx_slope(double a, double b) {
    const double h = a - b;
    if (std::abs(h) < 1e-4 * std::max(1.0, std::abs(a))) {
        const double mid = 0.5 * (a + b);
        // midpoint derivative plus the h^2 term of the divided difference
        return std::log(mid) + 1.0 - h * h / (24.0 * mid * mid);
    }
    return (a * std::log(a) - b * std::log(b)) / h;
}

const std::vector<BoundKind>& all_bound_kinds() {
    static const std::vector<BoundKind> kinds = {
        BoundKind::hardy,           BoundKind::cheeger,      BoundKind::picone,
        BoundKind::sobolev,         BoundKind::lindqvist,    BoundKind::double_singular,
        BoundKind::log_improved,    BoundKind::family_point, BoundKind::family_sup,
        BoundKind::family_h2};
    return kinds;
}

std::string to_string(BoundKind k) {
    switch (k) {
        case BoundKind::hardy: return "hardy";
        case BoundKind::cheeger: return "cheeger";
        case BoundKind::picone: return "picone";
        case BoundKind::sobolev: return "sobolev";
        case BoundKind::lindqvist: return "lindqvist";
        case BoundKind::double_singular: return "double_singular";
        case BoundKind::log_improved: return "log_improved";
        case BoundKind::family_point: return "family_point";
        case BoundKind::family_sup: return "family_sup";
        case BoundKind::family_h2: return "family_h2";
    }
    return "unknown";
}

std::optional<BoundKind> parse_bound_kind(const std::string& s) {
    for (BoundKind k : all_bound_kinds())
        if (to_string(k) == s) return k;
    return std::nullopt;
}

std::string to_string(FamilyBranch b) {
    switch (b) {
        case FamilyBranch::below_p: return "below_p";
        case FamilyBranch::at_p: return "at_p";
        case FamilyBranch::above_p: return "above_p";
        case FamilyBranch::degenerate_A: return "degenerate_A";
    }
    return "unknown";
}

BoundResult lambda_hardy(const ProblemParams& pp) {
    if (pp.p == double(pp.n)) return not_applicable(BoundKind::hardy, "p = n");
    return make(BoundKind::hardy, std::pow(std::abs(pp.n - pp.p) / (pp.p * pp.R), pp.p));
}

BoundResult lambda_cheeger(const ProblemParams& pp) {
    return make(BoundKind::cheeger, std::pow(pp.n / (pp.p * pp.R), pp.p));
}

BoundResult lambda_picone(const ProblemParams& pp) {
    const double p = pp.p;
    const double Rp = std::pow(pp.R, p);
    const double l21 = pp.n * std::pow(p / (p - 1.0), p - 1.0) / Rp;
    const double l22 = pp.n * p / Rp;
    BoundResult r = p < 2.0 ? make(BoundKind::picone, l21, "picone_21")
                            : make(BoundKind::picone, l22, "picone_22");
    r.meta["lambda_21"] = l21;
    r.meta["lambda_22"] = l22;
    return r;
}

BoundResult lambda_sobolev(const ProblemParams& pp) {
    const double p = pp.p;
    const int n = pp.n;
    if (!(p < n)) return not_applicable(BoundKind::sobolev, "requires 1 < p < n");
    const double g = gamma_fn(0.5 * n) * gamma_fn(n + 1.0 - n / p) / gamma_fn(double(n));
    const double v = (n / std::pow(pp.R, p)) * std::pow((n - p) / (p - 1.0), p - 1.0) *
                     std::pow(g, p / n);
    return make(BoundKind::sobolev, v);
}

BoundResult lambda_lindqvist(const ProblemParams& pp) {
    if (!(pp.p > pp.n)) return not_applicable(BoundKind::lindqvist, "requires p > n");
    return make(BoundKind::lindqvist, pp.p / std::pow(pp.R, pp.p));
}

BoundResult lambda_double_singular(const ProblemParams& pp) {
    const double v = std::exp(log_lambda30(pp.p, pp.n, pp.R));
    return make(BoundKind::double_singular, v, pp.p == double(pp.n) ? "p_eq_n" : "p_ne_n");
}

BoundResult lambda_log_improved(const ProblemParams& pp) {
    const double p = pp.p;
    if (!(p > pp.n)) return not_applicable(BoundKind::log_improved, "requires p > n");
    const double m = pp.m;
    const double s = 1.0 + std::sqrt((5.0 * p - 7.0) / (3.0 * (p - 1.0)));
    const double tau = 1.0 - 4.0 * (1.0 - m) / (p * (s - 2.0 * std::log(m)) - 4.0 * m);
    const double bracket = s - 2.0 * std::log(m) - 2.0 * std::log(tau);
    const double mult = 1.0 + p / (4.0 * (p - 1.0)) / (bracket * bracket);
    const double base = lambda_double_singular(pp).value;
    BoundResult r = make(BoundKind::log_improved, base * mult);
    r.meta["tau"] = tau;
    r.meta["bracket"] = bracket;
    r.meta["base"] = base;
    r.meta["multiplier"] = mult;
    return r;
}

FamilyEvaluation family_coefficients(const ProblemParams& pp, double delta) {
    const double p = pp.p;
    const double n = pp.n;
    if (!(delta > 0.0 && delta < n)) {
        std::ostringstream os;
        os << "delta must lie in (0, n) = (0, " << pp.n << "), got " << delta;
        throw DomainError(os.str());
    }
    FamilyEvaluation ev;
    ev.delta = delta;
    if (delta == p) {
        ev.branch = FamilyBranch::at_p;
        ev.A = -p * p * (n - p);
        ev.B = p * (p - 1.0) * (n - p - 1.0);
        ev.C = p * (p - 1.0);
        ev.D = p * p * (p - 1.0) * ((p - 1.0) * (n - p - 1.0) * (n - p - 1.0) + 4.0 * p * (n - p));
        return ev;
    }
    ev.A = (p - 1.0) * (p - delta - p * (n - delta));
    ev.B = (p - 1.0) * (n - delta) * (p + delta) - (delta - 1.0) * (p - delta);
    ev.C = -delta * (n - delta) * (p - 1.0);
    // factored discriminant, free of the cancellation in B^2 - 4AC near delta = p
    const double d1 = (p - 1.0) * (n - delta) + 1.0 - delta;
    ev.D = (p - delta) * (p - delta) * (d1 * d1 + 4.0 * delta * (p - 1.0) * (n - delta));
    if (std::abs(ev.A) < 1e-10 * (p - 1.0) * p * n)
        ev.branch = FamilyBranch::degenerate_A;
    else
        ev.branch = delta < p ? FamilyBranch::below_p : FamilyBranch::above_p;
    return ev;
}

FamilyEvaluation family_root(FamilyEvaluation ev) {
    const double sq = std::sqrt(ev.D);
    double root = 0.0;
    bool ok = false;
    switch (ev.branch) {
        case FamilyBranch::below_p:
            root = ev.B >= 0.0 ? 2.0 * ev.C / (-ev.B - sq) : (-ev.B + sq) / (2.0 * ev.A);
            ok = root > 0.0 && root < 1.0;
            break;
        case FamilyBranch::above_p:
            root = ev.B >= 0.0 ? 2.0 * ev.A / (-ev.B - sq) : (-ev.B + sq) / (2.0 * ev.C);
            ok = root > 0.0 && root < 1.0;
            break;
        case FamilyBranch::at_p:
            root = ev.B > 0.0 ? (-ev.B - sq) / (2.0 * ev.A) : 2.0 * ev.C / (sq - ev.B);
            ok = root > 0.0 && std::isfinite(root);
            break;
        case FamilyBranch::degenerate_A:
            root = -ev.C / ev.B;
            ok = root > 0.0 && root < 1.0;
            break;
    }
    if (!ok) {
        std::ostringstream os;
        os << "family_root: root " << root << " outside its interval on branch "
           << to_string(ev.branch) << " at delta=" << ev.delta;
        throw NumericError(os.str());
    }
    ev.root = root;
    return ev;
}

FamilyEvaluation family_H(const ProblemParams& pp, double delta) {
    FamilyEvaluation ev = family_root(family_coefficients(pp, delta));
    const double p = pp.p;
    const double n = pp.n;
    const double d = ev.delta;
    double H = 0.0;
    switch (ev.branch) {
        case FamilyBranch::below_p:
        case FamilyBranch::degenerate_A: {
            const double z = ev.root;
            const double logt = std::log(p - d) - std::log(p) - std::log1p(-z) -
                                (d / (p - d)) * std::log(z);
            H = std::exp((p - 1.0) * logt) * ((p - d) * z / (p * (1.0 - z)) + n - d);
            break;
        }
        case FamilyBranch::at_p: {
            const double z = ev.root;
            const double E = std::exp(-z);
            const double t = (p - 1.0) / (p * E * z);
            H = std::pow(t, p - 1.0) * (t + (n - p) / E);
            break;
        }
        case FamilyBranch::above_p: {
            const double y = ev.root;
            const double logt = std::log(d - p) - std::log(p) - std::log1p(-y) -
                                (p / (d - p)) * std::log(y);
            H = std::exp((p - 1.0) * logt) * ((d - p) / (p * (1.0 - y)) + n - d);
            break;
        }
    }
    if (!(H > 0.0) || !std::isfinite(H)) {
        std::ostringstream os;
        os << "family_H: non-positive or non-finite H at delta=" << d;
        throw NumericError(os.str());
    }
    ev.H = H;
    return ev;
}

BoundResult lambda_family_point(const ProblemParams& pp, double delta) {
    const FamilyEvaluation ev = family_H(pp, delta);
    BoundResult r = make(BoundKind::family_point, ev.H / std::pow(pp.R, pp.p), to_string(ev.branch));
    r.meta["delta"] = delta;
    r.meta["root"] = ev.root;
    return r;
}

BoundResult lambda_family_sup(const ProblemParams& pp, const FamilyOptions& opt) {
    if (opt.grid_size < 64) throw DomainError("family_sup: grid_size must be >= 64");
    if (!(opt.refine_tol > 0.0)) throw DomainError("family_sup: refine_tol must be > 0");
    const double n = pp.n;
    const double Rp = std::pow(pp.R, pp.p);
    auto H = [&](double d) {
        try {
            return family_H(pp, d).H;
        } catch (const NumericError&) {
            return kNaN;
        }
    };
    const MaxResult inner = grid_golden_max(H, opt.edge, n - opt.edge, opt.grid_size, opt.refine_tol);

    double best = inner.fx;
    double delta_star = inner.x;
    std::string branch = "interior";
    if (n > best) {
        best = n;
        delta_star = 0.0;
        branch = "limit_delta_0";
    }
    const double h_n = lambda_double_singular(pp).value * Rp;
    if (h_n > best) {
        best = h_n;
        delta_star = n;
        branch = "limit_delta_n";
    }
    if (pp.p < n) {
        const double hp = family_H(pp, pp.p).H;
        if (hp > best) {
            best = hp;
            delta_star = pp.p;
            branch = "at_p";
        }
    }
    BoundResult r = make(BoundKind::family_sup, best / Rp, branch);
    r.meta["delta_star"] = delta_star;
    r.meta["H_star"] = best;
    return r;
}

BoundResult lambda_family_h2(const ProblemParams& pp, const FamilyOptions& opt) {
    const double p = pp.p;
    const double n = pp.n;
    auto f = [&](double d) {
        return std::exp(std::log(n - d) + d * (p - 1.0) / (p - d) * (std::log(p) - std::log(d)));
    };
    const double top = std::min(p, n);
    const MaxResult inner = grid_golden_max(f, opt.edge, top - opt.edge, opt.grid_size, opt.refine_tol);
    double best = inner.fx;
    double delta_star = inner.x;
    if (n > best) {
        best = n;
        delta_star = 0.0;
    }
    BoundResult r = make(BoundKind::family_h2, best / std::pow(pp.R, p));
    r.meta["delta_star"] = delta_star;
    return r;
}

ProblemParams faber_krahn_reduce(double volume, double p, int n) {
    if (!(volume > 0.0) || !std::isfinite(volume)) {
        std::ostringstream os;
        os << "volume must be > 0 (got " << volume << ")";
        throw DomainError(os.str());
    }
    const MeasureConstants mc = measure_constants(n);
    return derive(p, n, std::pow(volume / mc.nu_n, 1.0 / n));
}

BoundResult compute_bound(const ProblemParams& pp, const BoundRequest& req) {
    switch (req.kind) {
        case BoundKind::hardy: return lambda_hardy(pp);
        case BoundKind::cheeger: return lambda_cheeger(pp);
        case BoundKind::picone: return lambda_picone(pp);
        case BoundKind::sobolev: return lambda_sobolev(pp);
        case BoundKind::lindqvist: return lambda_lindqvist(pp);
        case BoundKind::double_singular: return lambda_double_singular(pp);
        case BoundKind::log_improved: return lambda_log_improved(pp);
        case BoundKind::family_point:
            if (!req.delta) throw DomainError("family_point needs a delta value");
            return lambda_family_point(pp, *req.delta);
        case BoundKind::family_sup: return lambda_family_sup(pp, req.family);
        case BoundKind::family_h2: return lambda_family_h2(pp, req.family);
    }
    throw DomainError("unknown bound kind");
}

}  // namespace plb
