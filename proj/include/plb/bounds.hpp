#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plb/core_params.hpp"

namespace plb {

enum class BoundKind {
    hardy,
    cheeger,
    picone,
    sobolev,
    lindqvist,
    double_singular,
    log_improved,
    family_point,
    family_sup,
    family_h2
};

const std::vector<BoundKind>& all_bound_kinds();
std::string to_string(BoundKind k);
std::optional<BoundKind> parse_bound_kind(const std::string& s);

struct BoundResult {
    BoundKind kind = BoundKind::hardy;
    double value = 0.0;
    bool applicable = false;
    std::string branch;                  // which formula produced value, if several
    std::map<std::string, double> meta;  // delta_star, root, tau, ...
};

enum class FamilyBranch { below_p, at_p, above_p, degenerate_A };
std::string to_string(FamilyBranch b);

struct FamilyEvaluation {
    double delta = 0.0;
    FamilyBranch branch = FamilyBranch::below_p;
    // A, B, C hold A0, B0, C0 on the at_p branch.
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
    double root = 0.0;
    double H = 0.0;
};

BoundResult lambda_hardy(const ProblemParams& pp);
BoundResult lambda_cheeger(const ProblemParams& pp);
BoundResult lambda_picone(const ProblemParams& pp);
BoundResult lambda_sobolev(const ProblemParams& pp);
BoundResult lambda_lindqvist(const ProblemParams& pp);
BoundResult lambda_double_singular(const ProblemParams& pp);
BoundResult lambda_log_improved(const ProblemParams& pp);

// delta in (0, n); DomainError otherwise.
FamilyEvaluation family_coefficients(const ProblemParams& pp, double delta);
// NumericError if the selected root leaves its interval.
FamilyEvaluation family_root(FamilyEvaluation ev);
FamilyEvaluation family_H(const ProblemParams& pp, double delta);

// H(p,n,delta)/R^p at a single delta.
BoundResult lambda_family_point(const ProblemParams& pp, double delta);

struct FamilyOptions {
    int grid_size = 256;
    double refine_tol = 1e-10;
    double edge = 1e-6;  // grid covers (edge, n - edge)
};

BoundResult lambda_family_sup(const ProblemParams& pp, const FamilyOptions& opt = {});
BoundResult lambda_family_h2(const ProblemParams& pp, const FamilyOptions& opt = {});

// (a ln a - b ln b)/(a - b), stable as b -> a.
double xlogx_slope(double a, double b);

// Ball with the given volume; bounds on it bound any domain of that volume.
ProblemParams faber_krahn_reduce(double volume, double p, int n);

struct BoundRequest {
    BoundKind kind = BoundKind::cheeger;
    std::optional<double> delta;  // family_point only
    FamilyOptions family;
};

BoundResult compute_bound(const ProblemParams& pp, const BoundRequest& req);

}  // namespace plb
