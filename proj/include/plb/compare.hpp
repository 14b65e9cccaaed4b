#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace plb {

// log of (double_singular / cheeger)^{1/p} at R = 1:
// [(n-1) ln(n-1) - (p-1) ln(p-1)] / (n - p) - ln n, continuous at p = n.
double f_n(double p, int n);
// -log(picone / cheeger) on the p < 2 branch.
double h_p1(double p, int n);
// -log(picone / cheeger) on the p >= 2 branch.
double h_p3(double p, int n);

enum class CrossoverKind { p0n, p1n, p3n, table1 };
std::string to_string(CrossoverKind k);
std::optional<CrossoverKind> parse_crossover_kind(const std::string& s);

struct CrossoverResult {
    int n = 0;
    CrossoverKind kind = CrossoverKind::p0n;
    bool applicable = false;
    double p_star = 0.0;
    double residual = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};
    std::optional<double> reference;  // printed value, when there is one
};

// Root of f_n in (1, 2).
CrossoverResult crossover_p0n(int n);
// Roots of h_p1 in (1, 2) and h_p3 in [2, 60); not applicable for n <= 8.
std::pair<CrossoverResult, CrossoverResult> crossover_p1n_p3n(int n);
// First p in (1.3, 60) where family_sup overtakes picone at R = 1.
// BracketError when there is no sign change.
CrossoverResult crossover_table1(int n);

struct TableRow {
    double p = 0.0;
    int n = 0;
    std::map<std::string, double> values;  // bound name -> value, plus reference columns
    std::string ordering;                  // largest applicable bound
    std::string error;                     // solver failure, if any
};

struct Table2Reference {
    double p;
    int n;
    double double_singular;
    double numerical;
};
const std::vector<Table2Reference>& table2_reference();

// p in {1.2, ..., 4.0}, n in {2, 3, 4}, R = 1. Each row carries every
// applicable bound, the solver value ("numerical") and the printed columns
// ("ref_double_singular", "ref_numerical"). Rows ordered by (p, n).
std::vector<TableRow> reproduce_table2(int grid_n = 2048, double tol = 1e-8);

// n = 2..9 table1 crossovers with the printed columns attached.
std::vector<CrossoverResult> reproduce_table1();

}  // namespace plb
