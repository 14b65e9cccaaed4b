#include "plb/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "plb/errors.hpp"

namespace plb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("json: missing field ") + key);
    return j.at(key);
}

std::optional<CheckKind> parse_check(const std::string& s) {
    for (CheckKind c : {CheckKind::inequality, CheckKind::equality, CheckKind::bracket})
        if (to_string(c) == s) return c;
    return std::nullopt;
}

}  // namespace

std::optional<OutputFormat> parse_format(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    if (s == "human") return OutputFormat::human;
    return std::nullopt;
}

std::string fmt10(double x) {
    if (std::isnan(x)) return "NaN";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

double round10(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(fmt10(x).c_str(), nullptr);
}

Json num(double x) {
    if (!std::isfinite(x)) return nullptr;
    return round10(x);
}

double num_from(const Json& j) {
    if (j.is_null()) return kNaN;
    return j.get<double>();
}

// ------------------------------------------------------------------ records

Record make_record(const ProblemParams& pp, const BoundResult& b) {
    Record r;
    r.method = to_string(b.kind);
    r.p = pp.p;
    r.n = pp.n;
    r.R = pp.R;
    r.value = b.applicable ? b.value : kNaN;
    r.applicable = b.applicable;
    if (!b.branch.empty()) r.meta["branch"] = b.branch;
    for (const auto& [k, v] : b.meta) r.meta[k] = num(v);
    return r;
}

Record make_record(const ProblemParams& pp, const EigenResult& e, bool with_profile) {
    Record r;
    r.method = "inverse_power";
    r.p = pp.p;
    r.n = pp.n;
    r.R = pp.R;
    r.value = e.lambda;
    r.applicable = true;
    r.meta["iterations"] = e.iterations;
    r.meta["residual"] = num(e.residual);
    r.meta["grid_n"] = int(e.profile.nodes.size()) - 1;
    if (with_profile) {
        Json nodes = Json::array(), values = Json::array();
        for (double x : e.profile.nodes) nodes.push_back(num(x));
        for (double v : e.profile.values) values.push_back(num(v));
        r.meta["profile"] = {{"rho", nodes}, {"u", values}};
    }
    return r;
}

Json to_json(const Record& r) {
    Json j;
    j["method"] = r.method;
    j["p"] = num(r.p);
    j["n"] = r.n;
    j["R"] = num(r.R);
    j["value"] = num(r.value);
    j["applicable"] = r.applicable;
    j["meta"] = r.meta;
    return j;
}

Record record_from_json(const Json& j) {
    Record r;
    r.method = need(j, "method").get<std::string>();
    r.p = num_from(need(j, "p"));
    r.n = need(j, "n").get<int>();
    r.R = num_from(need(j, "R"));
    r.value = num_from(need(j, "value"));
    r.applicable = need(j, "applicable").get<bool>();
    r.meta = need(j, "meta");
    if (!r.meta.is_object()) throw DomainError("json: meta must be an object");
    return r;
}

std::string to_csv(const Record& r) {
    std::ostringstream os;
    os << fmt10(r.p) << ',' << r.n << ',' << fmt10(r.R) << ',' << r.method << ',' << fmt10(r.value) << ','
       << (r.applicable ? "true" : "false") << ',';
    if (r.applicable && r.meta.contains("delta_star") && r.meta["delta_star"].is_number())
        os << fmt10(r.meta["delta_star"].get<double>());
    return os.str();
}

std::string to_human(const Record& r) {
    std::ostringstream os;
    os << r.method << "  p=" << fmt10(r.p) << " n=" << r.n << " R=" << fmt10(r.R) << "  ";
    if (r.applicable)
        os << "value=" << fmt10(r.value);
    else
        os << "not applicable";
    if (r.meta.contains("branch")) os << "  [" << r.meta["branch"].get<std::string>() << ']';
    for (const auto& [k, v] : r.meta.items()) {
        if (k == "branch" || k == "profile") continue;
        os << "  " << k << '=' << (v.is_number() ? fmt10(v.get<double>()) : v.dump());
    }
    return os.str();
}

// ------------------------------------------------------------------ reports

Json to_json(const VerificationReport& r) {
    Json j;
    j["case"] = r.case_name;
    j["check"] = to_string(r.check);
    j["lhs"] = num(r.lhs);
    j["rhs"] = num(r.rhs);
    j["ratio"] = num(r.ratio);
    j["lhs_error_est"] = num(r.lhs_error_est);
    j["rhs_error_est"] = num(r.rhs_error_est);
    j["tolerance"] = num(r.tolerance);
    j["pass"] = r.pass;
    if (r.check == CheckKind::equality) j["target"] = num(r.target);
    if (r.check == CheckKind::bracket) {
        j["lower"] = num(r.lower);
        j["upper"] = num(r.upper);
        j["strict"] = r.strict;
    }
    Json extras = Json::object();
    for (const auto& [k, v] : r.extras) extras[k] = num(v);
    j["extras"] = extras;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

VerificationReport report_from_json(const Json& j) {
    VerificationReport r;
    r.case_name = need(j, "case").get<std::string>();
    const auto check = parse_check(need(j, "check").get<std::string>());
    if (!check) throw DomainError("json: unknown check kind");
    r.check = *check;
    r.lhs = num_from(need(j, "lhs"));
    r.rhs = num_from(need(j, "rhs"));
    r.ratio = num_from(need(j, "ratio"));
    r.lhs_error_est = num_from(need(j, "lhs_error_est"));
    r.rhs_error_est = num_from(need(j, "rhs_error_est"));
    r.tolerance = num_from(need(j, "tolerance"));
    r.pass = need(j, "pass").get<bool>();
    if (j.contains("target")) r.target = num_from(j["target"]);
    if (j.contains("lower")) r.lower = num_from(j["lower"]);
    if (j.contains("upper")) r.upper = num_from(j["upper"]);
    if (j.contains("strict")) r.strict = j["strict"].get<bool>();
    for (const auto& [k, v] : need(j, "extras").items()) r.extras[k] = num_from(v);
    if (j.contains("error")) r.error = j["error"].get<std::string>();
    return r;
}

std::string to_csv(const VerificationReport& r) {
    std::ostringstream os;
    const bool eq = r.check == CheckKind::equality, br = r.check == CheckKind::bracket;
    os << csv_field(r.case_name) << ',' << to_string(r.check) << ',' << fmt10(r.lhs) << ',' << fmt10(r.rhs) << ','
       << fmt10(r.ratio) << ',' << (eq ? fmt10(r.target) : "") << ',' << (br ? fmt10(r.lower) : "") << ','
       << (br ? fmt10(r.upper) : "") << ',' << fmt10(r.tolerance) << ',' << (r.pass ? "true" : "false") << ','
       << csv_field(r.error);
    return os.str();
}

std::string to_human(const VerificationReport& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS " : "FAIL ") << r.case_name << "  ratio=" << fmt10(r.ratio);
    switch (r.check) {
        case CheckKind::inequality: os << "  (>= 1 - " << fmt10(r.tolerance) << ')'; break;
        case CheckKind::equality: os << "  (target " << fmt10(r.target) << " +- " << fmt10(r.tolerance) << ')'; break;
        case CheckKind::bracket:
            os << "  (in " << (r.strict ? "(" : "[") << fmt10(r.lower) << ", " << fmt10(r.upper)
               << (r.strict ? ")" : "]") << ')';
            break;
    }
    if (!r.error.empty()) os << "  error: " << r.error;
    return os.str();
}

// --------------------------------------------------------------- crossovers

Json to_json(const CrossoverResult& r) {
    Json j;
    j["kind"] = to_string(r.kind);
    j["n"] = r.n;
    j["applicable"] = r.applicable;
    j["p_star"] = num(r.p_star);
    j["residual"] = num(r.residual);
    j["bracket"] = Json::array({num(r.bracket.first), num(r.bracket.second)});
    j["reference"] = r.reference ? num(*r.reference) : Json(nullptr);
    return j;
}

CrossoverResult crossover_from_json(const Json& j) {
    CrossoverResult r;
    const auto kind = parse_crossover_kind(need(j, "kind").get<std::string>());
    if (!kind) throw DomainError("json: unknown crossover kind");
    r.kind = *kind;
    r.n = need(j, "n").get<int>();
    r.applicable = need(j, "applicable").get<bool>();
    r.p_star = num_from(need(j, "p_star"));
    r.residual = num_from(need(j, "residual"));
    const Json& b = need(j, "bracket");
    r.bracket = {num_from(b.at(0)), num_from(b.at(1))};
    if (!need(j, "reference").is_null()) r.reference = j["reference"].get<double>();
    return r;
}

std::string to_csv(const CrossoverResult& r) {
    std::ostringstream os;
    os << r.n << ',' << to_string(r.kind) << ',' << (r.applicable ? "true" : "false") << ',' << fmt10(r.p_star)
       << ',' << fmt10(r.residual) << ',' << fmt10(r.bracket.first) << ',' << fmt10(r.bracket.second) << ','
       << (r.reference ? fmt10(*r.reference) : "");
    return os.str();
}

std::string to_human(const CrossoverResult& r) {
    std::ostringstream os;
    os << to_string(r.kind) << "  n=" << r.n << "  ";
    if (!r.applicable)
        os << "not applicable";
    else
        os << "p*=" << fmt10(r.p_star) << "  residual=" << fmt10(r.residual) << "  bracket=[" << fmt10(r.bracket.first)
           << ", " << fmt10(r.bracket.second) << ']';
    if (r.reference) os << "  printed=" << fmt10(*r.reference);
    return os.str();
}

// -------------------------------------------------------------- table rows

Json to_json(const TableRow& r) {
    Json j;
    j["p"] = num(r.p);
    j["n"] = r.n;
    Json values = Json::object();
    for (const auto& [k, v] : r.values) values[k] = num(v);
    j["values"] = values;
    j["ordering"] = r.ordering;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

TableRow table_row_from_json(const Json& j) {
    TableRow r;
    r.p = num_from(need(j, "p"));
    r.n = need(j, "n").get<int>();
    for (const auto& [k, v] : need(j, "values").items()) r.values[k] = num_from(v);
    r.ordering = need(j, "ordering").get<std::string>();
    if (j.contains("error")) r.error = j["error"].get<std::string>();
    return r;
}

namespace {
double get_or_nan(const TableRow& r, const char* key) {
    const auto it = r.values.find(key);
    return it == r.values.end() ? kNaN : it->second;
}
}  // namespace

std::string to_csv_table2(const TableRow& r) {
    std::ostringstream os;
    os << fmt10(r.p) << ',' << r.n << ',' << fmt10(get_or_nan(r, "double_singular")) << ','
       << fmt10(get_or_nan(r, "ref_double_singular")) << ',' << fmt10(get_or_nan(r, "numerical")) << ','
       << fmt10(get_or_nan(r, "ref_numerical")) << ',' << r.ordering;
    return os.str();
}

std::string to_human_table2(const TableRow& r) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "p=%-4.1f n=%d  double_singular=%-10.6g (printed %-8.6g)  numerical=%-10.6g (printed %-8.6g)  best=%s",
                  r.p, r.n, get_or_nan(r, "double_singular"), get_or_nan(r, "ref_double_singular"),
                  get_or_nan(r, "numerical"), get_or_nan(r, "ref_numerical"), r.ordering.c_str());
    return buf;
}

}  // namespace plb
