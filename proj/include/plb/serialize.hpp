#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "plb/bounds.hpp"
#include "plb/compare.hpp"
#include "plb/core_params.hpp"
#include "plb/eigen_solver.hpp"
#include "plb/hardy_verify.hpp"

namespace plb {

using Json = nlohmann::ordered_json;

enum class OutputFormat { json, csv, human };
std::optional<OutputFormat> parse_format(const std::string& s);

// x rounded to 10 significant digits (what "%.10g" prints).
double round10(double x);
// "%.10g"; NaN prints as "NaN", infinities as "inf" / "-inf".
std::string fmt10(double x);
// round10 as a JSON number, null when not finite.
Json num(double x);
// Inverse of num: null reads back as NaN.
double num_from(const Json& j);

// The flat record every value-producing command emits.
struct Record {
    std::string method;
    double p = 0.0;
    int n = 0;
    double R = 0.0;
    double value = 0.0;
    bool applicable = false;
    Json meta = Json::object();
};

Record make_record(const ProblemParams& pp, const BoundResult& b);
Record make_record(const ProblemParams& pp, const EigenResult& e, bool with_profile);
Json to_json(const Record& r);
Record record_from_json(const Json& j);

inline constexpr const char* kRecordCsvHeader = "p,n,R,method,value,applicable,delta_star";
// One CSV line (no newline) in header order; delta_star empty when absent.
std::string to_csv(const Record& r);
std::string to_human(const Record& r);

Json to_json(const VerificationReport& r);
VerificationReport report_from_json(const Json& j);
inline constexpr const char* kReportCsvHeader = "case,check,lhs,rhs,ratio,target,lower,upper,tolerance,pass,error";
std::string to_csv(const VerificationReport& r);
std::string to_human(const VerificationReport& r);

Json to_json(const CrossoverResult& r);
CrossoverResult crossover_from_json(const Json& j);
inline constexpr const char* kCrossoverCsvHeader = "n,kind,applicable,p_star,residual,bracket_lo,bracket_hi,reference";
std::string to_csv(const CrossoverResult& r);
std::string to_human(const CrossoverResult& r);

Json to_json(const TableRow& r);
TableRow table_row_from_json(const Json& j);
// Table 2 columns in a fixed order.
inline constexpr const char* kTable2CsvHeader =
    "p,n,double_singular,ref_double_singular,numerical,ref_numerical,best_bound";
std::string to_csv_table2(const TableRow& r);
std::string to_human_table2(const TableRow& r);

}  // namespace plb
