#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "plb/bounds.hpp"
#include "plb/serialize.hpp"
#include "support.hpp"

using namespace plb;
using doctest::Approx;
using support::run_cli;

namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        rows.push_back(cells);
    }
    return rows;
}

struct EnvGuard {
    std::string name;
    std::optional<std::string> old;
    EnvGuard(const char* n, const char* v) : name(n) {
        if (const char* o = std::getenv(n)) old = o;
        setenv(n, v, 1);
    }
    ~EnvGuard() {
        if (old)
            setenv(name.c_str(), old->c_str(), 1);
        else
            unsetenv(name.c_str());
    }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("number formatting") {
    CHECK(fmt10(4.0) == "4");
    CHECK(fmt10(1.0 / 3) == "0.3333333333");
    CHECK(fmt10(std::nan("")) == "NaN");
    CHECK(fmt10(INFINITY) == "inf");
    CHECK(round10(2.108087752345678) == 2.108087752);
    CHECK(num(std::nan("")).is_null());
    CHECK(std::isnan(num_from(Json(nullptr))));
}

TEST_CASE("bound json example") {
    const auto r = run_cli({"bound", "--p", "2", "--n", "3", "--radius", "1", "--method", "double_singular",
                            "--format", "json"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.is_object());
    CHECK(j["method"] == "double_singular");
    CHECK(j["value"].get<double>() == 4.0);
    CHECK(j["applicable"] == true);
    CHECK(r.out.find("\"value\": 4.0") != std::string::npos);
    // key order of the record
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"method", "p", "n", "R", "value", "applicable", "meta"});
}

TEST_CASE("volume reduction") {
    const auto r = run_cli({"bound", "--p", "2", "--n", "3", "--volume", "4.18879", "--method", "cheeger",
                            "--format", "json"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["R"].get<double>() == Approx(1.0).epsilon(1e-5));
    CHECK(j["value"].get<double>() == Approx(2.25).epsilon(1e-5));
}

TEST_CASE("usage errors exit 2") {
    const auto a = run_cli({"bound", "--p", "0.5", "--n", "3"});
    CHECK(a.code == 2);
    CHECK(a.err.find("p > 1") != std::string::npos);
    CHECK(run_cli({"bound", "--p", "2", "--n", "3", "--radius", "1", "--volume", "2"}).code == 2);
    CHECK(run_cli({"bound", "--p", "2", "--n", "3", "--bogus"}).code == 2);
    CHECK(run_cli({"bound", "--p", "2", "--n", "3", "--method", "nope"}).code == 2);
    CHECK(run_cli({"bound", "--p", "2", "--n", "3", "--format", "xml"}).code == 2);
    CHECK(run_cli({"bound", "--p", "2", "--n", "3", "--method", "family_point"}).code == 2);
    CHECK(run_cli({"sweep", "--p-range", "1:2:0.5", "--n-list", "3", "--methods", ""}).code == 2);
    CHECK(run_cli({"sweep", "--p-range", "1:2", "--n-list", "3", "--methods", "cheeger"}).code == 2);
    CHECK(run_cli({"sweep", "--p-range", "1.5:2:0.5", "--n-list", "1", "--methods", "cheeger"}).code == 2);
    CHECK(run_cli({"eig", "--p", "2", "--n", "3", "--grid", "100"}).code == 2);
    CHECK(run_cli({"compare", "--which", "p9n", "--n", "3"}).code == 2);
    CHECK(run_cli({"tables", "--which", "3"}).code == 2);
    CHECK(run_cli({"verify", "--suite", "nothing"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"bound", "--p", "2", "--n", "3", "--out", "/nonexistent/dir/x.json"}).code == 2);
}

TEST_CASE("help exits 0") {
    const auto r = run_cli({"--help"});
    CHECK(r.code == 0);
    const auto e = run_cli({"eig", "--help"});
    CHECK(e.code == 0);
    CHECK((e.out + e.err).find("2048") != std::string::npos);
}

TEST_CASE("computation errors exit 1") {
    const auto r = run_cli({"eig", "--p", "2", "--n", "3", "--grid", "512", "--max-iter", "10", "--tol", "1e-300"});
    CHECK(r.code == 1);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("sweep csv layout and ordering") {
    const auto r = run_cli({"sweep", "--p-range", "1.5:2.5:0.5", "--n-list", "3,2", "--methods", "picone,cheeger,hardy"});
    CHECK(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 1 + 2 * 3 * 3);
    CHECK(r.out.substr(0, r.out.find('\n')) == "p,n,R,method,value,applicable,delta_star");
    for (std::size_t i = 2; i < rows.size(); ++i) {
        const auto& a = rows[i - 1];
        const auto& b = rows[i];
        const auto ka = std::make_tuple(std::stoi(a[1]), std::stod(a[0]), a[3]);
        const auto kb = std::make_tuple(std::stoi(b[1]), std::stod(b[0]), b[3]);
        CHECK(ka < kb);
    }
    // hardy at p = n is not applicable and prints NaN
    bool saw = false;
    for (const auto& row : rows)
        if (row[0] == "2" && row[1] == "2" && row[3] == "hardy") {
            CHECK(row[4] == "NaN");
            CHECK(row[5] == "false");
            saw = true;
        }
    CHECK(saw);
}

TEST_CASE("sweep rows that throw become NaN and the sweep goes on") {
    const auto r = run_cli({"sweep", "--p-range", "2:3:1", "--n-list", "2,3", "--methods", "family_point",
                            "--delta", "2.5", "--format", "json"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    REQUIRE(j.size() == 4);
    int failed = 0;
    for (const auto& rec : j) {
        if (rec["n"] == 2) {
            CHECK(rec["value"].is_null());
            CHECK(rec["applicable"] == false);
            CHECK(rec["meta"].contains("error"));
            ++failed;
        } else {
            CHECK(rec["applicable"] == true);
        }
    }
    CHECK(failed == 2);
}

TEST_CASE("single point sweep equals bound") {
    for (const char* m : {"cheeger", "family_sup", "log_improved", "sobolev"}) {
        const auto s = run_cli({"sweep", "--p-range", "2.5:2.5:1", "--n-list", "3", "--methods", m, "--format", "json"});
        const auto b = run_cli({"bound", "--p", "2.5", "--n", "3", "--method", m, "--format", "json"});
        REQUIRE(s.code == 0);
        REQUIRE(b.code == 0);
        const Json js = Json::parse(s.out), jb = Json::parse(b.out);
        CHECK(js.size() == 1);
        CHECK(js[0] == jb);
    }
}

TEST_CASE("sweep shows the family_sup over picone crossing for n = 3") {
    const auto r = run_cli({"sweep", "--p-range", "1.3:5:0.05", "--n-list", "3", "--methods", "family_sup,picone",
                            "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    std::vector<std::pair<double, double>> gap;  // (p, family_sup - picone)
    for (std::size_t i = 0; i + 1 < j.size(); i += 2) {
        REQUIRE(j[i]["method"] == "family_sup");
        REQUIRE(j[i + 1]["method"] == "picone");
        gap.emplace_back(j[i]["p"].get<double>(), j[i]["value"].get<double>() - j[i + 1]["value"].get<double>());
    }
    std::vector<double> flips;
    for (std::size_t i = 1; i < gap.size(); ++i)
        if (gap[i - 1].second < 0 && gap[i].second >= 0) flips.push_back(gap[i].first);
    REQUIRE(flips.size() == 1);
    CHECK(flips[0] == Approx(4.4));
}

TEST_CASE("json round trips") {
    {
        const auto r = run_cli({"bound", "--p", "2.5", "--n", "3", "--format", "json"});
        const Json j = Json::parse(r.out);
        REQUIRE(j.is_array());
        for (const auto& rec : j) CHECK(to_json(record_from_json(rec)) == rec);
    }
    {
        const auto r = run_cli({"eig", "--p", "2", "--n", "3", "--grid", "256", "--profile", "--format", "json"});
        const Json j = Json::parse(r.out);
        CHECK(to_json(record_from_json(j)) == j);
        CHECK(j["meta"]["profile"]["rho"].size() == 257);
    }
    {
        const auto r = run_cli({"verify", "--suite", "all", "--format", "json"});
        CHECK(r.code == 0);
        const Json j = Json::parse(r.out);
        CHECK(j.size() == 35);
        for (const auto& rep : j) CHECK(to_json(report_from_json(rep)) == rep);
    }
    {
        const auto r = run_cli({"compare", "--which", "p3n", "--n", "9", "--format", "json"});
        const Json j = Json::parse(r.out);
        CHECK(to_json(crossover_from_json(j)) == j);
        CHECK(j["p_star"].get<double>() == 3.0);
    }
    {
        const auto r = run_cli({"tables", "--which", "1", "--format", "json"});
        for (const auto& c : Json::parse(r.out)) CHECK(to_json(crossover_from_json(c)) == c);
    }
    {
        const auto r = run_cli({"tables", "--which", "2", "--format", "json"});
        const Json j = Json::parse(r.out);
        CHECK(j.size() == 45);
        for (const auto& row : j) CHECK(to_json(table_row_from_json(row)) == row);
    }
}

TEST_CASE("csv outputs carry their headers") {
    CHECK(run_cli({"verify", "--suite", "sharpness", "--format", "csv"}).out.rfind(kReportCsvHeader, 0) == 0);
    CHECK(run_cli({"compare", "--which", "p0n", "--n", "4", "--format", "csv"}).out.rfind(kCrossoverCsvHeader, 0) == 0);
    CHECK(run_cli({"tables", "--which", "2", "--format", "csv"}).out.rfind(kTable2CsvHeader, 0) == 0);
    const auto prof = run_cli({"eig", "--p", "2", "--n", "3", "--grid", "256", "--profile", "--format", "csv"});
    CHECK(prof.out.rfind("rho,u\n", 0) == 0);
    CHECK(csv_rows(prof.out).size() == 258);
}

TEST_CASE("ten significant digits") {
    const auto r = run_cli({"bound", "--p", "2", "--n", "3", "--method", "sobolev", "--format", "csv"});
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][4] == fmt10(lambda_sobolev(derive(2, 3, 1)).value));
    const auto h = run_cli({"bound", "--p", "4", "--n", "2", "--method", "log_improved", "--format", "csv"});
    const auto hrows = csv_rows(h.out);
    REQUIRE(hrows.size() == 2);
    CHECK(hrows[1][4].size() == 11);  // d.ddddddddd
}

TEST_CASE("verify exit codes") {
    const auto ok = run_cli({"verify", "--suite", "sharpness", "--tol", "1e-6"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("8/8 cases passed") != std::string::npos);
    CHECK(run_cli({"verify", "--suite", "pointwise"}).code == 0);
    const auto bad = run_cli({"verify", "--suite", "all", "--tol", "1e-20"});
    CHECK(bad.code != 0);
    CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("--out writes a file") {
    const auto path = std::filesystem::temp_directory_path() / "plb_cli_out_test.csv";
    std::filesystem::remove(path);
    const auto r = run_cli({"bound", "--p", "3", "--n", "2", "--format", "csv", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == run_cli({"bound", "--p", "3", "--n", "2", "--format", "csv"}).out);
    std::filesystem::remove(path);
}

TEST_CASE("output is deterministic") {
    const auto o = support::cli_determinism();
    INFO(o.detail);
    CHECK(o.ok);
}

TEST_CASE("PLB_THREADS does not change output") {
    const std::vector<std::string> argv = {"sweep", "--p-range", "1.2:4:0.2", "--n-list", "2,3,4", "--methods", "all"};
    std::string one, many;
    {
        EnvGuard g("PLB_THREADS", "1");
        one = run_cli(argv).out;
    }
    {
        EnvGuard g("PLB_THREADS", "7");
        many = run_cli(argv).out;
    }
    CHECK(one == many);
    CHECK_FALSE(one.empty());
}

}
