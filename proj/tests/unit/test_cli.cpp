#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qnewton/cli.hpp"
#include "qnewton/harness.hpp"

using namespace qnewton;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    static const auto dir = [] {
        const auto d = std::filesystem::temp_directory_path() / "qnewton-cli-test";
        std::filesystem::remove_all(d);
        return d;
    }();
    ::setenv("QNEWTON_RESULTS_DIR", dir.string().c_str(), 1);
    args.insert(args.begin(), "qnewton");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<ResultRow> report_rows(const std::string& out) {
    // The CSV report is everything up to the first blank or non-CSV line.
    std::istringstream in(out);
    std::string line, csv;
    while (std::getline(in, line) && line.find(',') != std::string::npos && line.find(": ") == std::string::npos)
        csv += line + "\n";
    return parse_report_csv(csv);
}

} // namespace

TEST_CASE("minimize") {
    SUBCASE("rosenbrock from the origin") {
        const auto r = cli({"minimize", "--function", "rosenbrock", "--x0", "0,0"});
        CHECK(r.code == 0);
        const auto rows = report_rows(r.out);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].termination == "converged");
        CHECK(rows[0].final_f < 1e-20);
        CHECK(r.out.find("final_x: 1,1") != std::string::npos);
    }
    SUBCASE("griewank in dimension 15") {
        const auto r = cli({"minimize", "--function", "griewank", "--dim", "15", "--x0", "fill:10"});
        CHECK(r.code == 0);
        const auto rows = report_rows(r.out);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].final_f == 0.0);
        CHECK(rows[0].termination == "converged");
    }
    SUBCASE("a diverging run still exits 0") {
        const auto r = cli({"minimize", "--function", "ex01", "--x0", "1"});
        CHECK(r.code == 0);
        CHECK(report_rows(r.out).at(0).termination == "diverged");
    }
    SUBCASE("bad input exits 2") {
        CHECK(cli({"minimize", "--function", "rosenbrock", "--dim", "3", "--x0", "0,0"}).code == 2);
        CHECK(cli({"minimize", "--function", "no-such", "--x0", "0"}).code == 2);
        CHECK(cli({"minimize", "--function", "rosenbrock", "--x0", "0,0", "--method", "sgd"}).code == 2);
        CHECK(cli({"minimize", "--function", "rosenbrock", "--x0", "0,0", "--h-mode", "cubic"}).code == 2);
        CHECK(cli({"minimize", "--function", "rosenbrock", "--x0", "0,0", "--bogus"}).code == 2);
        CHECK(cli({"minimize", "--x0", "0,0"}).code == 2);
        CHECK(cli({"frobnicate"}).code == 2);
    }
    SUBCASE("an unwritable trace path exits 1") {
        const auto r = cli({"minimize", "--function", "rosenbrock", "--x0", "0,0", "--out", "/proc/qnewton/no/trace"});
        CHECK(r.code == 1);
        CHECK_FALSE(r.err.empty());
    }
}

TEST_CASE("compare") {
    SUBCASE("named suite") {
        const auto r = cli({"compare", "--suite", "rosenbrock30", "--format", "csv"});
        CHECK(r.code == 0);
        const auto rows = report_rows(r.out);
        CHECK(rows.size() == 6);
        for (const auto& row : rows) CHECK(row.objective == "rosenbrock");
    }
    SUBCASE("inline experiment, markdown") {
        const auto r = cli({"compare", "--function", "rosenbrock", "--x0", "0,0", "--x0", "fill:-1", "--methods",
                            "nqn,newton"});
        CHECK(r.code == 0);
        CHECK(r.out.rfind("| method |", 0) == 0);
        // Header, rule and 2 x 2 rows.
        CHECK(std::count(r.out.begin(), r.out.end(), '\n') >= 6);
    }
    SUBCASE("report file is written") {
        const auto dir = std::filesystem::temp_directory_path() / "qnewton-cli-compare";
        std::filesystem::remove_all(dir);
        const auto r = cli({"compare", "--function", "rosenbrock", "--x0", "0,0", "--methods", "nqn", "--out",
                            dir.string()});
        CHECK(r.code == 0);
        bool found_csv = false;
        for (const auto& e : std::filesystem::directory_iterator(dir)) found_csv |= e.path().extension() == ".csv";
        CHECK(found_csv);
        std::filesystem::remove_all(dir);
    }
    SUBCASE("errors") {
        CHECK(cli({"compare", "--function", "rosenbrock", "--x0", "0,0", "--methods", ""}).code == 2);
        CHECK(cli({"compare", "--suite", "nope"}).code == 2);
        CHECK(cli({"compare", "--suite", "example7", "--format", "xml"}).code == 2);
        CHECK(cli({"compare", "--spec", "/nonexistent/spec.json"}).code != 0);
    }
}

TEST_CASE("roots") {
    SUBCASE("built-in g2") {
        const auto r = cli({"roots", "--builtin", "g2", "--x0", "0.317,-0.15"});
        CHECK(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j.at("classification") == "root-of-g");
        CHECK(std::abs(j.at("z")[1].get<double>() + 1.0) < 1e-8);
    }
    SUBCASE("polynomial coefficients") {
        const auto r = cli({"roots", "--poly", "1,0,1", "--x0", "0,0.9"});
        CHECK(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(std::abs(j.at("z")[1].get<double>() - 1.0) < 1e-8);
        CHECK(j.at("termination") == "converged");
    }
    SUBCASE("multiple root") {
        const auto r = cli({"roots", "--builtin", "g4", "--x0", "4,1"});
        CHECK(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j.at("f").get<double>() < 1e-10);
    }
    SUBCASE("errors") {
        CHECK(cli({"roots", "--builtin", "g2", "--poly", "1,1", "--x0", "0,0"}).code == 2);
        CHECK(cli({"roots", "--builtin", "g9", "--x0", "0,0"}).code == 2);
        CHECK(cli({"roots", "--poly", "1,x", "--x0", "0,0"}).code == 2);
        CHECK(cli({"roots", "--builtin", "g2", "--x0", "1"}).code == 2);
    }
}

TEST_CASE("bench") {
    const auto list = cli({"bench", "--list-suites"});
    CHECK(list.code == 0);
    for (const auto& s : suite_names()) CHECK(list.out.find(s) != std::string::npos);
    const auto catalog = cli({"bench", "--json"});
    CHECK(catalog.code == 0);
    CHECK(nlohmann::json::parse(catalog.out).is_array());
    CHECK(cli({"bench", "--suite", "nope"}).code == 2);
}

TEST_CASE("help lists defaults") {
    const auto top = cli({"--help"});
    CHECK(top.code == 0);
    for (const char* sub : {"minimize", "compare", "roots", "bench"}) CHECK(top.out.find(sub) != std::string::npos);
    const auto m = cli({"minimize", "--help"});
    CHECK(m.code == 0);
    CHECK(m.out.find("--h-mode TEXT [power]") != std::string::npos);
    CHECK(m.out.find("--delta-set TEXT [0,1,-1]") != std::string::npos);
    CHECK(m.out.find("--max-iter INT [1000]") != std::string::npos);
    CHECK(m.out.find("--gtol FLOAT [1e-10]") != std::string::npos);
}

TEST_CASE("repeated runs print the same report apart from wall time") {
    auto strip = [](const std::string& out) {
        auto rows = report_rows(out);
        for (auto& r : rows) r.wall_seconds = 0.0;
        return emit_report(rows, ReportFormat::Csv);
    };
    const std::vector<std::string> args{"compare", "--function", "styblinski-tang", "--dim", "4", "--x0", "random:5",
                                        "--methods", "rnqn,rand-newton,back", "--seed", "17", "--format", "csv"};
    const auto a = cli(args);
    const auto b = cli(args);
    REQUIRE(a.code == 0);
    CHECK(strip(a.out) == strip(b.out));
}
