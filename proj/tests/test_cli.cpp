#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finpart/cli.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = finpart::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("fpi subcommand: monomial value via both methods") {
    const auto r = run_cli({"fpi", "--f", "one", "--n", "1", "--nu", "0.5", "--a",
                            "1", "--method", "both"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["command"] == "fpi");
    REQUIRE(doc["rows"].size() == 2);
    CHECK(doc["rows"][0][0] == "limit");
    CHECK(std::abs(doc["rows"][0][1].get<double>() - (-2.0)) < 1e-9);
    CHECK(doc["rows"][1][0] == "contour");
    CHECK(std::abs(doc["rows"][1][1].get<double>() - (-2.0)) < 1e-9);
    CHECK(doc["summary"]["bound_satisfied"] == true);
}

TEST_CASE("stieltjes subcommand reaches the closed form") {
    const auto r = run_cli({"stieltjes", "--f", "one", "--nu", "0", "--omega",
                            "0.5", "--a", "2", "--terms", "30"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    const auto& last = doc["rows"].back();
    // columns: n, S_n, correction, total, bound, direct, abs_err
    CHECK(std::abs(last[3].get<double>() - std::log(5.0)) < 1e-9);
    CHECK(doc["summary"]["bound_satisfied"] == true);
}

TEST_CASE("demo missing-terms matches the quadrature oracle") {
    const auto r = run_cli({"demo", "missing-terms", "--nu", "0.3333333333",
                            "--omega", "10"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    const auto& last = doc["rows"].back();
    CHECK(std::abs(last[1].get<double>() - 1.7439675691) < 1e-4); // naive
    CHECK(std::abs(last[2].get<double>() - 1.5842321490) < 1e-4); // corrected
    CHECK(std::abs(last[3].get<double>() - 1.5842321490) < 1e-6); // direct
}

TEST_CASE("csv and text formats") {
    const auto csv = run_cli({"--format", "csv", "stieltjes", "--f", "exp_neg",
                              "--nu", "0.5", "--omega", "0.5", "--a", "10",
                              "--terms", "10"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("n,S_n,correction,total,bound,direct,abs_err\n", 0) == 0);

    const auto text = run_cli({"--format", "text", "fpi", "--f", "exp_neg", "--n",
                               "2", "--nu", "0", "--a", "1"});
    REQUIRE(text.code == 0);
    CHECK(text.out.find("method") != std::string::npos);
}

TEST_CASE("deterministic output and json number round-trip") {
    const std::vector<std::string> args = {"stieltjes", "--f",     "geom(2)",
                                           "--nu",      "0",       "--omega",
                                           "0.5",       "--a",     "1",
                                           "--terms",   "12"};
    const auto r1 = run_cli(args);
    const auto r2 = run_cli(args);
    CHECK(r1.out == r2.out);
    REQUIRE(r1.code == 0);

    // %.17g round-trips doubles exactly: re-serializing the parsed numbers
    // and re-parsing changes nothing.
    const auto doc = json::parse(r1.out);
    for (const auto& row : doc["rows"]) {
        for (const auto& cell : row) {
            REQUIRE(cell.is_number());
            const double v = cell.get<double>();
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            CHECK(std::strtod(buf, nullptr) == v);
        }
    }
}

TEST_CASE("exit codes and diagnostics") {
    SUBCASE("domain error: omega >= a") {
        const auto r = run_cli({"stieltjes", "--f", "one", "--nu", "0", "--omega",
                                "3", "--a", "2", "--terms", "5"});
        CHECK(r.code == 1);
        CHECK(r.out.empty());
        CHECK(r.err.rfind("error:", 0) == 0);
        CHECK(r.err.find('\n') == r.err.size() - 1); // single line
    }
    SUBCASE("unknown function") {
        const auto r = run_cli({"fpi", "--f", "tan", "--n", "1", "--nu", "0",
                                "--a", "1"});
        CHECK(r.code == 1);
        CHECK(r.err.find("unknown function") != std::string::npos);
    }
    SUBCASE("unknown flag") {
        const auto r = run_cli({"fpi", "--bogus", "1"});
        CHECK(r.code == 1);
    }
    SUBCASE("help exits zero") {
        const auto r = run_cli({"--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("fpi") != std::string::npos);
    }
}

TEST_CASE("infinite upper limit spelled as inf") {
    const auto r = run_cli({"stieltjes", "--f", "exp_neg", "--nu", "0", "--omega",
                            "1", "--a", "inf", "--terms", "25"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["parameters"]["a"] == "inf");
    const auto& last = doc["rows"].back();
    CHECK(std::abs(last[3].get<double>() - 0.59634736232319407) < 1e-8);
    CHECK(doc["summary"]["bounds_certified"] == false);
}

TEST_CASE("demo e1 and igamma succeed with small errors") {
    const auto e1 = run_cli({"demo", "e1", "--omega", "1", "--terms", "40"});
    CHECK(e1.code == 0);
    const auto ig = run_cli({"demo", "igamma", "--nu", "0.5", "--omega", "1",
                             "--terms", "40"});
    CHECK(ig.code == 0);
    const auto pe = run_cli({"demo", "pole-exclusion", "--nu", "0.5", "--omega",
                             "0.25", "--a", "1"});
    CHECK(pe.code == 0);
}

TEST_CASE("expand-infinity naive vs corrected") {
    const auto cor = run_cli({"expand-infinity", "--nu", "0.3333333333333333",
                              "--omega", "10", "--terms", "12"});
    REQUIRE(cor.code == 0);
    const auto doc = json::parse(cor.out);
    CHECK(std::abs(doc["summary"]["value"].get<double>() - 1.5842321490) < 1e-6);
    CHECK(std::abs(doc["summary"]["branch_integral"].get<double>() -
                   (-0.15973542009755037)) < 1e-8);

    const auto nai = run_cli({"expand-infinity", "--nu", "0.3333333333333333",
                              "--omega", "10", "--terms", "12", "--naive"});
    REQUIRE(nai.code == 0);
    const auto ndoc = json::parse(nai.out);
    CHECK(std::abs(ndoc["summary"]["value"].get<double>() - 1.7439675691) < 1e-6);
}
