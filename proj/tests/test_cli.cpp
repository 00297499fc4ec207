#include <doctest.h>

#include "comonotone/corpus.hpp"
#include "comonotone/quadrature.hpp"
#include "comonotone/runner.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <sys/wait.h>

using namespace comonotone;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {
constexpr double kPi = std::numbers::pi;

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_tool(const std::string& args) {
    const std::string cmd = std::string(COMONOTONE_RUN_EXE) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "comonotone_cli_test";
    fs::create_directories(dir);
    return dir / name;
}
}  // namespace

TEST_CASE("corpus membership") {
    REQUIRE(corpus().size() >= 4);
    for (const auto& e : corpus()) {
        const BreakpointSet y(e.breakpoints);
        CHECK(membership_margin(e, y) >= -1e-12);
        for (double x : {-2.0, 0.3, 1.7}) CHECK(e.f(x + 2 * kPi) == Approx(e.f(x)).scale(1.0).epsilon(1e-12));
    }
    const auto& ns = corpus_entry("neg_sin");
    CHECK(membership_margin(ns, BreakpointSet(ns.breakpoints)) == Approx(0.0).scale(1.0).epsilon(1e-15));
    const auto& tp = corpus_entry("two_pair");
    CHECK(tp.breakpoints.size() == 4);
    CHECK(std::abs(periodic_trapezoid(tp.fprime, 256)) <= 1e-10);
    CHECK(std::abs(adaptive(tp.fprime, -kPi, kPi, 1e-12)) <= 1e-10);
    CHECK_THROWS_AS(corpus_entry("nope"), std::invalid_argument);
}

TEST_CASE("config validation") {
    RunConfig c;
    c.n_list = {};
    try {
        c.validate();
        FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()) == "n_list empty");
    }
    c.n_list = {16, 8};
    CHECK_THROWS(c.validate());
    c.n_list = {8, 16};
    c.validate();
    c.breakpoints = {0.1, 0.2, 0.3};
    CHECK_THROWS(c.validate());
    c.breakpoints = {0.1, 4.0};
    CHECK_THROWS(c.validate());
    c.breakpoints = {};
    c.function_id = "missing";
    CHECK_THROWS(c.validate());
}

TEST_CASE("sweep of -sin, r = 3") {
    RunConfig c;
    c.function_id = "neg_sin";
    c.r = 3;
    c.n_list = {16, 32, 64};
    c.timing = false;
    const auto res = run(c);
    REQUIRE(res.rows.size() == 3);
    CHECK(res.all_passed());
    REQUIRE(res.fit.has_value());
    CHECK(res.fit->slope <= -2.5);

    const auto j = nlohmann::json::parse(to_json(res));
    CHECK(j.contains("rows"));
    CHECK(j["rows"].size() == 3);
    for (const char* key : {"n", "degree", "sup_error", "margin", "mode", "wall_ms"})
        CHECK(j["rows"][0].contains(key));

    const std::string csv = to_csv(res);
    CHECK(csv.rfind("n,degree,sup_error,margin,mode,wall_ms\n", 0) == 0);
    CHECK(csv.find("# slope=") != std::string::npos);
    CHECK(to_csv(run(c)) == csv);
}

TEST_CASE("small n falls back to a constant") {
    RunConfig c;
    c.n_list = {1, 4};
    c.timing = false;
    const auto res = run(c);
    for (const auto& row : res.rows) {
        CHECK(row.whitney);
        CHECK(row.degree == 0);
        CHECK(row.sup_error <= 1.0 + 1e-12);
        CHECK(row.margin == 0.0);
    }
    CHECK(!res.fit.has_value());
}

TEST_CASE("command line tool") {
    CHECK(run_tool("--n ''") == 1);
    CHECK(run_tool("--function missing --n 16") == 1);

    const auto a = scratch("a.json"), b = scratch("b.json");
    const std::string common = "--function neg_sin --r 2 --n 16,32 --no-timing --format json";
    CHECK(run_tool(common + " --out " + a.string()) == 0);
    CHECK(run_tool(common + " --out " + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(fs::exists(a.string() + ".error.dat"));
    CHECK(fs::exists(a.string() + ".tau.dat"));

    // config file with a flag overriding one key
    const auto cfg = scratch("cfg.json");
    std::ofstream(cfg) << R"({"function": "neg_sin", "r": 2, "n": [16, 32], "no_timing": true, "format": "json"})";
    const auto c_out = scratch("c.json");
    CHECK(run_tool("--config " + cfg.string() + " --out " + c_out.string()) == 0);
    CHECK(slurp(c_out) == slurp(a));
    const auto d_out = scratch("d.csv");
    CHECK(run_tool("--config " + cfg.string() + " --format csv --out " + d_out.string()) == 0);
    CHECK(slurp(d_out).rfind("n,degree", 0) == 0);

    const auto bad = scratch("bad.json");
    std::ofstream(bad) << R"({"n": [16], "colour": "red"})";
    CHECK(run_tool("--config " + bad.string()) == 1);

    // strict constants exceed the degree cap: the row fails, exit code 2
    const auto s_out = scratch("s.csv");
    CHECK(run_tool("--mode strict --n 16 --format csv --no-timing --out " + s_out.string()) == 2);
    CHECK(slurp(s_out).find("# failed n=16") != std::string::npos);
}
