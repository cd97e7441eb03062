#include <doctest.h>

#include "twistcube/job.hpp"

using namespace twistcube;
using namespace twistcube::cli;
using nlohmann::json;

namespace {

std::string error_of(std::string_view text, std::optional<Command> cmd = {}) {
    try {
        (void)parse_config(text, cmd);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

bool contains(const std::string& s, std::string_view needle) { return s.find(needle) != std::string::npos; }

} // namespace

TEST_CASE("parse_config: raw job") {
    const auto cfg = parse_config(R"({"n": 2, "c": [[1, 2, 2]], "ell": [4, 3], "command": "check"})");
    CHECK(cfg.mode == Mode::raw);
    CHECK(cfg.command == Command::check);
    CHECK(cfg.spec == CubeSpec(2, {4, 3}, {{1, 2, 2}}));
    CHECK_FALSE(cfg.grid_requested);
}

TEST_CASE("parse_config: rep job") {
    const auto cfg = parse_config(R"({"cartan": "A3", "lambda": [0, 0, 2], "word": [2, 1, 2, 3, 2, 1], "command": "check"})");
    CHECK(cfg.mode == Mode::rep);
    CHECK(cfg.spec.n() == 6);
    CHECK(cfg.spec.ell() == std::vector<Int>{0, 0, 0, 2, 0, 0});

    const auto raw = parse_config(R"({"cartan": [[2, -1], [-1, 2]], "lambda": [1, 0], "word": [1, 2]})", Command::demazure);
    CHECK(raw.cartan->rows() == CartanMatrix::of_type("A2").rows());
}

TEST_CASE("parse_config: options") {
    const auto cfg = parse_config(
        R"({"n": 1, "ell": [3], "command": "check",
            "options": {"point_cap": 50, "cone_cap": 10, "grid_denom": 8, "grid_point_cap": 99, "out": "r.json"}})");
    CHECK(cfg.limits.point_cap == 50);
    CHECK(cfg.limits.cone_cap == 10);
    CHECK(cfg.limits.grid_denominator == 8);
    CHECK(cfg.limits.grid_point_cap == 99);
    CHECK(cfg.grid_requested);
    CHECK(cfg.out_path == std::optional<std::string>{"r.json"});
}

TEST_CASE("parse_config: validation errors name the field") {
    CHECK(contains(error_of(R"({"n": 2, "c": [[2, 1, 5]], "ell": [1, 1], "command": "check"})"), "i < j"));
    CHECK(contains(error_of(R"({"n": 2, "c": [[1, 3, 5]], "ell": [1, 1], "command": "check"})"), "c[0]"));
    CHECK(contains(error_of(R"({"n": 2, "c": [[1, 2, 1], [1, 2, 1]], "ell": [1, 1], "command": "check"})"),
                   "duplicate"));
    CHECK(contains(error_of(R"({"n": 2, "ell": [1], "command": "check"})"), "field 'ell'"));
    CHECK(contains(error_of(R"({"n": 1, "ell": [1.5], "command": "check"})"), "ell[0]"));
    CHECK(contains(error_of(R"({"n": 1, "ell": [1], "command": "check", "extra": 1})"), "field 'extra'"));
    CHECK(contains(error_of(R"({"n": 1, "ell": [1], "command": "frobnicate"})"), "field 'command'"));
    CHECK(contains(error_of(R"({"n": 1, "ell": [1]})"), "no command"));
    CHECK(contains(error_of(R"({"n": 1, "ell": [1], "cartan": "A1", "command": "check"})"), "both"));
    CHECK(contains(error_of(R"({"cartan": "Q7", "lambda": [1], "word": [1], "command": "check"})"), "field 'cartan'"));
    CHECK(contains(error_of(R"({"cartan": "A2", "lambda": [1], "word": [1], "command": "check"})"), "field 'lambda'"));
    CHECK(contains(error_of(R"({"cartan": "A2", "lambda": [1, 0], "word": [3], "command": "check"})"), "word[0]"));
    CHECK(contains(error_of(R"({"n": 1, "ell": [1], "command": "check", "options": {"cone_cap": 63}})"),
                   "options.cone_cap"));
    CHECK(contains(error_of(R"({"n": 1, "ell": [1], "command": "check"})", Command::lattice), "requested"));
    CHECK(contains(error_of(R"([1, 2])"), "object"));
}

TEST_CASE("parse_config: syntax errors report line and column") {
    const auto e = error_of("{\n  \"n\": 1,\n  \"ell\": [1,]\n}");
    CHECK(contains(e, "line 3"));
    CHECK(contains(e, "column"));
}

TEST_CASE("run: check report") {
    const auto report = run(parse_config(R"({"n": 2, "c": [[1, 2, 2]], "ell": [4, 3], "command": "check"})"));
    CHECK(report["version"] == std::string(version));
    const auto& r = report["result"];
    CHECK(r["verdict"] == false);
    CHECK(r["witness"]["sigma"] == "(-,-)");
    CHECK(r["witness"]["vector"] == json({-2, 3}));
    CHECK(r["conditions"]["d"] == false);
    CHECK_FALSE(r.contains("grid_convexity"));
    CHECK(report["spec"]["c"] == json::parse("[[1, 2, 2]]"));
}

TEST_CASE("run: grid convexity on request") {
    const auto report = run(parse_config(
        R"({"n": 2, "c": [[1, 2, -1]], "ell": [-7, 5], "command": "check", "options": {"grid_denom": 2}})"));
    CHECK(report["result"]["grid_convexity"]["convex_on_grid"] == true);
    CHECK(report["result"]["verdict"] == false);
}

TEST_CASE("run: necessary, lattice, cartier") {
    const auto nec = run(parse_config(R"({"cartan": "A2", "lambda": [2, 1], "word": [1, 2, 1], "command": "necessary"})"));
    CHECK(nec["result"]["cond2"] == false);
    CHECK(nec["result"]["cond2_violators"] == json({1}));
    CHECK(nec["spec"]["c_rows"] == json::parse("[[-1, 2], [-1]]"));
    CHECK(nec["spec"]["ell"] == json({2, 1, 2}));

    const auto lat = run(parse_config(R"({"n": 1, "ell": [0], "command": "lattice"})"));
    CHECK(lat["result"]["count"] == 1);
    CHECK(lat["result"]["points"][0]["x"] == json({0}));
    CHECK(lat["result"]["points"][0]["sign"] == 1);

    const auto car = run(parse_config(R"({"n": 2, "c": [[1, 2, 1]], "ell": [3, 5], "command": "cartier"})"));
    REQUIRE(car["result"]["cones"].size() == 4);
    CHECK(car["result"]["cones"][3]["m"] == json({-2, 5}));
    CHECK(car["result"]["cones"][3]["in_c"] == false);
}

TEST_CASE("run: rep-only commands reject raw jobs") {
    const auto cfg = parse_config(R"({"n": 1, "ell": [0], "command": "demazure"})");
    CHECK_THROWS_AS(run(cfg), ConfigError);
}

TEST_CASE("render is byte-stable") {
    const auto cfg = parse_config(R"({"cartan": "A1", "lambda": [2], "word": [1], "command": "character"})");
    const auto a = render(run(cfg));
    CHECK(a == render(run(cfg)));
    CHECK(a.back() == '\n');
    CHECK(run(cfg)["result"]["equal"] == true);
}

TEST_CASE("exit codes") {
    CHECK(exit_code_for(ConfigError("x")) == 2);
    CHECK(exit_code_for(UsageError("x")) == 2);
    CHECK(exit_code_for(CapacityError("x", 1)) == 3);
    CHECK(exit_code_for(OverflowError("x")) == 4);
    CHECK(exit_code_for(InternalInconsistency("x")) == 5);
    CHECK(exit_code_for(std::runtime_error("x")) == 1);

    auto capped = parse_config(R"({"n": 2, "ell": [50, 50], "command": "lattice", "options": {"point_cap": 10}})");
    try {
        (void)run(capped);
        FAIL("expected capacity error");
    } catch (const std::exception& e) {
        CHECK(exit_code_for(e) == 3);
    }
    auto big = parse_config(R"({"n": 2, "c": [[1, 2, -2]], "ell": [9223372036854775807, 1], "command": "cartier"})");
    try {
        (void)run(big);
        FAIL("expected overflow");
    } catch (const std::exception& e) {
        CHECK(exit_code_for(e) == 4);
    }
}
