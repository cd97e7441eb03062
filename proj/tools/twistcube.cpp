// twistcube: batch front end.
//
//   twistcube <command> --config <path|-> [--out <path>] [--point-cap N]
//             [--cone-cap N] [--grid-denom N] [--timing]
//
// Exit codes: 0 success, 2 parse/validation, 3 capacity, 4 overflow,
// 5 internal inconsistency.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "twistcube/job.hpp"

namespace {

std::string read_all(const std::string& path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw twistcube::ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::optional<std::uint64_t> env_cap(const char* name) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return std::nullopt;
    char* end = nullptr;
    const auto x = std::strtoull(v, &end, 10);
    if (*end != '\0' || x == 0) throw twistcube::ConfigError(std::string("bad value in ") + name);
    return x;
}

} // namespace

int main(int argc, char** argv) {
    using namespace twistcube;

    CLI::App app{"Decide whether a twisted cube is untwisted, with certificates"};
    app.set_version_flag("--version", std::string(cli::version));

    std::string command;
    std::string config_path = "-";
    std::optional<std::string> out_path;
    std::optional<std::uint64_t> point_cap, grid_denom;
    std::optional<unsigned> cone_cap;
    bool timing = false;

    app.add_option("command", command, "check | cartier | lattice | character | demazure | necessary")
        ->required();
    app.add_option("-c,--config", config_path, "job document (JSON); '-' reads standard input");
    app.add_option("-o,--out", out_path, "write the report here instead of standard output");
    app.add_option("--point-cap", point_cap, "lattice point cap (default 10^7)")->check(CLI::PositiveNumber);
    app.add_option("--cone-cap", cone_cap, "largest n for the 2^n cone sweep (default 24)")
        ->check(CLI::Range(1, 62));
    app.add_option("--grid-denom", grid_denom, "run the grid convexity oracle in `check`")
        ->check(CLI::PositiveNumber);
    app.add_flag("--timing", timing, "add elapsed time to the report (breaks byte stability)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        auto cfg = cli::parse_config(read_all(config_path), cli::parse_command(command));

        if (auto v = env_cap("TWISTCUBE_POINT_CAP"); v && !point_cap) cfg.limits.point_cap = *v;
        if (point_cap) cfg.limits.point_cap = *point_cap;
        if (cone_cap) cfg.limits.cone_cap = *cone_cap;
        if (grid_denom) {
            cfg.limits.grid_denominator = *grid_denom;
            cfg.grid_requested = true;
        }
        if (out_path) cfg.out_path = out_path;

        auto report = cli::run(cfg);
        if (timing) {
            const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                                std::chrono::steady_clock::now() - start)
                                .count();
            report["timing"] = {{"elapsed_us", us}};
        }
        const std::string text = cli::render(report);
        if (cfg.out_path && *cfg.out_path != "-") {
            std::ofstream out(*cfg.out_path, std::ios::binary);
            if (!out) throw ConfigError("cannot write report to '" + *cfg.out_path + "'");
            out << text;
        } else {
            std::cout << text;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "twistcube: " << e.what() << '\n';
        return cli::exit_code_for(e);
    }
}
