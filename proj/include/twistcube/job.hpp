#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "twistcube/cube.hpp"
#include "twistcube/rep.hpp"
#include "twistcube/untwist.hpp"

namespace twistcube::cli {

inline constexpr std::string_view version = "twistcube 1.0.0";

enum class Mode { raw, rep };
enum class Command { check, cartier, lattice, character, demazure, necessary };

std::string_view to_string(Command c) noexcept;
Command parse_command(std::string_view s); // throws ConfigError

struct JobConfig {
    Mode mode = Mode::raw;
    Command command = Command::check;

    CubeSpec spec; // raw payload, or resolved from the rep payload

    // rep payload
    std::optional<CartanMatrix> cartan;
    nlohmann::json cartan_echo; // label string or raw matrix as given
    Weight lambda;
    Word word;

    Limits limits;
    bool grid_requested = false; // include the convexity oracle in `check`
    std::optional<std::string> out_path;
};

/// Parses and validates a job document. Parse failures report line and
/// column; validation failures name the offending field. Both throw
/// ConfigError. `command_override`, when set, must agree with any
/// "command" field in the document.
JobConfig parse_config(std::string_view text, std::optional<Command> command_override = {});

/// Runs the job. The report is a JSON object whose serialization is
/// byte-stable for identical input and version.
nlohmann::json run(const JobConfig& config);

std::string render(const nlohmann::json& report);

/// Process exit code for an exception category: 2 parse/validation,
/// 3 capacity, 4 overflow, 5 internal inconsistency, 1 anything else.
int exit_code_for(const std::exception& e) noexcept;

} // namespace twistcube::cli
