#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "alg/scalar.hpp"

namespace alg {

inline constexpr int kSchemaVersion = 1;

enum ExitCode { kExitOk = 0, kExitCheckFailed = 1, kExitInputInvalid = 2, kExitPrecondition = 3 };

struct RunOptions {
    ZeroTestOptions zero;
    bool timing = false;
    bool complex_frame = false;     // levi-civita
    std::string direction;          // sectional: "e2" or comma separated components
    std::vector<int> orders{1};     // chern
    std::string source = "both";    // chern: iphi | block | both
    std::string other;              // product
    std::string projector;          // restrict
};

struct CommandResult {
    nlohmann::ordered_json report;
    int exit_code = kExitOk;
};

/// Subcommands in the order they are documented.
const std::vector<std::string>& command_names();
/// One-line description for --help.
std::string command_summary(const std::string& command);
/// Commands that take no target (fixtures, restrict).
bool command_needs_target(const std::string& command);

/// Runs one command. Errors never escape: they are reported with the matching exit code.
CommandResult run_command(const std::string& command, const std::string& target, const RunOptions& opt);

/// Violations of the report schema, empty when the report conforms.
std::vector<std::string> schema_errors(const nlohmann::ordered_json& report);

/// Human-readable rendering; ANSI colors when `color` is set.
std::string render_text(const nlohmann::ordered_json& report, bool color);

}  // namespace alg
