#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace drham::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kVerifyFailed = 2, kRecursionError = 3, kConfigError = 4 };

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct MissingArtifact : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { text, json };

struct RunConfig {
    std::string seed = "kdv";  // built-in name or path to a seed JSON file
    int d_max = 2;
    int eps_max = 8;
    std::optional<int> q_max;
    std::optional<int> u_deg_max;
    Format format = Format::text;
    std::string out;  // empty: stdout
};

struct Outcome {
    int code = kOk;
    std::string out;  // what went to stdout
    std::string err;
};

// Runs one command line (without the program name). Never throws.
Outcome run(const std::vector<std::string>& args);

}  // namespace drham::cli
