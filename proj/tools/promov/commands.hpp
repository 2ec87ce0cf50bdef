#pragma once

// The promov verbs. Each returns its report and exit code instead of
// printing, so tests can drive them in-process.
//
// Exit codes: 0 holds / valid / equivalent, 1 fails / violations,
// 2 unreadable or invalid input, 3 undecided within the horizon.

#include "promov/checkers.hpp"

#include <cstdint>
#include <string>

namespace promov::cli {

enum class Format { Text, Structured };

struct RunConfig {
    /// Instance document; when empty, the family specs below are used.
    std::string input;
    std::string family;
    std::string target_family;
    std::string morphism_family;

    std::string property;
    Horizon horizon;
    bool oracle = false;
    Format format = Format::Text;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct CommandResult {
    std::string out;
    std::string err;
    int exit_code = 0;
};

inline constexpr int kExitInputError = 2;

CommandResult cmd_validate(const RunConfig& config);
CommandResult cmd_check(const RunConfig& config);
CommandResult cmd_compose(const RunConfig& config);
CommandResult cmd_equiv(const RunConfig& config);
CommandResult cmd_demo(const RunConfig& config);

}  // namespace promov::cli
