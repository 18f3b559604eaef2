#pragma once

// Command-line front end. run() never throws on user errors; it maps them
// onto a status:
//   0 ok, 1 verification failed, 2 invalid input, 3 search exhausted.

#include <string>
#include <vector>

#include <json.hpp>

namespace critorb::cli {

enum class Status { Ok = 0, VerificationFailed = 1, InvalidInput = 2, Exhausted = 3 };

struct CommandResult {
    Status status = Status::Ok;
    nlohmann::json payload;
    std::string text;  // used instead of payload for --csv and --help
    std::string meta;  // --meta line for stderr

    int exit_code() const { return static_cast<int>(status); }
};

/// args excludes the program name.
CommandResult run(const std::vector<std::string>& args);

}  // namespace critorb::cli
