#pragma once

#include <chrono>
#include <string>

namespace shade {

struct ProcessResult {
    int exit_code = 0;
    std::string output;     // stdout and stderr interleaved
    bool not_found = false; // command missing (shell 127/126)
    bool timed_out = false;
};

// Runs a shell command, capturing combined output. A positive timeout wraps
// the command with coreutils `timeout`.
ProcessResult run_process(const std::string& command, std::chrono::milliseconds timeout);

} // namespace shade
