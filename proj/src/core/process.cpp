#include "shade/core/process.hpp"

#include <array>
#include <cstdio>

#include <sys/wait.h>

#include "shade/core/errors.hpp"

namespace shade {

ProcessResult run_process(const std::string& command, std::chrono::milliseconds timeout) {
    std::string full = command;
    if (timeout.count() > 0) {
        double seconds = double(timeout.count()) / 1000.0;
        char buf[64];
        std::snprintf(buf, sizeof buf, "timeout %.3fs ", seconds);
        full = buf + full;
    }
    full += " 2>&1";

    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) throw IoError("popen failed for: " + command);

    ProcessResult result;
    std::array<char, 4096> chunk;
    std::size_t n;
    while ((n = fread(chunk.data(), 1, chunk.size(), pipe)) > 0) {
        result.output.append(chunk.data(), n);
    }
    int status = pclose(pipe);
    if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        result.exit_code = 128 + WTERMSIG(status);
    } else {
        result.exit_code = -1;
    }
    result.not_found = (result.exit_code == 127 || result.exit_code == 126);
    result.timed_out = (timeout.count() > 0 && result.exit_code == 124);
    return result;
}

} // namespace shade
