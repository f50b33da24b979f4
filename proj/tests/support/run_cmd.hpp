#pragma once

// Spawns a command through the shell, capturing combined stdout/stderr and
// the exit code.

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

namespace gmiperf::testsupport {

struct CmdResult {
    int exit_code = -1;
    std::string output;
};

inline CmdResult run_cmd(const std::string& cmd) {
    const std::string full = cmd + " 2>&1";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe)
        throw std::runtime_error("popen failed: " + cmd);
    CmdResult res;
    std::array<char, 4096> buf;
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        res.output.append(buf.data(), n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

inline std::string cli_path() { return GMIPERF_CLI_PATH; }
inline std::string config_dir() { return GMIPERF_CONFIG_DIR; }
inline std::string testdata_dir() { return GMIPERF_TESTDATA_DIR; }

}  // namespace gmiperf::testsupport
