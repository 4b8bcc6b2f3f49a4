#pragma once

// Runs the built CLI binary and captures exit code, stdout, and stderr.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace stobon::testing {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline CliResult run_cli_env(const std::string& env, const std::string& args) {
    static int counter = 0;
    const std::string tag = std::to_string(getpid()) + "_" + std::to_string(counter++);
    const std::string out_path = "/tmp/stobon_cli_out_" + tag;
    const std::string err_path = "/tmp/stobon_cli_err_" + tag;

    const std::string prefix = env.empty() ? std::string() : ("env " + env + " ");
    const std::string cmd = prefix + "\"" + STOBON_CLI_PATH + "\" " + args + " >" + out_path +
                            " 2>" + err_path;
    int status = std::system(cmd.c_str());

    CliResult r;
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

inline CliResult run_cli(const std::string& args) { return run_cli_env({}, args); }

} // namespace stobon::testing
