#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace ditray {

// Exit codes: 0 success/confirmed, 1 verification mismatch, 2 invalid domain
// input, 3 resource cap exceeded, 64 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitUsage = 64;

struct RunConfig {
    std::string command;
    int d = 3;
    bool d_set = false;
    double tol = 1e-9;
    bool tol_set = false;
    long long samples = 100000;
    std::uint64_t seed = 42;
    long long trials = 100;
    std::string format = "text";  // text | json | csv
    std::string output;           // empty = stdout
    std::string encoding_literal;
    std::string function_literal;
    int column = 1;
    bool probe = false;
};

int cmd_verify_paper(const RunConfig& cfg, std::ostream& out);
int cmd_partition(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, std::ostream& out);
int cmd_search(const RunConfig& cfg, std::ostream& out);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ditray
