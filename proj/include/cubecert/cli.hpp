// cli.hpp
// Command-line front end. Certificates go to `out` (or --out FILE) as JSON
// Lines; summaries go to `err`.
//
//   verify   --max N [--from A] [--jobs J] [--out FILE] [--with-analytic]
//   certify  N
//   chain    --from A --to B --strategy paper|greedy-max|greedy-min
//   analytic [--threshold T] [--include-p2 BOOL] [--find-crossing] [--n-max N]
//   oracle   --max N
//   pi-bound --max X
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cubecert {

enum class Command { verify, certify, chain, analytic, oracle, pi_bound };

struct RunConfig {
    Command command = Command::verify;
    std::uint64_t lo = 1;
    std::uint64_t hi = 1;
    std::string strategy = "paper";
    std::optional<bool> include_p2; // unset: report both conventions
    double threshold = 5.2;
    bool find_crossing = false;
    bool with_analytic = false;
    unsigned jobs = 1;
    std::string out; // empty: the caller's stream
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Environment variable supplying the default worker count.
inline constexpr const char* kJobsEnv = "CUBECERT_JOBS";

// Sieve bound a command needs: max(10^6, 3 * top + 2).
std::uint64_t default_sieve_bound(std::uint64_t top);

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cubecert
