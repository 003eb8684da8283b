// certificates.hpp
// Per-n proofs that C_n is not a cube, the covering chains of witness
// primes behind them, and their JSON-Lines encoding.
//
// A witness prime p = 2 (mod 3), p >= 5, settles every n in [p - 1, 3p - 2]:
// the only k <= 3p - 2 with p | k^3 + 1 are p - 1, 2p - 1 (and 3p - 1 > n),
// and the single root modulo p^2 lies at p^2 - 1 > 3p - 2, so ord_p(C_n) is
// 1 or 2.

#pragma once

#include "cubecert/analytic_bound.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cubecert {

struct BruteForceCertificate {
    std::uint64_t n = 0;
    std::string cube_root_floor; // decimal; root^3 < C_n < (root + 1)^3
};

struct WitnessCertificate {
    std::uint64_t n = 0;
    std::uint64_t p = 0;
    std::uint64_t ord = 0;
};

struct AnalyticCertificate {
    std::uint64_t n_min = 0; // covers every n >= n_min
    AnalyticReport report;
};

using Certificate = std::variant<BruteForceCertificate, WitnessCertificate, AnalyticCertificate>;

// Raised when a certificate or chain cannot be produced.
class CertificationError : public std::runtime_error {
public:
    CertificationError(const std::string& what, std::uint64_t n)
        : std::runtime_error(what), n_(n) {}
    std::uint64_t n() const { return n_; }

private:
    std::uint64_t n_;
};

// Largest n handled by brute force.
inline constexpr std::uint64_t kBruteForceMax = 3;
// Top of the range covered by the published witness chain.
inline constexpr std::uint64_t kFiniteRangeMax = 54985;

// n <= 3: brute force. Otherwise the smallest witness prime for n.
Certificate certify_n(std::uint64_t n);

// Recomputes everything the certificate claims; never trusts stored values.
bool verify_certificate(const Certificate& cert);

// Certificate for all n > n_max_checked, built on analytic_certificate.
AnalyticCertificate certify_beyond(std::uint64_t n_max_checked,
                                   std::optional<bool> include_p2 = std::nullopt);

std::uint64_t certificate_n(const Certificate& cert);

// ---------------------------------------------------------------------------
// Covering chains

struct ChainEntry {
    std::uint64_t p = 0;
    std::uint64_t lo = 0; // p - 1
    std::uint64_t hi = 0; // 3p - 2
};

struct CoveringChain {
    std::vector<ChainEntry> entries;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
};

enum class ChainStrategy { paper, greedy_max, greedy_min };

std::optional<ChainStrategy> parse_chain_strategy(std::string_view name);
std::string_view to_string(ChainStrategy s);

inline constexpr std::array<std::uint64_t, 9> kPaperChainPrimes = {5, 11, 29, 83, 233, 683, 2039, 6113, 18329};

ChainEntry chain_entry(std::uint64_t p);

// Throws CertificationError naming the first uncovered n.
CoveringChain build_chain(std::uint64_t lo, std::uint64_t hi, ChainStrategy strategy);

// Empty when the chain is well formed and covers [lo, hi]; otherwise a
// description of the first problem found.
std::optional<std::string> validate_chain(const CoveringChain& chain);

// First n in [chain.lo, chain.hi] outside every interval.
std::optional<std::uint64_t> first_gap(const CoveringChain& chain);

// ---------------------------------------------------------------------------
// Ranges

struct RangeSummary {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t brute = 0;
    std::uint64_t witness = 0;
    std::uint64_t analytic = 0;
    std::optional<std::uint64_t> first_failure;
    std::string failure_reason;
    double seconds = 0.0;

    bool ok() const { return !first_failure; }
};

struct RangeResult {
    std::vector<Certificate> certificates; // ascending n, up to the first failure
    RangeSummary summary;
};

// certify_n followed by verify_certificate for every n in [lo, hi], split
// into `jobs` contiguous blocks that run concurrently. Results are merged in
// ascending n, so the output does not depend on jobs.
RangeResult certify_range(std::uint64_t lo, std::uint64_t hi, unsigned jobs = 1);

RangeSummary verify_range(std::uint64_t lo, std::uint64_t hi, unsigned jobs = 1);

// ---------------------------------------------------------------------------
// JSON-Lines encoding: {"v":1,"kind":"witness"|"brute"|"analytic",...}

inline constexpr int kCertificateVersion = 1;

std::string to_json_line(const Certificate& cert);

// Throws std::invalid_argument on malformed input or an unknown version.
Certificate certificate_from_json(std::string_view line);

// Parse then verify; false on any error.
bool verify_json_line(std::string_view line);

} // namespace cubecert
