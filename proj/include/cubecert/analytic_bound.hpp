// analytic_bound.hpp
// The large-n argument. If C_n were a cube with n >= 10000, then
//
//   S(n) = sum_{p <= n, p = 2 (mod 3)} log p / (p - 1)
//        <= (3.417 / 2) * n / (n - 1) * log(n^3 + 1) / log n  < 5.2,
//
// using pi(x) < 1.139 x / log x. S is nondecreasing, so once S reaches 5.2
// at some crossing index, every larger n is excluded.
//
// Floating-point results carry explicit error bounds and every comparison
// against 5.2 is made in the conservative direction.

#pragma once

#include "cubecert/prime_tools.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cubecert {

// Exact decimal threshold num / den.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    // Smallest double known to be >= num / den, and largest known <= it.
    double upper() const;
    double lower() const;
};

inline constexpr Rational kCrossingThreshold{52, 10};

// Smallest n for which the right-hand side bound is claimed.
inline constexpr std::uint64_t kRhsStart = 10000;

struct BoundedSum {
    double value = 0.0;
    double error = 0.0; // |value - exact| <= error
};

// S(n), Neumaier-compensated, with an a-posteriori error bound.
BoundedSum prime_sum_S(const SpfSieve& sieve, std::uint64_t n, bool include_p2 = true);

// Running S over the qualifying primes of a sieve; immutable once built.
class PrimeSumTable {
public:
    PrimeSumTable(const SpfSieve& sieve, bool include_p2);

    bool includes_p2() const { return include_p2_; }
    std::uint64_t bound() const { return bound_; }

    // S(n) for n <= bound().
    BoundedSum at(std::uint64_t n) const;

    // Least n <= n_max with S(n) - error >= threshold. Only n at which a
    // term enters the sum are candidates, so a zero threshold yields the
    // first qualifying prime rather than n = 1.
    std::optional<std::uint64_t> crossing(double threshold, std::uint64_t n_max) const;

private:
    struct Step {
        std::uint64_t p;
        BoundedSum sum;
    };
    std::uint64_t bound_;
    bool include_p2_;
    std::vector<Step> steps_;
};

std::optional<std::uint64_t> find_crossing(const SpfSieve& sieve, double threshold,
                                           std::uint64_t n_max, bool include_p2 = true);

// (3.417 / 2) * n / (n - 1) * log(n^3 + 1) / log n, raised by 2^-30 of its
// magnitude. n >= 2.
double rhs_bound(std::uint64_t n);

// Right side of S(n) <= 3 / (2 (n - 1)) * pi(n) * log(n^3 + 1), which any cube C_n would satisfy.
double derived_pi_bound(const SpfSieve& sieve, std::uint64_t n);

struct AnalyticReport {
    std::uint64_t n = 0;           // last index settled by the finite check
    std::uint64_t crossing_n = 0;  // S(crossing_n) >= 5.2
    bool includes_p2 = true;
    BoundedSum s_at_crossing;
    BoundedSum s_value;            // S(n)
    double rhs_value = 0.0;        // rhs_bound(n + 1), bounds rhs on all of (n, oo)
    Rational threshold = kCrossingThreshold;
    std::string assumption;        // the pi(x) bound is taken as given
};

inline constexpr const char* kPiBoundAssumption =
    "pi(x) < 1.139 x / log x for x > 10000 (checked numerically up to 10^6 only)";

// Certifies "C_n is not a cube" for every n > n_max_checked, assuming the
// finite range up to n_max_checked is settled elsewhere. Without an explicit
// convention, include_p2 = true is tried first, then false. Throws std::domain_error when neither convention
// reaches 5.2 by n_max_checked, or when n_max_checked + 1 < 10000, or when
// the right-hand side is not below 5.2 there.
AnalyticReport analytic_certificate(std::uint64_t n_max_checked,
                                    std::optional<bool> include_p2 = std::nullopt);

} // namespace cubecert
