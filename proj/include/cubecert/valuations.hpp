// valuations.hpp
// p-adic orders of C_n = prod_{k<=n} (k^3 + 1) and of n!, computed without
// ever forming C_n, plus factorization of single terms k^3 + 1.

#pragma once

#include "cubecert/prime_tools.hpp"

#include <cstdint>
#include <vector>

namespace cubecert {

struct PrimePower {
    std::uint64_t prime = 0;
    std::uint32_t exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    std::uint64_t value = 0;
    std::vector<PrimePower> factors; // primes strictly increasing
};

struct ValuationRecord {
    std::uint64_t p = 0;
    std::uint64_t n = 0;
    std::uint64_t ord = 0;
};

// Largest k accepted by factor_term and largest n accepted by ord_p_Cn;
// keeps n^3 + 1 below 2^63.
inline constexpr std::uint64_t kMaxTermIndex = (std::uint64_t{1} << 21) - 1;

// k^3 + 1 = (k + 1)(k^2 - k + 1); the first factor comes from SPF lookups,
// the second from trial division by sieve primes. Needs sieve.bound() >= k + 1.
Factorization factor_term(std::uint64_t k, const SpfSieve& sieve);

// ord_p(C_n) = sum over j with p^j <= n^3 + 1 of #{1 <= k <= n : p^j | k^3 + 1}.
ValuationRecord ord_p_Cn(std::uint64_t p, std::uint64_t n);

// Legendre's formula.
std::uint64_t ord_p_factorial(std::uint64_t p, std::uint64_t n);

// sum_{p^j <= n^3 + 1} ceil(n / p^j), tripled unless p = 2 (mod 3).
std::uint64_t ord_upper_bound(std::uint64_t p, std::uint64_t n);

} // namespace cubecert
