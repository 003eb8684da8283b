// oracle.hpp
// Brute-force ground truth: C_n as an exact big integer, integer cube roots,
// and the cube test on the full exponent vector of C_n.

#pragma once

#include "cubecert/prime_tools.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>

namespace cubecert {

inline constexpr std::uint64_t kMaxBigProductIndex = 5000;
inline constexpr std::uint64_t kMaxFactorizationIndex = 54985;

struct BigProduct {
    std::uint64_t n = 0;
    mpz_class value;
};

// Exact C_n via a balanced product tree. n in [1, 5000].
BigProduct big_C(std::uint64_t n);

struct CubeRoot {
    mpz_class root; // root^3 <= v < (root + 1)^3
    bool exact = false;
};

// Integer Newton iteration from a power-of-two overestimate. v >= 1.
CubeRoot icbrt(const mpz_class& v);

struct ExponentCubeTest {
    bool is_cube = false;
    std::optional<std::uint64_t> offending_prime; // smallest prime with exponent != 0 mod 3
    std::map<std::uint64_t, std::uint64_t> exponents;
};

// Sums factor_term(k) over k <= n. The sieve must reach n + 1.
ExponentCubeTest cube_test_by_factorization(std::uint64_t n, const SpfSieve& sieve);

// Running form of the above: add terms one at a time.
class ExponentVector {
public:
    explicit ExponentVector(const SpfSieve& sieve) : sieve_(&sieve) {}

    // Multiplies in the next term k^3 + 1, k = n() + 1.
    void extend();
    std::uint64_t n() const { return n_; }
    const std::map<std::uint64_t, std::uint64_t>& exponents() const { return exponents_; }
    ExponentCubeTest test() const;

private:
    const SpfSieve* sieve_;
    std::uint64_t n_ = 0;
    std::map<std::uint64_t, std::uint64_t> exponents_;
};

} // namespace cubecert
