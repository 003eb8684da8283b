// modular_roots.hpp
// Solutions of x^3 + 1 = 0 modulo prime powers.
//
// Modulo p the root -1 always exists; the other roots are those of
// x^2 - x + 1, i.e. (2x - 1)^2 = -3, so their number is 1 + (-3/p) for
// p >= 5. For p != 3 every root is simple (f' = 3x^2 is a unit at a root)
// and lifts uniquely one Hensel step at a time. For p = 3 the roots modulo
// 3^j (j >= 2) are i*3^(j-1) - 1 for i = 1, 2, 3.

#pragma once

#include <cstdint>
#include <vector>

namespace cubecert {

struct RootSet {
    std::uint64_t p = 0;
    unsigned j = 0;
    std::uint64_t modulus = 0;        // p^j
    std::vector<std::uint64_t> roots; // strictly increasing, in [0, modulus)
};

// Jacobi symbol (a/m) for odd m >= 1. Throws std::invalid_argument otherwise.
int jacobi(std::int64_t a, std::uint64_t m);

// Number of roots of x^3 + 1 modulo the prime p (1 or 3).
int root_count_mod_p(std::uint64_t p);

// Square root of a quadratic residue a modulo an odd prime p.
std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t p);

// All roots of x^3 + 1 modulo p^j. p^j must be below 2^63.
RootSet roots_mod_prime_power(std::uint64_t p, unsigned j);

// Roots modulo p, p^2, ..., p^j_max, each obtained from the previous level.
// Stops early at the first power that would reach 2^63.
std::vector<RootSet> root_tower(std::uint64_t p, unsigned j_max);

// #{k in [lo, hi] : k^3 + 1 = 0 mod p^j}.
std::uint64_t count_roots_in_interval(std::uint64_t p, unsigned j, std::int64_t lo, std::int64_t hi);
std::uint64_t count_roots_in_interval(const RootSet& roots, std::int64_t lo, std::int64_t hi);

// Residues i*p^j - 1 modulo p^(j+1), 1 <= i <= p, proposed as the roots of
// x^p + 1. `verified` records whether every residue actually satisfies the
// congruence; it fails for p = 2, where x^2 + 1 = 0 mod 4 has no solution.
struct PowerRootSet {
    std::uint64_t p = 0;
    unsigned j = 0;
    std::uint64_t modulus = 0; // p^(j+1)
    std::vector<std::uint64_t> roots;
    bool verified = false;
};

PowerRootSet roots_xp_plus_one(std::uint64_t p, unsigned j);

} // namespace cubecert
