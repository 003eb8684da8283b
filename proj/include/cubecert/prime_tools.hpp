// prime_tools.hpp
// Smallest-prime-factor sieve, deterministic 64-bit primality, prime
// counting, and the empirical check of pi(x) < 1.139 x / log x.

#pragma once

#include <cstdint>
#include <ranges>
#include <span>
#include <stdexcept>
#include <vector>

namespace cubecert {

// Largest bound accepted by build_sieve (32-bit entries).
inline constexpr std::uint64_t kMaxSieveBound = std::uint64_t{1} << 31;

// Immutable table spf[k] for k in [2, bound]. Safe to share between threads.
class SpfSieve {
public:
    std::uint64_t bound() const { return bound_; }

    // Smallest prime factor of k, 2 <= k <= bound.
    std::uint32_t spf(std::uint64_t k) const;

    bool is_prime(std::uint64_t k) const {
        return k >= 2 && k <= bound_ && spf_[k] == k;
    }

    // All primes <= bound, increasing.
    std::span<const std::uint32_t> primes() const { return primes_; }

    // Number of primes <= x; throws std::invalid_argument past the bound.
    std::uint64_t pi(std::uint64_t x) const;

private:
    friend SpfSieve build_sieve(std::uint64_t bound);
    SpfSieve() = default;

    std::uint64_t bound_ = 0;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

// Linear sieve. bound must lie in [2, 2^31]; allocation failure is reported
// as std::runtime_error carrying the requested size.
SpfSieve build_sieve(std::uint64_t bound);

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t k);

// Uses the sieve when k is inside it, Miller-Rabin otherwise.
bool is_prime(std::uint64_t k, const SpfSieve& sieve);

// The primes p <= bound with p = residue (mod 3), increasing. residue is 1 or 2.
inline auto primes_in_class(const SpfSieve& sieve, std::uint64_t bound, unsigned residue) {
    if (residue != 1 && residue != 2)
        throw std::invalid_argument("primes_in_class: residue must be 1 or 2");
    if (bound > sieve.bound())
        throw std::invalid_argument("primes_in_class: bound exceeds sieve bound");
    return sieve.primes()
        | std::views::take_while([bound](std::uint32_t p) { return p <= bound; })
        | std::views::filter([residue](std::uint32_t p) { return p % 3 == residue; });
}

inline constexpr double kPiBoundCoefficient = 1.139;

// Right side c x / log x of the prime counting bound, without margin.
double pi_bound_rhs(std::uint64_t x, double coefficient = kPiBoundCoefficient);

// Lower edge of the hypothesis x > 10000.
inline constexpr std::uint64_t kPiBoundStart = 10000;

// Every x in (10000, x_max] with pi(x) >= 1.139 x / log x, where the right
// side is first lowered by 2^-30 of its magnitude. Only x = 10001 and the
// primes above it are inspected: pi is constant between primes while the
// right side grows, so the smallest x of each constant stretch is the worst.
std::vector<std::uint64_t> check_pi_bound(const SpfSieve& sieve, std::uint64_t x_max,
                                          double coefficient = kPiBoundCoefficient);

} // namespace cubecert
