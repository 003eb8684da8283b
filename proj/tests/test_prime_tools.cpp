#include "cubecert/prime_tools.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace cubecert;

TEST_CASE("build_sieve: smallest prime factors up to 10") {
    const SpfSieve s = build_sieve(10);
    const std::vector<std::uint32_t> expected = {2, 3, 2, 5, 2, 7, 2, 3, 2};
    for (std::uint64_t k = 2; k <= 10; ++k) CHECK(s.spf(k) == expected[k - 2]);
}

TEST_CASE("build_sieve: bound 2 and bad bounds") {
    const SpfSieve s = build_sieve(2);
    CHECK(s.spf(2) == 2);
    CHECK(s.primes().size() == 1);
    CHECK_THROWS_AS(build_sieve(1), std::invalid_argument);
    CHECK_THROWS_AS(build_sieve(0), std::invalid_argument);
    CHECK_THROWS_AS(build_sieve(kMaxSieveBound + 1), std::invalid_argument);
    CHECK_THROWS_AS(s.spf(3), std::invalid_argument);
}

TEST_CASE("sieve invariants and reconstruction") {
    const SpfSieve s = build_sieve(20000);
    for (std::uint64_t k = 2; k <= s.bound(); ++k) {
        const std::uint32_t p = s.spf(k);
        REQUIRE(k % p == 0);
        REQUIRE(testing::trial_is_prime(p));
        CHECK((s.spf(k) == k) == testing::trial_is_prime(k));
        std::uint64_t rest = k, product = 1;
        while (rest > 1) {
            const std::uint32_t q = s.spf(rest);
            REQUIRE(q >= (product == 1 ? p : 2));
            rest /= q;
            product *= q;
        }
        CHECK(product == k);
    }
    // nothing smaller than spf divides
    for (std::uint64_t k = 2; k <= 2000; ++k)
        for (std::uint64_t d = 2; d < s.spf(k); ++d) CHECK(k % d != 0);
}

TEST_CASE("prime counting") {
    const SpfSieve s = build_sieve(20000);
    CHECK(s.pi(1) == 0);
    CHECK(s.pi(0) == 0);
    CHECK(s.pi(10) == 4);
    CHECK(s.pi(100) == 25);
    CHECK(s.pi(10000) == 1229);
    CHECK_THROWS_AS(s.pi(20001), std::invalid_argument);

    const auto oracle = testing::pi_table(20000);
    for (std::uint64_t x = 1; x <= 20000; ++x) {
        REQUIRE(s.pi(x) == oracle[x]);
        CHECK(s.pi(x) - s.pi(x - 1) == (s.is_prime(x) ? 1u : 0u));
    }
}

TEST_CASE("is_prime: small values and fixed chain members") {
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(18329));
    CHECK(is_prime(34631)); // trial division agrees below
    CHECK(testing::trial_is_prime(34631));
    for (std::uint64_t k = 0; k <= 100000; ++k) REQUIRE(is_prime(k) == testing::trial_is_prime(k));
}

TEST_CASE("is_prime: 64-bit inputs") {
    CHECK(is_prime(18446744073709551557ull)); // largest 64-bit prime
    CHECK_FALSE(is_prime(18446744073709551615ull));
    CHECK_FALSE(is_prime(3215031751ull));          // strong pseudoprime to 2, 3, 5, 7
    CHECK_FALSE(is_prime(3825123056546413051ull)); // strong pseudoprime to bases up to 23
    CHECK_FALSE(is_prime(4294967297ull));          // 641 * 6700417
    CHECK(is_prime(4294967291ull));
    CHECK_FALSE(is_prime(4294967291ull * 4294967279ull));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t k = rng() % 4000000000ull + 1000000000ull;
        REQUIRE(is_prime(k) == testing::trial_is_prime(k));
    }
}

TEST_CASE("is_prime with sieve falls back beyond the bound") {
    const SpfSieve s = build_sieve(1000);
    CHECK(is_prime(997, s));
    CHECK(is_prime(1009, s));
    CHECK_FALSE(is_prime(1001, s));
}

TEST_CASE("primes_in_class: residue 2 up to 100") {
    const SpfSieve s = build_sieve(1000);
    std::vector<std::uint32_t> got;
    for (const auto p : primes_in_class(s, 100, 2)) got.push_back(p);
    const std::vector<std::uint32_t> expected = {2, 5, 11, 17, 23, 29, 41, 47, 53, 59, 71, 83, 89};
    CHECK(got == expected);
    for (const auto p : got) CHECK((testing::trial_is_prime(p) && p % 3 == 2));

    std::size_t ones = 0;
    for (const auto p : primes_in_class(s, 100, 1)) {
        CHECK(p % 3 == 1);
        ++ones;
    }
    CHECK(ones + got.size() + 1 == s.pi(100)); // plus the prime 3
    CHECK_THROWS_AS(primes_in_class(s, 100, 0), std::invalid_argument);
    CHECK_THROWS_AS(primes_in_class(s, 1001, 1), std::invalid_argument);
}

namespace {

std::vector<std::uint64_t> naive_pi_violations(const std::vector<std::uint64_t>& pi, std::uint64_t x_max,
                                               double coefficient) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = kPiBoundStart + 1; x <= x_max; ++x) {
        const double rhs = coefficient * static_cast<double>(x) / std::log(static_cast<double>(x));
        if (static_cast<double>(pi[x]) >= rhs - std::ldexp(rhs, -30)) out.push_back(x);
    }
    return out;
}

} // namespace

TEST_CASE("check_pi_bound: small ranges") {
    const SpfSieve s = build_sieve(20000);
    CHECK(check_pi_bound(s, 10000).empty());
    CHECK(check_pi_bound(s, 10001).empty());
    CHECK(check_pi_bound(s, 5).empty());
    CHECK_THROWS_AS(check_pi_bound(s, 20001), std::invalid_argument);
}

TEST_CASE("check_pi_bound: prime-only scan matches the all-x scan up to 1e5") {
    const SpfSieve s = build_sieve(100000);
    const auto pi = testing::pi_table(100000);
    CHECK(check_pi_bound(s, 100000) == naive_pi_violations(pi, 100000, 1.139));
    CHECK(check_pi_bound(s, 100000).empty());
    // A weaker constant produces violations, which both scans must agree on.
    for (const double c : {1.10, 1.11, 1.12, 1.125}) {
        const auto naive = naive_pi_violations(pi, 100000, c);
        CHECK(check_pi_bound(s, 100000, c) == naive);
        if (c < 1.12) CHECK_FALSE(naive.empty());
    }
}
