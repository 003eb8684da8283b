#include "cubecert/valuations.hpp"

#include "cubecert/modular_arith.hpp"
#include "cubecert/modular_roots.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cubecert {

namespace {

void add_factor(std::vector<PrimePower>& acc, u64 prime, std::uint32_t exponent) {
    for (auto& f : acc) {
        if (f.prime == prime) {
            f.exponent += exponent;
            return;
        }
    }
    acc.push_back({prime, exponent});
}

// Number of j >= 1 with p^j <= limit.
unsigned max_power_index(u64 p, u128 limit) {
    unsigned j = 0;
    u128 pj = p;
    while (pj <= limit) {
        ++j;
        pj *= p;
    }
    return j;
}

void require_prime(u64 p, const char* who) {
    if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": " + std::to_string(p) + " is not prime");
}

} // namespace

Factorization factor_term(std::uint64_t k, const SpfSieve& sieve) {
    if (k < 1 || k > kMaxTermIndex)
        throw std::invalid_argument("factor_term: k = " + std::to_string(k) + " outside [1, 2^21 - 1]");
    if (sieve.bound() < k + 1)
        throw std::invalid_argument("factor_term: sieve bound " + std::to_string(sieve.bound()) +
                                    " below k + 1 = " + std::to_string(k + 1));

    Factorization out;
    out.value = k * k * k + 1;
    std::vector<PrimePower> acc;

    u64 a = k + 1;
    while (a > 1) {
        const u64 p = sieve.spf(a);
        std::uint32_t e = 0;
        while (a % p == 0) {
            a /= p;
            ++e;
        }
        add_factor(acc, p, e);
    }

    u64 b = k * k - k + 1;
    if (b <= sieve.bound()) {
        while (b > 1) {
            const u64 p = sieve.spf(b);
            std::uint32_t e = 0;
            while (b % p == 0) {
                b /= p;
                ++e;
            }
            add_factor(acc, p, e);
        }
    } else {
        for (const std::uint32_t p : sieve.primes()) {
            if (u64{p} * p > b) break;
            if (b % p != 0) continue;
            std::uint32_t e = 0;
            while (b % p == 0) {
                b /= p;
                ++e;
            }
            add_factor(acc, p, e);
        }
        // Trial division reached sqrt(b) (b < k^2 <= bound^2), so the cofactor is prime.
        if (b > 1) add_factor(acc, b, 1);
    }

    std::sort(acc.begin(), acc.end(), [](const PrimePower& x, const PrimePower& y) { return x.prime < y.prime; });
    out.factors = std::move(acc);
    return out;
}

ValuationRecord ord_p_Cn(std::uint64_t p, std::uint64_t n) {
    if (n < 1 || n > kMaxTermIndex)
        throw std::invalid_argument("ord_p_Cn: n = " + std::to_string(n) + " outside [1, 2^21 - 1]");
    require_prime(p, "ord_p_Cn");
    const u128 top = static_cast<u128>(n) * n * n + 1;
    const unsigned j_max = max_power_index(p, top);
    ValuationRecord rec{p, n, 0};
    if (j_max == 0) return rec;
    const auto tower = root_tower(p, j_max);
    for (const RootSet& level : tower) rec.ord += count_roots_in_interval(level, 1, static_cast<i64>(n));
    return rec;
}

std::uint64_t ord_p_factorial(std::uint64_t p, std::uint64_t n) {
    require_prime(p, "ord_p_factorial");
    u64 total = 0;
    for (u64 q = n / p; q != 0; q /= p) total += q;
    return total;
}

std::uint64_t ord_upper_bound(std::uint64_t p, std::uint64_t n) {
    if (n < 1 || n > kMaxTermIndex)
        throw std::invalid_argument("ord_upper_bound: n = " + std::to_string(n) + " outside [1, 2^21 - 1]");
    require_prime(p, "ord_upper_bound");
    const u128 top = static_cast<u128>(n) * n * n + 1;
    u64 sum = 0;
    for (u128 pj = p; pj <= top; pj *= p) sum += static_cast<u64>((n + pj - 1) / pj);
    return p % 3 == 2 ? sum : 3 * sum;
}

} // namespace cubecert
