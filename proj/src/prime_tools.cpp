#include "cubecert/prime_tools.hpp"

#include "cubecert/modular_arith.hpp"

#include <algorithm>
#include <cmath>
#include <new>
#include <string>

namespace cubecert {

std::uint32_t SpfSieve::spf(std::uint64_t k) const {
    if (k < 2 || k > bound_)
        throw std::invalid_argument("spf: " + std::to_string(k) + " outside [2, " +
                                    std::to_string(bound_) + "]");
    return spf_[k];
}

std::uint64_t SpfSieve::pi(std::uint64_t x) const {
    if (x > bound_)
        throw std::invalid_argument("pi: " + std::to_string(x) + " exceeds sieve bound " +
                                    std::to_string(bound_));
    return static_cast<std::uint64_t>(
        std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

SpfSieve build_sieve(std::uint64_t bound) {
    if (bound < 2) throw std::invalid_argument("build_sieve: bound must be >= 2");
    if (bound > kMaxSieveBound)
        throw std::invalid_argument("build_sieve: bound " + std::to_string(bound) +
                                    " exceeds 2^31");
    SpfSieve s;
    s.bound_ = bound;
    try {
        s.spf_.assign(bound + 1, 0);
        // pi(x) < 1.26 x / log x for x > 1
        const double est = 1.26 * static_cast<double>(bound) / std::log(static_cast<double>(bound)) + 8;
        s.primes_.reserve(static_cast<std::size_t>(est));
    } catch (const std::bad_alloc&) {
        throw std::runtime_error("build_sieve: cannot allocate " +
                                 std::to_string((bound + 1) * sizeof(std::uint32_t)) +
                                 " bytes for bound " + std::to_string(bound));
    }

    auto& spf = s.spf_;
    auto& primes = s.primes_;
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        const std::uint32_t lp = spf[i];
        for (const std::uint32_t p : primes) {
            if (p > lp) break;
            const std::uint64_t m = i * p;
            if (m > bound) break;
            spf[m] = p;
        }
    }
    return s;
}

bool is_prime(std::uint64_t k) {
    if (k < 2) return false;
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (const auto p : small) {
        if (k == p) return true;
        if (k % p == 0) return false;
    }
    if (k < 41 * 41) return true;

    std::uint64_t d = k - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // The first twelve prime bases are exact below 3.3e24.
    for (const auto a : small) {
        std::uint64_t x = pow_mod(a, d, k);
        if (x == 1 || x == k - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mul_mod(x, x, k);
            if (x == k - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

bool is_prime(std::uint64_t k, const SpfSieve& sieve) {
    if (k <= sieve.bound()) return sieve.is_prime(k);
    return is_prime(k);
}

double pi_bound_rhs(std::uint64_t x, double coefficient) {
    const double xd = static_cast<double>(x);
    return coefficient * xd / std::log(xd);
}

namespace {

bool violates(std::uint64_t pi_x, std::uint64_t x, double coefficient) {
    const double rhs = pi_bound_rhs(x, coefficient);
    const double lowered = rhs - std::ldexp(std::fabs(rhs), -30);
    return static_cast<double>(pi_x) >= lowered;
}

} // namespace

std::vector<std::uint64_t> check_pi_bound(const SpfSieve& sieve, std::uint64_t x_max, double coefficient) {
    std::vector<std::uint64_t> out;
    if (x_max <= kPiBoundStart) return out;
    if (x_max > sieve.bound())
        throw std::invalid_argument("check_pi_bound: x_max exceeds sieve bound");

    const auto primes = sieve.primes();
    auto next = std::upper_bound(primes.begin(), primes.end(), kPiBoundStart + 1);
    std::uint64_t start = kPiBoundStart + 1;
    std::uint64_t count = sieve.pi(start);
    while (start <= x_max) {
        const std::uint64_t stop =
            (next != primes.end() && *next <= x_max) ? std::uint64_t{*next} - 1 : x_max;
        // Inside [start, stop] pi is constant, so only a violating start
        // can be followed by further violations.
        if (violates(count, start, coefficient)) {
            for (std::uint64_t x = start; x <= stop && violates(count, x, coefficient); ++x) out.push_back(x);
        }
        if (stop == x_max) break;
        start = *next++;
        ++count;
    }
    return out;
}

} // namespace cubecert
