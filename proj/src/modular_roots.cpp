#include "cubecert/modular_roots.hpp"

#include "cubecert/modular_arith.hpp"
#include "cubecert/prime_tools.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace cubecert {

namespace {

constexpr u64 kModulusLimit = static_cast<u64>(std::numeric_limits<i64>::max());

[[noreturn]] void invariant_failure(const char* what, u64 p, unsigned j) {
    std::fprintf(stderr, "cubecert: internal invariant violated: %s (p=%llu, j=%u)\n", what,
                 static_cast<unsigned long long>(p), j);
    std::abort();
}

u64 cube_plus_one(u64 x, u64 m) {
    return add_mod(mul_mod(mul_mod(x, x, m), x, m), 1 % m, m);
}

void require_prime(u64 p, const char* who) {
    if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": " + std::to_string(p) + " is not prime");
}

std::vector<u64> roots_mod_p(u64 p) {
    if (p == 2) return {1};
    if (p == 3) return {2};
    std::vector<u64> out{p - 1};
    if (root_count_mod_p(p) == 3) {
        // x = (1 +- sqrt(-3)) / 2
        const u64 s = sqrt_mod_prime(p - 3, p);
        const u64 half = (p + 1) / 2;
        out.push_back(mul_mod(add_mod(1, s, p), half, p));
        out.push_back(mul_mod(sub_mod(1, s, p), half, p));
    }
    std::sort(out.begin(), out.end());
    return out;
}

RootSet lift(const RootSet& prev) {
    const u64 p = prev.p;
    RootSet next;
    next.p = p;
    next.j = prev.j + 1;
    next.modulus = prev.modulus * p;
    const u64 m = next.modulus;
    if (p == 3) {
        const u64 step = prev.modulus; // 3^(j-1) for the new level
        next.roots = {step - 1, 2 * step - 1, 3 * step - 1};
    } else {
        next.roots.reserve(prev.roots.size());
        for (const u64 r : prev.roots) {
            const u64 deriv = mul_mod(3, mul_mod(r, r, m), m);
            if (deriv % p == 0) invariant_failure("derivative not invertible at root", p, next.j);
            const u64 correction = mul_mod(cube_plus_one(r, m), inverse_mod(deriv, m), m);
            next.roots.push_back(sub_mod(r, correction, m));
        }
        std::sort(next.roots.begin(), next.roots.end());
    }
    for (const u64 r : next.roots)
        if (cube_plus_one(r, m) != 0) invariant_failure("lifted value is not a root", p, next.j);
    return next;
}

} // namespace

int jacobi(std::int64_t a, std::uint64_t m) {
    if (m == 0 || (m & 1) == 0)
        throw std::invalid_argument("jacobi: modulus must be odd and positive, got " + std::to_string(m));
    u64 n = m;
    i128 am = static_cast<i128>(a) % static_cast<i128>(n);
    if (am < 0) am += n;
    u64 x = static_cast<u64>(am);
    int t = 1;
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            const u64 n8 = n & 7;
            if (n8 == 3 || n8 == 5) t = -t;
        }
        std::swap(x, n);
        if ((x & 3) == 3 && (n & 3) == 3) t = -t;
        x %= n;
    }
    return n == 1 ? t : 0;
}

int root_count_mod_p(std::uint64_t p) {
    require_prime(p, "root_count_mod_p");
    if (p <= 3) return 1;
    // x^2 - x + 1 has 1 + (-3/p) roots, and none of them is -1 for p > 3.
    return 1 + (1 + jacobi(-3, p));
}

std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (p == 2 || a == 0) return a;
    if (pow_mod(a, (p - 1) / 2, p) != 1)
        throw std::invalid_argument("sqrt_mod_prime: not a quadratic residue");
    if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);

    // Tonelli-Shanks
    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 c = pow_mod(z, q, p);
    u64 x = pow_mod(a, (q + 1) / 2, p);
    u64 t = pow_mod(a, q, p);
    unsigned mexp = s;
    while (t != 1) {
        unsigned i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mul_mod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (unsigned k = 0; k + i + 1 < mexp; ++k) b = mul_mod(b, b, p);
        x = mul_mod(x, b, p);
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        mexp = i;
    }
    return x;
}

std::vector<RootSet> root_tower(std::uint64_t p, unsigned j_max) {
    require_prime(p, "root_tower");
    std::vector<RootSet> tower;
    if (j_max == 0) return tower;
    tower.reserve(j_max);
    tower.push_back(RootSet{p, 1, p, roots_mod_p(p)});
    while (tower.size() < j_max) {
        const RootSet& top = tower.back();
        if (top.modulus > kModulusLimit / p) break;
        tower.push_back(lift(top));
    }
    return tower;
}

RootSet roots_mod_prime_power(std::uint64_t p, unsigned j) {
    if (j == 0) throw std::invalid_argument("roots_mod_prime_power: exponent must be >= 1");
    require_prime(p, "roots_mod_prime_power");
    u64 modulus = 0;
    if (!checked_pow(p, j, kModulusLimit, modulus))
        throw std::invalid_argument("roots_mod_prime_power: " + std::to_string(p) + "^" +
                                    std::to_string(j) + " does not fit below 2^63");
    auto tower = root_tower(p, j);
    return std::move(tower.back());
}

std::uint64_t count_roots_in_interval(const RootSet& roots, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("count_roots_in_interval: lo > hi");
    const i128 m = roots.modulus;
    u64 total = 0;
    for (const u64 r : roots.roots) {
        const i128 rr = r;
        total += static_cast<u64>(floor_div(static_cast<i128>(hi) - rr, m) -
                                  floor_div(static_cast<i128>(lo) - 1 - rr, m));
    }
    return total;
}

std::uint64_t count_roots_in_interval(std::uint64_t p, unsigned j, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("count_roots_in_interval: lo > hi");
    return count_roots_in_interval(roots_mod_prime_power(p, j), lo, hi);
}

PowerRootSet roots_xp_plus_one(std::uint64_t p, unsigned j) {
    if (j == 0) throw std::invalid_argument("roots_xp_plus_one: exponent must be >= 1");
    require_prime(p, "roots_xp_plus_one");
    u64 step = 0, modulus = 0;
    if (!checked_pow(p, j + 1, kModulusLimit, modulus))
        throw std::invalid_argument("roots_xp_plus_one: " + std::to_string(p) + "^" +
                                    std::to_string(j + 1) + " does not fit below 2^63");
    checked_pow(p, j, kModulusLimit, step);

    PowerRootSet out{p, j, modulus, {}, true};
    out.roots.reserve(p);
    for (u64 i = 1; i <= p; ++i) {
        const u64 r = (i * step - 1) % modulus;
        out.roots.push_back(r);
        if (add_mod(pow_mod(r, p, modulus), 1, modulus) != 0) out.verified = false;
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

} // namespace cubecert
