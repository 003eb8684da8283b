// modular_arith.hpp
// Exact 64-bit modular arithmetic. Products go through unsigned __int128,
// so nothing wraps for any modulus below 2^64.

#pragma once

#include <cstdint>
#include <stdexcept>

namespace cubecert {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 add_mod(u64 a, u64 b, u64 m) {
    // a, b < m
    return a >= m - b ? a - (m - b) : a + b;
}

constexpr u64 sub_mod(u64 a, u64 b, u64 m) {
    return a >= b ? a - b : a + (m - b);
}

constexpr u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Inverse of a modulo m via extended Euclid; throws if gcd(a, m) != 1.
constexpr u64 inverse_mod(u64 a, u64 m) {
    i128 old_r = static_cast<i128>(a % m), r = static_cast<i128>(m);
    i128 old_s = 1, s = 0;
    while (r != 0) {
        const i128 q = old_r / r;
        i128 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw std::domain_error("inverse_mod: value not invertible");
    old_s %= static_cast<i128>(m);
    if (old_s < 0) old_s += m;
    return static_cast<u64>(old_s);
}

// Floor division rounding toward negative infinity (d > 0).
constexpr i128 floor_div(i128 a, i128 d) {
    i128 q = a / d;
    if ((a % d != 0) && (a < 0)) --q;
    return q;
}

// Returns false when base^exp does not fit below `limit`.
constexpr bool checked_pow(u64 base, unsigned exp, u64 limit, u64& out) {
    u128 acc = 1;
    for (unsigned i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > limit) return false;
    }
    out = static_cast<u64>(acc);
    return true;
}

} // namespace cubecert
