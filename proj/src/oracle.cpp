#include "cubecert/oracle.hpp"

#include "cubecert/valuations.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cubecert {

namespace {

mpz_class product_range(const std::vector<mpz_class>& terms, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return terms[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return product_range(terms, lo, mid) * product_range(terms, mid, hi);
}

} // namespace

BigProduct big_C(std::uint64_t n) {
    if (n < 1 || n > kMaxBigProductIndex)
        throw std::invalid_argument("big_C: n = " + std::to_string(n) + " outside [1, 5000]");
    std::vector<mpz_class> terms;
    terms.reserve(n);
    for (std::uint64_t k = 1; k <= n; ++k) {
        mpz_class t = static_cast<unsigned long>(k);
        t = t * t * t + 1;
        terms.push_back(std::move(t));
    }
    return {n, product_range(terms, 0, terms.size())};
}

CubeRoot icbrt(const mpz_class& v) {
    if (v < 1) throw std::invalid_argument("icbrt: argument must be >= 1");
    const std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    // 2^ceil(bits/3) > cbrt(v)
    mpz_class x = 1;
    x <<= static_cast<mp_bitcnt_t>((bits + 2) / 3);
    for (;;) {
        mpz_class y = (2 * x + v / (x * x)) / 3;
        if (y >= x) break;
        x = std::move(y);
    }
    // Newton from above lands on the floor; the checks below only confirm it.
    while (x * x * x > v) --x;
    while ((x + 1) * (x + 1) * (x + 1) <= v) ++x;
    CubeRoot out;
    out.exact = (x * x * x == v);
    out.root = std::move(x);
    return out;
}

void ExponentVector::extend() {
    ++n_;
    for (const PrimePower& f : factor_term(n_, *sieve_).factors) exponents_[f.prime] += f.exponent;
}

ExponentCubeTest ExponentVector::test() const {
    ExponentCubeTest out;
    out.exponents = exponents_;
    out.is_cube = true;
    for (const auto& [p, e] : exponents_) {
        if (e % 3 != 0) {
            out.is_cube = false;
            out.offending_prime = p;
            break;
        }
    }
    return out;
}

ExponentCubeTest cube_test_by_factorization(std::uint64_t n, const SpfSieve& sieve) {
    if (n < 1 || n > kMaxFactorizationIndex)
        throw std::invalid_argument("cube_test_by_factorization: n = " + std::to_string(n) +
                                    " outside [1, 54985]");
    ExponentVector vec(sieve);
    while (vec.n() < n) vec.extend();
    return vec.test();
}

} // namespace cubecert
