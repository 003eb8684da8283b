#include "cubecert/analytic_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cubecert {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Neumaier summation of positive terms with a running error bound. Each term
// log p / (p - 1) is assumed within 4 ulp (log within 1 ulp, exact p - 1,
// one rounded division); the summation adds 2 eps |S| + 2 N eps^2 sum |t|.
class Accumulator {
public:
    void add(double t) {
        const double s = sum_ + t;
        if (std::fabs(sum_) >= std::fabs(t))
            comp_ += (sum_ - s) + t;
        else
            comp_ += (t - s) + sum_;
        sum_ = s;
        abs_ += std::fabs(t);
        ++count_;
    }

    BoundedSum result() const {
        const double value = sum_ + comp_;
        const double n = static_cast<double>(count_);
        const double err = 4 * kEps * abs_ + 2 * kEps * std::fabs(value) + 2 * n * kEps * kEps * abs_;
        // The error expression is itself rounded; pad it.
        return {value, err * (1 + 1e-6) + std::numeric_limits<double>::denorm_min()};
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_ = 0.0;
    std::uint64_t count_ = 0;
};

double term(std::uint64_t p) {
    return std::log(static_cast<double>(p)) / static_cast<double>(p - 1);
}

} // namespace

double Rational::upper() const {
    return std::nextafter(static_cast<double>(num) / static_cast<double>(den),
                          std::numeric_limits<double>::infinity());
}

double Rational::lower() const {
    return std::nextafter(static_cast<double>(num) / static_cast<double>(den),
                          -std::numeric_limits<double>::infinity());
}

BoundedSum prime_sum_S(const SpfSieve& sieve, std::uint64_t n, bool include_p2) {
    if (n > sieve.bound())
        throw std::invalid_argument("prime_sum_S: n = " + std::to_string(n) + " exceeds sieve bound " +
                                    std::to_string(sieve.bound()));
    Accumulator acc;
    for (const std::uint32_t p : primes_in_class(sieve, n, 2)) {
        if (p == 2 && !include_p2) continue;
        acc.add(term(p));
    }
    return acc.result();
}

PrimeSumTable::PrimeSumTable(const SpfSieve& sieve, bool include_p2)
    : bound_(sieve.bound()), include_p2_(include_p2) {
    Accumulator acc;
    for (const std::uint32_t p : primes_in_class(sieve, bound_, 2)) {
        if (p == 2 && !include_p2) continue;
        acc.add(term(p));
        steps_.push_back({p, acc.result()});
    }
}

BoundedSum PrimeSumTable::at(std::uint64_t n) const {
    if (n > bound_)
        throw std::invalid_argument("PrimeSumTable::at: n = " + std::to_string(n) + " exceeds bound " +
                                    std::to_string(bound_));
    auto it = std::upper_bound(steps_.begin(), steps_.end(), n,
                               [](std::uint64_t v, const Step& s) { return v < s.p; });
    if (it == steps_.begin()) return {};
    return std::prev(it)->sum;
}

std::optional<std::uint64_t> PrimeSumTable::crossing(double threshold, std::uint64_t n_max) const {
    if (n_max > bound_)
        throw std::invalid_argument("crossing: n_max exceeds table bound");
    for (const Step& s : steps_) {
        if (s.p > n_max) break;
        if (s.sum.value - s.sum.error >= threshold) return s.p;
    }
    return std::nullopt;
}

std::optional<std::uint64_t> find_crossing(const SpfSieve& sieve, double threshold,
                                           std::uint64_t n_max, bool include_p2) {
    if (n_max > sieve.bound())
        throw std::invalid_argument("find_crossing: n_max exceeds sieve bound");
    return PrimeSumTable(sieve, include_p2).crossing(threshold, n_max);
}

double rhs_bound(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("rhs_bound: n must be >= 2");
    const double nd = static_cast<double>(n);
    const double log_n = std::log(nd);
    const double log_cube_plus_one = 3 * log_n + std::log1p(1 / (nd * nd * nd));
    const double value = (3.417 / 2) * (nd / (nd - 1)) * (log_cube_plus_one / log_n);
    return value + std::ldexp(std::fabs(value), -30);
}

double derived_pi_bound(const SpfSieve& sieve, std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("derived_pi_bound: n must be >= 2");
    const double nd = static_cast<double>(n);
    const double log_cube_plus_one = 3 * std::log(nd) + std::log1p(1 / (nd * nd * nd));
    return 3 / (2 * (nd - 1)) * static_cast<double>(sieve.pi(n)) * log_cube_plus_one;
}

AnalyticReport analytic_certificate(std::uint64_t n_max_checked, std::optional<bool> include_p2) {
    if (n_max_checked + 1 < kRhsStart)
        throw std::domain_error("analytic_certificate: finite range must reach " +
                                std::to_string(kRhsStart - 1) + ", got " + std::to_string(n_max_checked));
    const double rhs = rhs_bound(n_max_checked + 1);
    if (!(rhs < kCrossingThreshold.lower()))
        throw std::domain_error("analytic_certificate: right-hand side not below 5.2 at n = " +
                                std::to_string(n_max_checked + 1));

    const SpfSieve sieve = build_sieve(n_max_checked);
    std::vector<bool> conventions{true, false};
    if (include_p2) conventions = {*include_p2};
    for (const bool p2 : conventions) {
        const PrimeSumTable table(sieve, p2);
        const auto cross = table.crossing(kCrossingThreshold.upper(), n_max_checked);
        if (!cross) continue;
        AnalyticReport report;
        report.n = n_max_checked;
        report.crossing_n = *cross;
        report.includes_p2 = p2;
        report.s_at_crossing = table.at(*cross);
        report.s_value = table.at(n_max_checked);
        report.rhs_value = rhs;
        report.assumption = kPiBoundAssumption;
        return report;
    }
    throw std::domain_error("analytic_certificate: prime sum does not reach 5.2 by n = " +
                            std::to_string(n_max_checked));
}

} // namespace cubecert
