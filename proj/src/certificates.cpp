#include "cubecert/certificates.hpp"

#include "cubecert/oracle.hpp"
#include "cubecert/prime_tools.hpp"
#include "cubecert/valuations.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

namespace cubecert {

namespace {

using nlohmann::json;

bool is_witness_prime(std::uint64_t p) {
    return p >= 5 && p % 3 == 2 && is_prime(p);
}

std::uint64_t smallest_witness(std::uint64_t n) {
    // p - 1 <= n <= 3p - 2  <=>  ceil((n + 2) / 3) <= p <= n + 1
    for (std::uint64_t p = std::max<std::uint64_t>(5, (n + 4) / 3); p <= n + 1; ++p)
        if (is_witness_prime(p)) return p;
    throw CertificationError("no witness prime p = 2 (mod 3) with p - 1 <= " + std::to_string(n) +
                                 " <= 3p - 2",
                             n);
}

bool verify_witness(const WitnessCertificate& c) {
    if (c.n < 4 || c.n > kMaxTermIndex || c.p > c.n + 1) return false;
    if (!is_witness_prime(c.p)) return false;
    if (c.n + 1 < c.p || c.n > 3 * c.p - 2) return false;
    if (c.ord != 1 && c.ord != 2) return false;
    return ord_p_Cn(c.p, c.n).ord == c.ord;
}

bool verify_brute(const BruteForceCertificate& c) {
    if (c.n < 1 || c.n > kMaxBigProductIndex) return false;
    mpz_class root;
    if (c.cube_root_floor.empty() || root.set_str(c.cube_root_floor, 10) != 0 || root < 0) return false;
    const mpz_class value = big_C(c.n).value;
    const mpz_class next = root + 1;
    return root * root * root < value && value < next * next * next;
}

bool verify_analytic(const AnalyticCertificate& c) {
    const AnalyticReport& r = c.report;
    if (c.n_min != r.n + 1) return false;
    if (c.n_min < kRhsStart) return false;
    if (r.threshold.num != kCrossingThreshold.num || r.threshold.den != kCrossingThreshold.den) return false;
    if (!(rhs_bound(c.n_min) < kCrossingThreshold.lower())) return false;
    if (r.crossing_n < 2 || r.crossing_n > r.n) return false;

    const SpfSieve sieve = build_sieve(r.n);
    const PrimeSumTable table(sieve, r.includes_p2);
    const BoundedSum at_cross = table.at(r.crossing_n);
    if (!(at_cross.value - at_cross.error >= kCrossingThreshold.upper())) return false;
    const auto cross = table.crossing(kCrossingThreshold.upper(), r.n);
    if (!cross || *cross != r.crossing_n) return false;
    const BoundedSum at_n = table.at(r.n);
    return std::fabs(at_n.value - r.s_value.value) <= at_n.error + r.s_value.error;
}

void put_uint(json& j, const char* key, std::uint64_t v) {
    if (v > (std::uint64_t{1} << 53))
        j[key] = std::to_string(v);
    else
        j[key] = v;
}

std::uint64_t get_uint(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) throw std::invalid_argument(std::string("certificate: missing field ") + key);
    if (it->is_number_unsigned()) return it->get<std::uint64_t>();
    if (it->is_string()) {
        const std::string& s = it->get_ref<const std::string&>();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument(std::string("certificate: bad integer in ") + key);
        return std::stoull(s);
    }
    throw std::invalid_argument(std::string("certificate: field ") + key + " is not a nonnegative integer");
}

double get_double(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_number())
        throw std::invalid_argument(std::string("certificate: missing number ") + key);
    return it->get<double>();
}

} // namespace

Certificate certify_n(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("certify_n: n must be >= 1");
    if (n <= kBruteForceMax) {
        const CubeRoot r = icbrt(big_C(n).value);
        if (r.exact) throw CertificationError("C_" + std::to_string(n) + " is a cube", n);
        return BruteForceCertificate{n, r.root.get_str()};
    }
    const std::uint64_t p = smallest_witness(n);
    const std::uint64_t ord = ord_p_Cn(p, n).ord;
    if (ord != 1 && ord != 2)
        throw CertificationError("witness " + std::to_string(p) + " has ord " + std::to_string(ord) +
                                     " at n = " + std::to_string(n),
                                 n);
    return WitnessCertificate{n, p, ord};
}

bool verify_certificate(const Certificate& cert) {
    try {
        return std::visit(
            [](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, WitnessCertificate>)
                    return verify_witness(c);
                else if constexpr (std::is_same_v<T, BruteForceCertificate>)
                    return verify_brute(c);
                else
                    return verify_analytic(c);
            },
            cert);
    } catch (const std::exception&) {
        return false;
    }
}

AnalyticCertificate certify_beyond(std::uint64_t n_max_checked, std::optional<bool> include_p2) {
    // The witness chain must settle everything up to n_max_checked first.
    if (const auto gap = first_gap(build_chain(4, n_max_checked, ChainStrategy::greedy_max)))
        throw CertificationError("finite range not covered", *gap);
    return {n_max_checked + 1, analytic_certificate(n_max_checked, include_p2)};
}

std::uint64_t certificate_n(const Certificate& cert) {
    return std::visit(
        [](const auto& c) -> std::uint64_t {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, AnalyticCertificate>)
                return c.n_min;
            else
                return c.n;
        },
        cert);
}

// ---------------------------------------------------------------------------

std::optional<ChainStrategy> parse_chain_strategy(std::string_view name) {
    if (name == "paper") return ChainStrategy::paper;
    if (name == "greedy-max") return ChainStrategy::greedy_max;
    if (name == "greedy-min") return ChainStrategy::greedy_min;
    return std::nullopt;
}

std::string_view to_string(ChainStrategy s) {
    switch (s) {
    case ChainStrategy::paper: return "paper";
    case ChainStrategy::greedy_max: return "greedy-max";
    case ChainStrategy::greedy_min: return "greedy-min";
    }
    return "?";
}

ChainEntry chain_entry(std::uint64_t p) {
    return {p, p - 1, 3 * p - 2};
}

CoveringChain build_chain(std::uint64_t lo, std::uint64_t hi, ChainStrategy strategy) {
    if (lo < 4) throw std::invalid_argument("build_chain: lo must be >= 4");
    if (hi < lo) throw std::invalid_argument("build_chain: hi < lo");

    CoveringChain chain{{}, lo, hi};
    std::uint64_t end = lo - 1; // [lo, end] is covered
    auto gap = [&]() {
        return CertificationError("covering chain has a gap at n = " + std::to_string(end + 1), end + 1);
    };

    switch (strategy) {
    case ChainStrategy::paper:
        for (const std::uint64_t p : kPaperChainPrimes) {
            if (end >= hi) break;
            const ChainEntry e = chain_entry(p);
            if (e.hi <= end) continue;
            if (e.lo > end + 1) throw gap();
            chain.entries.push_back(e);
            end = e.hi;
        }
        break;
    case ChainStrategy::greedy_max:
        while (end < hi) {
            std::uint64_t p = end + 2;
            while (p >= 5 && !is_witness_prime(p)) --p;
            if (p < 5 || 3 * p - 2 <= end) throw gap();
            chain.entries.push_back(chain_entry(p));
            end = 3 * p - 2;
        }
        break;
    case ChainStrategy::greedy_min:
        while (end < hi) {
            std::uint64_t p = std::max<std::uint64_t>(5, (end + 2) / 3 + 1);
            while (!is_witness_prime(p)) ++p;
            if (p - 1 > end + 1) throw gap();
            chain.entries.push_back(chain_entry(p));
            end = 3 * p - 2;
        }
        break;
    }
    if (end < hi) throw gap();
    return chain;
}

std::optional<std::uint64_t> first_gap(const CoveringChain& chain) {
    std::uint64_t end = chain.lo - 1;
    for (const ChainEntry& e : chain.entries) {
        if (end >= chain.hi) break;
        if (e.lo > end + 1) return end + 1;
        end = std::max(end, e.hi);
    }
    if (end < chain.hi) return end + 1;
    return std::nullopt;
}

std::optional<std::string> validate_chain(const CoveringChain& chain) {
    for (std::size_t i = 0; i < chain.entries.size(); ++i) {
        const ChainEntry& e = chain.entries[i];
        if (!is_witness_prime(e.p))
            return "entry " + std::to_string(e.p) + " is not a prime = 2 (mod 3) with p >= 5";
        if (e.lo != e.p - 1 || e.hi != 3 * e.p - 2)
            return "entry " + std::to_string(e.p) + " has interval other than [p - 1, 3p - 2]";
        if (i > 0 && e.lo > chain.entries[i - 1].hi + 1)
            return "entries " + std::to_string(chain.entries[i - 1].p) + " and " + std::to_string(e.p) +
                   " leave a gap";
    }
    if (const auto gap = first_gap(chain)) return "n = " + std::to_string(*gap) + " is not covered";
    return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

struct BlockResult {
    std::vector<Certificate> certificates;
    std::optional<std::uint64_t> failure;
    std::string reason;
};

BlockResult run_block(std::uint64_t lo, std::uint64_t hi) {
    BlockResult out;
    out.certificates.reserve(hi - lo + 1);
    for (std::uint64_t n = lo; n <= hi; ++n) {
        try {
            Certificate c = certify_n(n);
            if (!verify_certificate(c)) {
                out.failure = n;
                out.reason = "certificate failed verification";
                return out;
            }
            out.certificates.push_back(std::move(c));
        } catch (const std::exception& e) {
            out.failure = n;
            out.reason = e.what();
            return out;
        }
    }
    return out;
}

} // namespace

RangeResult certify_range(std::uint64_t lo, std::uint64_t hi, unsigned jobs) {
    if (lo < 1) throw std::invalid_argument("certify_range: lo must be >= 1");
    if (hi < lo) throw std::invalid_argument("certify_range: hi < lo");
    if (jobs < 1) throw std::invalid_argument("certify_range: jobs must be >= 1");

    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t total = hi - lo + 1;
    const std::uint64_t blocks = std::min<std::uint64_t>(jobs, total);
    std::vector<BlockResult> results(blocks);
    {
        std::vector<std::jthread> workers;
        workers.reserve(blocks);
        for (std::uint64_t b = 0; b < blocks; ++b) {
            const std::uint64_t b_lo = lo + total * b / blocks;
            const std::uint64_t b_hi = lo + total * (b + 1) / blocks - 1;
            workers.emplace_back([&results, b, b_lo, b_hi] { results[b] = run_block(b_lo, b_hi); });
        }
    }

    RangeResult out;
    out.summary.lo = lo;
    out.summary.hi = hi;
    out.certificates.reserve(total);
    for (BlockResult& r : results) {
        for (Certificate& c : r.certificates) {
            if (std::holds_alternative<BruteForceCertificate>(c))
                ++out.summary.brute;
            else if (std::holds_alternative<WitnessCertificate>(c))
                ++out.summary.witness;
            else
                ++out.summary.analytic;
            out.certificates.push_back(std::move(c));
        }
        if (r.failure) {
            out.summary.first_failure = r.failure;
            out.summary.failure_reason = r.reason;
            break;
        }
    }
    out.summary.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

RangeSummary verify_range(std::uint64_t lo, std::uint64_t hi, unsigned jobs) {
    return certify_range(lo, hi, jobs).summary;
}

// ---------------------------------------------------------------------------

std::string to_json_line(const Certificate& cert) {
    json j;
    j["v"] = kCertificateVersion;
    std::visit(
        [&j](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, WitnessCertificate>) {
                j["kind"] = "witness";
                put_uint(j, "n", c.n);
                put_uint(j, "p", c.p);
                put_uint(j, "ord", c.ord);
            } else if constexpr (std::is_same_v<T, BruteForceCertificate>) {
                j["kind"] = "brute";
                put_uint(j, "n", c.n);
                j["root"] = c.cube_root_floor;
            } else {
                const AnalyticReport& r = c.report;
                j["kind"] = "analytic";
                put_uint(j, "n_min", c.n_min);
                put_uint(j, "crossing_n", r.crossing_n);
                j["include_p2"] = r.includes_p2;
                j["s_crossing"] = r.s_at_crossing.value;
                j["s_crossing_err"] = r.s_at_crossing.error;
                j["s_value"] = r.s_value.value;
                j["s_value_err"] = r.s_value.error;
                j["rhs_value"] = r.rhs_value;
                j["threshold"] = std::to_string(r.threshold.num) + "/" + std::to_string(r.threshold.den);
                j["assumption"] = r.assumption;
            }
        },
        cert);
    return j.dump();
}

Certificate certificate_from_json(std::string_view line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("certificate: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("certificate: not a JSON object");
    const auto v = j.find("v");
    if (v == j.end() || !v->is_number_integer() || v->get<int>() != kCertificateVersion)
        throw std::invalid_argument("certificate: unsupported version");
    const auto kind = j.find("kind");
    if (kind == j.end() || !kind->is_string()) throw std::invalid_argument("certificate: missing kind");
    const std::string& k = kind->get_ref<const std::string&>();

    if (k == "witness") return WitnessCertificate{get_uint(j, "n"), get_uint(j, "p"), get_uint(j, "ord")};
    if (k == "brute") {
        const auto root = j.find("root");
        if (root == j.end() || !root->is_string()) throw std::invalid_argument("certificate: missing root");
        return BruteForceCertificate{get_uint(j, "n"), root->get<std::string>()};
    }
    if (k == "analytic") {
        AnalyticCertificate c;
        c.n_min = get_uint(j, "n_min");
        if (c.n_min < 1) throw std::invalid_argument("certificate: n_min must be >= 1");
        AnalyticReport& r = c.report;
        r.n = c.n_min - 1;
        r.crossing_n = get_uint(j, "crossing_n");
        const auto p2 = j.find("include_p2");
        if (p2 == j.end() || !p2->is_boolean()) throw std::invalid_argument("certificate: missing include_p2");
        r.includes_p2 = p2->get<bool>();
        r.s_at_crossing = {get_double(j, "s_crossing"), get_double(j, "s_crossing_err")};
        r.s_value = {get_double(j, "s_value"), get_double(j, "s_value_err")};
        r.rhs_value = get_double(j, "rhs_value");
        const auto t = j.find("threshold");
        if (t == j.end() || !t->is_string()) throw std::invalid_argument("certificate: missing threshold");
        const std::string ts = t->get<std::string>();
        const auto slash = ts.find('/');
        if (slash == std::string::npos) throw std::invalid_argument("certificate: bad threshold");
        try {
            r.threshold = {std::stoll(ts.substr(0, slash)), std::stoll(ts.substr(slash + 1))};
        } catch (const std::exception&) {
            throw std::invalid_argument("certificate: bad threshold");
        }
        const auto a = j.find("assumption");
        if (a != j.end() && a->is_string()) r.assumption = a->get<std::string>();
        return c;
    }
    throw std::invalid_argument("certificate: unknown kind " + k);
}

bool verify_json_line(std::string_view line) {
    try {
        return verify_certificate(certificate_from_json(line));
    } catch (const std::exception&) {
        return false;
    }
}

} // namespace cubecert
