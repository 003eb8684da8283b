#include "cubecert/cli.hpp"

#include "cubecert/analytic_bound.hpp"
#include "cubecert/certificates.hpp"
#include "cubecert/oracle.hpp"
#include "cubecert/prime_tools.hpp"
#include "cubecert/valuations.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <thread>

namespace cubecert {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

unsigned default_jobs() {
    if (const char* env = std::getenv(kJobsEnv)) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::optional<bool> parse_bool(const std::string& s) {
    std::string l = s;
    std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
    if (l == "true" || l == "1" || l == "yes" || l == "on") return true;
    if (l == "false" || l == "0" || l == "no" || l == "off") return false;
    return std::nullopt;
}

SpfSieve sieve_for(std::uint64_t top) {
    const std::uint64_t bound = default_sieve_bound(top);
    if (bound > kMaxSieveBound)
        throw UsageError(fmt::format("request needs a sieve up to {} (about {:.1f} GiB); the limit is 2^31",
                                     bound, static_cast<double>(bound) * 4 / (1u << 30)));
    return build_sieve(bound);
}

// Writes to --out when given, else to the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::out | std::ios::trunc);
            if (!file_) throw UsageError("cannot open output file " + path);
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.hi > kMaxTermIndex) throw UsageError(fmt::format("--max must be at most {}", kMaxTermIndex));
    Sink sink(cfg.out, out);
    RangeResult result = certify_range(cfg.lo, cfg.hi, cfg.jobs);
    std::uint64_t emitted = 0;
    for (const Certificate& c : result.certificates) {
        const std::string line = to_json_line(c);
        if (!verify_json_line(line)) {
            result.summary.first_failure = certificate_n(c);
            result.summary.failure_reason = "certificate did not survive a JSON round trip";
            break;
        }
        sink.get() << line << '\n';
        ++emitted;
    }
    sink.get().flush();

    const RangeSummary& s = result.summary;
    fmt::print(err, "verify: n in [{}, {}]: {} brute-force, {} witness-prime, {} certificates written, {:.2f} s, {} job(s)\n",
               s.lo, s.hi, s.brute, s.witness, emitted, s.seconds, cfg.jobs);
    if (!s.ok()) {
        fmt::print(err, "verify: FAILED at n = {}: {}\n", *s.first_failure, s.failure_reason);
        return kExitFailure;
    }
    fmt::print(err, "verify: C_n = (1^3+1)...(n^3+1) is not a cube for {} <= n <= {}\n", s.lo, s.hi);
    fmt::print(err, "verify: so y^3 = prod_(k<=n) (k^3 + 1) has no integer solution there\n");

    if (cfg.with_analytic) {
        const AnalyticCertificate a = certify_beyond(cfg.hi);
        const std::string line = to_json_line(a);
        if (!verify_json_line(line)) {
            fmt::print(err, "verify: analytic certificate failed verification\n");
            return kExitFailure;
        }
        sink.get() << line << '\n';
        fmt::print(err, "verify: analytic certificate covers every n >= {} (crossing at {}, include_p2={})\n",
                   a.n_min, a.report.crossing_n, a.report.includes_p2);
    }
    return kExitOk;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.hi > kMaxTermIndex) throw UsageError(fmt::format("N must be at most {}", kMaxTermIndex));
    const Certificate c = certify_n(cfg.hi);
    const std::string line = to_json_line(c);
    out << line << '\n';
    if (!verify_json_line(line)) {
        fmt::print(err, "certify: certificate for n = {} failed verification\n", cfg.hi);
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_chain(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto strategy = parse_chain_strategy(cfg.strategy);
    if (!strategy) throw UsageError("unknown strategy " + cfg.strategy);
    if (cfg.lo < 4) throw UsageError("--from must be at least 4");
    if (cfg.hi > kMaxTermIndex) throw UsageError(fmt::format("--to must be at most {}", kMaxTermIndex));
    const CoveringChain chain = build_chain(cfg.lo, cfg.hi, *strategy);
    fmt::print(out, "{:>8} {:>8} {:>8}\n", "p", "from", "to");
    for (const ChainEntry& e : chain.entries) fmt::print(out, "{:>8} {:>8} {:>8}\n", e.p, e.lo, e.hi);
    if (const auto problem = validate_chain(chain)) {
        fmt::print(err, "chain: invalid: {}\n", *problem);
        return kExitFailure;
    }
    fmt::print(err, "chain: {} entries ({}) cover [{}, {}]\n", chain.entries.size(), to_string(*strategy),
               chain.lo, chain.hi);
    return kExitOk;
}

int cmd_analytic(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<bool> conventions;
    if (cfg.include_p2)
        conventions.push_back(*cfg.include_p2);
    else
        conventions = {true, false};

    if (cfg.find_crossing) {
        if (!(cfg.threshold > 0)) throw UsageError("--threshold must be positive");
        const std::uint64_t n_max = cfg.hi;
        const SpfSieve sieve = sieve_for(n_max);
        bool any = false;
        for (const bool p2 : conventions) {
            const PrimeSumTable table(sieve, p2);
            if (const auto cross = table.crossing(cfg.threshold, n_max)) {
                const BoundedSum s = table.at(*cross);
                fmt::print(out, "include_p2={} crossing_n={} S={:.12f} error<={:.3g}\n", p2, *cross, s.value,
                           s.error);
                any = true;
            } else {
                fmt::print(out, "include_p2={} crossing_n=none (searched n <= {})\n", p2, n_max);
            }
        }
        for (const std::uint64_t n : {std::uint64_t{10000}, std::uint64_t{54985}, std::uint64_t{1000000}})
            fmt::print(out, "rhs_bound({}) = {:.12f}\n", n, rhs_bound(n));
        return any ? kExitOk : kExitFailure;
    }

    std::optional<AnalyticCertificate> cert;
    for (const bool p2 : conventions) {
        try {
            cert = certify_beyond(cfg.hi, p2);
            break;
        } catch (const std::exception& e) {
            fmt::print(err, "analytic: include_p2={}: {}\n", p2, e.what());
        }
    }
    if (!cert) return kExitFailure;
    const std::string line = to_json_line(*cert);
    if (!verify_json_line(line)) {
        fmt::print(err, "analytic: certificate failed verification\n");
        return kExitFailure;
    }
    out << line << '\n';
    const AnalyticReport& r = cert->report;
    fmt::print(err, "analytic: S({}) = {:.9f} >= 5.2 (include_p2={}); rhs_bound({}) = {:.9f} < 5.2\n", r.crossing_n,
               r.s_at_crossing.value, r.includes_p2, cert->n_min, r.rhs_value);
    fmt::print(err, "analytic: no cube C_n for n >= {}, assuming {}\n", cert->n_min, r.assumption);
    return kExitOk;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.hi > kMaxBigProductIndex)
        throw UsageError(fmt::format("--max must be at most {}", kMaxBigProductIndex));
    const SpfSieve sieve = sieve_for(cfg.hi);
    ExponentVector vec(sieve);
    mpz_class running = 1;
    std::uint64_t disagreements = 0, cubes = 0;
    for (std::uint64_t n = 1; n <= cfg.hi; ++n) {
        mpz_class t = static_cast<unsigned long>(n);
        running *= t * t * t + 1;
        vec.extend();
        const bool by_root = icbrt(running).exact;
        const ExponentCubeTest by_exp = vec.test();
        if (by_root != by_exp.is_cube) {
            ++disagreements;
            fmt::print(out, "n={} disagree: cube-root {} exponent-vector {}\n", n, by_root, by_exp.is_cube);
        }
        if (by_root || by_exp.is_cube) ++cubes;
    }
    const bool product_ok = big_C(cfg.hi).value == running;
    fmt::print(err, "oracle: n in [1, {}]: {} disagreements, {} cubes, product tree {}\n", cfg.hi, disagreements, cubes,
               product_ok ? "matches" : "DIFFERS");
    return disagreements == 0 && cubes == 0 && product_ok ? kExitOk : kExitFailure;
}

int cmd_pi_bound(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.hi > kMaxSieveBound) throw UsageError("--max must be at most 2^31");
    const SpfSieve sieve = build_sieve(std::max<std::uint64_t>(cfg.hi, 2));
    const auto violations = check_pi_bound(sieve, cfg.hi);
    for (const std::uint64_t x : violations)
        fmt::print(out, "violation x={} pi={} bound={:.6f}\n", x, sieve.pi(x), pi_bound_rhs(x));
    fmt::print(err, "pi-bound: x in (10000, {}]: {} violations, pi({}) = {}\n", cfg.hi, violations.size(), cfg.hi,
               sieve.pi(cfg.hi));
    return violations.empty() ? kExitOk : kExitFailure;
}

} // namespace

std::uint64_t default_sieve_bound(std::uint64_t top) {
    return std::max<std::uint64_t>(1000000, 3 * top + 2);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certificates that (1^3+1)(2^3+1)...(n^3+1) is never a cube", "cubecert"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.jobs = default_jobs();
    std::uint64_t max_n = 0, certify_target = 0, from = 1, to = 0, n_max = 0, pi_max = 0;
    std::string include_p2;

    auto* verify = app.add_subcommand("verify", "Certify and verify every n in [from, max]");
    verify->add_option("--max", max_n, "Largest n")->required()->check(CLI::PositiveNumber);
    verify->add_option("--from", from, "Smallest n")->check(CLI::PositiveNumber);
    verify->add_option("--jobs", cfg.jobs, "Worker threads (default: $" + std::string(kJobsEnv) + ")")
        ->check(CLI::PositiveNumber);
    verify->add_option("--out", cfg.out, "Certificate output file (default: stdout)");
    verify->add_flag("--with-analytic", cfg.with_analytic, "Append the certificate for all n > max");

    auto* certify = app.add_subcommand("certify", "Certificate for a single n");
    certify->add_option("n", certify_target, "n")->required()->check(CLI::PositiveNumber);

    auto* chain = app.add_subcommand("chain", "Build a covering chain of witness primes");
    chain->add_option("--from", from, "Lower end of the range")->required();
    chain->add_option("--to", to, "Upper end of the range")->required();
    chain->add_option("--strategy", cfg.strategy, "paper | greedy-max | greedy-min")
        ->check(CLI::IsMember({"paper", "greedy-max", "greedy-min"}));

    auto* analytic = app.add_subcommand("analytic", "Prime-sum bound for large n");
    analytic->add_option("--threshold", cfg.threshold, "Crossing threshold for --find-crossing");
    analytic->add_option("--include-p2", include_p2, "Count p = 2 in the prime sum (default: try both)");
    analytic->add_flag("--find-crossing", cfg.find_crossing, "Report the crossing index instead of a certificate");
    analytic->add_option("--n-max", n_max,
                         "Finite range already settled (default 54985) or crossing search limit (default 100000)")
        ->check(CLI::PositiveNumber);

    auto* oracle = app.add_subcommand("oracle", "Cross-check the big-integer and exponent-vector cube tests");
    oracle->add_option("--max", max_n, "Largest n (<= 5000)")->required()->check(CLI::PositiveNumber);

    auto* pi_bound = app.add_subcommand("pi-bound", "Check pi(x) < 1.139 x / log x on (10000, max]");
    pi_bound->add_option("--max", pi_max, "Largest x")->required()->check(CLI::PositiveNumber);

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("cubecert");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*verify) {
            cfg.command = Command::verify;
            cfg.lo = from;
            cfg.hi = max_n;
            if (cfg.lo > cfg.hi) throw UsageError("--from exceeds --max");
            return cmd_verify(cfg, out, err);
        }
        if (*certify) {
            cfg.command = Command::certify;
            cfg.lo = cfg.hi = certify_target;
            return cmd_certify(cfg, out, err);
        }
        if (*chain) {
            cfg.command = Command::chain;
            cfg.lo = from;
            cfg.hi = to;
            if (cfg.lo > cfg.hi) throw UsageError("--from exceeds --to");
            return cmd_chain(cfg, out, err);
        }
        if (*analytic) {
            cfg.command = Command::analytic;
            if (!include_p2.empty()) {
                cfg.include_p2 = parse_bool(include_p2);
                if (!cfg.include_p2) throw UsageError("--include-p2 expects true or false");
            }
            cfg.hi = n_max != 0 ? n_max : (cfg.find_crossing ? 100000 : kFiniteRangeMax);
            return cmd_analytic(cfg, out, err);
        }
        if (*oracle) {
            cfg.command = Command::oracle;
            cfg.hi = max_n;
            return cmd_oracle(cfg, out, err);
        }
        if (*pi_bound) {
            cfg.command = Command::pi_bound;
            cfg.hi = pi_max;
            return cmd_pi_bound(cfg, out, err);
        }
    } catch (const UsageError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const CertificationError& e) {
        fmt::print(err, "error: {} (n = {})\n", e.what(), e.n());
        return kExitFailure;
    } catch (const std::invalid_argument& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace cubecert
