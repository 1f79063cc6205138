// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <polest/polest.hpp>
#include <polest/verify.hpp>

#include "cli.hpp"

using namespace polest;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass;
    std::string detail;
};

std::string tally_text(const SuiteResult& r, const std::vector<std::string>& only = {}) {
    std::ostringstream os;
    for (const auto& c : r.checks)
        if (only.empty() || std::find(only.begin(), only.end(), c.name) != only.end()) os << c.name << " " << c.failures << "/" << c.cases << "; ";
    return os.str();
}

const CheckTally* find_check(const SuiteResult& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

VerifyConfig config() {
    VerifyConfig cfg;
    cfg.seed = 42;
    cfg.budget = 256;
    return cfg;
}

Outcome polarization_exactness() {
    auto t0 = Clock::now();
    auto r = run_suite("polarization", config());
    double dt = seconds_since(t0);
    const auto* oracle = find_check(r, "oracle");
    bool ok = r.passed() && oracle && oracle->cases >= 2000 && dt < 30.0;
    std::ostringstream os;
    os << tally_text(r) << "worst " << (oracle ? oracle->worst : -1.0) << ", " << dt << " s";
    return {ok, os.str()};
}

SymmetricForm corpus(std::uint64_t i) { return corpus_form(config().seed, i); }

Outcome norm_chain() {
    const auto cfg = config();
    std::uint64_t cases = 0, violations = 0;
    for (int i = 0; i < cfg.corpus_size; ++i) {
        auto f = corpus(static_cast<std::uint64_t>(i));
        if (f.degree() < 2) continue;
        for (double p : {1.0, 2.0, kInfinity}) {
            LpSpace sp(p, f.dim());
            NormOptions o;
            o.budget = 64;
            o.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
            std::vector<NormEstimate> pool{estimate_poly_norm(f, sp, o)};
            double prev = pool.back().value;
            for (int n = 2; n <= std::min(3, f.degree()); ++n) {
                auto e = estimate_mixed_norm(f, n, sp, o, pool);
                ++cases;
                if (!(e.value >= prev)) ++violations;
                prev = e.value;
                pool.push_back(e);
            }
        }
    }
    return {violations == 0 && cases > 0, std::to_string(violations) + " violations in " + std::to_string(cases) + " links"};
}

Outcome sqrt_dominance() {
    const auto cfg = config();
    std::uint64_t cases = 0, violations = 0;
    double worst = 0.0;
    for (int i = 0; i < cfg.corpus_size; ++i) {
        auto f = corpus(static_cast<std::uint64_t>(i));
        if (f.degree() < 2) continue;
        for (double p : {1.0, 2.0, kInfinity}) {
            LpSpace sp(p, f.dim());
            NormOptions o;
            o.budget = cfg.budget;
            o.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
            double poly = estimate_poly_norm(f, sp, o).value;
            for (const auto& k : partitions_into(f.degree(), 2)) {
                double value = estimate_partition_value(f, k, sp, o).value;
                double ratio = value / (std::exp(bound_sqrt(k).log_value) * poly);
                ++cases;
                worst = std::max(worst, ratio);
                if (!(ratio <= 1.05)) ++violations;
            }
        }
    }
    std::ostringstream os;
    os << violations << " violations in " << cases << " partition values, worst ratio " << worst;
    return {violations == 0 && cases > 0, os.str()};
}

Outcome suite_outcome(const std::string& name, double time_limit = 0.0) {
    auto t0 = Clock::now();
    auto r = run_suite(name, config());
    double dt = seconds_since(t0);
    bool ok = r.passed() && (time_limit <= 0.0 || dt < time_limit);
    std::ostringstream os;
    os << tally_text(r) << dt << " s";
    return {ok, os.str()};
}

Outcome asymptotics() {
    auto t0 = Clock::now();
    auto r = run_suite("asymptotic", config());
    double dt = seconds_since(t0);
    bool ok = true;
    const std::vector<std::string> names = {"C(1000,3)<=1.05", "decreasing_along_m"};
    for (const auto& name : names) {
        const auto* c = find_check(r, name);
        ok = ok && c && c->cases > 0 && c->failures == 0;
    }
    // timing covers the asymptotic constants alone
    auto t1 = Clock::now();
    double c1000 = asymptotic_constant(1000, 3);
    for (int n : {3, 4, 5})
        for (int m : {200, 400, 800, 1600}) (void)asymptotic_constant(m, n);
    double lemma_time = seconds_since(t1);
    ok = ok && lemma_time < 1.0;
    std::ostringstream os;
    os << "C(1000,3) = " << c1000 << ", " << tally_text(r, names) << "asymptotics " << lemma_time << " s, suite " << dt << " s";
    return {ok, os.str()};
}

Outcome fmin_supproduct() {
    auto r = run_suite("asymptotic", config());
    bool ok = true;
    const std::vector<std::string> names = {"f_min", "sup_product"};
    for (const auto& name : names) {
        const auto* c = find_check(r, name);
        ok = ok && c && c->cases > 0 && c->failures == 0;
    }
    return {ok, tally_text(r, names)};
}

std::string cli_output(std::vector<std::string> args) {
    args.insert(args.begin(), "polest");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::to_string(code) + "\n" + out.str();
}

Outcome cli_determinism() {
    const std::vector<std::vector<std::string>> commands = {
        {"verify", "all", "--seed", "42"},
        {"verify", "all", "--seed", "42", "--format", "json"},
        {"bounds", "--m", "1..10", "--p", "1,1.5,2,4,inf", "--sharp"},
        {"bounds", "--m", "1..10", "--p", "1,1.5,2,4,inf", "--format", "json"},
    };
    int mismatches = 0;
    for (const auto& cmd : commands) {
        auto a = cli_output(cmd);
        auto b = cli_output(cmd);
        auto threaded = cmd;
        threaded.insert(threaded.end(), {"--threads", "4"});
        auto c = cli_output(threaded);
        if (a != b || a != c || a.rfind("0\n", 0) != 0) ++mismatches;
    }
    return {mismatches == 0, std::to_string(mismatches) + " of " + std::to_string(commands.size()) + " commands differ or fail"};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"polarization exactness", polarization_exactness},
        {"norm chain with pooling", norm_chain},
        {"square-root dominance", sqrt_dominance},
        {"sandwich and pinch", [] { return suite_outcome("sandwich"); }},
        {"extremal attainment", [] { return suite_outcome("extremal"); }},
        {"moment dominance", [] { return suite_outcome("moments", 1.0); }},
        {"tail dominance", [] { return suite_outcome("tails"); }},
        {"f_min and sup_product", fmin_supproduct},
        {"asymptotics", asymptotics},
        {"series", [] { return suite_outcome("series"); }},
        {"cli determinism", cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
