#ifndef POLEST_VERIFY_HPP
#define POLEST_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "combinatorics.hpp"
#include "error.hpp"
#include "extremal.hpp"
#include "form.hpp"
#include "lp_space.hpp"
#include "norms.hpp"
#include "rng.hpp"
#include "series.hpp"

namespace polest {

// ---------------------------------------------------------------------------
// Random fixtures
// ---------------------------------------------------------------------------

/// Dense form with every coefficient uniform in [lo, hi].
inline SymmetricForm random_dense_form(Stream& rng, int m, int d, double lo = -1.0, double hi = 1.0) {
    std::map<MultiIndex, double> coeffs;
    for (auto& alpha : multi_indices(m, d)) coeffs.emplace(std::move(alpha), rng.uniform(lo, hi));
    return SymmetricForm(m, d, coeffs);
}

/// Form i of the seeded test corpus: m uniform in [1, max_m], d uniform in [1, max_d].
inline SymmetricForm corpus_form(std::uint64_t seed, std::uint64_t i, int max_m = 6, int max_d = 4) {
    Stream rng(derive_seed(seed, 0xC0 + 0), i);
    const int m = rng.uniform_int(1, max_m);
    const int d = rng.uniform_int(1, max_d);
    return random_dense_form(rng, m, d);
}

/// Finite polynomial series of the given degree on R^d, random dense terms.
inline PowerSeries random_polynomial_series(std::uint64_t seed, int degree, int d) {
    Stream rng(seed, 0);
    std::vector<SymmetricForm> terms;
    for (int m = 0; m <= degree; ++m) terms.push_back(random_dense_form(rng, m, d));
    return PowerSeries(std::move(terms), LpSpace(2.0, d));
}

/// sum_m (c^m / m-scaled random form) up to degree M on R^d: an infinite-type series.
inline PowerSeries random_decaying_series(std::uint64_t seed, int max_degree, int d, double c) {
    Stream rng(seed, 1);
    std::vector<SymmetricForm> terms;
    for (int m = 0; m <= max_degree; ++m) terms.push_back(random_dense_form(rng, m, d).scaled(std::pow(c, m)));
    return PowerSeries(std::move(terms), LpSpace(2.0, d));
}

/// |a - b| / max(|b|, 1e-6 S): relative error with a floor at the absolute scale S of the
/// computation, so that nearly cancelling sums are not judged against a tiny denominator.
inline double scaled_relative_error(double a, double b, double scale) {
    double denom = std::max(std::abs(b), 1e-6 * scale);
    if (denom == 0.0) return std::abs(a - b);
    return std::abs(a - b) / denom;
}

/// Absolute contraction scale sum |T_i| prod |x_l[i_l]| (oracle path on |c|, |x|).
inline double contraction_scale(const SymmetricForm& form, std::span<const Vector> args) {
    std::map<MultiIndex, double> abs_coeffs;
    for (const auto& [alpha, c] : form.coefficient_map()) abs_coeffs.emplace(alpha, std::abs(c));
    SymmetricForm abs_form(form.degree(), form.dim(), abs_coeffs);
    std::vector<Vector> abs_args;
    for (const auto& x : args) {
        Vector a(x.size());
        std::transform(x.begin(), x.end(), a.begin(), [](double v) { return std::abs(v); });
        abs_args.push_back(std::move(a));
    }
    return eval_direct_oracle(abs_form, abs_args);
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

struct VerifyConfig {
    std::uint64_t seed = 42;
    int budget = 256;
    unsigned threads = 1;
    bool override_caps = false;
    int corpus_size = 200;
};

struct CheckTally {
    std::string name;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    double worst = 0.0; // largest observed error or ratio, check-specific
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckTally> checks;
    std::vector<nlohmann::json> counterexamples;

    [[nodiscard]] bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.failures == 0; });
    }
};

namespace detail {

inline constexpr std::size_t kMaxCounterexamples = 20;

class SuiteBuilder {
public:
    explicit SuiteBuilder(std::string name) { result_.suite = std::move(name); }

    /// Records one case; 'worst' tracks the max of the supplied metric.
    void check(const std::string& name, bool ok, double metric = 0.0, const nlohmann::json& instance = nullptr) {
        auto& t = tally(name);
        ++t.cases;
        t.worst = std::max(t.worst, metric);
        if (ok) return;
        ++t.failures;
        if (result_.counterexamples.size() < kMaxCounterexamples) {
            nlohmann::json j = {{"check", name}, {"instance", instance}};
            if (std::isfinite(metric)) j["metric"] = metric;
            result_.counterexamples.push_back(std::move(j));
        }
    }

    SuiteResult finish() { return std::move(result_); }

private:
    CheckTally& tally(const std::string& name) {
        for (auto& t : result_.checks)
            if (t.name == name) return t;
        result_.checks.push_back({name});
        return result_.checks.back();
    }

    SuiteResult result_;
};

inline std::vector<Vector> random_args(Stream& rng, int count, int d) {
    std::vector<Vector> out;
    for (int i = 0; i < count; ++i) out.push_back(rng.uniform_vector(d, -1.0, 1.0));
    return out;
}

} // namespace detail

/// polarize vs the dense-tensor oracle, symmetry, multilinearity and the diagonal.
inline SuiteResult suite_polarization(const VerifyConfig& cfg) {
    detail::SuiteBuilder sb("polarization");
    PolarizeOptions popt;
    popt.override_caps = cfg.override_caps;
    for (int i = 0; i < cfg.corpus_size; ++i) {
        auto form = corpus_form(cfg.seed, static_cast<std::uint64_t>(i));
        const int m = form.degree(), d = form.dim();
        Stream rng(derive_seed(cfg.seed, 1), static_cast<std::uint64_t>(i));
        for (int t = 0; t < 10; ++t) {
            auto args = detail::random_args(rng, m, d);
            double a = polarize(form, args, popt);
            double b = eval_direct_oracle(form, args);
            double err = scaled_relative_error(a, b, contraction_scale(form, args));
            sb.check("oracle", err <= 1e-10, err, {{"form", to_json(form)}, {"args", args}, {"polarize", a}, {"oracle", b}});
        }
        auto args = detail::random_args(rng, m, d);
        const double base = polarize(form, args, popt);
        const double scale = contraction_scale(form, args);
        auto perm = args;
        std::reverse(perm.begin(), perm.end());
        if (m >= 2) std::rotate(perm.begin(), perm.begin() + 1, perm.end());
        double err = scaled_relative_error(polarize(form, perm, popt), base, scale);
        sb.check("symmetry", err <= 1e-10, err, {{"form", to_json(form)}, {"args", args}});

        const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
        Vector u = rng.uniform_vector(d, -1.0, 1.0), v = rng.uniform_vector(d, -1.0, 1.0);
        auto with = [&](const Vector& w) {
            auto c = args;
            c[0] = w;
            return polarize(form, c, popt);
        };
        Vector mix(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) mix[static_cast<std::size_t>(j)] = a * u[static_cast<std::size_t>(j)] + b * v[static_cast<std::size_t>(j)];
        const double lhs = with(mix), rhs = a * with(u) + b * with(v);
        auto su = args, sv = args;
        su[0] = u;
        sv[0] = v;
        const double lin_scale = std::abs(a) * contraction_scale(form, su) + std::abs(b) * contraction_scale(form, sv);
        err = scaled_relative_error(lhs, rhs, lin_scale);
        sb.check("multilinear", err <= 1e-10, err, {{"form", to_json(form)}, {"args", args}, {"u", u}, {"v", v}});

        std::vector<Vector> diag(static_cast<std::size_t>(m), args[0]);
        const double pv = eval_poly(form, args[0]);
        err = scaled_relative_error(polarize(form, diag, popt), pv, contraction_scale(form, diag));
        sb.check("diagonal", err <= 1e-12, err, {{"form", to_json(form)}, {"x", args[0]}});
    }
    return sb.finish();
}

inline std::vector<double> sandwich_p_values(int m) {
    return {1.0, 1.5, 2.0, 4.0, 8.0, static_cast<double>(m), 2.0 * m, kInfinity};
}

/// Generic and l_p lower <= upper chains for m <= 12, and the pinch at (1, ..., 1).
inline SuiteResult suite_sandwich(const VerifyConfig&) {
    detail::SuiteBuilder sb("sandwich");
    constexpr double tol = 1e-12;
    for (int m = 1; m <= 12; ++m) {
        for (const auto& k : partitions_of(m)) {
            auto lo = bound_x_lower(k);
            auto hi = bound_real_min(k);
            double gap = lo.log_value - hi.log_value;
            sb.check("x_lower<=real_min", gap <= tol, gap, {{"partition", k.parts()}});
            for (double p : sandwich_p_values(m)) {
                auto l = bound_lp_lower(k, p);
                auto s = bound_lp_upper_sharp(k, p);
                auto u = bound_lp_upper(k, p);
                double g1 = l.log_value - s.log_value, g2 = s.log_value - u.log_value;
                nlohmann::json inst = {{"partition", k.parts()}, {"p", p_to_json(p)}};
                sb.check("lp_lower<=lp_upper_sharp", g1 <= tol, g1, inst);
                sb.check("lp_upper_sharp<=lp_upper", g2 <= tol, g2, inst);
            }
        }
        Partition ones(std::vector<int>(static_cast<std::size_t>(m), 1));
        const double closed = m * std::log(static_cast<double>(m)) - log_factorial(m);
        double e1 = std::abs(bound_x_lower(ones).log_value - bound_real_min(ones).log_value);
        double e2 = std::abs(bound_x_lower(ones).log_value - closed);
        sb.check("pinch_generic", e1 <= tol && e2 <= tol, std::max(e1, e2), {{"m", m}});
        for (double p : sandwich_p_values(m)) {
            const double closed_p = (std::isinf(p) ? 0.0 : m * std::log(static_cast<double>(m)) / p) - log_factorial(m);
            auto l = bound_lp_lower(ones, p);
            double e = std::max({std::abs(l.log_value - bound_lp_upper(ones, p).log_value),
                                 std::abs(l.log_value - bound_lp_upper_sharp(ones, p).log_value),
                                 std::abs(l.log_value - closed_p)});
            sb.check("pinch_lp", e <= tol, e, {{"m", m}, {"p", p_to_json(p)}});
        }
    }
    return sb.finish();
}

/// Moment bound dominance gamma <= unified (log domain, 1e-12 relative slack for the k = 2 equality).
inline SuiteResult suite_moments(const VerifyConfig&) {
    detail::SuiteBuilder sb("moments");
    for (double s : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        for (int k = 1; k <= 400; ++k) {
            double g = log_moment_bound_gamma(k, s), u = log_moment_bound_unified(k, s);
            double gap = g - u;
            sb.check(k <= 2 ? "small_cases" : "gamma<=unified", gap <= 1e-12 * std::max(1.0, std::abs(u)), gap,
                     {{"k", k}, {"subg_p", s}, {"log_gamma_bound", g}, {"log_unified_bound", u}});
        }
    }
    return sb.finish();
}

/// Hoeffding tail >= exact Rademacher tail for k <= 24 on the 0.1 grid of [0, k].
inline SuiteResult suite_tails(const VerifyConfig&) {
    detail::SuiteBuilder sb("tails");
    for (int k = 1; k <= 24; ++k) {
        for (int i = 0; i <= 10 * k; ++i) {
            const double x = i / 10.0;
            double h = hoeffding_tail(k, x), e = exact_rademacher_tail(k, x);
            sb.check("hoeffding>=exact", h >= e, e - h, {{"k", k}, {"x", x}, {"hoeffding", h}, {"exact", e}});
        }
    }
    return sb.finish();
}

inline std::vector<double> extremal_p_values(int m) {
    std::vector<double> ps{1.0, 1.5, 2.0, 4.0};
    if (std::find(ps.begin(), ps.end(), static_cast<double>(m)) == ps.end()) ps.push_back(m);
    return ps;
}

/// verify_extremal for every partition with m <= 8, generic and l_p constructions.
inline SuiteResult suite_extremal(const VerifyConfig& cfg) {
    detail::SuiteBuilder sb("extremal");
    NormOptions opt;
    opt.budget = cfg.budget;
    opt.seed = cfg.seed;
    opt.threads = cfg.threads;
    for (int m = 1; m <= 8; ++m) {
        for (const auto& k : partitions_of(m)) {
            std::vector<std::pair<ExtremalInstance, double>> cases{{build_extremal_x(k), 1.0}};
            for (double p : extremal_p_values(m)) cases.emplace_back(build_extremal_lp(k, p), p);
            for (const auto& [inst, p] : cases) {
                auto rep = verify_extremal(inst, opt);
                nlohmann::json dump = {{"instance", to_json(inst)}, {"report", to_json(rep)}};
                sb.check("closed_form", rep.closed_form_ok && rep.exact_ok.value_or(true),
                         std::abs(rep.polarized / rep.closed_form - 1.0), dump);
                sb.check("optimizer_norm", rep.norm_ok, rep.analytic_norm / rep.norm_estimate - 1.0, dump);
                sb.check("ratio_vs_lower", rep.ratio_ok, std::abs(rep.deviation), dump);
                auto upper = inst.generic ? bound_real_min(k) : bound_lp_upper_sharp(k, p);
                double gap = std::log(rep.ratio) - upper.log_value;
                sb.check("ratio<=upper", gap <= 1e-12, gap, dump);
            }
        }
    }
    return sb.finish();
}

/// Asymptotic constant, f-min and sup-product scans.
inline SuiteResult suite_asymptotic(const VerifyConfig&) {
    detail::SuiteBuilder sb("asymptotic");
    const double c1000 = asymptotic_constant(1000, 3);
    sb.check("C(1000,3)<=1.05", c1000 <= 1.05, c1000, {{"m", 1000}, {"n", 3}, {"value", c1000}});
    for (int n : {3, 4, 5}) {
        double prev = asymptotic_constant(200, n);
        for (int m : {400, 800, 1600}) {
            double cur = asymptotic_constant(m, n);
            sb.check("decreasing_along_m", cur <= prev, cur - prev, {{"m", m}, {"n", n}, {"value", cur}, {"previous", prev}});
            prev = cur;
        }
    }
    for (int m = 2; m <= 60; ++m) {
        auto f = f_min(m);
        bool ok = f.k == m / 2;
        double err = 0.0;
        if (m % 2 == 0) {
            big_int expected = boost::multiprecision::pow(big_int(m / 2), static_cast<unsigned>(m));
            ok = ok && f.exact == expected;
            err = std::abs(f.log_value - m * std::log(m / 2.0));
        }
        sb.check("f_min", ok, err, {{"m", m}, {"k", f.k}, {"value", f.value}});
    }
    for (int m = 1; m <= 60; ++m) {
        for (int n = 1; n <= m; ++n) {
            auto sp = sup_product(m, n);
            bool ok = static_cast<double>(sp.product) <= sp.bound * (1.0 + 1e-15) && sp.equality == (m % n == 0);
            sb.check("sup_product", ok, static_cast<double>(sp.product) / sp.bound,
                     {{"m", m}, {"n", n}, {"witness", sp.witness.parts()}, {"product", sp.product}});
        }
    }
    return sb.finish();
}

/// Radius recovery, re-expansion, rho_bar floor, derivative series and Taylor coefficients.
inline SuiteResult suite_series(const VerifyConfig& cfg) {
    detail::SuiteBuilder sb("series");
    NormOptions opt;
    opt.budget = std::max(8, cfg.budget / 8);
    opt.seed = cfg.seed;
    opt.threads = cfg.threads;

    for (double c : {0.5, 1.0, 2.0, 5.0}) {
        auto s = PowerSeries::geometric(c, 40);
        auto r = radius_uniform(s, opt);
        double err = std::abs(r.rho - 1.0 / c);
        sb.check("radius_geometric", err <= 1e-6, err, {{"c", c}, {"rho", r.rho}, {"method", to_string(r.method)}});
    }
    // c^m scaling of a series without a constant ratio divides the limsup estimate by c
    {
        std::vector<SymmetricForm> base;
        for (int m = 0; m <= 40; ++m) base.push_back(SymmetricForm::monomial({m}, m + 1.0));
        auto rho0 = radius_uniform(PowerSeries(base, LpSpace(2.0, 1)), opt).rho;
        for (double c : {0.5, 1.0, 2.0, 5.0}) {
            std::vector<SymmetricForm> scaled;
            for (int m = 0; m <= 40; ++m) scaled.push_back(base[static_cast<std::size_t>(m)].scaled(std::pow(c, m)));
            auto rho = radius_uniform(PowerSeries(scaled, LpSpace(2.0, 1)), opt).rho;
            double err = std::abs(rho * c / rho0 - 1.0);
            sb.check("radius_scaling", err <= 1e-6, err, {{"c", c}, {"rho", rho}, {"rho_base", rho0}});
        }
    }
    {
        auto s = PowerSeries::geometric(1.0, 200);
        Vector y{0.3}, x{0.6};
        auto rep = verify_analyticity(s, y, x, 1e-8, 200, opt);
        double err = std::max(std::abs(rep.reexpanded - 2.5), std::abs(rep.direct - 2.5));
        sb.check("reexpand_geometric", rep.passed && err <= 1e-8, err,
                 {{"direct", rep.direct}, {"reexpanded", rep.reexpanded}});
    }
    for (int t = 0; t < 10; ++t) {
        const std::uint64_t fs = derive_seed(cfg.seed, 100 + static_cast<std::uint64_t>(t));
        auto s = random_polynomial_series(fs, 3, 3);
        Stream rng(fs, 7);
        Vector y = rng.uniform_vector(3, -1.0, 1.0), x = rng.uniform_vector(3, -1.0, 1.0);
        auto rep = verify_analyticity(s, y, x, 1e-12, 3, kInfinity, opt);
        sb.check("reexpand_polynomial", rep.passed, rep.difference / std::max(1.0, std::abs(rep.direct)),
                 {{"series", to_json(s)}, {"y", y}, {"x", x}, {"direct", rep.direct}, {"reexpanded", rep.reexpanded}});
    }
    {
        std::vector<PowerSeries> fixtures{PowerSeries::geometric(1.0, 40), PowerSeries::geometric(3.0, 30, 2.0),
                                          random_decaying_series(derive_seed(cfg.seed, 200), 16, 2, 0.5)};
        std::vector<SymmetricForm> prod_terms{SymmetricForm::constant(1.0, 3)};
        for (int m = 1; m <= 12; ++m) {
            std::map<MultiIndex, double> c;
            MultiIndex alpha(3, 0);
            for (int j = 0; j < m; ++j) ++alpha[static_cast<std::size_t>(j % 3)];
            c[alpha] = 1.0;
            prod_terms.emplace_back(m, 3, c);
        }
        fixtures.emplace_back(prod_terms, LpSpace::infinity(3));
        for (const auto& s : fixtures) {
            auto rb = rho_bar(s, opt);
            double gap = rb.rho / std::numbers::sqrt2 - rb.reported;
            sb.check("rho_bar_floor", gap <= 1e-12, gap, {{"series", to_json(s)}, {"rho", rb.rho}, {"rho_bar", rb.reported}});
        }
    }
    {
        auto geo = PowerSeries::geometric(1.0, 200);
        Vector x{0.5};
        for (int n = 1; n <= 3; ++n) {
            auto rep = dn_check_fd(geo, n, x, derive_seed(cfg.seed, 300));
            sb.check("fd_geometric_n" + std::to_string(n), rep.passed, rep.error,
                     {{"n", n}, {"fd", rep.fd_value}, {"series", rep.series_value}});
        }
        for (int t = 0; t < 5; ++t) {
            const std::uint64_t fs = derive_seed(cfg.seed, 400 + static_cast<std::uint64_t>(t));
            auto s = random_polynomial_series(fs, 4, 3);
            Stream rng(fs, 9);
            Vector xp = rng.uniform_vector(3, -0.5, 0.5);
            for (int n = 1; n <= 3; ++n) {
                auto rep = dn_check_fd(s, n, xp, fs + static_cast<std::uint64_t>(n));
                sb.check("fd_polynomial_n" + std::to_string(n), rep.passed, rep.error,
                         {{"series", to_json(s)}, {"x", xp}, {"n", n}, {"fd", rep.fd_value}, {"value", rep.series_value}});
            }
        }
    }
    {
        auto geo = PowerSeries::geometric(1.0, 200);
        Vector y{0.3}, v{1.0};
        for (int k = 1; k <= 3; ++k) {
            auto rep = check_taylor_coefficient(geo, y, k, v, 1.0);
            sb.check("taylor_coefficient", rep.passed, rep.error, {{"k", k}, {"A_k", rep.coefficient_value}, {"fd", rep.fd_value}});
        }
        auto s = random_polynomial_series(derive_seed(cfg.seed, 500), 4, 2);
        Stream rng(derive_seed(cfg.seed, 500), 3);
        Vector yp = rng.uniform_vector(2, -0.5, 0.5);
        Vector vp = LpSpace(2.0, 2).normalize(rng.normal_vector(2));
        for (int k = 1; k <= 3; ++k) {
            auto rep = check_taylor_coefficient(s, yp, k, vp, kInfinity);
            sb.check("taylor_coefficient", rep.passed, rep.error, {{"k", k}, {"A_k", rep.coefficient_value}, {"fd", rep.fd_value}});
        }
    }
    return sb.finish();
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"polarization", "sandwich", "moments", "tails",
                                                   "extremal", "asymptotic", "series"};
    return names;
}

inline SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg) {
    if (name == "polarization") return suite_polarization(cfg);
    if (name == "sandwich") return suite_sandwich(cfg);
    if (name == "moments") return suite_moments(cfg);
    if (name == "tails") return suite_tails(cfg);
    if (name == "extremal") return suite_extremal(cfg);
    if (name == "asymptotic") return suite_asymptotic(cfg);
    if (name == "series") return suite_series(cfg);
    throw invalid_input("unknown suite '" + name + "'");
}

} // namespace polest

#endif
