#ifndef POLEST_BOUNDS_HPP
#define POLEST_BOUNDS_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "combinatorics.hpp"
#include "error.hpp"
#include "lp_space.hpp"

namespace polest {

enum class BoundKind {
    problem73,
    harris_complex,
    sqrt_branch,
    new_branch,
    real_min,
    nguyen,
    lp_upper,
    lp_upper_sharp,
    lp_lower,
    x_lower,
};

inline std::string to_string(BoundKind kind) {
    switch (kind) {
    case BoundKind::problem73: return "problem73";
    case BoundKind::harris_complex: return "harris_complex";
    case BoundKind::sqrt_branch: return "sqrt";
    case BoundKind::new_branch: return "new";
    case BoundKind::real_min: return "real_min";
    case BoundKind::nguyen: return "nguyen";
    case BoundKind::lp_upper: return "lp_upper";
    case BoundKind::lp_upper_sharp: return "lp_upper_sharp";
    case BoundKind::lp_lower: return "lp_lower";
    case BoundKind::x_lower: return "x_lower";
    }
    return "unknown";
}

inline std::string citation(BoundKind kind) {
    switch (kind) {
    case BoundKind::problem73: return "Mazur-Orlicz, Scottish Book Problem 73: m^m/m!";
    case BoundKind::harris_complex: return "Harris, polarization constant for complex normed spaces";
    case BoundKind::sqrt_branch: return "square-root bound sqrt(m^m / prod k_i^k_i) for real spaces";
    case BoundKind::new_branch: return "polarization-formula bound (prod k_i^k_i / m!) n^m";
    case BoundKind::real_min: return "real normed spaces: min of the square-root and n^m bounds";
    case BoundKind::nguyen: return "sub-gaussian moment bound after Nguyen: e^{m/2} (em/n)^n C(m+n-1, n-1)";
    case BoundKind::lp_upper: return "real l_p: disjoint-support bound with Hoeffding tail moments";
    case BoundKind::lp_upper_sharp: return "real l_p: disjoint-support bound with exact power sum of the k_i";
    case BoundKind::lp_lower: return "real l_p: block construction, Sarantopoulos constant m^{m/p}/m! at (1,...,1)";
    case BoundKind::x_lower: return "real normed spaces: coordinate-block construction with AM-GM";
    }
    return "";
}

/// A bound value carried in the log domain. value is empty when exp(log_value)
/// is not representable as a double. terms holds the logs of the branches a
/// minimum was taken over, and other named intermediate factors.
struct BoundReport {
    BoundKind kind = BoundKind::problem73;
    double log_value = 0.0;
    std::optional<double> value;
    Partition partition;
    std::optional<double> p; // empty: generic normed space
    std::vector<std::pair<std::string, double>> terms;

    [[nodiscard]] bool overflow() const noexcept { return !value.has_value(); }
    [[nodiscard]] std::string name() const { return to_string(kind); }
    [[nodiscard]] std::string space_tag() const {
        if (!p) return "generic";
        return "lp(" + LpSpace(*p, 1).tag() + ")";
    }
    [[nodiscard]] std::string cite() const { return citation(kind); }

    [[nodiscard]] double term(const std::string& key) const {
        for (const auto& [k, v] : terms)
            if (k == key) return v;
        throw invalid_input("bound report has no term '" + key + "'");
    }
};

namespace detail {

inline BoundReport make_report(BoundKind kind, double log_value, Partition partition, std::optional<double> p = std::nullopt) {
    BoundReport r;
    r.kind = kind;
    r.log_value = log_value;
    if (log_value < std::log(std::numeric_limits<double>::max())) r.value = std::exp(log_value);
    r.partition = std::move(partition);
    r.p = p;
    return r;
}

inline void require_partition(const Partition& k) { require(!k.empty(), "bound needs a nonempty partition"); }

/// sum k_i log k_i
inline double log_prod_k_pow_k(const Partition& k) {
    double s = 0.0;
    for (int ki : k.parts()) s += ki * std::log(static_cast<double>(ki));
    return s;
}

inline double log_prod_k_factorial(const Partition& k) {
    double s = 0.0;
    for (int ki : k.parts()) s += log_factorial(ki);
    return s;
}

inline double log_m_pow_m(int m) { return m * std::log(static_cast<double>(m)); }

} // namespace detail

inline nlohmann::json to_json(const BoundReport& r) {
    nlohmann::json j;
    j["name"] = r.name();
    j["log_value"] = r.log_value;
    if (r.value)
        j["value"] = *r.value;
    else
        j["value"] = "overflow";
    j["partition"] = r.partition.parts();
    j["space"] = r.space_tag();
    j["citation"] = r.cite();
    nlohmann::json terms = nlohmann::json::object();
    for (const auto& [k, v] : r.terms) terms[k] = v;
    j["log_terms"] = terms;
    return j;
}

// ---------------------------------------------------------------------------
// Generic normed spaces
// ---------------------------------------------------------------------------

inline BoundReport bound_problem73(int m) {
    detail::require(m >= 1, "bound_problem73 needs m >= 1");
    return detail::make_report(BoundKind::problem73, detail::log_m_pow_m(m) - log_factorial(m), Partition{m});
}

/// (prod k_i! / prod k_i^{k_i}) m^m / m!
inline BoundReport bound_harris_complex(const Partition& k) {
    detail::require_partition(k);
    const int m = k.m();
    double lv = detail::log_prod_k_factorial(k) - detail::log_prod_k_pow_k(k) + detail::log_m_pow_m(m) - log_factorial(m);
    return detail::make_report(BoundKind::harris_complex, lv, k);
}

/// sqrt(m^m / prod k_i^{k_i})
inline BoundReport bound_sqrt(const Partition& k) {
    detail::require_partition(k);
    double lv = 0.5 * (detail::log_m_pow_m(k.m()) - detail::log_prod_k_pow_k(k));
    return detail::make_report(BoundKind::sqrt_branch, lv, k);
}

struct FMin {
    int k = 0;
    double value = 0.0;
    double log_value = 0.0;
    big_int exact;
};

/// argmin over k = 1..m-1 of k^k (m-k)^{m-k}, exact integer comparison, smaller k on ties.
inline FMin f_min(int m) {
    detail::require(m >= 2, "f_min needs m >= 2");
    FMin best;
    for (int k = 1; k < m; ++k) {
        big_int v = boost::multiprecision::pow(big_int(k), static_cast<unsigned>(k)) *
                    boost::multiprecision::pow(big_int(m - k), static_cast<unsigned>(m - k));
        if (best.k == 0 || v < best.exact) {
            best.k = k;
            best.exact = v;
        }
    }
    best.value = best.exact.convert_to<double>();
    best.log_value = best.k * std::log(static_cast<double>(best.k)) +
                     (m - best.k) * std::log(static_cast<double>(m - best.k));
    return best;
}

/// (prod k_i^{k_i} / m!) n^m
inline BoundReport bound_new(const Partition& k) {
    detail::require_partition(k);
    const int m = k.m();
    double lv = detail::log_prod_k_pow_k(k) - log_factorial(m) + m * std::log(static_cast<double>(k.n()));
    return detail::make_report(BoundKind::new_branch, lv, k);
}

inline BoundReport bound_real_min(const Partition& k) {
    auto a = bound_sqrt(k);
    auto b = bound_new(k);
    auto r = detail::make_report(BoundKind::real_min, std::min(a.log_value, b.log_value), k);
    r.terms = {{"sqrt", a.log_value}, {"new", b.log_value}};
    return r;
}

inline BoundReport bound_x_lower(const Partition& k) {
    auto r = bound_harris_complex(k);
    r.kind = BoundKind::x_lower;
    return r;
}

// ---------------------------------------------------------------------------
// Moment machinery
// ---------------------------------------------------------------------------

/// log of k (2s)^{k/2} Gamma(k/2), with the small cases k = 1: sqrt(2s), k = 2: 4s.
inline double log_moment_bound_gamma(int k, double subg) {
    detail::require(k >= 1, "moment bound needs k >= 1");
    detail::require(subg > 0.0, "sub-gaussian parameter must be positive");
    if (k == 1) return 0.5 * std::log(2.0 * subg);
    if (k == 2) return std::log(4.0 * subg);
    return std::log(static_cast<double>(k)) + 0.5 * k * std::log(2.0 * subg) + log_gamma(0.5 * k);
}

/// log of k e (s k / e)^{k/2}
inline double log_moment_bound_unified(int k, double subg) {
    detail::require(k >= 1, "moment bound needs k >= 1");
    detail::require(subg > 0.0, "sub-gaussian parameter must be positive");
    return std::log(static_cast<double>(k)) + 1.0 + 0.5 * k * (std::log(subg * k) - 1.0);
}

inline double moment_bound_gamma(int k, double subg) { return std::exp(log_moment_bound_gamma(k, subg)); }
inline double moment_bound_unified(int k, double subg) { return std::exp(log_moment_bound_unified(k, subg)); }

struct SupProduct {
    Partition witness;
    std::uint64_t product = 0;
    double bound = 0.0;      // (m/n)^n
    bool equality = false;   // product == (m/n)^n exactly
};

/// Exhaustive max of k_1 ... k_n over partitions of m into n positive parts.
/// Ties go to the lexicographically first non-increasing tuple.
inline SupProduct sup_product(int m, int n) {
    detail::require(n >= 1 && n <= m, "sup_product needs 1 <= n <= m");
    detail::require(m <= 120, "sup_product: m too large for exhaustive search");
    SupProduct best;
    std::vector<int> cur;
    std::vector<int> arg;
    auto rec = [&](auto&& self, int remaining, int slots, int cap, std::uint64_t prod) -> void {
        if (slots == 0) {
            if (remaining == 0 && prod > best.product) {
                best.product = prod;
                arg = cur;
            }
            return;
        }
        int lo = (remaining + slots - 1) / slots;
        int hi = std::min(cap, remaining - (slots - 1));
        for (int k = lo; k <= hi; ++k) {
            cur.push_back(k);
            self(self, remaining - k, slots - 1, k, prod * static_cast<std::uint64_t>(k));
            cur.pop_back();
        }
    };
    rec(rec, m, n, m, 1);
    best.witness = Partition(arg);
    best.bound = std::pow(static_cast<double>(m) / n, n);
    // product == m^n / n^n  <=>  product * n^n == m^n
    big_int lhs = big_int(best.product) * boost::multiprecision::pow(big_int(n), static_cast<unsigned>(n));
    big_int rhs = boost::multiprecision::pow(big_int(m), static_cast<unsigned>(n));
    detail::require(lhs <= rhs, "sup_product: integer maximum exceeds (m/n)^n");
    best.equality = lhs == rhs;
    return best;
}

/// e^{m/2} (em/n)^n C(m+n-1, n-1)
inline BoundReport bound_nguyen(int m, int n) {
    detail::require(n >= 1 && n <= m, "bound_nguyen needs 1 <= n <= m");
    double lv = 0.5 * m + n * (1.0 + std::log(static_cast<double>(m) / n)) + log_binomial(m + n - 1, n - 1);
    auto r = detail::make_report(BoundKind::nguyen, lv, balanced_partition(m, n));
    return r;
}

/// bound_sqrt at the partition maximizing m^m / prod k_i^{k_i}: exhaustive search for
/// m <= 40, the balanced split beyond (optimal by convexity of k log k).
inline BoundReport sqrt_bound_worst_partition(int m, int n) {
    detail::require(n >= 1 && n <= m, "sqrt_bound_worst_partition needs 1 <= n <= m");
    if (m > 40) return bound_sqrt(balanced_partition(m, n));
    std::optional<BoundReport> best;
    for (const auto& k : partitions_into(m, n)) {
        auto r = bound_sqrt(k);
        if (!best || r.log_value > best->log_value) best = r;
    }
    return *best;
}

/// Per-degree constant C(m, n) with (||L||_(n) / ||L^||)^{1/m} <= C sqrt(e):
/// e^{-1/2} min(sqrt(n), bound_nguyen^{1/m}). The square-root branch uses its
/// continuous envelope sqrt(n), the value at a perfectly balanced split.
inline double asymptotic_constant(int m, int n) {
    detail::require(n >= 3, "asymptotic_constant needs n >= 3 (n = 2 gives sqrt(2) directly)");
    detail::require(n <= m, "asymptotic_constant needs n <= m");
    double sqrt_branch = 0.5 * std::log(static_cast<double>(n));
    double nguyen_branch = bound_nguyen(m, n).log_value / m;
    return std::exp(std::min(sqrt_branch, nguyen_branch) - 0.5);
}

/// Same constant with the integer worst partition in the square-root branch.
inline double asymptotic_constant_integer(int m, int n) {
    detail::require(n >= 3 && n <= m, "asymptotic_constant_integer needs 3 <= n <= m");
    double sqrt_branch = sqrt_bound_worst_partition(m, n).log_value / m;
    double nguyen_branch = bound_nguyen(m, n).log_value / m;
    return std::exp(std::min(sqrt_branch, nguyen_branch) - 0.5);
}

// ---------------------------------------------------------------------------
// Tails
// ---------------------------------------------------------------------------

/// 2 exp(-x^2 / (2k))
inline double hoeffding_tail(int k, double x) {
    detail::require(k >= 1 && x >= 0.0, "hoeffding_tail needs k >= 1, x >= 0");
    return 2.0 * std::exp(-x * x / (2.0 * k));
}

/// P(|r_1 + ... + r_k| >= x) for independent Rademacher r_i.
inline double exact_rademacher_tail(int k, double x) {
    detail::require(k >= 1, "exact_rademacher_tail needs k >= 1");
    if (k > 30) throw cap_exceeded("exact_rademacher_tail: k exceeds 30");
    big_int count = 0;
    for (int j = 0; j <= k; ++j)
        if (std::abs(2 * j - k) >= x) count += exact_binomial(k, j);
    big_rational prob(count, big_int(1) << k);
    return prob.convert_to<double>();
}

// ---------------------------------------------------------------------------
// l_p spaces
// ---------------------------------------------------------------------------

/// sum k_i^q
inline double power_sum(const Partition& k, double q) {
    double s = 0.0;
    for (int ki : k.parts()) s += std::pow(static_cast<double>(ki), q);
    return s;
}

/// (m - n + 1)^q + n - 1, the largest power sum over n-part partitions of m for q >= 1.
inline double power_sum_coarse(const Partition& k, double q) {
    return std::pow(static_cast<double>(k.m() - k.n() + 1), q) + k.n() - 1;
}

namespace detail {

struct LpUpperParts {
    double log_first = 0.0;
    std::optional<double> log_second_without_factor; // second branch minus log of its m^q factor
    double q = 0.0;
};

inline LpUpperParts lp_upper_parts(const Partition& k, double p) {
    require_partition(k);
    require(p >= 1.0, "l_p bound needs p >= 1");
    const int m = k.m();
    const int n = k.n();
    LpUpperParts out;
    double n_pow = std::isinf(p) ? 0.0 : (m / p) * std::log(static_cast<double>(n));
    out.log_first = log_prod_k_pow_k(k) - log_factorial(m) + n_pow;
    if (std::isinf(p)) return out;
    if (p >= m) {
        out.q = p / 2.0;
        out.log_second_without_factor = std::log(p) + 0.5 * p * std::log(2.0) + log_gamma(0.5 * p) - log_factorial(m);
    } else {
        out.q = m / 2.0;
        out.log_second_without_factor = ((m - p) / p) * std::log(static_cast<double>(n)) + std::log(static_cast<double>(m)) +
                                        0.5 * m * std::log(2.0) + log_gamma(0.5 * m) - log_factorial(m);
    }
    return out;
}

} // namespace detail

/// p >= m: min((prod k^k / m!) n^{m/p}, p 2^{p/2} Gamma(p/2) m^{p/2} / m!)
/// p <  m: min((prod k^k / m!) n^{m/p}, n^{(m-p)/p} m 2^{m/2} Gamma(m/2) m^{m/2} / m!)
/// p = inf keeps the first branch with n^{m/p} -> 1.
inline BoundReport bound_lp_upper(const Partition& k, double p) {
    auto parts = detail::lp_upper_parts(k, p);
    double lv = parts.log_first;
    std::vector<std::pair<std::string, double>> terms{{"first", parts.log_first}};
    if (parts.log_second_without_factor) {
        double second = *parts.log_second_without_factor + parts.q * std::log(static_cast<double>(k.m()));
        terms.emplace_back("second", second);
        lv = std::min(lv, second);
    }
    auto r = detail::make_report(BoundKind::lp_upper, lv, k, p);
    r.terms = std::move(terms);
    return r;
}

/// bound_lp_upper with the factor m^q in the second branch replaced by the smallest of
/// m^q, (m-n+1)^q + n - 1, and the exact sum k_i^q (all valid for q >= 1).
inline BoundReport bound_lp_upper_sharp(const Partition& k, double p) {
    auto parts = detail::lp_upper_parts(k, p);
    double lv = parts.log_first;
    std::vector<std::pair<std::string, double>> terms{{"first", parts.log_first}};
    if (parts.log_second_without_factor) {
        const double q = parts.q;
        double f_m = q * std::log(static_cast<double>(k.m()));
        double f_coarse = std::log(power_sum_coarse(k, q));
        double f_exact = std::log(power_sum(k, q));
        double factor = std::min({f_m, f_coarse, f_exact});
        double second = *parts.log_second_without_factor + factor;
        terms.emplace_back("second", second);
        terms.emplace_back("factor_m_pow_q", f_m);
        terms.emplace_back("factor_coarse", f_coarse);
        terms.emplace_back("factor_exact", f_exact);
        lv = std::min(lv, second);
    }
    auto r = detail::make_report(BoundKind::lp_upper_sharp, lv, k, p);
    r.terms = std::move(terms);
    return r;
}

/// (prod k_i! / prod k_i^{k_i/p}) m^{m/p} / m!
inline BoundReport bound_lp_lower(const Partition& k, double p) {
    detail::require_partition(k);
    detail::require(p >= 1.0, "l_p bound needs p >= 1");
    const int m = k.m();
    double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    double lv = detail::log_prod_k_factorial(k) - inv_p * detail::log_prod_k_pow_k(k) + inv_p * detail::log_m_pow_m(m) -
                log_factorial(m);
    return detail::make_report(BoundKind::lp_lower, lv, k, p);
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& bound_catalog() {
    static const std::vector<std::string> names = {
        "problem73", "harris_complex", "sqrt", "new", "real_min", "x_lower",
        "nguyen", "lp_upper", "lp_upper_sharp", "lp_lower",
    };
    return names;
}

/// Evaluates a catalog entry by name. Generic entries ignore p; l_p entries need it.
inline BoundReport evaluate_bound(const std::string& name, const Partition& k, std::optional<double> p = std::nullopt) {
    if (name == "problem73") return bound_problem73(k.m());
    if (name == "harris_complex") return bound_harris_complex(k);
    if (name == "sqrt") return bound_sqrt(k);
    if (name == "new") return bound_new(k);
    if (name == "real_min") return bound_real_min(k);
    if (name == "x_lower") return bound_x_lower(k);
    if (name == "nguyen") return bound_nguyen(k.m(), k.n());
    detail::require(p.has_value(), "bound '" + name + "' needs a p value");
    if (name == "lp_upper") return bound_lp_upper(k, *p);
    if (name == "lp_upper_sharp") return bound_lp_upper_sharp(k, *p);
    if (name == "lp_lower") return bound_lp_lower(k, *p);
    throw invalid_input("unknown bound '" + name + "'");
}

} // namespace polest

#endif
