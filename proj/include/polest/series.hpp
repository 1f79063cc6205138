#ifndef POLEST_SERIES_HPP
#define POLEST_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "combinatorics.hpp"
#include "error.hpp"
#include "form.hpp"
#include "lp_space.hpp"
#include "norms.hpp"
#include "rng.hpp"

namespace polest {

/// Truncated power series F(x) = sum_{m=0}^{M} P_m(x - a), term m of degree m.
class PowerSeries {
public:
    PowerSeries(std::vector<SymmetricForm> terms, LpSpace space, Vector center = {},
                std::optional<double> declared_rho = std::nullopt)
        : terms_(std::move(terms)), space_(space), center_(std::move(center)), declared_rho_(declared_rho) {
        detail::require(!terms_.empty(), "power series needs at least one term");
        for (std::size_t m = 0; m < terms_.size(); ++m) {
            detail::require(terms_[m].degree() == static_cast<int>(m), "series term m must have degree m");
            detail::require(terms_[m].dim() == space_.dim(), "series term dimension differs from the space");
        }
        if (center_.empty()) center_.assign(static_cast<std::size_t>(space_.dim()), 0.0);
        detail::require(static_cast<int>(center_.size()) == space_.dim(), "series center dimension differs from the space");
        if (declared_rho_) detail::require(*declared_rho_ > 0.0, "declared radius must be positive");
    }

    /// sum_{m=0}^{M} (c x)^m in one dimension, times an optional constant.
    static PowerSeries geometric(double c, int max_degree, double scale = 1.0) {
        std::vector<SymmetricForm> terms;
        for (int m = 0; m <= max_degree; ++m)
            terms.push_back(SymmetricForm::monomial({m}, scale * std::pow(c, m)));
        return PowerSeries(std::move(terms), LpSpace(2.0, 1));
    }

    [[nodiscard]] const std::vector<SymmetricForm>& terms() const noexcept { return terms_; }
    [[nodiscard]] const SymmetricForm& term(int m) const { return terms_.at(static_cast<std::size_t>(m)); }
    [[nodiscard]] int max_degree() const noexcept { return static_cast<int>(terms_.size()) - 1; }
    [[nodiscard]] int dim() const noexcept { return space_.dim(); }
    [[nodiscard]] const LpSpace& space() const noexcept { return space_; }
    [[nodiscard]] const Vector& center() const noexcept { return center_; }
    [[nodiscard]] std::optional<double> declared_rho() const noexcept { return declared_rho_; }

    [[nodiscard]] int nonzero_terms() const {
        return static_cast<int>(std::count_if(terms_.begin(), terms_.end(), [](const auto& t) { return !t.is_zero(); }));
    }

private:
    std::vector<SymmetricForm> terms_;
    LpSpace space_;
    Vector center_;
    std::optional<double> declared_rho_;
};

inline nlohmann::json to_json(const PowerSeries& s) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : s.terms()) terms.push_back(to_json(t));
    nlohmann::json j = {{"space", {{"p", p_to_json(s.space().p())}, {"d", s.dim()}}}, {"terms", terms}};
    if (std::any_of(s.center().begin(), s.center().end(), [](double v) { return v != 0.0; })) j["center"] = s.center();
    if (s.declared_rho()) j["rho"] = *s.declared_rho();
    return j;
}

/// {"space": {"p": float | "inf", "d": int}, "terms": [form, ...], "center"?: [...], "rho"?: float}
inline PowerSeries series_from_json(const nlohmann::json& j) {
    try {
        detail::require(j.is_object(), "series JSON must be an object");
        const auto& sp = j.at("space");
        LpSpace space(p_from_json(sp.at("p")), sp.at("d").get<int>());
        std::vector<SymmetricForm> terms;
        for (const auto& t : j.at("terms")) terms.push_back(form_from_json(t));
        Vector center;
        if (j.contains("center")) center = j.at("center").get<Vector>();
        std::optional<double> rho;
        if (j.contains("rho")) rho = p_from_json(j.at("rho"));
        return PowerSeries(std::move(terms), space, std::move(center), rho);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("malformed series JSON: ") + e.what());
    }
}

namespace detail {

inline Vector minus(std::span<const double> a, std::span<const double> b) {
    Vector out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
    return out;
}

/// Degrees of the trailing half window [ceil(M/2), M], never including 0.
inline std::vector<int> trailing_window(int max_degree) {
    std::vector<int> out;
    for (int m = std::max(1, (max_degree + 1) / 2); m <= max_degree; ++m) out.push_back(m);
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct SeriesValue {
    double value = 0.0;
    double tail_estimate = 0.0;
    bool divergent = false;
};

/// Partial sum at x plus a geometric tail estimate t_b r / (1 - r), where r is the
/// decay rate of |P_m(x - a)| across the trailing half of degrees.
inline SeriesValue eval_series(const PowerSeries& s, std::span<const double> x) {
    detail::require(static_cast<int>(x.size()) == s.dim(), "eval_series: vector length differs from series dimension");
    Vector z = detail::minus(x, s.center());
    detail::CompensatedSum sum;
    std::vector<double> mags(s.terms().size());
    for (std::size_t m = 0; m < s.terms().size(); ++m) {
        double v = eval_poly(s.terms()[m], z);
        sum.add(v);
        mags[m] = std::abs(v);
    }
    SeriesValue out;
    out.value = sum.value();
    int first = -1, last = -1;
    for (int m : detail::trailing_window(s.max_degree())) {
        if (mags[static_cast<std::size_t>(m)] == 0.0) continue;
        if (first < 0) first = m;
        last = m;
    }
    if (last < 0) return out;
    const double tb = mags[static_cast<std::size_t>(last)];
    if (first == last) {
        out.tail_estimate = tb;
        return out;
    }
    const double r = std::pow(tb / mags[static_cast<std::size_t>(first)], 1.0 / (last - first));
    if (r < 1.0) {
        out.tail_estimate = tb * r / (1.0 - r);
    } else {
        out.divergent = true;
        out.tail_estimate = kInfinity;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Radius of uniform convergence
// ---------------------------------------------------------------------------

enum class RadiusMethod { truncated_limsup, exact_geometric, declared, exact_polynomial };

inline std::string to_string(RadiusMethod m) {
    switch (m) {
    case RadiusMethod::truncated_limsup: return "truncated-limsup";
    case RadiusMethod::exact_geometric: return "exact-geometric";
    case RadiusMethod::declared: return "declared";
    case RadiusMethod::exact_polynomial: return "exact-polynomial";
    }
    return "unknown";
}

/// rho = 1 / limsup ||P_m||^{1/m}. Norms are certified lower bounds, so a
/// truncated-limsup rho is an upper estimate of the true radius.
struct RadiusEstimate {
    double rho = kInfinity;
    RadiusMethod method = RadiusMethod::truncated_limsup;
    int tail_window = 0;
    std::vector<int> degrees;         // window degrees with norm estimates
    std::vector<NormEstimate> norms;  // ||P_m|| estimates over the window
    int limsup_degree = -1;           // degree realizing the max of ||P_m||^{1/m}
};

namespace detail {

/// ||c x^m|| = |c| on any one-dimensional l_p.
inline NormEstimate poly_norm_any(const SymmetricForm& form, const LpSpace& space, const NormOptions& options) {
    if (form.dim() == 1) {
        NormEstimate e;
        e.value = form.is_zero() ? 0.0 : std::abs(form.coefficient(0));
        e.partition = Partition({form.degree()});
        e.seed = options.seed;
        e.witness = {{1.0}};
        return e;
    }
    return estimate_poly_norm(form, space, options);
}

inline NormOptions term_options(const NormOptions& base, int m) {
    NormOptions o = base;
    o.seed = derive_seed(base.seed, static_cast<std::uint64_t>(m));
    return o;
}

/// Constant ratio c_m / c_{m-1} across the trailing window of a 1-D series, if any.
inline std::optional<double> geometric_ratio(const PowerSeries& s) {
    if (s.dim() != 1) return std::nullopt;
    auto window = trailing_window(s.max_degree());
    std::optional<double> ratio;
    for (int m : window) {
        const auto& a = s.term(m - 1);
        const auto& b = s.term(m);
        if (a.is_zero() || b.is_zero()) return std::nullopt;
        double r = b.coefficient(0) / a.coefficient(0);
        if (!ratio)
            ratio = r;
        else if (std::abs(r - *ratio) > 1e-12 * std::abs(*ratio))
            return std::nullopt;
    }
    return ratio;
}

} // namespace detail

inline RadiusEstimate radius_uniform(const PowerSeries& s, const NormOptions& options = {}) {
    RadiusEstimate est;
    auto window = detail::trailing_window(s.max_degree());
    est.tail_window = static_cast<int>(window.size());
    if (s.declared_rho()) {
        est.rho = *s.declared_rho();
        est.method = RadiusMethod::declared;
        return est;
    }
    if (s.nonzero_terms() < 8) {
        est.rho = kInfinity;
        est.method = RadiusMethod::exact_polynomial;
        return est;
    }
    if (auto r = detail::geometric_ratio(s); r && s.max_degree() >= 2) {
        est.rho = 1.0 / std::abs(*r);
        est.method = RadiusMethod::exact_geometric;
    } else {
        est.method = RadiusMethod::truncated_limsup;
    }
    double limsup = 0.0;
    for (int m : window) {
        auto e = detail::poly_norm_any(s.term(m), s.space(), detail::term_options(options, m));
        double root = std::pow(e.value, 1.0 / m);
        if (root > limsup) {
            limsup = root;
            est.limsup_degree = m;
        }
        est.degrees.push_back(m);
        est.norms.push_back(std::move(e));
    }
    if (est.method == RadiusMethod::truncated_limsup) est.rho = limsup > 0.0 ? 1.0 / limsup : kInfinity;
    return est;
}

struct RhoBar {
    double rho = kInfinity;
    double empirical = kInfinity;
    double floor = kInfinity;
    double reported = kInfinity;
    int degree = -1; // degree used for the empirical ratio
};

/// rho_bar = rho limsup (||L^_m|| / ||L_m||_(2))^{1/m}. The empirical value uses the degree
/// realizing the limsup of ||L^_m||^{1/m} and a reduced budget for the mixed norm (pooled
/// with the polynomial witness, so the ratio is at most 1). The floor rho / sqrt(2) is
/// the guaranteed value; the reported value is the larger of the two.
inline RhoBar rho_bar(const PowerSeries& s, const NormOptions& options = {}) {
    auto rad = radius_uniform(s, options);
    RhoBar out;
    out.rho = rad.rho;
    out.floor = rad.rho / std::numbers::sqrt2;
    if (std::isinf(rad.rho)) {
        out.empirical = out.reported = kInfinity;
        return out;
    }
    out.empirical = rad.rho;
    if (s.dim() > 1 && rad.limsup_degree >= 2) {
        const std::size_t idx = static_cast<std::size_t>(
            std::find(rad.degrees.begin(), rad.degrees.end(), rad.limsup_degree) - rad.degrees.begin());
        const int m = rad.limsup_degree;
        const auto& poly = rad.norms[idx];
        NormOptions reduced = detail::term_options(options, m);
        reduced.budget = std::max(8, options.budget / 4);
        NormEstimate pool[] = {poly};
        auto mixed = estimate_mixed_norm(s.term(m), 2, s.space(), reduced, pool);
        if (mixed.value > 0.0) out.empirical = rad.rho * std::pow(poly.value / mixed.value, 1.0 / m);
        out.degree = m;
    } else {
        out.degree = rad.limsup_degree;
    }
    out.reported = std::max(out.empirical, out.floor);
    return out;
}

// ---------------------------------------------------------------------------
// Re-expansion
// ---------------------------------------------------------------------------

/// F(x) = sum_k A_k(x - y) with A_k(z) = sum_{m >= k} C(m, k) L_m((y - a)^{m-k}, z^k).
struct ReexpansionPlan {
    Vector center;
    double rho_bar = kInfinity;
    double valid_ball_radius = kInfinity;
    std::vector<SymmetricForm> coefficients;
};

namespace detail {

/// Collects, for each k <= K, the k-homogeneous part of P_m(y + z) from every term.
/// Monomial x^alpha at y + z expands to sum_{beta <= alpha} prod C(alpha_j, beta_j) y^{alpha - beta} z^beta.
inline std::vector<SymmetricForm> reexpand_coefficients(const PowerSeries& s, std::span<const double> shift, int K) {
    const int d = s.dim();
    std::vector<std::map<MultiIndex, CompensatedSum>> acc(static_cast<std::size_t>(K) + 1);
    MultiIndex beta(static_cast<std::size_t>(d));
    for (const auto& form : s.terms()) {
        for (std::size_t t = 0; t < form.size(); ++t) {
            auto alpha = form.exponents(t);
            const double c = form.coefficient(t);
            std::fill(beta.begin(), beta.end(), 0);
            while (true) {
                int order = 0;
                for (int b : beta) order += b;
                if (order <= K) {
                    double w = c;
                    for (int j = 0; j < d; ++j) {
                        const int a = alpha[static_cast<std::size_t>(j)], b = beta[static_cast<std::size_t>(j)];
                        if (a == b) continue;
                        w *= binomial(a, b) * std::pow(shift[static_cast<std::size_t>(j)], a - b);
                    }
                    if (w != 0.0) acc[static_cast<std::size_t>(order)][beta].add(w);
                }
                int j = 0;
                while (j < d && beta[static_cast<std::size_t>(j)] == alpha[static_cast<std::size_t>(j)]) beta[static_cast<std::size_t>(j++)] = 0;
                if (j == d) break;
                ++beta[static_cast<std::size_t>(j)];
            }
        }
    }
    std::vector<SymmetricForm> out;
    for (int k = 0; k <= K; ++k) {
        std::map<MultiIndex, double> coeffs;
        for (const auto& [b, v] : acc[static_cast<std::size_t>(k)]) coeffs.emplace(b, v.value());
        out.emplace_back(k, d, coeffs);
    }
    return out;
}

} // namespace detail

/// Re-expansion at y up to degree K, given a known rho_bar.
inline ReexpansionPlan reexpand(const PowerSeries& s, std::span<const double> y, int K, double rho_bar_value) {
    detail::require(static_cast<int>(y.size()) == s.dim(), "reexpand: center length differs from series dimension");
    detail::require(K >= 0, "reexpand: degree cap must be nonnegative");
    Vector shift = detail::minus(y, s.center());
    const double r = s.space().norm(shift);
    if (!(r < rho_bar_value))
        throw invalid_input("reexpand: ||y - a|| = " + std::to_string(r) + " is not below rho_bar = " + std::to_string(rho_bar_value));
    ReexpansionPlan plan;
    plan.center.assign(y.begin(), y.end());
    plan.rho_bar = rho_bar_value;
    plan.valid_ball_radius = rho_bar_value - r;
    plan.coefficients = detail::reexpand_coefficients(s, shift, K);
    return plan;
}

inline ReexpansionPlan reexpand(const PowerSeries& s, std::span<const double> y, int K, const NormOptions& options = {}) {
    return reexpand(s, y, K, rho_bar(s, options).reported);
}

/// sum_k A_k(x - y)
inline double eval_plan(const ReexpansionPlan& plan, std::span<const double> x) {
    Vector z = detail::minus(x, plan.center);
    detail::CompensatedSum sum;
    for (const auto& a : plan.coefficients) sum.add(eval_poly(a, z));
    return sum.value();
}

struct AnalyticityReport {
    double direct = 0.0;
    double reexpanded = 0.0;
    double difference = 0.0;
    double allowed = 0.0;
    double norm_majorant = 0.0;        // sum_{m>K} ||L_m||_(2) r^m, r = ||y - a|| + ||x - y||
    double coefficient_majorant = 0.0; // sum_{m>K} sum |c_alpha| prod (|y_j - a_j| + |x_j - y_j|)^alpha_j
    bool tail_dominated = false;
    bool passed = false;
    std::string message;
};

/// Compares F(x) with sum_{k<=K} A_k(x - y). Passes when the difference is within
/// tolerance max(1, |F|) plus the norm majorant of the dropped tail; the observed
/// difference is also checked against the certified coefficient majorant.
inline AnalyticityReport verify_analyticity(const PowerSeries& s, std::span<const double> y, std::span<const double> x,
                                            double tolerance, int K, double rho_bar_value,
                                            const NormOptions& options = {}) {
    detail::require(static_cast<int>(x.size()) == s.dim(), "verify_analyticity: x length differs from series dimension");
    Vector shift = detail::minus(y, s.center());
    Vector z = detail::minus(x, y);
    const double r = s.space().norm(shift) + s.space().norm(z);
    if (!(r < rho_bar_value))
        throw invalid_input("verify_analyticity: ||y - a|| + ||x - y|| = " + std::to_string(r) +
                            " is not below rho_bar = " + std::to_string(rho_bar_value));
    auto plan = reexpand(s, y, K, rho_bar_value);
    AnalyticityReport rep;
    rep.direct = eval_series(s, x).value;
    rep.reexpanded = eval_plan(plan, x);
    rep.difference = std::abs(rep.direct - rep.reexpanded);
    for (int m = K + 1; m <= s.max_degree(); ++m) {
        const auto& form = s.term(m);
        if (form.is_zero()) continue;
        for (std::size_t t = 0; t < form.size(); ++t) {
            auto alpha = form.exponents(t);
            double v = std::abs(form.coefficient(t));
            for (int j = 0; j < s.dim(); ++j)
                v *= std::pow(std::abs(shift[static_cast<std::size_t>(j)]) + std::abs(z[static_cast<std::size_t>(j)]),
                              alpha[static_cast<std::size_t>(j)]);
            rep.coefficient_majorant += v;
        }
        double norm2 = 0.0;
        if (s.dim() == 1) {
            norm2 = std::abs(form.coefficient(0));
        } else {
            NormOptions o = detail::term_options(options, m);
            o.budget = std::max(8, options.budget / 4);
            norm2 = estimate_mixed_norm(form, std::min(2, m), s.space(), o).value;
        }
        rep.norm_majorant += norm2 * std::pow(r, m);
    }
    const double scale = tolerance * std::max(1.0, std::abs(rep.direct));
    rep.allowed = scale + rep.norm_majorant;
    rep.tail_dominated = rep.difference <= rep.coefficient_majorant + scale;
    rep.passed = rep.difference <= rep.allowed && rep.tail_dominated;
    if (!rep.passed)
        rep.message = rep.difference > rep.allowed ? "re-expansion differs from the direct sum beyond tolerance plus tail"
                                                   : "observed tail exceeds the coefficient majorant";
    return rep;
}

inline AnalyticityReport verify_analyticity(const PowerSeries& s, std::span<const double> y, std::span<const double> x,
                                            double tolerance, int K, const NormOptions& options = {}) {
    return verify_analyticity(s, y, x, tolerance, K, rho_bar(s, options).reported, options);
}

// ---------------------------------------------------------------------------
// Derivative series
// ---------------------------------------------------------------------------

/// Taylor series of D^n F: D^n F(x)[v_1..v_n] = sum_m n! C(m+n, n) L_{m+n}((x - a)^m, v_1, ..., v_n).
/// terms[m] stores n! C(m+n, n) L_{m+n} as a form of degree m + n; n slots are reserved for
/// the directions.
struct DerivativeSeries {
    int n = 1;
    std::vector<SymmetricForm> terms;
    Vector center;
    LpSpace space{2.0, 1};
    double floor_factor = std::numbers::sqrt2;

    /// Guaranteed radius floor from the series radius rho.
    [[nodiscard]] double radius_floor(double rho) const { return rho / floor_factor; }

    [[nodiscard]] double evaluate(std::span<const double> x, std::span<const Vector> directions) const {
        detail::require(static_cast<int>(directions.size()) == n, "derivative series needs exactly n directions");
        Vector z = detail::minus(x, center);
        std::vector<Vector> vecs{z};
        vecs.insert(vecs.end(), directions.begin(), directions.end());
        std::vector<int> mult(static_cast<std::size_t>(n) + 1, 1);
        detail::CompensatedSum sum;
        for (std::size_t m = 0; m < terms.size(); ++m) {
            if (terms[m].is_zero()) continue;
            mult[0] = static_cast<int>(m);
            sum.add(mixed_value_expanded(terms[m], mult, vecs));
        }
        return sum.value();
    }
};

/// sqrt(2) for n <= 2, sqrt(e) for n >= 3.
inline double derivative_floor_factor(int n) { return n <= 2 ? std::numbers::sqrt2 : std::sqrt(std::numbers::e); }

inline DerivativeSeries dn_taylor(const PowerSeries& s, int n) {
    detail::require(n >= 1, "dn_taylor needs n >= 1");
    detail::require(n <= s.max_degree(), "dn_taylor: n exceeds the truncation degree");
    DerivativeSeries out;
    out.n = n;
    out.center = s.center();
    out.space = s.space();
    out.floor_factor = derivative_floor_factor(n);
    const double nfact = factorial(n);
    for (int m = 0; m + n <= s.max_degree(); ++m)
        out.terms.push_back(s.term(m + n).scaled(nfact * binomial(m + n, n)));
    return out;
}

struct FdReport {
    double series_value = 0.0;
    double fd_value = 0.0;
    double error = 0.0;      // |fd - series| / max(1, |series|)
    double tolerance = 0.0;
    double h = 0.0;
    bool passed = false;
};

/// Default step and tolerance for n = 1, 2, 3 central differences.
inline double fd_default_step(int n) { return n == 1 ? 1e-4 : n == 2 ? 1e-3 : 2e-3; }
inline double fd_default_tolerance(int n) { return n == 1 ? 1e-5 : n == 2 ? 1e-4 : 1e-3; }

/// (1 / (2h)^n) sum_{eps in {-1,1}^n} prod eps F(x + h sum eps_i v_i); error O(h^2).
inline double central_difference_raw(const PowerSeries& s, std::span<const double> x, std::span<const Vector> directions,
                                     double h) {
    const int n = static_cast<int>(directions.size());
    detail::CompensatedSum sum;
    Vector p(x.begin(), x.end());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::copy(x.begin(), x.end(), p.begin());
        int sign = 1;
        for (int i = 0; i < n; ++i) {
            const double e = ((mask >> i) & 1u) ? -1.0 : 1.0;
            if (e < 0) sign = -sign;
            for (std::size_t j = 0; j < p.size(); ++j) p[j] += e * h * directions[static_cast<std::size_t>(i)][j];
        }
        double v = eval_series(s, p).value;
        sum.add(sign > 0 ? v : -v);
    }
    return sum.value() / std::pow(2.0 * h, n);
}

/// Central difference at h and h/2 combined by one Richardson step; the error expansion
/// is even in h, so the result is O(h^4).
inline double central_difference(const PowerSeries& s, std::span<const double> x, std::span<const Vector> directions, double h) {
    const double coarse = central_difference_raw(s, x, directions, h);
    const double fine = central_difference_raw(s, x, directions, 0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

inline FdReport dn_check_fd(const PowerSeries& s, int n, std::span<const double> x, std::span<const Vector> directions,
                            double h = 0.0, double tolerance = 0.0) {
    detail::require(n >= 1 && n <= 3, "dn_check_fd supports 1 <= n <= 3");
    detail::require(static_cast<int>(directions.size()) == n, "dn_check_fd needs n directions");
    FdReport rep;
    rep.h = h > 0.0 ? h : fd_default_step(n);
    rep.tolerance = tolerance > 0.0 ? tolerance : fd_default_tolerance(n);
    rep.series_value = dn_taylor(s, n).evaluate(x, directions);
    rep.fd_value = central_difference(s, x, directions, rep.h);
    rep.error = std::abs(rep.fd_value - rep.series_value) / std::max(1.0, std::abs(rep.series_value));
    rep.passed = rep.error <= rep.tolerance;
    return rep;
}

/// Random unit directions (Euclidean) from a seeded stream.
inline std::vector<Vector> random_directions(int n, int d, std::uint64_t seed) {
    std::vector<Vector> out;
    for (int i = 0; i < n; ++i) {
        Stream rng(seed, static_cast<std::uint64_t>(i));
        out.push_back(LpSpace(2.0, d).normalize(rng.normal_vector(d)));
    }
    return out;
}

inline FdReport dn_check_fd(const PowerSeries& s, int n, std::span<const double> x, std::uint64_t seed = 0) {
    auto dirs = random_directions(n, s.dim(), seed);
    return dn_check_fd(s, n, x, dirs);
}

struct TaylorCoefficientReport {
    int k = 0;
    double coefficient_value = 0.0; // A_k(v)
    double series_value = 0.0;      // D^k F(y)[v, ..., v] / k! from the derivative series
    double fd_value = 0.0;          // the same by central differences
    double error = 0.0;             // max of the two relative discrepancies
    double tolerance = 0.0;
    bool passed = false;
};

/// A_k(v) = D^k F(y)[v, ..., v] / k!, checked against both the derivative series and
/// central differences (k <= 3).
inline TaylorCoefficientReport check_taylor_coefficient(const PowerSeries& s, std::span<const double> y, int k,
                                                        std::span<const double> v, double rho_bar_value) {
    detail::require(k >= 1 && k <= 3, "check_taylor_coefficient supports 1 <= k <= 3");
    TaylorCoefficientReport rep;
    rep.k = k;
    auto plan = reexpand(s, y, k, rho_bar_value);
    rep.coefficient_value = eval_poly(plan.coefficients[static_cast<std::size_t>(k)], v);
    std::vector<Vector> dirs(static_cast<std::size_t>(k), Vector(v.begin(), v.end()));
    const double kf = factorial(k);
    rep.series_value = dn_taylor(s, k).evaluate(y, dirs) / kf;
    rep.fd_value = central_difference(s, y, dirs, fd_default_step(k)) / kf;
    const double scale = std::max(1.0, std::abs(rep.coefficient_value));
    rep.error = std::max(std::abs(rep.series_value - rep.coefficient_value), std::abs(rep.fd_value - rep.coefficient_value)) / scale;
    rep.tolerance = fd_default_tolerance(k);
    rep.passed = rep.error <= rep.tolerance;
    return rep;
}

} // namespace polest

#endif
