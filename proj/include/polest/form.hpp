#ifndef POLEST_FORM_HPP
#define POLEST_FORM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "combinatorics.hpp"
#include "error.hpp"

namespace polest {

using Vector = std::vector<double>;

/// Exponent vector alpha of a monomial x^alpha.
using MultiIndex = std::vector<int>;

namespace detail {

/// Neumaier-compensated accumulator; the result depends only on the order of add() calls.
class CompensatedSum {
public:
    void add(double v) noexcept {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace detail

// ---------------------------------------------------------------------------
// SymmetricForm
// ---------------------------------------------------------------------------

/// A symmetric m-linear form L on R^d, stored through the coefficients of its
/// polynomial L^(x) = sum_alpha c_alpha x^alpha. The induced symmetric tensor spreads
/// c_alpha uniformly over the orbit of alpha: T = c_alpha * alpha_1! ... alpha_d! / m!.
class SymmetricForm {
public:
    SymmetricForm() = default;

    SymmetricForm(int degree, int dim, const std::map<MultiIndex, double>& coeffs)
        : degree_(degree), dim_(dim) {
        detail::require(degree >= 0, "form degree must be nonnegative");
        detail::require(dim >= 1, "form dimension must be positive");
        exps_.reserve(coeffs.size() * static_cast<std::size_t>(dim));
        for (const auto& [alpha, c] : coeffs) {
            detail::require(static_cast<int>(alpha.size()) == dim,
                            "multi-index length differs from the form dimension");
            int total = 0;
            for (int e : alpha) {
                detail::require(e >= 0, "multi-index entries must be nonnegative");
                total += e;
            }
            detail::require(total == degree, "multi-index order differs from the form degree");
            detail::require(std::isfinite(c), "form coefficients must be finite");
            if (c == 0.0) continue;
            exps_.insert(exps_.end(), alpha.begin(), alpha.end());
            coeffs_.push_back(c);
        }
    }

    static SymmetricForm zero(int degree, int dim) { return SymmetricForm(degree, dim, {}); }

    static SymmetricForm constant(double c, int dim) {
        return SymmetricForm(0, dim, {{MultiIndex(static_cast<std::size_t>(dim), 0), c}});
    }

    /// L^(x) = x_1 x_2 ... x_m on R^m.
    static SymmetricForm product_form(int m) {
        detail::require(m >= 1, "product form needs m >= 1");
        return SymmetricForm(m, m, {{MultiIndex(static_cast<std::size_t>(m), 1), 1.0}});
    }

    /// Single monomial c x^alpha.
    static SymmetricForm monomial(const MultiIndex& alpha, double c = 1.0) {
        int m = 0;
        for (int e : alpha) m += e;
        return SymmetricForm(m, static_cast<int>(alpha.size()), {{alpha, c}});
    }

    [[nodiscard]] int degree() const noexcept { return degree_; }
    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }

    [[nodiscard]] std::span<const int> exponents(std::size_t term) const {
        return {exps_.data() + term * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    [[nodiscard]] double coefficient(std::size_t term) const { return coeffs_[term]; }

    /// c_alpha, or 0 when alpha carries no coefficient.
    [[nodiscard]] double coefficient(std::span<const int> alpha) const {
        std::size_t lo = 0, hi = coeffs_.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            auto e = exponents(mid);
            if (std::lexicographical_compare(e.begin(), e.end(), alpha.begin(), alpha.end()))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo < coeffs_.size() && std::ranges::equal(exponents(lo), alpha)) return coeffs_[lo];
        return 0.0;
    }

    [[nodiscard]] std::map<MultiIndex, double> coefficient_map() const {
        std::map<MultiIndex, double> out;
        for (std::size_t t = 0; t < size(); ++t) {
            auto e = exponents(t);
            out.emplace(MultiIndex(e.begin(), e.end()), coeffs_[t]);
        }
        return out;
    }

    [[nodiscard]] SymmetricForm scaled(double factor) const {
        SymmetricForm out = *this;
        if (factor == 0.0) return zero(degree_, dim_);
        for (auto& c : out.coeffs_) c *= factor;
        return out;
    }

    /// Polynomial of the partial derivative d/dx_j L^, a form of degree m - 1.
    [[nodiscard]] SymmetricForm partial(int j) const {
        detail::require(degree_ >= 1, "cannot differentiate a constant form");
        detail::require(j >= 0 && j < dim_, "partial derivative index out of range");
        std::map<MultiIndex, double> out;
        for (std::size_t t = 0; t < size(); ++t) {
            auto e = exponents(t);
            if (e[static_cast<std::size_t>(j)] == 0) continue;
            MultiIndex beta(e.begin(), e.end());
            double c = coeffs_[t] * beta[static_cast<std::size_t>(j)];
            --beta[static_cast<std::size_t>(j)];
            out[beta] += c;
        }
        return SymmetricForm(degree_ - 1, dim_, out);
    }

    [[nodiscard]] double abs_coefficient_sum() const noexcept {
        double s = 0.0;
        for (double c : coeffs_) s += std::abs(c);
        return s;
    }

    [[nodiscard]] int max_exponent() const noexcept {
        return exps_.empty() ? 0 : *std::max_element(exps_.begin(), exps_.end());
    }

    /// Entry T_{i_1 ... i_m} of the symmetric coefficient tensor (indices 0-based).
    [[nodiscard]] double tensor_entry(std::span<const int> indices) const {
        MultiIndex alpha(static_cast<std::size_t>(dim_), 0);
        for (int i : indices) ++alpha[static_cast<std::size_t>(i)];
        double c = coefficient(alpha);
        if (c == 0.0) return 0.0;
        double log_orbit = log_factorial(degree_);
        for (int e : alpha) log_orbit -= log_factorial(e);
        return c / std::exp(log_orbit);
    }

    friend bool operator==(const SymmetricForm&, const SymmetricForm&) = default;

private:
    int degree_ = 0;
    int dim_ = 1;
    std::vector<int> exps_;
    std::vector<double> coeffs_;
};

// ---------------------------------------------------------------------------
// Polynomial evaluation
// ---------------------------------------------------------------------------

/// Reusable evaluator for L^ and its gradient; owns scratch space, so one
/// instance per thread.
class PolyEvaluator {
public:
    explicit PolyEvaluator(const SymmetricForm& form)
        : form_(&form),
          stride_(form.max_exponent() + 1),
          powers_(static_cast<std::size_t>(form.dim() * stride_)),
          prefix_(static_cast<std::size_t>(form.dim()) + 1),
          suffix_(static_cast<std::size_t>(form.dim()) + 1) {}

    [[nodiscard]] const SymmetricForm& form() const noexcept { return *form_; }

    double value(std::span<const double> x) {
        fill_powers(x);
        const int d = form_->dim();
        double total = 0.0;
        for (std::size_t t = 0; t < form_->size(); ++t) {
            auto e = form_->exponents(t);
            double v = form_->coefficient(t);
            for (int j = 0; j < d; ++j) v *= pow_at(j, e[static_cast<std::size_t>(j)]);
            total += v;
        }
        return total;
    }

    /// Writes the gradient into grad (length d) and returns L^(x).
    double value_and_gradient(std::span<const double> x, std::span<double> grad) {
        fill_powers(x);
        const int d = form_->dim();
        std::fill(grad.begin(), grad.end(), 0.0);
        double total = 0.0;
        for (std::size_t t = 0; t < form_->size(); ++t) {
            auto e = form_->exponents(t);
            const double c = form_->coefficient(t);
            prefix_[0] = 1.0;
            for (int j = 0; j < d; ++j)
                prefix_[static_cast<std::size_t>(j) + 1] =
                    prefix_[static_cast<std::size_t>(j)] * pow_at(j, e[static_cast<std::size_t>(j)]);
            suffix_[static_cast<std::size_t>(d)] = 1.0;
            for (int j = d - 1; j >= 0; --j)
                suffix_[static_cast<std::size_t>(j)] =
                    suffix_[static_cast<std::size_t>(j) + 1] * pow_at(j, e[static_cast<std::size_t>(j)]);
            total += c * prefix_[static_cast<std::size_t>(d)];
            for (int j = 0; j < d; ++j) {
                int a = e[static_cast<std::size_t>(j)];
                if (a == 0) continue;
                grad[static_cast<std::size_t>(j)] += c * a * pow_at(j, a - 1) *
                                                     prefix_[static_cast<std::size_t>(j)] *
                                                     suffix_[static_cast<std::size_t>(j) + 1];
            }
        }
        return total;
    }

private:
    void fill_powers(std::span<const double> x) {
        const int d = form_->dim();
        for (int j = 0; j < d; ++j) {
            double* row = powers_.data() + static_cast<std::size_t>(j * stride_);
            row[0] = 1.0;
            for (int e = 1; e < stride_; ++e) row[e] = row[e - 1] * x[static_cast<std::size_t>(j)];
        }
    }
    [[nodiscard]] double pow_at(int j, int e) const noexcept {
        return powers_[static_cast<std::size_t>(j * stride_ + e)];
    }

    const SymmetricForm* form_;
    int stride_;
    std::vector<double> powers_;
    std::vector<double> prefix_;
    std::vector<double> suffix_;
};

/// L^(x) = sum_alpha c_alpha x^alpha.
inline double eval_poly(const SymmetricForm& form, std::span<const double> x) {
    detail::require(static_cast<int>(x.size()) == form.dim(), "eval_poly: vector length differs from form dimension");
    return PolyEvaluator(form).value(x);
}

inline Vector gradient(const SymmetricForm& form, std::span<const double> x) {
    detail::require(static_cast<int>(x.size()) == form.dim(), "gradient: vector length differs from form dimension");
    Vector g(x.size());
    PolyEvaluator(form).value_and_gradient(x, g);
    return g;
}

// ---------------------------------------------------------------------------
// Polarization
// ---------------------------------------------------------------------------

/// Values r_1(t), ..., r_m(t) of the Rademacher functions on one dyadic interval.
class SignPattern {
public:
    SignPattern(std::uint64_t mask, int m) : signs_(static_cast<std::size_t>(m)) {
        for (int i = 0; i < m; ++i) signs_[static_cast<std::size_t>(i)] = ((mask >> i) & 1u) ? -1 : 1;
    }
    [[nodiscard]] const std::vector<int>& signs() const noexcept { return signs_; }
    [[nodiscard]] int product() const noexcept {
        int p = 1;
        for (int s : signs_) p *= s;
        return p;
    }

private:
    std::vector<int> signs_;
};

struct PolarizeOptions {
    /// Allow m > max_degree (2^m sign patterns).
    bool override_caps = false;
    int max_degree = 24;
};

/// L(x_1, ..., x_m) = (1/m!) (1/2^m) sum_eps eps_1...eps_m L^(sum_i eps_i x_i),
/// the exact average over all 2^m sign patterns.
inline double polarize(const SymmetricForm& form, std::span<const Vector> args, const PolarizeOptions& options = {}) {
    const int m = form.degree();
    const int d = form.dim();
    detail::require(static_cast<int>(args.size()) == m, "polarize: expected exactly m argument vectors");
    for (const auto& x : args)
        detail::require(static_cast<int>(x.size()) == d, "polarize: argument length differs from form dimension");
    if (m > options.max_degree && !options.override_caps)
        throw cap_exceeded("polarize: degree " + std::to_string(m) + " exceeds the sign-pattern cap " +
                           std::to_string(options.max_degree));
    if (m == 0) return form.is_zero() ? 0.0 : form.coefficient(0);

    // eps and -eps contribute identical terms (both factors flip by (-1)^m),
    // so fix eps_1 = +1 and double.
    PolyEvaluator eval(form);
    Vector z(static_cast<std::size_t>(d));
    detail::CompensatedSum acc;
    const std::uint64_t half = std::uint64_t{1} << (m - 1);
    for (std::uint64_t mask = 0; mask < half; ++mask) {
        std::fill(z.begin(), z.end(), 0.0);
        int sign_product = 1;
        for (int i = 0; i < m; ++i) {
            const bool negative = i > 0 && ((mask >> (i - 1)) & 1u);
            const auto& x = args[static_cast<std::size_t>(i)];
            if (negative) {
                sign_product = -sign_product;
                for (int j = 0; j < d; ++j) z[static_cast<std::size_t>(j)] -= x[static_cast<std::size_t>(j)];
            } else {
                for (int j = 0; j < d; ++j) z[static_cast<std::size_t>(j)] += x[static_cast<std::size_t>(j)];
            }
        }
        double v = eval.value(z);
        acc.add(sign_product > 0 ? v : -v);
    }
    return acc.value() / std::exp(log_factorial(m) + (m - 1) * std::log(2.0));
}

inline double polarize(const SymmetricForm& form, std::initializer_list<Vector> args, const PolarizeOptions& options = {}) {
    std::vector<Vector> v(args);
    return polarize(form, std::span<const Vector>(v), options);
}

/// Repeats each vector according to the partition: (x_1 k_1 times, ..., x_n k_n times).
inline std::vector<Vector> expand_arguments(const Partition& partition, std::span<const Vector> vectors) {
    detail::require(static_cast<int>(vectors.size()) == partition.n(),
                    "expected one vector per partition part");
    std::vector<Vector> args;
    for (int i = 0; i < partition.n(); ++i)
        for (int r = 0; r < partition[static_cast<std::size_t>(i)]; ++r) args.push_back(vectors[static_cast<std::size_t>(i)]);
    return args;
}

/// L(x_1^{k_1} ... x_n^{k_n}) through the full polarization sum.
inline double eval_mixed(const SymmetricForm& form, const Partition& partition, std::span<const Vector> vectors,
                         const PolarizeOptions& options = {}) {
    detail::require(partition.m() == form.degree(), "eval_mixed: partition order differs from form degree");
    auto args = expand_arguments(partition, vectors);
    return polarize(form, std::span<const Vector>(args), options);
}

// ---------------------------------------------------------------------------
// Fast mixed evaluation
// ---------------------------------------------------------------------------

/// L(x_1^{k_1} ... x_n^{k_n}) via the polarization sum with signs grouped by block:
/// a block of k equal arguments contributes the sign sum k - 2a with weight
/// (-1)^a C(k, a). Needs prod (k_i + 1) / 2 evaluations of L^ instead of 2^{m-1}.
/// Multiplicities may be zero. Accurate for moderate degree (cancellation grows
/// roughly like e^m); use mixed_value_expanded for certification.
class GroupedMixedEvaluator {
public:
    GroupedMixedEvaluator(const SymmetricForm& form, std::vector<int> multiplicities)
        : eval_(form), mult_(std::move(multiplicities)) {
        int m = 0;
        for (int k : mult_) {
            detail::require(k >= 0, "multiplicities must be nonnegative");
            m += k;
        }
        detail::require(m == form.degree(), "multiplicities must sum to the form degree");
        const int n = static_cast<int>(mult_.size());
        scale_ = m == 0 ? 1.0 : 2.0 / std::exp(log_factorial(m) + m * std::log(2.0));
        // enumerate a in prod [0, k_i]; keep one representative of each {a, k - a} pair
        std::vector<int> a(static_cast<std::size_t>(n), 0);
        while (true) {
            std::vector<int> mirror(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) mirror[static_cast<std::size_t>(i)] = mult_[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(i)];
            if (m > 0 && a < mirror) {
                double w = 1.0;
                std::vector<double> s(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) {
                    const int k = mult_[static_cast<std::size_t>(i)], ai = a[static_cast<std::size_t>(i)];
                    w *= binomial(k, ai) * ((ai % 2) ? -1.0 : 1.0);
                    s[static_cast<std::size_t>(i)] = k - 2 * ai;
                }
                weights_.push_back(w);
                shifts_.insert(shifts_.end(), s.begin(), s.end());
            }
            int i = 0;
            while (i < n && a[static_cast<std::size_t>(i)] == mult_[static_cast<std::size_t>(i)]) a[static_cast<std::size_t>(i++)] = 0;
            if (i == n) break;
            ++a[static_cast<std::size_t>(i)];
        }
        z_.resize(static_cast<std::size_t>(form.dim()));
        g_.resize(static_cast<std::size_t>(form.dim()));
        if (m == 0) constant_ = form.is_zero() ? 0.0 : form.coefficient(0);
    }

    [[nodiscard]] std::size_t evaluations_per_call() const noexcept { return weights_.size(); }

    double value(std::span<const Vector> vectors) {
        if (weights_.empty()) return constant_;
        double total = 0.0;
        for (std::size_t t = 0; t < weights_.size(); ++t) {
            combine(t, vectors);
            total += weights_[t] * eval_.value(z_);
        }
        return scale_ * total;
    }

    /// Fills grads[i] with the gradient with respect to vector i.
    double value_and_gradient(std::span<const Vector> vectors, std::span<Vector> grads) {
        const std::size_t n = mult_.size();
        const int d = eval_.form().dim();
        for (auto& g : grads) std::fill(g.begin(), g.end(), 0.0);
        if (weights_.empty()) return constant_;
        double total = 0.0;
        for (std::size_t t = 0; t < weights_.size(); ++t) {
            combine(t, vectors);
            const double v = eval_.value_and_gradient(z_, g_);
            total += weights_[t] * v;
            for (std::size_t i = 0; i < n; ++i) {
                const double f = weights_[t] * shifts_[t * n + i];
                if (f == 0.0) continue;
                for (int j = 0; j < d; ++j) grads[i][static_cast<std::size_t>(j)] += f * g_[static_cast<std::size_t>(j)];
            }
        }
        for (auto& g : grads)
            for (auto& v : g) v *= scale_;
        return scale_ * total;
    }

private:
    void combine(std::size_t t, std::span<const Vector> vectors) {
        const std::size_t n = mult_.size();
        std::fill(z_.begin(), z_.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double s = shifts_[t * n + i];
            if (s == 0.0) continue;
            const auto& x = vectors[i];
            for (std::size_t j = 0; j < z_.size(); ++j) z_[j] += s * x[j];
        }
    }

    PolyEvaluator eval_;
    std::vector<int> mult_;
    std::vector<double> weights_;
    std::vector<double> shifts_;
    Vector z_, g_;
    double scale_ = 1.0;
    double constant_ = 0.0;
};

/// L(x_1^{k_1} ... x_n^{k_n}) = (prod k_i! / m!) * [s^k] L^(sum_i s_i x_i), computed by
/// multiplying out every monomial. No sign cancellation beyond what the data carries.
inline double mixed_value_expanded(const SymmetricForm& form, std::span<const int> multiplicities,
                                   std::span<const Vector> vectors) {
    detail::require(multiplicities.size() == vectors.size(), "one multiplicity per vector expected");
    const int d = form.dim();
    std::vector<int> k;
    std::vector<const Vector*> xs;
    int m = 0;
    for (std::size_t i = 0; i < multiplicities.size(); ++i) {
        detail::require(multiplicities[i] >= 0, "multiplicities must be nonnegative");
        detail::require(static_cast<int>(vectors[i].size()) == d, "vector length differs from form dimension");
        if (multiplicities[i] == 0) continue;
        k.push_back(multiplicities[i]);
        xs.push_back(&vectors[i]);
        m += multiplicities[i];
    }
    detail::require(m == form.degree(), "multiplicities must sum to the form degree");
    if (m == 0) return form.is_zero() ? 0.0 : form.coefficient(0);

    const std::size_t n = k.size();
    std::vector<std::size_t> stride(n);
    std::size_t size = 1;
    for (std::size_t i = 0; i < n; ++i) {
        stride[i] = size;
        size *= static_cast<std::size_t>(k[i]) + 1;
    }
    // flat index -> exponent tuple, precomputed
    std::vector<int> digits(size * n);
    for (std::size_t f = 0; f < size; ++f) {
        std::size_t r = f;
        for (std::size_t i = 0; i < n; ++i) {
            digits[f * n + i] = static_cast<int>(r % (static_cast<std::size_t>(k[i]) + 1));
            r /= static_cast<std::size_t>(k[i]) + 1;
        }
    }
    std::vector<double> cur(size), next(size);
    detail::CompensatedSum total;
    for (std::size_t t = 0; t < form.size(); ++t) {
        auto alpha = form.exponents(t);
        std::fill(cur.begin(), cur.end(), 0.0);
        cur[0] = 1.0;
        // entries nonzero only for total exponent == factors used so far
        for (int j = 0; j < d; ++j) {
            for (int r = 0; r < alpha[static_cast<std::size_t>(j)]; ++r) {
                std::fill(next.begin(), next.end(), 0.0);
                for (std::size_t f = 0; f < size; ++f) {
                    if (cur[f] == 0.0) continue;
                    for (std::size_t i = 0; i < n; ++i) {
                        if (digits[f * n + i] == k[i]) continue;
                        next[f + stride[i]] += cur[f] * (*xs[i])[static_cast<std::size_t>(j)];
                    }
                }
                std::swap(cur, next);
            }
        }
        total.add(form.coefficient(t) * cur[size - 1]);
    }
    double log_scale = -log_factorial(m);
    for (int ki : k) log_scale += log_factorial(ki);
    return total.value() * std::exp(log_scale);
}

inline double mixed_value_expanded(const SymmetricForm& form, const Partition& partition, std::span<const Vector> vectors) {
    return mixed_value_expanded(form, std::span<const int>(partition.parts()), vectors);
}

// ---------------------------------------------------------------------------
// Dense-tensor oracle
// ---------------------------------------------------------------------------

struct OracleCaps {
    int max_degree = 8;
    int max_dim = 6;
};

/// Contracts the materialized symmetric tensor T with x_1 (x) ... (x) x_m by
/// enumerating all d^m index tuples. Independent of the polarization code path.
inline double eval_direct_oracle(const SymmetricForm& form, std::span<const Vector> args, const OracleCaps& caps = {}) {
    const int m = form.degree();
    const int d = form.dim();
    if (m > caps.max_degree || d > caps.max_dim)
        throw cap_exceeded("eval_direct_oracle: (m, d) = (" + std::to_string(m) + ", " + std::to_string(d) +
                           ") exceeds oracle caps");
    detail::require(static_cast<int>(args.size()) == m, "eval_direct_oracle: expected exactly m argument vectors");
    for (const auto& x : args)
        detail::require(static_cast<int>(x.size()) == d, "eval_direct_oracle: argument length differs from form dimension");
    if (m == 0) return form.is_zero() ? 0.0 : form.coefficient(0);

    std::size_t count = 1;
    for (int i = 0; i < m; ++i) count *= static_cast<std::size_t>(d);
    std::vector<double> tensor(count);
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    for (std::size_t f = 0; f < count; ++f) {
        tensor[f] = form.tensor_entry(idx);
        for (int pos = m - 1; pos >= 0; --pos) {
            if (++idx[static_cast<std::size_t>(pos)] < d) break;
            idx[static_cast<std::size_t>(pos)] = 0;
        }
    }
    detail::CompensatedSum acc;
    std::fill(idx.begin(), idx.end(), 0);
    for (std::size_t f = 0; f < count; ++f) {
        double v = tensor[f];
        if (v != 0.0) {
            for (int l = 0; l < m; ++l)
                v *= args[static_cast<std::size_t>(l)][static_cast<std::size_t>(idx[static_cast<std::size_t>(l)])];
            acc.add(v);
        }
        for (int pos = m - 1; pos >= 0; --pos) {
            if (++idx[static_cast<std::size_t>(pos)] < d) break;
            idx[static_cast<std::size_t>(pos)] = 0;
        }
    }
    return acc.value();
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

/// {"m": int, "d": int, "coeffs": [{"alpha": [int, ...], "c": float}, ...]}
inline nlohmann::json to_json(const SymmetricForm& form) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (std::size_t t = 0; t < form.size(); ++t) {
        auto e = form.exponents(t);
        coeffs.push_back({{"alpha", std::vector<int>(e.begin(), e.end())}, {"c", form.coefficient(t)}});
    }
    return {{"m", form.degree()}, {"d", form.dim()}, {"coeffs", coeffs}};
}

inline SymmetricForm form_from_json(const nlohmann::json& j) {
    try {
        detail::require(j.is_object(), "form JSON must be an object");
        const int m = j.at("m").get<int>();
        const int d = j.at("d").get<int>();
        std::map<MultiIndex, double> coeffs;
        for (const auto& entry : j.at("coeffs")) {
            auto alpha = entry.at("alpha").get<MultiIndex>();
            const double c = entry.at("c").get<double>();
            detail::require(coeffs.emplace(alpha, c).second, "duplicate multi-index in form JSON");
        }
        return SymmetricForm(m, d, coeffs);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("malformed form JSON: ") + e.what());
    }
}

} // namespace polest

#endif
