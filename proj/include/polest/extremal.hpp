#ifndef POLEST_EXTREMAL_HPP
#define POLEST_EXTREMAL_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "combinatorics.hpp"
#include "error.hpp"
#include "form.hpp"
#include "lp_space.hpp"
#include "norms.hpp"

namespace polest {

/// The product form x_1 ... x_m on l_p^m together with block vectors
/// y_i = k_i^{-1/p} (sum of e_j over block i). generic marks the normed-space
/// variant, compared against the generic lower bound rather than the l_p one.
struct ExtremalInstance {
    SymmetricForm form;
    std::vector<Vector> vectors;
    LpSpace space{1.0, 1};
    Partition partition;
    double attained_value = 0.0;
    double analytic_poly_norm = 0.0;
    bool generic = false;

    [[nodiscard]] double ratio() const { return attained_value / analytic_poly_norm; }

    /// The lower bound the construction is meant to attain.
    [[nodiscard]] BoundReport lower_bound() const {
        return generic ? bound_x_lower(partition) : bound_lp_lower(partition, space.p());
    }

    /// attained_value recomputed through the polarization sum.
    [[nodiscard]] double recompute_attained(const PolarizeOptions& options = {}) const {
        return eval_mixed(form, partition, vectors, options);
    }
};

inline ExtremalInstance build_extremal_lp(const Partition& partition, double p) {
    detail::require(!partition.empty(), "extremal construction needs a nonempty partition");
    detail::require(p >= 1.0, "extremal construction needs p >= 1");
    if (std::isinf(p)) throw invalid_input("extremal construction is undefined for p = inf");
    const int m = partition.m();
    ExtremalInstance inst;
    inst.form = SymmetricForm::product_form(m);
    inst.space = LpSpace(p, m);
    inst.partition = partition;
    int offset = 0;
    double log_attained = -log_factorial(m);
    for (int k : partition.parts()) {
        Vector y(static_cast<std::size_t>(m), 0.0);
        const double entry = std::pow(static_cast<double>(k), -1.0 / p);
        for (int j = 0; j < k; ++j) y[static_cast<std::size_t>(offset + j)] = entry;
        offset += k;
        inst.vectors.push_back(std::move(y));
        log_attained += log_factorial(k) - (k / p) * std::log(static_cast<double>(k));
    }
    inst.attained_value = std::exp(log_attained);
    inst.analytic_poly_norm = std::exp(-(m / p) * std::log(static_cast<double>(m)));
    return inst;
}

inline ExtremalInstance build_extremal_x(const Partition& partition) {
    auto inst = build_extremal_lp(partition, 1.0);
    inst.generic = true;
    return inst;
}

/// Exact sum over sign patterns for the product form at the block indicator vectors:
/// sum_eps prod(eps) prod_b s_b^{k_b}, where s_b is block b's sign sum. The identity
/// L(u_1^{k_1} ... u_n^{k_n}) = prod k_i! / m! holds iff this equals prod k_i! 2^m.
inline big_int extremal_sign_sum(const Partition& partition) {
    const int m = partition.m();
    detail::require(m <= 24, "exact sign sum limited to m <= 24");
    big_int total = 0;
    const std::uint64_t patterns = std::uint64_t{1} << m;
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
        int slot = 0;
        int sign_product = 1;
        big_int term = 1;
        for (int k : partition.parts()) {
            int s = 0;
            for (int r = 0; r < k; ++r, ++slot) {
                const int e = ((mask >> slot) & 1u) ? -1 : 1;
                s += e;
                sign_product *= e;
            }
            term *= boost::multiprecision::pow(big_int(s), static_cast<unsigned>(k));
        }
        total += sign_product > 0 ? term : big_int(-term);
    }
    return total;
}

struct ExtremalReport {
    double closed_form = 0.0;
    double polarized = 0.0;
    bool closed_form_ok = false;
    std::optional<bool> exact_ok; // set for m <= 10
    double norm_estimate = 0.0;
    double analytic_norm = 0.0;
    bool norm_ok = false;
    double ratio = 0.0;
    double lower_bound = 0.0;
    double deviation = 0.0;
    bool ratio_ok = false;
    std::vector<std::string> failures;

    [[nodiscard]] bool passed() const noexcept { return failures.empty(); }
};

/// (a) the polarized value matches the closed form to 1e-10, with an exact integer
/// check for m <= 10; (b) the optimizer's norm lies in [0.98, 1 + 1e-9] times the
/// AM-GM value; (c) the ratio matches the lower bound to 1e-9.
inline ExtremalReport verify_extremal(const ExtremalInstance& inst, const NormOptions& options = {}) {
    ExtremalReport rep;
    const int m = inst.partition.m();
    rep.closed_form = inst.attained_value;
    rep.polarized = inst.recompute_attained();
    rep.closed_form_ok = std::abs(rep.polarized - rep.closed_form) <= 1e-10 * std::abs(rep.closed_form);
    if (!rep.closed_form_ok) rep.failures.push_back("polarized attained value differs from the closed form");
    if (m <= 10) {
        big_int expected = exact_factorial(0);
        for (int k : inst.partition.parts()) expected *= exact_factorial(k);
        expected <<= m;
        rep.exact_ok = extremal_sign_sum(inst.partition) == expected;
        if (!*rep.exact_ok) rep.failures.push_back("exact sign sum differs from prod k_i! 2^m");
    }
    rep.analytic_norm = inst.analytic_poly_norm;
    rep.norm_estimate = estimate_poly_norm(inst.form, inst.space, options).value;
    rep.norm_ok = rep.norm_estimate >= 0.98 * rep.analytic_norm && rep.norm_estimate <= rep.analytic_norm * (1.0 + 1e-9);
    if (!rep.norm_ok) {
        rep.failures.push_back(rep.norm_estimate > rep.analytic_norm ? "norm estimate exceeds the AM-GM value"
                                                                     : "optimizer fell short of 0.98 of the AM-GM value");
    }
    rep.ratio = inst.ratio();
    auto lb = inst.lower_bound();
    rep.lower_bound = std::exp(lb.log_value);
    rep.deviation = rep.ratio / rep.lower_bound - 1.0;
    rep.ratio_ok = std::abs(rep.deviation) <= 1e-9;
    if (!rep.ratio_ok) rep.failures.push_back("attained ratio differs from the lower bound");
    return rep;
}

inline nlohmann::json to_json(const ExtremalInstance& inst) {
    return {{"form", to_json(inst.form)},
            {"vectors", inst.vectors},
            {"space", {{"p", p_to_json(inst.space.p())}, {"d", inst.space.dim()}}},
            {"partition", inst.partition.parts()},
            {"attained_value", inst.attained_value},
            {"analytic_poly_norm", inst.analytic_poly_norm},
            {"ratio", inst.ratio()},
            {"generic", inst.generic}};
}

inline nlohmann::json to_json(const ExtremalReport& rep) {
    nlohmann::json j = {{"closed_form", rep.closed_form},
                        {"polarized", rep.polarized},
                        {"closed_form_ok", rep.closed_form_ok},
                        {"norm_estimate", rep.norm_estimate},
                        {"analytic_norm", rep.analytic_norm},
                        {"norm_ok", rep.norm_ok},
                        {"ratio", rep.ratio},
                        {"lower_bound", rep.lower_bound},
                        {"deviation", rep.deviation},
                        {"ratio_ok", rep.ratio_ok},
                        {"passed", rep.passed()},
                        {"failures", rep.failures}};
    if (rep.exact_ok) j["exact_ok"] = *rep.exact_ok;
    return j;
}

} // namespace polest

#endif
