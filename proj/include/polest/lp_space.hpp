#ifndef POLEST_LP_SPACE_HPP
#define POLEST_LP_SPACE_HPP

#include <cmath>
#include <limits>
#include <span>
#include <string>

#include <json.hpp>

#include "error.hpp"
#include "form.hpp"

namespace polest {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Finite-dimensional real l_p^d, p in [1, inf].
class LpSpace {
public:
    LpSpace(double p, int dim) : p_(p), dim_(dim) {
        detail::require(p >= 1.0, "l_p needs p >= 1");
        detail::require(dim >= 1, "l_p needs a positive dimension");
    }

    static LpSpace infinity(int dim) { return LpSpace(kInfinity, dim); }

    [[nodiscard]] double p() const noexcept { return p_; }
    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] bool is_infinite() const noexcept { return std::isinf(p_); }

    [[nodiscard]] double norm(std::span<const double> x) const {
        detail::require(static_cast<int>(x.size()) == dim_, "vector length differs from space dimension");
        return lp_norm(x, p_);
    }

    /// x / ||x||_p; the zero vector is returned unchanged.
    [[nodiscard]] Vector normalize(std::span<const double> x) const {
        double r = norm(x);
        Vector out(x.begin(), x.end());
        if (r > 0.0)
            for (auto& v : out) v /= r;
        return out;
    }

    [[nodiscard]] LpSpace with_dim(int dim) const { return LpSpace(p_, dim); }

    [[nodiscard]] std::string tag() const {
        if (is_infinite()) return "inf";
        auto s = nlohmann::json(p_).dump();
        return s;
    }

    static double lp_norm(std::span<const double> x, double p) {
        if (std::isinf(p)) {
            double r = 0.0;
            for (double v : x) r = std::max(r, std::abs(v));
            return r;
        }
        if (p == 1.0) {
            double r = 0.0;
            for (double v : x) r += std::abs(v);
            return r;
        }
        if (p == 2.0) {
            double r = 0.0;
            for (double v : x) r += v * v;
            return std::sqrt(r);
        }
        // scale by the max entry to avoid overflow for large p
        double big = 0.0;
        for (double v : x) big = std::max(big, std::abs(v));
        if (big == 0.0) return 0.0;
        double r = 0.0;
        for (double v : x) r += std::pow(std::abs(v) / big, p);
        return big * std::pow(r, 1.0 / p);
    }

    friend bool operator==(const LpSpace&, const LpSpace&) = default;

private:
    double p_;
    int dim_;
};

/// p as JSON: a number, or the string "inf".
inline nlohmann::json p_to_json(double p) {
    if (std::isinf(p)) return "inf";
    return p;
}

inline double p_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        detail::require(s == "inf" || s == "infinity", "p must be a number or \"inf\"");
        return kInfinity;
    }
    detail::require(j.is_number(), "p must be a number or \"inf\"");
    return j.get<double>();
}

/// Parses "inf" or a decimal number.
inline double parse_p(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "Inf") return kInfinity;
    std::size_t used = 0;
    double p = 0.0;
    try {
        p = std::stod(text, &used);
    } catch (const std::exception&) {
        throw invalid_input("bad p value '" + text + "'");
    }
    detail::require(used == text.size(), "bad p value '" + text + "'");
    detail::require(p >= 1.0, "p must be >= 1");
    return p;
}

} // namespace polest

#endif
