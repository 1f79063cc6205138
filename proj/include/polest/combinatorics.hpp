#ifndef POLEST_COMBINATORICS_HPP
#define POLEST_COMBINATORICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace polest {

using big_int = boost::multiprecision::cpp_int;
using big_rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Partition
// ---------------------------------------------------------------------------

/// Exponent tuple (k_1, ..., k_n) of a mixed evaluation L(x_1^{k_1} ... x_n^{k_n}).
/// Zero parts are dropped on construction; the order of the remaining parts is kept.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) {
        for (int k : parts) {
            detail::require(k >= 0, "partition parts must be nonnegative");
            if (k > 0) parts_.push_back(k);
        }
    }

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    [[nodiscard]] const std::vector<int>& parts() const noexcept { return parts_; }
    [[nodiscard]] int n() const noexcept { return static_cast<int>(parts_.size()); }
    [[nodiscard]] int m() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    [[nodiscard]] bool empty() const noexcept { return parts_.empty(); }
    [[nodiscard]] int operator[](std::size_t i) const { return parts_.at(i); }

    /// True when every part equals 1.
    [[nodiscard]] bool all_ones() const noexcept {
        return std::all_of(parts_.begin(), parts_.end(), [](int k) { return k == 1; });
    }

    /// Parts sorted in non-increasing order.
    [[nodiscard]] Partition canonical() const {
        auto sorted = parts_;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        return Partition(std::move(sorted));
    }

    [[nodiscard]] std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(parts_[i]);
        }
        return out;
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

/// Parses "k1,k2,...".
inline Partition parse_partition(const std::string& text) {
    std::vector<int> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        auto token = text.substr(pos, comma - pos);
        detail::require(!token.empty(), "empty partition entry in '" + text + "'");
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(token, &used);
        } catch (const std::exception&) {
            throw invalid_input("bad partition entry '" + token + "'");
        }
        detail::require(used == token.size(), "bad partition entry '" + token + "'");
        parts.push_back(value);
        pos = comma + 1;
    }
    Partition p(std::move(parts));
    detail::require(!p.empty(), "partition must have a positive part");
    return p;
}

/// Partitions of m into exactly n positive parts, parts non-increasing,
/// listed in lexicographically increasing order.
inline std::vector<Partition> partitions_into(int m, int n) {
    std::vector<Partition> out;
    if (n <= 0 || m < n) return out;
    std::vector<int> current;
    current.reserve(static_cast<std::size_t>(n));
    std::function<void(int, int, int)> rec = [&](int remaining, int slots, int cap) {
        if (slots == 0) {
            if (remaining == 0) out.emplace_back(current);
            return;
        }
        // the first part must be at least ceil(remaining / slots)
        int lo = (remaining + slots - 1) / slots;
        int hi = std::min(cap, remaining - (slots - 1));
        for (int k = lo; k <= hi; ++k) {
            current.push_back(k);
            rec(remaining - k, slots - 1, k);
            current.pop_back();
        }
    };
    rec(m, n, m);
    return out;
}

/// All integer partitions of m (n = 1..m).
inline std::vector<Partition> partitions_of(int m) {
    std::vector<Partition> out;
    for (int n = 1; n <= m; ++n) {
        auto part = partitions_into(m, n);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

/// The most balanced n-part partition of m (parts differ by at most one).
inline Partition balanced_partition(int m, int n) {
    detail::require(n >= 1 && n <= m, "balanced_partition needs 1 <= n <= m");
    std::vector<int> parts(static_cast<std::size_t>(n), m / n);
    for (int i = 0; i < m % n; ++i) ++parts[static_cast<std::size_t>(i)];
    return Partition(std::move(parts));
}

// ---------------------------------------------------------------------------
// Multi-indices
// ---------------------------------------------------------------------------

/// All exponent vectors of length d summing to m, in lexicographically decreasing order
/// (x_1^m first).
inline std::vector<std::vector<int>> multi_indices(int m, int d) {
    std::vector<std::vector<int>> out;
    if (d <= 0 || m < 0) return out;
    std::vector<int> alpha(static_cast<std::size_t>(d), 0);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == d - 1) {
            alpha[static_cast<std::size_t>(pos)] = remaining;
            out.push_back(alpha);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            alpha[static_cast<std::size_t>(pos)] = e;
            rec(pos + 1, remaining - e);
        }
    };
    rec(0, m);
    return out;
}

// ---------------------------------------------------------------------------
// Factorials, binomials, gamma
// ---------------------------------------------------------------------------

inline double log_gamma(double x) { return std::lgamma(x); }

inline double log_factorial(int n) {
    detail::require(n >= 0, "factorial of a negative integer");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

inline double log_binomial(int n, int k) {
    detail::require(n >= 0 && k >= 0 && k <= n, "binomial needs 0 <= k <= n");
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

inline big_int exact_factorial(int n) {
    detail::require(n >= 0, "factorial of a negative integer");
    big_int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline big_int exact_binomial(int n, int k) {
    detail::require(n >= 0 && k >= 0 && k <= n, "binomial needs 0 <= k <= n");
    k = std::min(k, n - k);
    big_int r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

namespace detail {

inline constexpr int kExactBinomialRows = 170;

inline const std::vector<std::vector<double>>& binomial_table() {
    static const std::vector<std::vector<double>> table = [] {
        std::vector<std::vector<double>> rows(kExactBinomialRows + 1);
        std::vector<big_int> prev{1};
        rows[0] = {1.0};
        for (int n = 1; n <= kExactBinomialRows; ++n) {
            std::vector<big_int> cur(static_cast<std::size_t>(n) + 1);
            cur.front() = 1;
            cur.back() = 1;
            for (int k = 1; k < n; ++k)
                cur[static_cast<std::size_t>(k)] =
                    prev[static_cast<std::size_t>(k) - 1] + prev[static_cast<std::size_t>(k)];
            rows[static_cast<std::size_t>(n)].reserve(cur.size());
            for (const auto& v : cur) rows[static_cast<std::size_t>(n)].push_back(v.convert_to<double>());
            prev = std::move(cur);
        }
        return rows;
    }();
    return table;
}

} // namespace detail

/// C(n, k) as a double: correctly rounded from exact integers for n <= 170,
/// from the log-domain beyond.
inline double binomial(int n, int k) {
    detail::require(n >= 0 && k >= 0 && k <= n, "binomial needs 0 <= k <= n");
    if (n <= detail::kExactBinomialRows)
        return detail::binomial_table()[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    return std::exp(log_binomial(n, k));
}

inline double factorial(int n) {
    detail::require(n >= 0, "factorial of a negative integer");
    if (n <= 170) {
        double r = 1.0;
        for (int i = 2; i <= n; ++i) r *= i;
        return r;
    }
    return std::exp(log_factorial(n));
}

} // namespace polest

#endif
