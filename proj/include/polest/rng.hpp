#ifndef POLEST_RNG_HPP
#define POLEST_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace polest {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Counter-based random stream. A stream is fully determined by
/// (master seed, stream id), so work items can be generated in any order
/// or on any thread and still reproduce the serial result.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t id) noexcept
        : key_(splitmix64(seed ^ splitmix64(id + 0x632BE59BD9B4E019ull))) {}

    std::uint64_t next_u64() noexcept { return splitmix64(key_ + 0xA0761D6478BD642Full * ++counter_); }

    /// Uniform on [0, 1).
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) noexcept {
        auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(next_u64() % span);
    }

    /// Standard normal via Box-Muller (no cached second variate, so the
    /// sequence does not depend on call parity).
    double normal() noexcept {
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::vector<double> normal_vector(int d) {
        std::vector<double> v(static_cast<std::size_t>(d));
        for (auto& x : v) x = normal();
        return v;
    }

    std::vector<double> uniform_vector(int d, double lo, double hi) {
        std::vector<double> v(static_cast<std::size_t>(d));
        for (auto& x : v) x = uniform(lo, hi);
        return v;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Derives a child seed for a labelled sub-computation.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) noexcept {
    return splitmix64(seed + splitmix64(label ^ 0xD1B54A32D192ED03ull));
}

} // namespace polest

#endif
