#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include <polest/polest.hpp>

using namespace polest;
using boost::multiprecision::cpp_rational;

namespace {

big_int ipow(int b, int e) { return boost::multiprecision::pow(big_int(b), static_cast<unsigned>(e)); }

big_int fact(int n) {
    big_int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double log_of(const cpp_rational& q) {
    // log of a positive rational without overflowing double
    big_int num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
    auto bits = [](const big_int& v) { return static_cast<long>(boost::multiprecision::msb(v)); };
    long shift_n = std::max(0L, bits(num) - 60), shift_d = std::max(0L, bits(den) - 60);
    double a = static_cast<double>(big_int(num >> shift_n).convert_to<long double>());
    double b = static_cast<double>(big_int(den >> shift_d).convert_to<long double>());
    return std::log(a) - std::log(b) + (shift_n - shift_d) * std::numbers::ln2;
}

cpp_rational prod_kk(const Partition& k) {
    big_int r = 1;
    for (int ki : k.parts()) r *= ipow(ki, ki);
    return r;
}

cpp_rational prod_kfact(const Partition& k) {
    big_int r = 1;
    for (int ki : k.parts()) r *= fact(ki);
    return r;
}

} // namespace

TEST(GenericBounds, Problem73) {
    EXPECT_NEAR(*bound_problem73(1).value, 1.0, 1e-15);
    EXPECT_NEAR(*bound_problem73(2).value, 2.0, 1e-15);
    EXPECT_NEAR(*bound_problem73(3).value, 4.5, 1e-14);
    EXPECT_THROW(bound_problem73(0), invalid_input);
}

TEST(GenericBounds, HandValues) {
    EXPECT_NEAR(*bound_harris_complex({1, 1}).value, 2.0, 1e-14);
    EXPECT_NEAR(*bound_harris_complex({5}).value, 1.0, 1e-14);
    EXPECT_NEAR(*bound_harris_complex({2, 1}).value, 2.25, 1e-14);
    EXPECT_NEAR(*bound_sqrt({2, 2}).value, 4.0, 1e-14); // (sqrt 2)^4
    EXPECT_NEAR(*bound_sqrt({6}).value, 1.0, 1e-14);
    EXPECT_NEAR(*bound_sqrt({1, 1}).value, 2.0, 1e-14);
    EXPECT_NEAR(*bound_new({1, 1, 1}).value, 4.5, 1e-14);
    EXPECT_NEAR(*bound_new({2, 1}).value, 16.0 / 3.0, 1e-14);
    EXPECT_NEAR(*bound_new({4}).value, *bound_problem73(4).value, 1e-13);
    EXPECT_NEAR(*bound_real_min({2, 1}).value, std::sqrt(27.0 / 4.0), 1e-14);
    EXPECT_NEAR(*bound_real_min({1, 1, 1}).value, 4.5, 1e-14);
    EXPECT_NEAR(*bound_real_min({7}).value, 1.0, 1e-14);
    EXPECT_NEAR(*bound_x_lower({2, 2}).value, 8.0 / 3.0, 1e-14);
    EXPECT_LE(*bound_x_lower({2, 2}).value, *bound_sqrt({2, 2}).value);
    EXPECT_NEAR(*bound_x_lower({4}).value, 1.0, 1e-14);
}

TEST(GenericBounds, ClosedFormValueAtAllOnes) {
    for (int m = 1; m <= 12; ++m) {
        std::vector<int> ones(static_cast<std::size_t>(m), 1);
        Partition k(ones);
        double expected = m * std::log(m) - std::lgamma(m + 1.0); // m^m / m!
        EXPECT_NEAR(bound_x_lower(k).log_value, expected, 1e-12);
        EXPECT_NEAR(bound_lp_lower(k, 3.0).log_value, m / 3.0 * std::log(m) - std::lgamma(m + 1.0), 1e-12);
    }
}

TEST(GenericBounds, AgreeWithExactRationals) {
    for (int m = 1; m <= 16; ++m)
        for (const auto& k : partitions_of(m)) {
            const int n = k.n();
            cpp_rational mm = ipow(m, m), mf = fact(m);
            cpp_rational harris = prod_kfact(k) / prod_kk(k) * mm / mf;
            cpp_rational nw = prod_kk(k) / mf * cpp_rational(ipow(n, m));
            cpp_rational sqrt_sq = mm / prod_kk(k);
            EXPECT_NEAR(bound_harris_complex(k).log_value, log_of(harris), 1e-11);
            EXPECT_NEAR(bound_new(k).log_value, log_of(nw), 1e-11);
            EXPECT_NEAR(2.0 * bound_sqrt(k).log_value, log_of(sqrt_sq), 1e-11);
            EXPECT_NEAR(bound_real_min(k).log_value, std::min(0.5 * log_of(sqrt_sq), log_of(nw)), 1e-11);
        }
}

TEST(GenericBounds, Sandwich) {
    for (int m = 1; m <= 12; ++m)
        for (const auto& k : partitions_of(m)) EXPECT_LE(bound_x_lower(k).log_value, bound_real_min(k).log_value + 1e-12) << k.to_string();
}

TEST(GenericBounds, LogDomainSurvivesLargeDegree) {
    auto r = bound_problem73(800);
    EXPECT_FALSE(r.value.has_value());
    EXPECT_TRUE(r.overflow());
    EXPECT_TRUE(std::isfinite(r.log_value));
    EXPECT_NEAR(r.log_value, 800 * std::log(800.0) - std::lgamma(801.0), 1e-9);
    EXPECT_TRUE(bound_problem73(400).value.has_value());
}

TEST(FMin, Examples) {
    auto a = f_min(4);
    EXPECT_EQ(a.k, 2);
    EXPECT_EQ(a.value, 16.0);
    auto b = f_min(5);
    EXPECT_EQ(b.k, 2);
    EXPECT_EQ(b.value, 108.0);
    auto c = f_min(2);
    EXPECT_EQ(c.k, 1);
    EXPECT_EQ(c.value, 1.0);
}

TEST(FMin, HalfwayForAllDegrees) {
    for (int m = 2; m <= 60; ++m) {
        auto r = f_min(m);
        EXPECT_EQ(r.k, m / 2) << m;
        if (m % 2 == 0) {
            EXPECT_EQ(r.exact, ipow(m / 2, m)) << m;
        }
        // independent scan in long double logs
        long double best = 1e300L;
        int arg = 0;
        for (int k = 1; k < m; ++k) {
            long double v = k * std::log(static_cast<long double>(k)) + (m - k) * std::log(static_cast<long double>(m - k));
            if (v < best - 1e-15L) {
                best = v;
                arg = k;
            }
        }
        EXPECT_EQ(r.k, arg);
    }
}

TEST(Moments, SmallCasesAndValues) {
    EXPECT_NEAR(moment_bound_gamma(1, 1.0), std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(moment_bound_gamma(2, 1.0), 4.0, 1e-14);
    EXPECT_NEAR(moment_bound_gamma(4, 1.0), 16.0, 1e-13);
    EXPECT_NEAR(moment_bound_unified(4, 1.0), 64.0 / std::numbers::e, 1e-12);
    EXPECT_NEAR(moment_bound_unified(1, 1.0), std::sqrt(std::numbers::e), 1e-14);
    EXPECT_NEAR(moment_bound_unified(10, 1.0), 10 * std::numbers::e * std::pow(10 / std::numbers::e, 5), 1e-9);
}

TEST(Moments, GammaDominatedByUnified) {
    for (double s : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        for (int k = 1; k <= 400; ++k) EXPECT_LE(log_moment_bound_gamma(k, s), log_moment_bound_unified(k, s) + 1e-12) << k << " " << s;
    }
}

TEST(SupProduct, Examples) {
    auto a = sup_product(7, 3);
    EXPECT_EQ(a.product, 12u);
    EXPECT_EQ(a.witness.canonical().parts(), (std::vector<int>{3, 2, 2}));
    EXPECT_NEAR(a.bound, 343.0 / 27.0, 1e-12);
    EXPECT_FALSE(a.equality);
    auto b = sup_product(6, 3);
    EXPECT_EQ(b.product, 8u);
    EXPECT_TRUE(b.equality);
    auto c = sup_product(4, 1);
    EXPECT_EQ(c.product, 4u);
    EXPECT_TRUE(c.equality);
}

TEST(SupProduct, MatchesBruteForceAndContinuousBound) {
    for (int m = 1; m <= 18; ++m)
        for (int n = 1; n <= m; ++n) {
            std::uint64_t brute = 0;
            for (const auto& k : partitions_into(m, n)) {
                std::uint64_t p = 1;
                for (int ki : k.parts()) p *= static_cast<std::uint64_t>(ki);
                brute = std::max(brute, p);
            }
            auto r = sup_product(m, n);
            EXPECT_EQ(r.product, brute);
            EXPECT_EQ(r.equality, m % n == 0);
        }
    for (int m = 19; m <= 60; ++m)
        for (int n = 1; n <= m; ++n) {
            auto r = sup_product(m, n);
            EXPECT_EQ(r.equality, m % n == 0) << m << "," << n;
            EXPECT_LE(std::log(static_cast<double>(r.product)), n * std::log(static_cast<double>(m) / n) + 1e-12);
        }
}

TEST(Asymptotics, NguyenValues) {
    EXPECT_NEAR(*bound_nguyen(3, 3).value, 10.0 * std::exp(4.5), 1e-9);
    EXPECT_NEAR(*bound_nguyen(3, 3).value, 900.171, 1e-3);
    EXPECT_NEAR(*bound_nguyen(2, 1).value, 2.0 * std::exp(2.0), 1e-12);
    auto big = bound_nguyen(1000, 3);
    double expected = 500.0 + 3.0 * std::log(1000.0 * std::numbers::e / 3.0) + std::log(1002.0 * 1001.0 / 2.0);
    EXPECT_NEAR(big.log_value, expected, 1e-9);
    ASSERT_TRUE(big.value.has_value()); // about e^533, still representable
    EXPECT_NEAR(std::log(*big.value), big.log_value, 1e-12);
    auto huge = bound_nguyen(2000, 3);
    EXPECT_TRUE(huge.overflow());
    EXPECT_TRUE(std::isfinite(huge.log_value));
}

TEST(Asymptotics, ConstantValues) {
    // e^{-1/2} (e^{500} (1000e/3)^3 C(1002,2))^{1/1000}
    double lv = (500.0 + 3.0 * std::log(1000.0 * std::numbers::e / 3.0) + std::log(501501.0)) / 1000.0;
    EXPECT_NEAR(asymptotic_constant(1000, 3), std::exp(std::min(lv, 0.5 * std::log(3.0)) - 0.5), 1e-12);
    EXPECT_NEAR(asymptotic_constant(1000, 3), 1.034122, 1e-6);
    EXPECT_LE(asymptotic_constant(1000, 3), 1.05);
    // (1,1,1): sqrt(27)^{1/3} / sqrt(e)
    EXPECT_NEAR(asymptotic_constant(3, 3), std::pow(27.0, 1.0 / 6.0) / std::sqrt(std::numbers::e), 1e-12);
    EXPECT_NEAR(asymptotic_constant(3, 3), 1.05054, 1e-5);
    EXPECT_THROW(asymptotic_constant(10, 2), invalid_input);
}

TEST(Asymptotics, DecreasingAlongDoubling) {
    for (int n : {3, 4, 5}) {
        double prev = asymptotic_constant(200, n);
        for (int m : {400, 800, 1600}) {
            double cur = asymptotic_constant(m, n);
            EXPECT_LE(cur, prev) << m << " " << n;
            prev = cur;
        }
    }
    // flat on the sqrt(3) envelope until the second branch takes over, then strictly down
    double prev = asymptotic_constant(100, 3);
    for (int m : {500, 1000, 5000}) {
        double cur = asymptotic_constant(m, 3);
        EXPECT_LE(cur, prev);
        prev = cur;
    }
    EXPECT_LT(asymptotic_constant(5000, 3), asymptotic_constant(1000, 3));
    EXPECT_GT(prev, 1.0);
}

TEST(Asymptotics, IntegerVariantNeverExceedsEnvelope) {
    for (int m : {3, 7, 20, 40, 100, 1000})
        for (int n : {3, 4, 5})
            if (n <= m) {
                EXPECT_LE(asymptotic_constant_integer(m, n), asymptotic_constant(m, n) + 1e-12);
            }
}

TEST(Tails, Examples) {
    EXPECT_EQ(hoeffding_tail(5, 0.0), 2.0);
    EXPECT_NEAR(hoeffding_tail(1, 2.0), 2.0 * std::exp(-2.0), 1e-15);
    EXPECT_EQ(exact_rademacher_tail(1, 2.0), 0.0);
    EXPECT_NEAR(hoeffding_tail(4, 4.0), 0.2707, 1e-4);
    EXPECT_EQ(exact_rademacher_tail(4, 4.0), 0.125);
    EXPECT_EQ(exact_rademacher_tail(2, 2.0), 0.5);
    EXPECT_EQ(exact_rademacher_tail(3, 1.0), 1.0);
    EXPECT_EQ(exact_rademacher_tail(4, 0.0), 1.0);
    EXPECT_THROW(exact_rademacher_tail(31, 1.0), cap_exceeded);
}

TEST(Tails, MatchesPatternEnumeration) {
    for (int k = 1; k <= 14; ++k)
        for (int xi = 0; xi <= 10 * k; xi += 3) {
            double x = xi / 10.0;
            int hits = 0;
            for (unsigned mask = 0; mask < (1u << k); ++mask) {
                int s = 0;
                for (int i = 0; i < k; ++i) s += (mask >> i) & 1u ? 1 : -1;
                if (std::abs(s) >= x - 1e-12) ++hits;
            }
            EXPECT_DOUBLE_EQ(exact_rademacher_tail(k, x), hits / static_cast<double>(1u << k)) << k << " " << x;
        }
}

TEST(Tails, HoeffdingDominates) {
    for (int k = 1; k <= 24; ++k)
        for (int xi = 0; xi <= 10 * k; ++xi) {
            double x = xi / 10.0;
            EXPECT_GE(hoeffding_tail(k, x), exact_rademacher_tail(k, x)) << k << " " << x;
        }
}

TEST(LpBounds, Examples) {
    auto up = bound_lp_upper({1, 1}, 4.0);
    EXPECT_NEAR(*up.value, std::sqrt(2.0) / 2.0, 1e-14);
    EXPECT_NEAR(std::exp(up.term("second")), 32.0, 1e-12);
    EXPECT_NEAR(*bound_lp_lower({1, 1}, 4.0).value, std::sqrt(2.0) / 2.0, 1e-14);
    auto p1 = bound_lp_upper({1, 1}, 1.0);
    EXPECT_NEAR(*p1.value, 2.0, 1e-14);
    EXPECT_NEAR(std::exp(p1.term("second")), 8.0, 1e-12);
    for (const auto& k : partitions_of(6)) {
        auto r = bound_lp_upper(k, kInfinity);
        EXPECT_NEAR(r.log_value, log_of(prod_kk(k) / cpp_rational(fact(6))), 1e-12);
        EXPECT_EQ(r.terms.size(), 1u);
    }
    for (const auto& k : partitions_of(6)) EXPECT_NEAR(bound_lp_lower(k, 1.0).log_value, bound_harris_complex(k).log_value, 1e-12);
}

TEST(LpBounds, SharpFactor) {
    Partition k{3, 1, 1};
    EXPECT_EQ(power_sum(k, 2.0), 11.0);
    EXPECT_EQ(power_sum_coarse(k, 2.0), 11.0);
    // (3,1,1) maximizes the square sum over 3-part partitions of 5
    for (const auto& alt : partitions_into(5, 3)) EXPECT_LE(power_sum(alt, 2.0), 11.0);
    // p = 4 < m = 5 uses the exponent m/2
    auto sharp = bound_lp_upper_sharp(k, 4.0);
    EXPECT_NEAR(std::exp(sharp.term("factor_exact")), std::pow(3.0, 2.5) + 2.0, 1e-12);
    EXPECT_NEAR(std::exp(sharp.term("factor_m_pow_q")), std::pow(5.0, 2.5), 1e-11);
    EXPECT_LT(sharp.term("second"), bound_lp_upper(k, 4.0).term("second"));
    // p = 6 >= m uses the exponent p/2
    auto six = bound_lp_upper_sharp(k, 6.0);
    EXPECT_NEAR(std::exp(six.term("factor_exact")), 29.0, 1e-12);
    EXPECT_NEAR(std::exp(six.term("factor_coarse")), 29.0, 1e-12);
    EXPECT_NEAR(std::exp(six.term("factor_m_pow_q")), 125.0, 1e-11);
    Partition ones{1, 1, 1, 1};
    EXPECT_EQ(power_sum(ones, 1.5), 4.0);
    EXPECT_EQ(power_sum_coarse(ones, 1.5), 4.0);
}

TEST(LpBounds, CoarsePowerSumDominatesEveryPartition) {
    for (int m = 1; m <= 14; ++m)
        for (const auto& k : partitions_of(m))
            for (double q : {1.0, 1.5, 2.0, 3.0}) EXPECT_LE(power_sum(k, q), power_sum_coarse(k, q) * (1 + 1e-14));
}

TEST(LpBounds, Sandwich) {
    for (int m = 1; m <= 12; ++m)
        for (const auto& k : partitions_of(m))
            for (double p : {1.0, 1.5, 2.0, 4.0, 8.0, double(m), 2.0 * m, kInfinity}) {
                double lo = bound_lp_lower(k, p).log_value;
                double sh = bound_lp_upper_sharp(k, p).log_value;
                double up = bound_lp_upper(k, p).log_value;
                EXPECT_LE(lo, sh + 1e-12) << k.to_string() << " p=" << p;
                EXPECT_LE(sh, up + 1e-12) << k.to_string() << " p=" << p;
            }
}

TEST(LpBounds, PinchAtAllOnes) {
    for (int m = 1; m <= 12; ++m) {
        Partition k(std::vector<int>(static_cast<std::size_t>(m), 1));
        for (double p : {1.0, 1.5, 2.0, 4.0, 8.0, double(m), 2.0 * m, kInfinity}) {
            double expected = (std::isinf(p) ? 0.0 : m / p * std::log(m)) - std::lgamma(m + 1.0);
            EXPECT_NEAR(bound_lp_lower(k, p).log_value, expected, 1e-12);
            EXPECT_NEAR(bound_lp_upper(k, p).log_value, expected, 1e-12) << m << " " << p;
        }
        EXPECT_NEAR(bound_real_min(k).log_value, bound_x_lower(k).log_value, 1e-12);
    }
}

TEST(Catalog, EveryEntryEvaluatesAndSerializes) {
    Partition k{3, 2};
    for (const auto& name : bound_catalog()) {
        auto r = evaluate_bound(name, k, 2.0);
        EXPECT_EQ(r.name(), name);
        EXPECT_TRUE(std::isfinite(r.log_value));
        auto j = to_json(r);
        EXPECT_EQ(j.at("name"), name);
        EXPECT_FALSE(j.at("citation").get<std::string>().empty());
    }
    EXPECT_THROW(evaluate_bound("lp_lower", k), invalid_input);
    EXPECT_THROW(evaluate_bound("bogus", k, 2.0), invalid_input);
}
