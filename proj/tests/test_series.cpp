#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include <polest/polest.hpp>
#include <polest/verify.hpp>

using namespace polest;

namespace {

NormOptions opts(int budget) {
    NormOptions o;
    o.budget = budget;
    return o;
}

// sum_m c^m x_1^m on l_2^2: not one-dimensional, so the limsup path runs
PowerSeries diagonal_series(double c, int M) {
    std::vector<SymmetricForm> t;
    for (int m = 0; m <= M; ++m) t.push_back(SymmetricForm::monomial({m, 0}, std::pow(c, m)));
    return PowerSeries(t, LpSpace(2.0, 2));
}

// Brute-force Taylor shift in one variable: coefficient k of F(y + z) in z.
double shifted_coefficient(const std::vector<double>& a, double y, int k) {
    double s = 0.0;
    for (std::size_t m = static_cast<std::size_t>(k); m < a.size(); ++m) s += binomial(static_cast<int>(m), k) * a[m] * std::pow(y, m - k);
    return s;
}

} // namespace

TEST(Series, Construction) {
    EXPECT_THROW(PowerSeries({}, LpSpace(2.0, 1)), invalid_input);
    EXPECT_THROW(PowerSeries({SymmetricForm::monomial({1})}, LpSpace(2.0, 1)), invalid_input);
    EXPECT_THROW(PowerSeries({SymmetricForm::constant(1.0, 2)}, LpSpace(2.0, 1)), invalid_input);
    auto g = PowerSeries::geometric(0.5, 10);
    EXPECT_EQ(g.max_degree(), 10);
    EXPECT_EQ(g.dim(), 1);
}

TEST(Series, JsonRoundTrip) {
    auto s = random_polynomial_series(3, 3, 2);
    auto j = to_json(s);
    auto back = series_from_json(j);
    ASSERT_EQ(back.max_degree(), s.max_degree());
    for (int m = 0; m <= s.max_degree(); ++m) EXPECT_EQ(back.term(m).coefficient_map(), s.term(m).coefficient_map());
    EXPECT_THROW(series_from_json(nlohmann::json::parse(R"({"terms": []})")), invalid_input);
    auto inf = series_from_json(nlohmann::json::parse(R"({"space": {"p": "inf", "d": 1}, "terms": [{"m":0,"d":1,"coeffs":[{"alpha":[0],"c":2}]}]})"));
    EXPECT_TRUE(inf.space().is_infinite());
}

TEST(EvalSeries, Geometric) {
    auto g = PowerSeries::geometric(1.0, 60);
    auto v = eval_series(g, Vector{0.5});
    EXPECT_NEAR(v.value, 2.0, 1e-15);
    EXPECT_FALSE(v.divergent);
    EXPECT_LT(v.tail_estimate, 1e-17);
    EXPECT_TRUE(eval_series(PowerSeries::geometric(1.0, 60), Vector{1.5}).divergent);
}

TEST(EvalSeries, PolynomialAndCenter) {
    auto s = random_polynomial_series(5, 3, 3);
    Vector x{0.4, -1.2, 2.0};
    double direct = 0.0;
    for (int m = 0; m <= 3; ++m) direct += eval_poly(s.term(m), x);
    EXPECT_NEAR(eval_series(s, x).value, direct, 1e-13);
    Vector zero(3, 0.0);
    EXPECT_DOUBLE_EQ(eval_series(s, zero).value, s.term(0).coefficient(0));
}

TEST(Radius, GeometricRecoversInverseRatio) {
    for (double c : {0.5, 1.0, 2.0, 5.0}) {
        auto r = radius_uniform(PowerSeries::geometric(c, 40), opts(16));
        EXPECT_NEAR(r.rho, 1.0 / c, 1e-6 / c);
        EXPECT_NEAR(r.rho, 1.0 / c, 1e-9);
        EXPECT_EQ(r.method, RadiusMethod::exact_geometric);
        auto lim = radius_uniform(diagonal_series(c, 40), opts(16));
        EXPECT_EQ(lim.method, RadiusMethod::truncated_limsup);
        EXPECT_NEAR(lim.rho * c, 1.0, 1e-6);
    }
    EXPECT_NEAR(radius_uniform(PowerSeries::geometric(1.0, 30)).rho, 1.0, 1e-12);
}

TEST(Radius, PolynomialIsEntire) {
    auto r = radius_uniform(random_polynomial_series(7, 3, 2));
    EXPECT_TRUE(std::isinf(r.rho));
    auto rb = rho_bar(random_polynomial_series(7, 3, 2));
    EXPECT_TRUE(std::isinf(rb.reported));
}

TEST(Radius, DeclaredRadiusWins) {
    auto j = to_json(PowerSeries::geometric(1.0, 5));
    j["rho"] = 0.25;
    auto r = radius_uniform(series_from_json(j));
    EXPECT_EQ(r.method, RadiusMethod::declared);
    EXPECT_EQ(r.rho, 0.25);
}

TEST(RhoBar, OneDimensionalEqualsRho) {
    auto rb = rho_bar(PowerSeries::geometric(1.0, 40));
    EXPECT_EQ(rb.empirical, 1.0);
    EXPECT_EQ(rb.reported, 1.0);
    EXPECT_NEAR(rb.floor, 0.70711, 1e-5);
    EXPECT_NEAR(rb.floor, 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(RhoBar, ProductFormSeriesRespectsFloor) {
    // product-type terms on l_inf^4: x_1 ... x_m up to m = 4, then x_1^{m-3} x_2 x_3 x_4
    std::vector<SymmetricForm> t;
    for (int m = 0; m <= 16; ++m) {
        std::vector<int> alpha(4, 0);
        for (int j = 0; j < std::min(m, 4); ++j) alpha[j] = 1;
        if (m > 4) alpha[0] += m - 4;
        t.push_back(SymmetricForm::monomial(alpha, 1.0));
    }
    PowerSeries s(t, LpSpace::infinity(4));
    auto rb = rho_bar(s, opts(16));
    EXPECT_GE(rb.reported, rb.rho / std::sqrt(2.0) - 1e-12);
    EXPECT_LE(rb.empirical, rb.rho * (1 + 1e-12));
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto r = random_decaying_series(seed, 16, 3, 0.5);
        auto b = rho_bar(r, opts(16));
        EXPECT_GE(b.reported, b.rho / std::sqrt(2.0) - 1e-12);
        EXPECT_EQ(b.floor, b.rho / std::numbers::sqrt2);
    }
}

TEST(Reexpand, GeometricCoefficients) {
    auto g = PowerSeries::geometric(1.0, 200);
    auto plan = reexpand(g, Vector{0.3}, 40, 1.0);
    EXPECT_NEAR(plan.valid_ball_radius, 0.7, 1e-15);
    ASSERT_EQ(plan.coefficients.size(), 41u);
    EXPECT_NEAR(eval_poly(plan.coefficients[0], Vector{1.0}), 1.0 / 0.7, 1e-12);
    EXPECT_NEAR(eval_poly(plan.coefficients[0], Vector{1.0}), 1.428571, 1e-6);
    std::vector<double> a(201, 1.0);
    for (int k : {1, 5, 20, 40}) {
        double c = eval_poly(plan.coefficients[static_cast<std::size_t>(k)], Vector{1.0});
        EXPECT_NEAR(c, shifted_coefficient(a, 0.3, k), 1e-9 * std::abs(c));
        EXPECT_NEAR(c, std::pow(0.7, -(k + 1)), 1e-8 * std::abs(c));
    }
    EXPECT_THROW(reexpand(g, Vector{1.0}, 10, 1.0), invalid_input);
}

TEST(Reexpand, AtCenterIsIdentity) {
    auto s = random_polynomial_series(11, 4, 3);
    auto plan = reexpand(s, Vector(3, 0.0), 4, kInfinity);
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(plan.coefficients[static_cast<std::size_t>(k)].coefficient_map(), s.term(k).coefficient_map());
}

TEST(Reexpand, PolynomialsReexpandExactly) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto s = random_polynomial_series(seed, 3, 3);
        Stream rng(seed, 9);
        auto y = rng.uniform_vector(3, -2, 2), x = rng.uniform_vector(3, -2, 2);
        auto plan = reexpand(s, y, 3, kInfinity);
        double direct = eval_series(s, x).value;
        EXPECT_NEAR(eval_plan(plan, x), direct, 1e-12 * std::max(1.0, std::abs(direct)));
        auto rep = verify_analyticity(s, y, x, 1e-12, 3, kInfinity);
        EXPECT_TRUE(rep.passed) << rep.message;
        auto same = verify_analyticity(s, y, y, 1e-12, 3, kInfinity);
        EXPECT_NEAR(same.reexpanded, eval_series(s, y).value, 1e-12 * std::max(1.0, std::abs(same.direct)));
    }
}

TEST(Analyticity, GeometricMatchesClosedForm) {
    auto g = PowerSeries::geometric(1.0, 200);
    auto rep = verify_analyticity(g, Vector{0.3}, Vector{0.6}, 1e-8, 200, 1.0);
    EXPECT_TRUE(rep.passed) << rep.message;
    EXPECT_NEAR(rep.direct, 1.0 / (1.0 - 0.6), 1e-8);
    EXPECT_NEAR(rep.reexpanded, 1.0 / (1.0 - 0.6), 1e-8);
}

TEST(Analyticity, TruncatedSeriesWithinMajorant) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto s = random_decaying_series(seed, 24, 2, 0.25);
        auto rb = rho_bar(s, opts(16));
        Stream rng(seed, 3);
        auto y = LpSpace(2.0, 2).normalize(rng.normal_vector(2));
        auto z = LpSpace(2.0, 2).normalize(rng.normal_vector(2));
        for (auto& v : y) v *= 0.3 * rb.reported;
        for (auto& v : z) v *= 0.3 * rb.reported;
        Vector x{y[0] + z[0], y[1] + z[1]};
        auto rep = verify_analyticity(s, y, x, 1e-10, 24, rb.reported, opts(16));
        EXPECT_TRUE(rep.passed) << rep.message;
        EXPECT_LE(rep.difference, rep.coefficient_majorant + 1e-12 * std::max(1.0, std::abs(rep.direct)));
    }
}

TEST(Derivatives, GeometricFirstDerivative) {
    auto g = PowerSeries::geometric(1.0, 200);
    auto d1 = dn_taylor(g, 1);
    for (int k = 0; k < 10; ++k) EXPECT_NEAR(d1.terms[static_cast<std::size_t>(k)].coefficient(0), k + 1.0, 1e-12);
    std::vector<Vector> dir{Vector{1.0}};
    EXPECT_NEAR(d1.evaluate(Vector{0.5}, dir), 4.0, 1e-12);
    auto fd = dn_check_fd(g, 1, Vector{0.5}, dir);
    EXPECT_TRUE(fd.passed);
    EXPECT_LT(fd.error, 1e-8);
}

TEST(Derivatives, DegreeShiftIdentity) {
    auto s = random_polynomial_series(13, 5, 2);
    auto d1 = dn_taylor(s, 1);
    // coefficient k of the derivative series, contracted with direction e_j, is the
    // partial derivative of term k+1 in x_j
    for (int k = 0; k + 1 <= 5; ++k) {
        Stream rng(13, static_cast<std::uint64_t>(k));
        auto x = rng.uniform_vector(2, -1, 1);
        for (int j = 0; j < 2; ++j) {
            Vector e(2, 0.0);
            e[j] = 1.0;
            std::vector<Vector> vecs{x, e};
            std::vector<int> mult{k, 1};
            double got = mixed_value_expanded(d1.terms[static_cast<std::size_t>(k)], mult, vecs);
            double want = gradient(s.term(k + 1), x)[j];
            EXPECT_NEAR(got, want, 1e-12 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST(Derivatives, TopDerivativeOfPolynomialIsConstant) {
    auto s = random_polynomial_series(17, 3, 2);
    auto d3 = dn_taylor(s, 3);
    ASSERT_FALSE(d3.terms.empty());
    for (std::size_t k = 1; k < d3.terms.size(); ++k) EXPECT_TRUE(d3.terms[k].is_zero());
    // n! L_n(v, v, v) = D^3 F[v, v, v]
    Vector v{0.6, -0.8};
    std::vector<Vector> dirs(3, v);
    EXPECT_NEAR(d3.evaluate(Vector{0.3, 0.1}, dirs), 6.0 * eval_poly(s.term(3), v), 1e-12);
    EXPECT_THROW(dn_taylor(s, 4), invalid_input);
}

TEST(Derivatives, RadiusFloors) {
    EXPECT_EQ(derivative_floor_factor(1), std::sqrt(2.0));
    EXPECT_EQ(derivative_floor_factor(2), std::sqrt(2.0));
    EXPECT_NEAR(1.0 / derivative_floor_factor(3), 0.60653, 1e-5);
    EXPECT_NEAR(dn_taylor(PowerSeries::geometric(1.0, 20), 2).radius_floor(1.0), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Derivatives, FiniteDifferenceChecks) {
    auto g = PowerSeries::geometric(1.0, 200);
    for (int n = 1; n <= 3; ++n) EXPECT_TRUE(dn_check_fd(g, n, Vector{0.4}, 7).passed) << n;
    auto q = PowerSeries({SymmetricForm::constant(1.0, 2), SymmetricForm(1, 2, {{{1, 0}, 1.0}}),
                          SymmetricForm(2, 2, {{{2, 0}, 3.0}, {{1, 1}, -2.0}, {{0, 2}, 0.5}})},
                         LpSpace(2.0, 2));
    auto fd2 = dn_check_fd(q, 2, Vector{0.2, -0.7}, 3);
    EXPECT_LT(fd2.error, 1e-6);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto s = random_polynomial_series(seed, 4, 3);
        Vector x{0.1, -0.2, 0.3};
        EXPECT_LE(dn_check_fd(s, 1, x, seed).error, 1e-5);
        EXPECT_LE(dn_check_fd(s, 2, x, seed).error, 1e-4);
    }
    auto at0 = dn_check_fd(random_polynomial_series(2, 3, 2), 1, Vector{0.0, 0.0}, 1);
    auto s = random_polynomial_series(2, 3, 2);
    auto dirs = random_directions(1, 2, 1);
    EXPECT_NEAR(at0.series_value, eval_poly(s.term(1), dirs[0]), 1e-15);
}

TEST(Derivatives, TaylorCoefficientIdentity) {
    auto g = PowerSeries::geometric(1.0, 200);
    for (int k = 1; k <= 3; ++k) EXPECT_TRUE(check_taylor_coefficient(g, Vector{0.3}, k, Vector{1.0}, 1.0).passed) << k;
    auto s = random_polynomial_series(19, 4, 2);
    for (int k = 1; k <= 3; ++k) {
        auto rep = check_taylor_coefficient(s, Vector{0.5, -0.25}, k, Vector{0.6, 0.8}, kInfinity);
        EXPECT_TRUE(rep.passed) << k << " err " << rep.error;
    }
}
