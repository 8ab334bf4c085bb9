#include <gtest/gtest.h>

#include <cmath>

#include <brjuno/conditions.hpp>
#include <brjuno/error.hpp>

#include "fixtures.hpp"

using namespace brjuno;
namespace fx = brjuno::testing;

namespace
{

error_code code_of(const std::function<void()> &fn)
{
    try {
        fn();
    } catch (const error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return error_code::invalid_argument;
}

std::vector<long> as_longs(const std::vector<mpz_class> &v)
{
    std::vector<long> out;
    for (const auto &x : v) {
        out.push_back(x.get_si());
    }
    return out;
}

} // namespace

TEST(conditions, p_sequences)
{
    EXPECT_EQ(dyadic_p_sequence(4).values, (std::vector<std::uint64_t>{1, 2, 4, 8}));
    EXPECT_EQ(explicit_p_sequence({1, 3, 9}).values, (std::vector<std::uint64_t>{1, 3, 9}));
    EXPECT_EQ(code_of([] { explicit_p_sequence({2, 4}); }), error_code::invalid_argument);
    EXPECT_EQ(code_of([] { explicit_p_sequence({1, 3, 3}); }), error_code::invalid_argument);
}

TEST(conditions, cf_golden)
{
    const auto cf = cf_expansion(fx::golden_angle(), 12);
    EXPECT_EQ(as_longs(cf.quotients), std::vector<long>(12, 1));
    EXPECT_EQ(as_longs(cf.q), (std::vector<long>{1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233}));
    EXPECT_FALSE(cf.terminated);
    ASSERT_TRUE(cf.period_length.has_value());
    EXPECT_EQ(*cf.period_length, 1u);
}

TEST(conditions, cf_rationals)
{
    const auto a = cf_expansion(quadratic_number(mpq_class(2, 7)), 10);
    EXPECT_EQ(as_longs(a.quotients), (std::vector<long>{3, 2}));
    EXPECT_TRUE(a.terminated);
    EXPECT_EQ(a.q.back(), 7);
    EXPECT_EQ(a.p.back(), 2);
    const auto b = cf_expansion(quadratic_number(mpq_class(1, 2)), 10);
    EXPECT_EQ(as_longs(b.quotients), std::vector<long>{2});
}

TEST(conditions, cf_silver_and_recurrence)
{
    // sqrt(2) - 1 = [0; 2, 2, 2, ...]
    const auto cf = cf_expansion(quadratic_number::from_abcd(-1, 1, 1, 2), 15);
    EXPECT_EQ(as_longs(cf.quotients), std::vector<long>(15, 2));
    const auto x = quadratic_number::from_abcd(-1, 1, 1, 2).to_big_float(256);
    for (std::size_t nu = 1; nu < cf.q.size(); ++nu) {
        if (nu >= 2) {
            EXPECT_EQ(cf.q[nu], cf.quotients[nu - 1] * cf.q[nu - 1] + cf.q[nu - 2]);
            EXPECT_EQ(cf.p[nu], cf.quotients[nu - 1] * cf.p[nu - 1] + cf.p[nu - 2]);
        }
        const big_float q(cf.q[nu], 256);
        const auto err = abs(x - big_float(mpq_class(cf.p[nu], cf.q[nu]), 256));
        EXPECT_LT(err * q * q, big_float(1L, 256));
    }
}

TEST(conditions, cf_float_matches_exact_then_fails)
{
    const auto theta = fx::golden_angle().to_big_float(53);
    const auto cf = cf_expansion(theta, 20);
    EXPECT_EQ(as_longs(cf.quotients), std::vector<long>(20, 1));
    EXPECT_EQ(code_of([&] { cf_expansion(theta, 60); }), error_code::insufficient_precision);
}

TEST(conditions, fibonacci_brjuno_sums)
{
    // sum_{nu < depth} log(F_(nu+1)) / F_nu with F = 1, 1, 2, 3, 5, ...
    auto fib_sum = [](std::size_t depth) {
        double a = 1, b = 1, s = 0;
        for (std::size_t nu = 0; nu < depth; ++nu) {
            s += std::log(b) / a;
            const double c = a + b;
            a = b;
            b = c;
        }
        return s;
    };
    const auto d10 = brjuno_sum_1d(fx::golden_angle(), 10);
    const auto d20 = brjuno_sum_1d(fx::golden_angle(), 20);
    const auto d30 = brjuno_sum_1d(fx::golden_angle(), 30);
    EXPECT_NEAR(d10.partial_sum, 3.1170298815729165052, 1e-13);
    EXPECT_NEAR(d20.partial_sum, 3.2836038561536002666, 1e-13);
    EXPECT_NEAR(d30.partial_sum, 3.286099806650101385, 1e-13);
    EXPECT_NEAR(d30.partial_sum, fib_sum(30), 1e-12);
    EXPECT_EQ(d30.terms.size(), 30u);
    double total = 0;
    for (const auto &t : d30.terms) {
        total += t.value;
    }
    EXPECT_DOUBLE_EQ(total, d30.partial_sum);
}

TEST(conditions, rational_sum_is_satisfied)
{
    const auto r = brjuno_sum_1d(quadratic_number(mpq_class(2, 7)), 10);
    EXPECT_EQ(r.result, verdict::satisfied_at_depth);
    EXPECT_EQ(r.terms.size(), 2u);
    EXPECT_NEAR(r.partial_sum, std::log(3.0) + std::log(7.0) / 3.0, 1e-14);
}

TEST(conditions, liouville_proxy_sum)
{
    // Terms decay fast after the first few convergents: the proxy is not
    // flagged, only reported.
    const auto r = brjuno_sum_1d(quadratic_number(fx::truncated_liouville()), 60);
    EXPECT_NEAR(r.terms.at(0).value, std::log(9.0), 1e-14);
    for (const auto &t : r.terms) {
        EXPECT_LE(t.value, 1e3);
    }
    EXPECT_NE(r.result, verdict::violated_evidence);
}

TEST(conditions, large_single_term_is_violation)
{
    // First term is log(1000) / 1, above the lowered threshold.
    verdict_thresholds t;
    t.single_term = 1.0;
    const auto r = brjuno_sum_1d(quadratic_number(mpq_class(1, 1000)), 5, t);
    EXPECT_EQ(r.result, verdict::violated_evidence);
}

TEST(conditions, half_dyadic_brjuno)
{
    const auto r = brjuno_partial(fx::half_spectrum(), dyadic_p_sequence(6), 16);
    ASSERT_EQ(r.terms.size(), 4u);
    EXPECT_NEAR(r.partial_sum, 2.59930192709979491031, 1e-14);
    EXPECT_LT(r.partial_sum, 2 * std::log(4.0));
    const auto red = reduced_brjuno_partial(fx::half_spectrum(), dyadic_p_sequence(6), 16);
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        EXPECT_EQ(r.terms[i].value, red.terms[i].value);
    }
}

TEST(conditions, golden_brjuno_equals_reduced)
{
    const auto a = brjuno_partial(fx::golden_spectrum(), dyadic_p_sequence(5), 16);
    const auto b = reduced_brjuno_partial(fx::golden_spectrum(), dyadic_p_sequence(5), 16);
    ASSERT_EQ(a.terms.size(), b.terms.size());
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
        EXPECT_EQ(a.terms[i].value, b.terms[i].value);
    }
    EXPECT_EQ(a.partial_sum, b.partial_sum);
}

TEST(conditions, ex1_needs_reduced_condition)
{
    const auto spec = fx::ex1_spectrum();
    EXPECT_EQ(code_of([&] { brjuno_partial(spec, dyadic_p_sequence(5), 16); }), error_code::resonances_present);
    const auto r = reduced_brjuno_partial(spec, dyadic_p_sequence(5), 16);
    EXPECT_FALSE(r.terms.empty());
    for (const auto &t : r.terms) {
        EXPECT_TRUE(std::isfinite(t.value));
    }
}

TEST(conditions, russmann_half)
{
    const auto r = russmann_check(fx::half_spectrum(), russmann_profile::power(4, 1), 12, 100);
    EXPECT_EQ(r.result, verdict::satisfied_at_depth);
    EXPECT_TRUE(r.monotone.value());
    EXPECT_TRUE(r.divisor_bound.value());
    EXPECT_TRUE(r.tail_estimate.has_value());
    EXPECT_FALSE(r.witness.has_value());
}

TEST(conditions, russmann_golden_linear_profile)
{
    // omega(12) is about 0.348 > 1/12, so no witness exists at this depth.
    const auto r = russmann_check(fx::golden_spectrum(), russmann_profile::power(1, 1), 12, 100);
    EXPECT_NE(r.result, verdict::violated_evidence);
    EXPECT_TRUE(r.divisor_bound.value());
}

TEST(conditions, russmann_witness_near_rational)
{
    // theta = 101/700: |lambda^8 - lambda| = 2 sin(pi / 100) < 1/8.
    const auto spec = fx::rotation_spectrum(quadratic_number(mpq_class(101, 700)));
    const auto r = russmann_check(spec, russmann_profile::power(1, 1), 12, 100);
    EXPECT_EQ(r.result, verdict::violated_evidence);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->q, multi_index({8}));
    EXPECT_NEAR(r.witness->divisor, 2 * std::sin(M_PI / 100), 1e-14);
    EXPECT_LT(r.witness->divisor, r.witness->bound);
}

TEST(conditions, russmann_non_monotone_table)
{
    const auto omega = russmann_profile::table({1, 2, 3, 10, 5, 6, 7, 8, 9, 10, 11, 12});
    const auto r = russmann_check(fx::half_spectrum(), omega, 12, 12);
    EXPECT_FALSE(r.monotone.value());
    EXPECT_EQ(r.monotonicity_failure.value(), 4u);
    EXPECT_NE(r.result, verdict::satisfied_at_depth);
}

TEST(conditions, profile_parse)
{
    EXPECT_EQ(russmann_profile::parse("power:2,3")(2), 16.0);
    EXPECT_NEAR(russmann_profile::parse("klog:1,2")(3), 3 * std::pow(1 + std::log(3.0), 2), 1e-12);
    EXPECT_EQ(russmann_profile::parse("table:1,4,9")(3), 9.0);
    EXPECT_EQ(code_of([] { russmann_profile::parse("cubic:1"); }), error_code::parse_error);
}

TEST(conditions, dyadic_bound_values)
{
    // Independent high-precision evaluation of both sums, K = 8.
    const double square_left[] = {5.43687319751707102074, 4.09931574753030155648, 2.74009744815103380129,
                                  1.71526851126845841217, 1.03024414923069996185};
    const double square_right[] = {1.84684558613374254693, 1.26890230670297921424, 0.79495726738624770959,
                                   0.47803965678201584430, 0.28007922956413263419};
    for (unsigned q = 0; q <= 4; ++q) {
        const auto sq = russmann_dyadic_bound(russmann_profile::power(1, 2), q, 8);
        const auto lin = russmann_dyadic_bound(russmann_profile::power(1, 1), q, 8);
        EXPECT_NEAR(sq.left, square_left[q], 1e-13);
        EXPECT_NEAR(sq.right, square_right[q], 1e-13);
        EXPECT_NEAR(lin.left, square_left[q] / 2, 1e-13);
        EXPECT_NEAR(lin.right, square_right[q] / 2, 1e-13);
    }
    const auto one = russmann_dyadic_bound(russmann_profile::power(1, 1), 0, 1);
    EXPECT_NEAR(one.left, std::log(2.0), 1e-15);
    EXPECT_NEAR(one.right, std::log(2.0) / 4 + std::log(3.0) / 9 + std::log(4.0) / 16, 1e-15);
}
