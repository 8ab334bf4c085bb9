#include <gtest/gtest.h>

#include <future>
#include <thread>

#include <brjuno/error.hpp>
#include <brjuno/series.hpp>

#include "fixtures.hpp"

using namespace brjuno;
namespace fx = brjuno::testing;
using fx::gq;

namespace
{

scalar_series<exact_complex> scalar(std::initializer_list<std::pair<multi_index, exact_complex>> terms, unsigned n_trunc)
{
    scalar_series<exact_complex> out(1, n_trunc);
    for (const auto &[q, c] : terms) {
        out.add_term(q, c);
    }
    return out;
}

} // namespace

TEST(series, build_identity)
{
    const auto s = build_series<exact_complex>(1, 3, {{0, {1}, gq(1)}});
    EXPECT_EQ(s, identity_series<exact_complex>(1, 3));
}

TEST(series, build_ex1)
{
    const auto f = fx::ex1_germ(3);
    EXPECT_EQ(f.term_count(), 3u);
    EXPECT_TRUE(field_traits<mp_complex>::is_zero(f.coefficient({2, 0}, 1)));
    EXPECT_EQ(f.coefficient({2, 0}, 0).re.to_double(), 1.0);
}

TEST(series, duplicates_cancel)
{
    const auto s = build_series<exact_complex>(1, 3, {{0, {2}, gq(1)}, {0, {2}, gq(-1)}});
    EXPECT_EQ(s.find({2}), nullptr);
    EXPECT_TRUE(s.empty());
}

TEST(series, build_rejects_bad_terms)
{
    auto code_of = [](auto &&fn) {
        try {
            fn();
        } catch (const error &e) {
            return e.code();
        }
        return error_code::invalid_argument;
    };
    EXPECT_EQ(code_of([] { build_series<exact_complex>(1, 3, {{0, {0}, gq(1)}}); }), error_code::degree_out_of_range);
    EXPECT_EQ(code_of([] { build_series<exact_complex>(1, 3, {{0, {4}, gq(1)}}); }), error_code::degree_out_of_range);
    EXPECT_EQ(code_of([] { build_series<exact_complex>(2, 3, {{0, {2}, gq(1)}}); }), error_code::dimension_mismatch);
}

TEST(series, multiply_examples)
{
    const auto z = scalar({{{1}, gq(1)}}, 3);
    EXPECT_EQ(multiply(z, z, 3), scalar({{{2}, gq(1)}}, 3));
    const auto a = scalar({{{1}, gq(1)}, {{2}, gq(1)}}, 4);
    EXPECT_EQ(multiply(a, a, 4), scalar({{{2}, gq(1)}, {{3}, gq(2)}, {{4}, gq(1)}}, 4));
    EXPECT_EQ(multiply(a, a, 2), scalar({{{2}, gq(1)}}, 2));
}

TEST(series, multiply_commutes_and_distributes)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto a = fx::random_series(2, 6, seed, true, 6).component(0);
        const auto b = fx::random_series(2, 6, seed + 100, true, 6).component(1);
        const auto c = fx::random_series(2, 6, seed + 200, true, 6).component(0);
        EXPECT_EQ(multiply(a, b, 6), multiply(b, a, 6));
        auto bc = b;
        for (const auto &[q, v] : c.terms()) {
            bc.add_term(q, v);
        }
        auto lhs = multiply(a, bc, 6);
        auto rhs = multiply(a, b, 6);
        const auto ac = multiply(a, c, 6);
        for (const auto &[q, v] : ac.terms()) {
            rhs.add_term(q, v);
        }
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(series, compose_with_linear_map)
{
    const auto g = fx::random_series(2, 5, 7, true, 8);
    const auto lambda = build_series<exact_complex>(2, 5, {{0, {1, 0}, gq(1, 2)}, {1, {0, 1}, gq(0, 1, 3, 1)}});
    const auto out = compose(lambda, g);
    for (const auto &[q, v] : g.terms()) {
        EXPECT_EQ(out.coefficient(q, 0), gq(1, 2) * v[0]);
        EXPECT_EQ(out.coefficient(q, 1), gq(0, 1, 3, 1) * v[1]);
    }
    EXPECT_EQ(out.terms().size(), g.terms().size());
}

TEST(series, compose_hand_expansion)
{
    const auto f = build_series<exact_complex>(1, 4, {{0, {1}, gq(1)}, {0, {2}, gq(1)}});
    const auto expected =
        build_series<exact_complex>(1, 4, {{0, {1}, gq(1)}, {0, {2}, gq(2)}, {0, {3}, gq(2)}, {0, {4}, gq(1)}});
    EXPECT_EQ(compose(f, f), expected);
}

TEST(series, compose_order_two_linearization)
{
    // phi = w - 4 w^2 linearizes z/2 + z^2 through degree 2.
    const auto f = fx::half_germ_exact(2);
    const auto phi = build_series<exact_complex>(1, 2, {{0, {1}, gq(1)}, {0, {2}, gq(-4)}});
    const auto lambda = build_series<exact_complex>(1, 2, {{0, {1}, gq(1, 2)}});
    EXPECT_EQ(compose(f, phi), compose(phi, lambda));
}

TEST(series, compose_identity_and_associativity)
{
    for (std::uint64_t seed = 11; seed <= 16; ++seed) {
        const unsigned top = 6 + static_cast<unsigned>(seed % 3);
        const auto f = fx::random_series(2, top, seed, true, 5);
        const auto g = fx::random_series(2, top, seed + 50, true, 5);
        const auto h = fx::random_series(2, top, seed + 90, true, 5);
        const auto id = identity_series<exact_complex>(2, top);
        EXPECT_EQ(compose(f, id), f);
        EXPECT_EQ(compose(id, g), g);
        EXPECT_EQ(compose(compose(f, g), h), compose(f, compose(g, h))) << "seed " << seed;
    }
}

TEST(series, rescale_linear_is_identity)
{
    const auto f = build_series<exact_complex>(1, 4, {{0, {1}, gq(1, 2)}});
    const auto [g, info] = rescale_normalize(f);
    EXPECT_EQ(g, f);
    EXPECT_EQ(info.sigma, 1);
    EXPECT_TRUE(info.rho.is_zero());
}

TEST(series, rescale_direct_formula)
{
    const auto f = build_series<exact_complex>(1, 4, {{0, {1}, gq(1, 2)}, {0, {2}, gq(4)}});
    const auto [g, info] = rescale_normalize(f);
    EXPECT_EQ(info.sigma, 4);
    EXPECT_EQ(info.rho.to_double(), 2.0);
    EXPECT_EQ(g.coefficient({2}, 0), gq(1));
    EXPECT_EQ(g.coefficient({1}, 0), gq(1, 2));
    const auto [h, again] = rescale_normalize(g);
    EXPECT_EQ(again.sigma, 1);
    EXPECT_EQ(h, g);
}

TEST(series, rescale_float_bounds_coefficients)
{
    vector_series<double_complex> f(2, 5, 53);
    f.add_term(0, {1, 0}, {0.5, 0.0});
    f.add_term(1, {0, 1}, {2.0, 0.0});
    f.add_term(0, {2, 1}, {3.0, -7.0});
    f.add_term(1, {0, 5}, {0.1, 40.0});
    f.add_term(1, {1, 1}, {2.5, 0.0});
    const auto [g, info] = rescale_normalize(f);
    EXPECT_GE(info.sigma, 1.0);
    for (const auto &[q, v] : g.terms()) {
        if (q.degree() >= 2) {
            EXPECT_LE(max_norm(v, 64).to_double(), 1.0);
        }
    }
    EXPECT_EQ(g.coefficient({1, 0}, 0).re, 0.5);
}

TEST(series, rescale_exact_without_rational_root_fails)
{
    const auto f = build_series<exact_complex>(1, 4, {{0, {1}, gq(1, 2)}, {0, {3}, gq(2)}});
    EXPECT_THROW(rescale_normalize(f), error);
}

TEST(series, composition_is_thread_deterministic)
{
    const auto f = fx::random_series(3, 7, 3, true, 12);
    const auto g = fx::random_series(3, 7, 4, true, 12);
    const auto reference = compose(f, g);
    std::vector<std::future<vector_series<exact_complex>>> jobs;
    for (int i = 0; i < 4; ++i) {
        jobs.push_back(std::async(std::launch::async, [&] { return compose(f, g); }));
    }
    for (auto &j : jobs) {
        EXPECT_EQ(j.get(), reference);
    }
}
