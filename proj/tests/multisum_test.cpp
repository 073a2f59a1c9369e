#include "qtails/multisum.hpp"

#include <gtest/gtest.h>

#include <random>

#include "qtails/series.hpp"

using namespace qtails;

namespace {

LinearForm lf(std::initializer_list<std::pair<int, long long>> terms, long long constant = 0) {
    LinearForm f(constant);
    for (auto& [i, c] : terms) f.add_coefficient(i, c);
    return f;
}

/* sum_{n>=0} q^{n^2+An} / ((q)_n (q)_{n+A}) */
MultisumSpec andy_spec(long long a) {
    MultisumSpec s;
    s.nvars = 1;
    s.exponent.set_quad(0, 0, 1);
    s.exponent.set_linear(0, a);
    s.denominator_pochhammers = {lf({{0, 1}}), lf({{0, 1}}, a)};
    return s;
}

/* sum_{n>=0} (-1)^n q^{n(n+1)/2} / (q)_n  ( = (q)_inf ) */
MultisumSpec euler_sign_spec() {
    MultisumSpec s;
    s.nvars = 1;
    s.exponent.set_quad(0, 0, Rational(1, 2));
    s.exponent.set_linear(0, Rational(1, 2));
    s.sign = lf({{0, 1}});
    s.denominator_pochhammers = {lf({{0, 1}})};
    return s;
}

/* The m,n double sum whose value is h_4. */
MultisumSpec double_spec() {
    MultisumSpec s;
    s.nvars = 2;
    s.exponent.set_quad(0, 0, 1);
    s.exponent.set_linear(0, 1);
    s.exponent.set_quad(0, 1, 1);
    s.exponent.set_quad(1, 1, Rational(1, 2));
    s.exponent.set_linear(1, Rational(1, 2));
    s.sign = lf({{1, 1}});
    s.denominator_pochhammers = {lf({{0, 1}}), lf({{1, 1}})};
    return s;
}

/* The five-variable knot sum whose value is h_5 / (q)_inf^5. */
MultisumSpec s51_spec() {
    MultisumSpec s;
    s.nvars = 5; // a b c d e
    s.exponent.set_quad(0, 0, Rational(5, 2));
    s.exponent.set_linear(0, Rational(3, 2));
    for (int v = 1; v <= 4; ++v) {
        s.exponent.set_quad(0, v, 1);
        s.exponent.set_linear(v, 1);
    }
    s.exponent.set_quad(1, 2, 1);
    s.exponent.set_quad(2, 3, 1);
    s.exponent.set_quad(3, 4, 1);
    s.sign = lf({{0, 1}});
    for (int v = 0; v <= 4; ++v) s.denominator_pochhammers.push_back(lf({{v, 1}}));
    for (int v = 1; v <= 4; ++v) s.denominator_pochhammers.push_back(lf({{0, 1}, {v, 1}}));
    return s;
}

TEST(Integrality, KnotSumExponents) {
    QuadraticExponent e;
    e.set_quad(0, 0, Rational(5, 2));
    e.set_linear(0, Rational(3, 2));
    EXPECT_TRUE(integrality_check(e)); // a(5a+3)/2

    QuadraticExponent half;
    half.set_linear(0, Rational(1, 2));
    EXPECT_FALSE(integrality_check(half)); // a/2

    QuadraticExponent tri;
    tri.set_quad(0, 0, Rational(1, 2));
    tri.set_linear(0, Rational(1, 2));
    tri.set_quad(0, 1, 1);
    EXPECT_TRUE(integrality_check(tri)); // n(n+1)/2 + mn
}

TEST(Integrality, FiniteCheckAgreesWithBruteForce) {
    QuadraticExponent tri;
    tri.set_quad(0, 0, Rational(1, 2));
    tri.set_linear(0, Rational(1, 2));
    tri.set_quad(0, 1, 1);
    for (long long n = 0; n <= 10; ++n)
        for (long long m = 0; m <= 10; ++m) {
            std::vector<long long> x = {n, m};
            EXPECT_TRUE(tri.eval(x).is_integer());
        }

    std::mt19937 rng(2024);
    std::uniform_int_distribution<long long> num(-6, 6);
    std::uniform_int_distribution<long long> den(1, 4);
    for (int trial = 0; trial < 100; ++trial) {
        QuadraticExponent e;
        const int nv = 2 + trial % 2;
        e.set_constant(Rational(num(rng), den(rng)));
        for (int i = 0; i < nv; ++i) {
            e.set_linear(i, Rational(num(rng), den(rng)));
            for (int j = i; j < nv; ++j) e.set_quad(i, j, Rational(num(rng), den(rng)));
        }
        bool brute = true;
        std::vector<long long> x(static_cast<size_t>(nv), 0);
        for (long long p = 0; brute && p < 11 * 11 * (nv == 3 ? 11 : 1); ++p) {
            long long t = p;
            for (int i = 0; i < nv; ++i) { x[static_cast<size_t>(i)] = t % 11; t /= 11; }
            brute = e.eval(x).is_integer();
        }
        EXPECT_EQ(integrality_check(e), brute) << "trial " << trial;
    }
}

TEST(Strategy, Classification) {
    auto s51 = strategy_check(s51_spec());
    ASSERT_EQ(s51.size(), 5u);
    for (auto st : s51) EXPECT_EQ(st, VarStrategy::monotone);

    auto andy = strategy_check(andy_spec(-2));
    ASSERT_EQ(andy.size(), 1u);
    EXPECT_EQ(andy[0], VarStrategy::diagonal_bounded);

    MultisumSpec bad;
    bad.nvars = 1;
    bad.exponent.set_linear(0, -3);
    EXPECT_THROW(strategy_check(bad), UnboundedVariable);
}

TEST(TermSeries, Cases) {
    MultisumSpec trivial;
    trivial.nvars = 2;
    trivial.exponent.set_quad(0, 0, 1);
    trivial.exponent.set_quad(1, 1, 1);
    std::vector<long long> origin = {0, 0};
    auto t = term_series(trivial, origin, 8);
    EXPECT_EQ(first_difference(t, TruncatedSeries::one(8)), std::nullopt);

    // the n = 1 term of sum (-1)^n q^{n(n+1)/2}/(q)_n: -q/(1-q)
    auto e2 = euler_sign_spec();
    std::vector<long long> pt = {1};
    auto term = term_series(e2, pt, 6);
    for (int i = 1; i <= 6; ++i) EXPECT_EQ(term[i], -1);
    EXPECT_EQ(term[0], 0);

    // a negative denominator subscript kills the term
    auto andy = andy_spec(-1);
    std::vector<long long> zero = {0};
    EXPECT_TRUE(term_series(andy, zero, 6).is_zero());
}

TEST(Evaluate, EmptySpecIsOne) {
    MultisumSpec s;
    auto [v, st] = evaluate(s, 10);
    EXPECT_EQ(first_difference(v, TruncatedSeries::one(10)), std::nullopt);
    EXPECT_EQ(st.points_visited, 1u);
    EXPECT_EQ(st.points_contributing, 1u);
}

TEST(Evaluate, S51MatchesEtaTheta) {
    const int order = 12;
    auto [got, st] = evaluate(s51_spec(), order);
    EXPECT_EQ(got[0], 1);
    EXPECT_EQ(got[1], 4);
    EXPECT_EQ(got[2], 15);
    EXPECT_EQ(got[3], 45);
    auto want = mul(h_series(5, order), qpoch_infinite_power(1, -5, order));
    EXPECT_EQ(first_difference(got, want), std::nullopt);
    EXPECT_LE(st.points_contributing, st.points_visited);
}

TEST(Evaluate, EulerSignSpec) {
    auto [got, st] = evaluate(euler_sign_spec(), 40);
    EXPECT_EQ(first_difference(got, qpoch_infinite_power(1, 1, 40)), std::nullopt);
}

TEST(Evaluate, DoubleSpecIsH4) {
    auto [got, st] = evaluate(double_spec(), 30);
    EXPECT_EQ(first_difference(got, h_series(4, 30)), std::nullopt);
}

TEST(Evaluate, AndyHoldsForAnyInteger) {
    auto euler_inv = qpoch_infinite_power(1, -1, 30);
    for (long long a = -3; a <= 3; ++a) {
        auto [got, st] = evaluate(andy_spec(a), 30);
        EXPECT_EQ(first_difference(got, euler_inv), std::nullopt) << "A = " << a;
    }
}

TEST(Evaluate, NegativeSubscriptSymmetry) {
    // holds only because terms with (q)_{n+A}, n+A < 0, vanish
    for (long long a = 1; a <= 3; ++a) {
        auto [plus, st1] = evaluate(andy_spec(a), 30);
        auto [minus, st2] = evaluate(andy_spec(-a), 30);
        EXPECT_EQ(first_difference(plus, minus), std::nullopt) << "A = " << a;
    }
}

TEST(Evaluate, NaiveOracleEquivalence) {
    auto s = s51_spec();
    for (int order : {8, 10}) {
        auto [pruned, st] = evaluate(s, order);
        auto naive = evaluate_naive(s, order);
        EXPECT_EQ(first_difference(pruned, naive), std::nullopt) << "order " << order;
    }
    auto a = andy_spec(-2);
    auto naive = evaluate_naive(a, 12);
    auto [pruned, st] = evaluate(a, 12);
    EXPECT_EQ(first_difference(pruned, naive), std::nullopt);
}

TEST(Evaluate, PruningSoundness) {
    EvalOptions no_prune;
    no_prune.prune = false;
    for (const auto& s : {s51_spec(), double_spec(), andy_spec(-3)}) {
        auto [fast, st1] = evaluate(s, 12);
        auto [full, st2] = evaluate(s, 12, no_prune);
        EXPECT_EQ(first_difference(fast, full), std::nullopt);
        EXPECT_GE(st2.points_visited, st1.points_visited);
    }
}

TEST(Evaluate, RejectsNonIntegralExponent) {
    MultisumSpec s;
    s.nvars = 1;
    s.exponent.set_linear(0, Rational(1, 2));
    EXPECT_THROW(evaluate(s, 10), Error);
}

TEST(Evaluate, RejectsNegativeCross) {
    MultisumSpec s;
    s.nvars = 2;
    s.exponent.set_quad(0, 0, 1);
    s.exponent.set_quad(1, 1, 1);
    s.exponent.set_quad(0, 1, -1);
    EXPECT_THROW(evaluate(s, 10), Error);
}

TEST(Evaluate, RejectsVariableWithoutGrowth) {
    MultisumSpec s;
    s.nvars = 2;
    s.exponent.set_quad(0, 0, 1);
    // variable 1 appears nowhere in the exponent
    s.denominator_pochhammers = {lf({{1, 1}})};
    EXPECT_THROW(evaluate(s, 10), Error);
}

TEST(EnumerationStatsInvariant, ContributingNeverExceedsVisited) {
    for (const auto& s : {s51_spec(), double_spec(), euler_sign_spec()}) {
        auto [v, st] = evaluate(s, 15);
        EXPECT_LE(st.points_contributing, st.points_visited);
        EXPECT_GT(st.points_visited, 0u);
    }
}

} // namespace
