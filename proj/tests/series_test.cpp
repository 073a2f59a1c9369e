#include "qtails/series.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"

using namespace qtails;

namespace {

TruncatedSeries from_coeffs(const std::vector<long>& c, int order) {
    TruncatedSeries s(order);
    for (size_t i = 0; i < c.size() && i <= static_cast<size_t>(order); ++i)
        s.coeff_ref(static_cast<long long>(i)) = c[i];
    return s;
}

void expect_coeffs(const TruncatedSeries& s, const std::vector<long>& want) {
    ASSERT_GE(s.order() + 1, static_cast<long long>(want.size()));
    for (size_t i = 0; i < want.size(); ++i)
        EXPECT_EQ(s[static_cast<long long>(i)], want[i]) << "coefficient of q^" << i;
}

TruncatedSeries random_series(std::mt19937& rng, int order, bool unit_constant) {
    std::uniform_int_distribution<long> dist(-9, 9);
    TruncatedSeries s(order);
    for (long long i = 0; i <= order; ++i) s.coeff_ref(i) = dist(rng);
    if (unit_constant) s.coeff_ref(0) = (dist(rng) % 2 == 0) ? 1 : -1;
    return s;
}

TEST(Series, AddCancellation) {
    auto x = from_coeffs({1, -1}, 10); // 1 - q
    auto y = from_coeffs({0, 1}, 10);  // q
    expect_coeffs(add(x, y), {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
}

TEST(Series, AddIdentityElement) {
    std::mt19937 rng(7);
    auto x = random_series(rng, 20, false);
    auto z = TruncatedSeries(20);
    EXPECT_EQ(first_difference(add(x, z), x), std::nullopt);
}

TEST(Series, AddThetaBlocks) {
    // h_4 + h_5 at order 4, cross-checked against the naive bilateral sum.
    auto s = add(h_series(4, 4), h_series(5, 4));
    expect_coeffs(s, {2, -2, 0, 1, -1});
    auto o4 = oracles::theta_sum_naive(4, 4);
    auto o5 = oracles::theta_sum_naive(5, 4);
    for (int i = 0; i <= 4; ++i) EXPECT_EQ(s[i], o4[i] + o5[i]);
}

TEST(Series, MulBasics) {
    auto x = from_coeffs({1, 1}, 2);
    expect_coeffs(mul(x, x), {1, 2, 1});
}

TEST(Series, MulGeometricIsOne) {
    auto one_minus_q = from_coeffs({1, -1}, 30);
    auto geom = invert(one_minus_q);
    auto p = mul(one_minus_q, geom);
    EXPECT_EQ(first_difference(p, TruncatedSeries::one(30)), std::nullopt);
}

TEST(Series, MulEulerInverse) {
    auto e = qpoch_infinite_power(1, 1, 50);
    auto ei = qpoch_infinite_power(1, -1, 50);
    EXPECT_EQ(first_difference(mul(e, ei), TruncatedSeries::one(50)), std::nullopt);
}

TEST(Series, InvertGeometric) {
    auto y = invert(from_coeffs({1, -1}, 6));
    expect_coeffs(y, {1, 1, 1, 1, 1, 1, 1});
}

TEST(Series, InvertFinitePochCountsPartitions) {
    auto y = invert(qpoch_finite(1, 2, 4));
    expect_coeffs(y, {1, 1, 2, 2, 3});
    for (int n = 0; n <= 4; ++n)
        EXPECT_EQ(y[n], oracles::partitions_max_part(n, 2));
}

TEST(Series, InvertRequiresUnitConstant) {
    auto x = from_coeffs({0, 1, 1}, 5); // q + q^2
    EXPECT_THROW(invert(x), NonUnitConstantTerm);
}

TEST(Series, FirstDifference) {
    std::mt19937 rng(11);
    auto x = random_series(rng, 25, false);
    EXPECT_EQ(first_difference(x, x), std::nullopt);
    EXPECT_EQ(first_difference(h_series(2, 10), h_series(3, 10)), 1);
    EXPECT_EQ(first_difference(h_series(4, 10), h_series(5, 10)), 3);
}

TEST(Series, QpochFinite) {
    expect_coeffs(qpoch_finite(1, 0, 5), {1, 0, 0, 0, 0, 0});
    expect_coeffs(qpoch_finite(1, 3, 6), {1, -1, -1, 0, 1, 1, -1});
    expect_coeffs(qpoch_finite(2, 2, 5), {1, 0, -1, -1, 0, 1});
}

TEST(Series, QpochInfinitePower) {
    expect_coeffs(qpoch_infinite_power(1, 0, 5), {1, 0, 0, 0, 0, 0});
    expect_coeffs(qpoch_infinite_power(1, 1, 15),
                  {1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1});
    expect_coeffs(qpoch_infinite_power(1, -5, 3), {1, 5, 20, 65});
    for (int n = 0; n <= 3; ++n)
        EXPECT_EQ(qpoch_infinite_power(1, -5, 3)[n], oracles::colored_partitions(n, 5));
}

TEST(Series, PentagonalPattern) {
    auto e = qpoch_infinite_power(1, 1, 200);
    auto signs = oracles::pentagonal_signs(200);
    for (long long n = 0; n <= 200; ++n) {
        auto it = signs.find(n);
        if (it == signs.end())
            EXPECT_EQ(e[n], 0) << "q^" << n;
        else
            EXPECT_EQ(e[n], it->second) << "q^" << n;
    }
}

TEST(Series, HSeriesDegenerateCases) {
    for (int order : {0, 1, 7, 50, 200}) {
        EXPECT_TRUE(h_series(1, order).is_zero()) << "h_1 at order " << order;
        EXPECT_EQ(first_difference(h_series(2, order), TruncatedSeries::one(order)), std::nullopt)
            << "h_2 at order " << order;
    }
}

TEST(Series, HSeriesEqualsEuler) {
    EXPECT_EQ(first_difference(h_series(3, 200), qpoch_infinite_power(1, 1, 200)), std::nullopt);
}

TEST(Series, HSeriesExamples) {
    expect_coeffs(h_series(4, 10), {1, -1, 0, 1, 0, 0, -1, 0, 0, 0, 1});
    expect_coeffs(h_series(6, 16), {1, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 1});
    for (int b = 1; b <= 12; ++b) {
        auto got = h_series(b, 60);
        auto want = oracles::theta_sum_naive(b, 60);
        for (long long n = 0; n <= 60; ++n)
            EXPECT_EQ(got[n], want[static_cast<size_t>(n)]) << "h_" << b << " at q^" << n;
    }
}

TEST(Series, HSeriesRejectsBadSubscript) {
    EXPECT_THROW(h_series(0, 10), Error);
}

TEST(SeriesProperties, MulInverseIsOne) {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        auto x = random_series(rng, 30, true);
        auto p = mul(x, invert(x));
        EXPECT_EQ(first_difference(p, TruncatedSeries::one(30)), std::nullopt);
    }
}

TEST(SeriesProperties, CommutativeAssociative) {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        auto x = random_series(rng, 15 + trial % 4, false);
        auto y = random_series(rng, 15 + (trial + 1) % 4, false);
        auto z = random_series(rng, 15 + (trial + 2) % 4, false);
        EXPECT_EQ(first_difference(add(x, y), add(y, x)), std::nullopt);
        EXPECT_EQ(first_difference(mul(x, y), mul(y, x)), std::nullopt);
        EXPECT_EQ(first_difference(add(add(x, y), z), add(x, add(y, z))), std::nullopt);
        EXPECT_EQ(first_difference(mul(mul(x, y), z), mul(x, mul(y, z))), std::nullopt);
    }
}

TEST(SeriesProperties, ExactBigCoefficients) {
    auto s = qpoch_infinite_power(1, -10, 20);
    EXPECT_EQ(s[20], oracles::colored_partitions(20, 10));
}

TEST(Series, ToString) {
    EXPECT_EQ(to_string(h_series(4, 6)), "1 - q + q^3 - q^6");
    EXPECT_EQ(to_string(TruncatedSeries(5)), "0");
    EXPECT_EQ(to_string(from_coeffs({-2, 0, 3}, 2)), "-2 + 3*q^2");
}

} // namespace
