#include "petersburg/analytics.hpp"

#include "support/brute_force.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace petersburg;
using petersburg::testing::brute_force_constant_beat;
using petersburg::testing::brute_force_martingale;
using petersburg::testing::pascal_row;
using petersburg::testing::pascal_tail;
using petersburg::testing::scan_strict_threshold;

namespace {
const ExactProbability kHalf = ExactProbability::half();
}

TEST(ExpectedValue, HalfOfTheFlips) {
    EXPECT_EQ(expected_value(10), Rational(5));
    EXPECT_EQ(expected_value(0), Rational(0));
    EXPECT_EQ(expected_value(200), Rational(100));
    EXPECT_EQ(expected_value(7), ratio(7, 2));
}

TEST(AverageBet, ClosedForm) {
    EXPECT_EQ(average_bet(1), Rational(1));
    EXPECT_EQ(average_bet(10), ratio(13, 4));
    EXPECT_EQ(average_bet(2), ratio(5, 4));
    EXPECT_EQ(average_bet(100), parse_rational("25.75"));
    EXPECT_THROW(average_bet(0), DomainError);
}

TEST(AverageBet, LengthTwoMatchesHandEnumeration) {
    // WW: 1,1  WL: 1,1  LW: 1,2  LL: 1,2  -> averages 1, 1, 3/2, 3/2.
    const Rational hand = (Rational(1) + 1 + ratio(3, 2) + ratio(3, 2)) / 4;
    EXPECT_EQ(hand, ratio(5, 4));
    EXPECT_EQ(brute_force_martingale(2).expected_average_bet, hand);
    EXPECT_EQ(average_bet(2), hand);
}

TEST(AverageBet, EqualsBruteForceExpectationUpToSixteen) {
    for (unsigned l = 1; l <= 16; ++l) EXPECT_EQ(average_bet(l), brute_force_martingale(l).expected_average_bet) << l;
}

TEST(ExpectedAverageBet, PerStrategy) {
    EXPECT_EQ(expected_average_bet(StrategySpec::martingale(Rational(2)), 10), ratio(13, 2));
    EXPECT_EQ(expected_average_bet(StrategySpec::constant_random(ratio(13, 4)), 10), ratio(13, 4));
    EXPECT_EQ(expected_average_bet(StrategySpec::synthetic_edge(Rational(3), ratio(3, 5)), 10), Rational(3));
    EXPECT_THROW(expected_average_bet(StrategySpec::martingale(), 0), DomainError);
}

TEST(BinomialPmf, Examples) {
    for (std::size_t l = 0; l <= 40; ++l)
        EXPECT_EQ(binomial_pmf(l, l, kHalf).value(), ratio(BigInt(1), pow2(l)));
    const auto row = pascal_row(10);
    EXPECT_EQ(row[5], BigInt(252));
    EXPECT_EQ(binomial_pmf(5, 10, kHalf).value(), ratio(252, 1024));
    EXPECT_EQ(binomial_pmf(5, 10, kHalf).to_fraction_string(), "63/256");
    EXPECT_EQ(binomial_pmf(0, 0, kHalf), ExactProbability::one());
    EXPECT_EQ(binomial_pmf(2, 3, ExactProbability(ratio(1, 3))).value(), ratio(2, 9));
    EXPECT_THROW(binomial_pmf(11, 10, kHalf), DomainError);
}

TEST(BinomialPmf, MatchesPascalTriangle) {
    for (unsigned l : {1U, 7U, 30U, 64U, 150U}) {
        const auto row = pascal_row(l);
        for (unsigned k = 0; k <= l; ++k)
            ASSERT_EQ(binomial_pmf(k, l, kHalf).value(), ratio(row[k], pow2(l))) << l << "," << k;
    }
}

TEST(BinomialPmf, NormalizedAndSymmetricUpTo300) {
    for (std::size_t l = 0; l <= 300; ++l) {
        Rational total{0};
        for (std::size_t k = 0; k <= l; ++k) {
            const auto p = binomial_pmf(k, l, kHalf);
            total += p.value();
            if (k < l - k) ASSERT_EQ(p, binomial_pmf(l - k, l, kHalf)) << l << "," << k;
        }
        ASSERT_EQ(total, Rational(1)) << l;
    }
}

TEST(BinomialPmf, NormalizedForBiasedCoins) {
    const ExactProbability p{ratio(3, 7)};
    for (std::size_t l = 0; l <= 60; ++l) {
        Rational total{0};
        for (std::size_t k = 0; k <= l; ++k) total += binomial_pmf(k, l, p).value();
        ASSERT_EQ(total, Rational(1)) << l;
    }
}

TEST(BinomialTail, Examples) {
    EXPECT_EQ(binomial_tail(0, 10, kHalf), ExactProbability::one());
    EXPECT_EQ(pascal_tail(6, 10), ratio(386, 1024));
    EXPECT_EQ(binomial_tail(6, 10, kHalf).value(), ratio(386, 1024));
    EXPECT_EQ(binomial_tail(11, 10, kHalf), ExactProbability::zero());
    EXPECT_THROW(binomial_tail(12, 10, kHalf), DomainError);
}

TEST(BinomialTail, MatchesPascalTailsAndBiasedSums) {
    for (unsigned l : {1U, 5U, 33U, 120U})
        for (unsigned k = 0; k <= l + 1; ++k) ASSERT_EQ(binomial_tail(k, l, kHalf).value(), pascal_tail(k, l));
    const ExactProbability p{ratio(3, 5)};
    Rational direct{0};
    for (std::size_t k = 4; k <= 9; ++k) direct += binomial_pmf(k, 9, p).value();
    EXPECT_EQ(binomial_tail(4, 9, p).value(), direct);
}

TEST(BeatThreshold, MatchesLinearScan) {
    // Scan oracle: smallest k with AB (2k - L) > EV.
    const auto scan = [](unsigned l) {
        const Rational ab = ratio(l - 1, 4) + 1;
        return scan_strict_threshold(ab, ratio(l, 2), l);
    };
    EXPECT_EQ(scan(10), 6U);
    EXPECT_EQ(scan(1), 1U);
    EXPECT_EQ(scan(200), 101U);
    EXPECT_EQ(beat_threshold(10), 6U);
    EXPECT_EQ(beat_threshold(1), 1U);
    EXPECT_EQ(beat_threshold(200), 101U);
    for (unsigned l = 1; l <= 400; ++l) ASSERT_EQ(beat_threshold(l), scan(l)) << l;
    EXPECT_THROW(beat_threshold(0), DomainError);
}

TEST(BeatProbability, Examples) {
    EXPECT_EQ(brute_force_constant_beat(ratio(13, 4), Rational(5), 10), ratio(386, 1024));
    EXPECT_EQ(beat_probability(10).value(), ratio(386, 1024));
    EXPECT_DOUBLE_EQ(beat_probability(10).to_double(), 0.376953125);

    EXPECT_EQ(brute_force_constant_beat(ratio(5, 4), Rational(1), 2), ratio(1, 4));
    EXPECT_EQ(beat_probability(2).value(), ratio(1, 4));

    const auto p200 = beat_probability(200);
    const Rational center = ratio(pascal_row(200)[100], pow2(200));
    EXPECT_EQ(p200.value(), (1 - center) / 2);
    // Continuity-corrected normal approximation of P(X >= 101), X ~ Bin(200, 1/2):
    // 0.5 - phi(0) * (0.5 / sigma), sigma = sqrt(200)/2.
    const double sigma = std::sqrt(200.0) / 2.0;
    const double normal = 0.5 - petersburg::testing::normal_pdf_at_zero() * (0.5 / sigma);
    EXPECT_NEAR(p200.to_double(), normal, 0.01);
    EXPECT_NEAR(p200.to_double(), 0.4718, 5e-5);
}

TEST(BeatProbability, AgreesWithBruteForceUpToSixteen) {
    for (unsigned l = 1; l <= 16; ++l) {
        // AB from the brute-force martingale expectation, not the closed form.
        const Rational ab = brute_force_martingale(l).expected_average_bet;
        ASSERT_EQ(beat_probability(l).value(), brute_force_constant_beat(ab, ratio(l, 2), l)) << l;
    }
}

TEST(BeatProbability, BelowHalfAndApproachingIt) {
    EXPECT_EQ(beat_probability(1), kHalf);
    for (std::size_t l = 2; l <= 300; ++l) {
        const auto p = beat_probability(l);
        ASSERT_GT(p.value(), 0);
        ASSERT_LT(p.value(), ratio(1, 2)) << l;
    }
    for (std::size_t l = 10; l <= 200; ++l) {
        const double gap = 0.5 - beat_probability(l).to_double();
        ASSERT_LE(gap, 1.5 / std::sqrt(static_cast<double>(l))) << l;
    }
}

TEST(Sweep, RowCountsAndValues) {
    const auto rows = sweep(10, 200, 1);
    ASSERT_EQ(rows.size(), 191U);
    for (const auto& r : rows) {
        EXPECT_GT(r.beat_probability.value(), 0);
        EXPECT_LT(r.beat_probability.value(), ratio(1, 2));
        EXPECT_EQ(r.average_bet, average_bet(r.flips));
        EXPECT_EQ(r.expected_value, expected_value(r.flips));
    }
    EXPECT_EQ(rows.front().flips, 10U);
    EXPECT_EQ(rows.back().flips, 200U);

    const auto single = sweep(10, 10, 1);
    ASSERT_EQ(single.size(), 1U);
    EXPECT_EQ(single[0].average_bet, ratio(13, 4));
    EXPECT_EQ(single[0].expected_value, Rational(5));
    EXPECT_EQ(single[0].win_threshold, 6U);
    EXPECT_EQ(single[0].beat_probability.to_fraction_string(), "193/512");

    const auto stepped = sweep(10, 200, 10);
    ASSERT_EQ(stepped.size(), 20U);
    EXPECT_EQ(stepped.back().flips, 200U);
    EXPECT_NEAR(stepped.back().beat_probability.to_double(), 0.4718, 5e-5);
}

TEST(Sweep, IndependentOfThreadCount) {
    const auto one = sweep(1, 120, 3, 1);
    const auto many = sweep(1, 120, 3, 5);
    ASSERT_EQ(one.size(), many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(one[i].flips, many[i].flips);
        EXPECT_EQ(one[i].beat_probability, many[i].beat_probability);
    }
}

TEST(Sweep, RejectsBadRanges) {
    EXPECT_THROW(sweep(0, 10, 1), DomainError);
    EXPECT_THROW(sweep(10, 9, 1), DomainError);
    EXPECT_THROW(sweep(1, 10, 0), DomainError);
}
