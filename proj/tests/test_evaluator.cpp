#include "petersburg/evaluator.hpp"

#include "petersburg/analytics.hpp"
#include "support/brute_force.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace petersburg;
using petersburg::testing::pascal_tail;

namespace {

Trajectory constant_trajectory(const Rational& bet, const std::vector<bool>& wins) {
    std::vector<BetRecord> records;
    for (bool w : wins)
        records.push_back(settle({bet, FlipOutcome::Heads}, w ? FlipOutcome::Heads : FlipOutcome::Tails,
                                 records.empty() ? nullptr : &records.back()));
    return Trajectory{std::move(records)};
}

std::vector<bool> wins_then_losses(std::size_t wins, std::size_t losses) {
    std::vector<bool> out(wins, true);
    out.insert(out.end(), losses, false);
    return out;
}

}  // namespace

TEST(RandomEquivalence, AllWinsIsOnlyTiedByTheAllWinBaseline) {
    const auto t = constant_trajectory(Rational(1), wins_then_losses(100, 0));
    const auto r = random_equivalence_pvalue(t);
    EXPECT_EQ(r.observed_gain, Rational(100));
    EXPECT_EQ(r.matched_bet, Rational(1));
    EXPECT_EQ(r.required_wins, 100U);
    EXPECT_EQ(r.p_random.value(), ratio(BigInt(1), pow2(100)));
}

TEST(RandomEquivalence, ZeroGainOverTenFlips) {
    const auto t = constant_trajectory(Rational(1), wins_then_losses(5, 5));
    const auto r = random_equivalence_pvalue(t);
    EXPECT_EQ(r.observed_gain, Rational(0));
    EXPECT_EQ(r.required_wins, 5U);
    EXPECT_EQ(pascal_tail(5, 10), ratio(638, 1024));
    EXPECT_EQ(r.p_random.value(), ratio(638, 1024));
}

TEST(RandomEquivalence, HopelessLossesGiveProbabilityOne) {
    const auto t = constant_trajectory(ratio(3, 2), wins_then_losses(0, 12));
    const auto r = random_equivalence_pvalue(t);
    EXPECT_EQ(r.observed_gain, -r.matched_bet * 12);
    EXPECT_EQ(r.required_wins, 0U);
    EXPECT_EQ(r.p_random, ExactProbability::one());
    // A smaller matched bet makes the bar even lower.
    EXPECT_EQ(random_equivalence_pvalue(t, Rational(1), BaselineSource::Realized).p_random, ExactProbability::one());
    EXPECT_LT(random_equivalence_pvalue(t, Rational(5), BaselineSource::Realized).p_random, ExactProbability::one());
}

TEST(RandomEquivalence, UnreachableGainGivesZero) {
    const auto t = constant_trajectory(Rational(1), wins_then_losses(10, 0));
    const auto r = random_equivalence_pvalue(t, ratio(1, 2), BaselineSource::Realized);
    EXPECT_EQ(r.required_wins, 11U);
    EXPECT_EQ(r.p_random, ExactProbability::zero());
}

TEST(RandomEquivalence, StrategyBaselineUsesExpectedAverageBet) {
    const auto t = play(StrategySpec::martingale(), 100, 3);
    const auto r = random_equivalence_pvalue(t, StrategySpec::martingale());
    EXPECT_EQ(r.matched_bet, parse_rational("25.75"));
    EXPECT_EQ(r.baseline, BaselineSource::StrategyExpected);
    EXPECT_EQ(r.realized_average_bet, t.average_bet());
    EXPECT_EQ(r.required_wins, required_wins(t.final_gain(), parse_rational("25.75"), 100));
}

TEST(RandomEquivalence, RejectsEmptyTrajectories) {
    EXPECT_THROW(random_equivalence_pvalue(Trajectory{}), DomainError);
    EXPECT_THROW(random_equivalence_pvalue(Trajectory{}, StrategySpec::martingale()), DomainError);
    EXPECT_THROW(required_wins(Rational(1), Rational(0), 5), DomainError);
}

TEST(Classify, Bands) {
    EvaluationReport r;
    r.p_random = ExactProbability(ratio(BigInt(1), pow2(100)));
    EXPECT_EQ(classify(r, 0.01).verdict, Verdict::Cognitive);
    r.p_random = ExactProbability(ratio(47, 100));
    EXPECT_EQ(classify(r, 0.01).verdict, Verdict::NonCognitive);
    r.p_random = ExactProbability(ratio(5, 100));
    EXPECT_EQ(classify(r, 0.01).verdict, Verdict::Indeterminate);
    r.p_random = ExactProbability(ratio(1, 4));
    EXPECT_EQ(classify(r, 0.01).verdict, Verdict::NonCognitive);
    r.p_random = ExactProbability(ratio(1, 100));
    EXPECT_EQ(classify(r, 0.01).verdict, Verdict::Indeterminate);
    EXPECT_EQ(classify(r).alpha, kDefaultAlpha);
}

TEST(Classify, CognitiveImpliesBelowAlpha) {
    std::mt19937_64 gen(4);
    for (int i = 0; i < 500; ++i) {
        EvaluationReport r;
        r.p_random = ExactProbability(ratio(static_cast<unsigned long>(gen() % 1001), 1000UL));
        const double alpha = 0.001 + static_cast<double>(gen() % 998) / 1000.0;
        const auto c = classify(r, alpha);
        if (c.verdict == Verdict::Cognitive) EXPECT_LT(c.p_random.to_double(), alpha);
        else EXPECT_GE(c.p_random.to_double(), alpha);
    }
}

TEST(Classify, RejectsAlphaOutsideUnitInterval) {
    EvaluationReport r;
    EXPECT_THROW(classify(r, 0.0), DomainError);
    EXPECT_THROW(classify(r, 1.0), DomainError);
    EXPECT_THROW(classify(r, -0.5), DomainError);
}

TEST(Trend, Rules) {
    const std::vector<TrendPoint> falling{{50, 0.4}, {100, 0.1}, {200, 0.001}};
    EXPECT_EQ(trend(falling, 0.01).slope_class, SlopeClass::TowardZero);

    const std::vector<TrendPoint> flat{{50, 0.44}, {100, 0.46}, {200, 0.47}};
    EXPECT_EQ(trend(flat, 0.01).slope_class, SlopeClass::TowardHalf);

    const std::vector<TrendPoint> bounce{{50, 0.3}, {100, 0.001}, {200, 0.005}};
    EXPECT_EQ(trend(bounce, 0.01).slope_class, SlopeClass::Neither);

    const std::vector<TrendPoint> high{{10, 0.9}, {20, 0.9}, {30, 0.9}};
    EXPECT_EQ(trend(high, 0.01).slope_class, SlopeClass::Neither);

    // Only the final three points matter.
    const std::vector<TrendPoint> late{{5, 0.001}, {10, 0.3}, {20, 0.4}, {40, 0.5}};
    EXPECT_EQ(trend(late, 0.01).slope_class, SlopeClass::TowardHalf);
}

TEST(Trend, ShortInputsEchoPoints) {
    const std::vector<TrendPoint> two{{10, 0.001}, {20, 0.0001}};
    const auto t = trend(two, 0.01);
    EXPECT_EQ(t.slope_class, SlopeClass::Neither);
    ASSERT_EQ(t.points.size(), 2U);
    EXPECT_EQ(t.points[1].flips, 20U);
    EXPECT_EQ(trend(std::vector<TrendPoint>{}, 0.01).slope_class, SlopeClass::Neither);
}

TEST(Trend, RequiresStrictlyIncreasingLengths) {
    const std::vector<TrendPoint> repeated{{10, 0.4}, {10, 0.4}, {20, 0.4}};
    EXPECT_THROW(trend(repeated, 0.01), DomainError);
}

TEST(MedianByLength, OddAndEvenCounts) {
    auto report = [](std::size_t flips, const Rational& p) {
        EvaluationReport r;
        r.flips = flips;
        r.p_random = ExactProbability(p);
        return r;
    };
    const std::vector<EvaluationReport> reports{
        report(20, ratio(1, 2)), report(10, ratio(1, 10)), report(10, ratio(3, 10)),
        report(10, ratio(2, 10)), report(20, ratio(1, 4)),
    };
    const auto m = median_by_length(reports);
    ASSERT_EQ(m.size(), 2U);
    EXPECT_EQ(m[0].flips, 10U);
    EXPECT_EQ(m[0].count, 3U);
    EXPECT_EQ(m[0].median.value(), ratio(1, 5));
    EXPECT_EQ(m[1].median.value(), ratio(3, 8));
}

TEST(EvaluatorProperties, LargerGainNeverRaisesPValue) {
    std::mt19937_64 gen(8);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t l = 1 + gen() % 60;
        const Rational bet = ratio(static_cast<unsigned long>(1 + gen() % 9), static_cast<unsigned long>(1 + gen() % 4));
        ExactProbability previous = ExactProbability::one();
        for (long g = -static_cast<long>(2 * l) * 3; g <= static_cast<long>(2 * l) * 3; ++g) {
            const Rational gain = ratio(g, 3UL) * bet;
            const auto p = binomial_tail(required_wins(gain, bet, l), l, ExactProbability::half());
            ASSERT_LE(p, previous);
            previous = p;
        }
    }
}

TEST(EvaluatorProperties, ScaleInvariance) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const std::size_t l = 1 + seed % 40;
        const Rational c = ratio(static_cast<unsigned long>(seed % 7 + 1), static_cast<unsigned long>(seed % 3 + 1));
        const auto unit = play(StrategySpec::martingale(), l, seed);
        const auto scaled = play(StrategySpec::martingale(c), l, seed);
        const auto a = random_equivalence_pvalue(unit);
        const auto b = random_equivalence_pvalue(scaled);
        ASSERT_EQ(b.observed_gain, a.observed_gain * c);
        ASSERT_EQ(b.matched_bet, a.matched_bet * c);
        ASSERT_EQ(b.required_wins, a.required_wins);
        ASSERT_EQ(b.p_random, a.p_random);
        const auto sa = random_equivalence_pvalue(unit, StrategySpec::martingale());
        const auto sb = random_equivalence_pvalue(scaled, StrategySpec::martingale(c));
        ASSERT_EQ(sb.p_random, sa.p_random);
    }
}

TEST(EvaluatorProperties, ReducesToBeatThresholdJustAboveEV) {
    const Rational epsilon = ratio(1, 1'000'000);
    for (std::size_t l = 1; l <= 300; ++l) {
        const Rational ab = average_bet(l);
        const Rational ev = expected_value(l);
        ASSERT_EQ(required_wins(ev + epsilon, ab, l), beat_threshold(l)) << l;
        const std::size_t at_ev = required_wins(ev, ab, l);
        // >= admits an exact tie, which > does not.
        ASSERT_TRUE(at_ev == beat_threshold(l) || at_ev + 1 == beat_threshold(l)) << l;
    }
}

TEST(EvaluatorDiscrimination, MartingaleLooksRandomEdgeDoesNot) {
    const auto martingale = StrategySpec::martingale();
    const auto edge = StrategySpec::synthetic_edge(Rational(1), ratio(3, 5));
    std::vector<EvaluationReport> m_reports, e_reports;
    for (std::size_t l : {50U, 100U, 200U})
        for (std::uint64_t i = 0; i < 301; ++i) {
            m_reports.push_back(random_equivalence_pvalue(play(martingale, l, mix_seed(1, i)), martingale));
            e_reports.push_back(random_equivalence_pvalue(play(edge, l, mix_seed(2, i)), edge));
        }
    EXPECT_EQ(trend(m_reports).slope_class, SlopeClass::TowardHalf);
    EXPECT_EQ(trend(e_reports).slope_class, SlopeClass::TowardZero);
}
