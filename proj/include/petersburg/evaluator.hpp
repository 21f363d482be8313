#pragma once

#include "petersburg/engine.hpp"
#include "petersburg/exact.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace petersburg {

inline constexpr double kDefaultAlpha = 0.01;
/// p-values at or above this are indistinguishable from luck.
inline constexpr double kNonCognitiveFloor = 0.25;
inline constexpr double kTowardHalfCeiling = 0.55;

enum class Verdict { Cognitive, NonCognitive, Indeterminate };
enum class SlopeClass { TowardZero, TowardHalf, Neither };

/// Where the matched baseline's constant bet comes from.
enum class BaselineSource {
    Realized,          // the trajectory's own average bet
    StrategyExpected,  // the generating strategy's expected average bet
};

std::string to_string(Verdict v);
std::string to_string(SlopeClass c);
std::string to_string(BaselineSource b);

struct EvaluationReport {
    std::size_t flips = 0;
    Rational observed_gain;
    Rational matched_bet;
    Rational realized_average_bet;
    BaselineSource baseline = BaselineSource::Realized;
    std::size_t required_wins = 0;
    /// Chance that a constant-bet fair-coin baseline does at least as well.
    ExactProbability p_random;
    std::optional<double> alpha;
    std::optional<Verdict> verdict;
};

/// Smallest k in [0, L] with matched_bet (2k - L) >= gain, or L + 1 when none.
std::size_t required_wins(const Rational& gain, const Rational& matched_bet, std::size_t flips);

EvaluationReport random_equivalence_pvalue(const Trajectory& trajectory);
EvaluationReport random_equivalence_pvalue(const Trajectory& trajectory, const Rational& matched_bet,
                                           BaselineSource source);
/// Baseline bet = expected average bet of `generator` over the trajectory's length.
EvaluationReport random_equivalence_pvalue(const Trajectory& trajectory, const StrategySpec& generator);

EvaluationReport classify(EvaluationReport report, double alpha = kDefaultAlpha);

struct TrendPoint {
    std::size_t flips = 0;
    double p_random = 0.0;
};

struct TrendReport {
    std::vector<TrendPoint> points;
    SlopeClass slope_class = SlopeClass::Neither;
};

/// TowardZero: last p below alpha and p non-increasing over the final three
/// points. TowardHalf: final three p all in [0.25, 0.55]. Otherwise Neither.
/// Fewer than three points is Neither; L must be strictly increasing.
TrendReport trend(std::span<const TrendPoint> points, double alpha = kDefaultAlpha);

struct MedianPoint {
    std::size_t flips = 0;
    ExactProbability median;
    std::size_t count = 0;
};

/// Median p_random per distinct L, ascending in L. Even counts average the two middle values.
std::vector<MedianPoint> median_by_length(std::span<const EvaluationReport> reports);

/// trend() over the per-L medians of `reports`.
TrendReport trend(std::span<const EvaluationReport> reports, double alpha = kDefaultAlpha);

}  // namespace petersburg
