#include "petersburg/evaluator.hpp"

#include "petersburg/analytics.hpp"

#include <algorithm>
#include <map>

namespace petersburg {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Cognitive: return "Cognitive";
    case Verdict::NonCognitive: return "NonCognitive";
    case Verdict::Indeterminate: return "Indeterminate";
    }
    return "?";
}

std::string to_string(SlopeClass c) {
    switch (c) {
    case SlopeClass::TowardZero: return "TowardZero";
    case SlopeClass::TowardHalf: return "TowardHalf";
    case SlopeClass::Neither: return "Neither";
    }
    return "?";
}

std::string to_string(BaselineSource b) {
    return b == BaselineSource::Realized ? "realized" : "strategy";
}

std::size_t required_wins(const Rational& gain, const Rational& matched_bet, std::size_t flips) {
    if (matched_bet <= 0) throw DomainError("matched bet must be positive");
    const Rational length{static_cast<unsigned long>(flips)};
    const BigInt k = ceil(Rational{(gain / matched_bet + length) / 2});
    if (k <= 0) return 0;
    if (k > length) return flips + 1;
    return static_cast<std::size_t>(k.get_ui());
}

EvaluationReport random_equivalence_pvalue(const Trajectory& trajectory, const Rational& matched_bet,
                                           BaselineSource source) {
    if (trajectory.length() == 0) throw DomainError("cannot evaluate an empty trajectory");
    if (trajectory.total_staked() <= 0) throw DomainError("cannot evaluate a trajectory with zero stake");
    EvaluationReport r;
    r.flips = trajectory.length();
    r.observed_gain = trajectory.final_gain();
    r.matched_bet = matched_bet;
    r.realized_average_bet = trajectory.average_bet();
    r.baseline = source;
    r.required_wins = required_wins(r.observed_gain, matched_bet, r.flips);
    r.p_random = binomial_tail(r.required_wins, r.flips, ExactProbability::half());
    return r;
}

EvaluationReport random_equivalence_pvalue(const Trajectory& trajectory) {
    if (trajectory.length() == 0) throw DomainError("cannot evaluate an empty trajectory");
    return random_equivalence_pvalue(trajectory, trajectory.average_bet(), BaselineSource::Realized);
}

EvaluationReport random_equivalence_pvalue(const Trajectory& trajectory, const StrategySpec& generator) {
    if (trajectory.length() == 0) throw DomainError("cannot evaluate an empty trajectory");
    return random_equivalence_pvalue(trajectory, expected_average_bet(generator, trajectory.length()),
                                     BaselineSource::StrategyExpected);
}

EvaluationReport classify(EvaluationReport report, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie strictly inside (0, 1)");
    report.alpha = alpha;
    // Thresholds are compared as the decimals they were written as (0.01, not
    // the nearest binary double).
    const Rational alpha_exact = parse_rational(to_decimal(alpha, 15));
    const Rational floor_exact = parse_rational(to_decimal(kNonCognitiveFloor, 15));
    if (report.p_random.value() < alpha_exact)
        report.verdict = Verdict::Cognitive;
    else if (report.p_random.value() >= floor_exact)
        report.verdict = Verdict::NonCognitive;
    else
        report.verdict = Verdict::Indeterminate;
    return report;
}

TrendReport trend(std::span<const TrendPoint> points, double alpha) {
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].flips <= points[i - 1].flips) throw DomainError("trend: L must be strictly increasing");
    TrendReport out;
    out.points.assign(points.begin(), points.end());
    if (points.size() < 3) return out;

    const auto last = points.last(3);
    const bool non_increasing = last[0].p_random >= last[1].p_random && last[1].p_random >= last[2].p_random;
    const bool in_half_band = std::all_of(last.begin(), last.end(), [](const TrendPoint& p) {
        return p.p_random >= kNonCognitiveFloor && p.p_random <= kTowardHalfCeiling;
    });
    if (last[2].p_random < alpha && non_increasing)
        out.slope_class = SlopeClass::TowardZero;
    else if (in_half_band)
        out.slope_class = SlopeClass::TowardHalf;
    return out;
}

std::vector<MedianPoint> median_by_length(std::span<const EvaluationReport> reports) {
    std::map<std::size_t, std::vector<Rational>> by_length;
    for (const auto& r : reports) by_length[r.flips].push_back(r.p_random.value());
    std::vector<MedianPoint> out;
    for (auto& [flips, values] : by_length) {
        std::sort(values.begin(), values.end());
        const std::size_t n = values.size();
        Rational median = n % 2 == 1 ? values[n / 2] : Rational{(values[n / 2 - 1] + values[n / 2]) / 2};
        out.push_back({flips, ExactProbability{median}, n});
    }
    return out;
}

TrendReport trend(std::span<const EvaluationReport> reports, double alpha) {
    std::vector<TrendPoint> points;
    for (const auto& m : median_by_length(reports)) points.push_back({m.flips, m.median.to_double()});
    return trend(points, alpha);
}

}  // namespace petersburg
