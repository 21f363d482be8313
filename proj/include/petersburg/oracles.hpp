#pragma once

#include "petersburg/engine.hpp"
#include "petersburg/exact.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>

namespace petersburg {

inline constexpr std::size_t kMaxEnumerationFlips = 22;

struct EnumerationSummary {
    std::size_t flips = 0;
    Rational expected_gain;
    Rational expected_average_bet;
    std::map<Rational, ExactProbability> gain_distribution;
    /// Fraction of the 2^L sequences whose final gain strictly exceeds L/2.
    ExactProbability beat_fraction;
};

/// A causal bettor: the stake for the next flip given the settled history.
/// The called side is irrelevant under enumeration (each flip is a fair win/loss).
using BetPolicy = std::function<Rational(std::span<const BetRecord> history)>;

/// Exhaustive expectation over all 2^L equiprobable win/loss sequences.
/// ConstantRandom's random call is folded into the win indicator.
/// DomainError for L outside [1, 22] or a SyntheticEdge spec.
EnumerationSummary enumerate(const StrategySpec& spec, std::size_t flips);
EnumerationSummary enumerate(const BetPolicy& policy, std::size_t flips);

/// Exact first and second moments of a strategy's final gain and realized
/// average bet over `flips` plays (fair coin, or win_prob for SyntheticEdge).
struct ExactMoments {
    Rational mean_gain;
    Rational variance_gain;
    Rational mean_average_bet;
    Rational variance_average_bet;
};

ExactMoments exact_moments(const StrategySpec& spec, std::size_t flips);

struct MonteCarloSummary {
    std::size_t trials = 0;
    std::size_t flips = 0;
    std::uint64_t master_seed = 0;
    Rational mean_gain;
    Rational mean_average_bet;
    /// Fraction of trials whose final gain strictly exceeds L/2.
    Rational beat_frequency;
    /// sqrt(f(1 - f)/trials) for the beat frequency f.
    double standard_error = 0.0;
    /// Standard errors of the two means from the sample variance (n - 1).
    double gain_sample_se = 0.0;
    double average_bet_sample_se = 0.0;
    /// The estimators' true standard errors, sqrt(Var/trials), from exact moments.
    ExactMoments exact;
    double gain_exact_se = 0.0;
    double average_bet_exact_se = 0.0;
};

/// Trial i plays play(spec, L, mix_seed(master_seed, i)); partial sums are
/// exact, so the summary is identical for every `threads` value.
MonteCarloSummary monte_carlo(const StrategySpec& spec, std::size_t flips, std::size_t trials,
                              std::uint64_t master_seed, unsigned threads = 1);

/// Seed of trial `index` under `master_seed`.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t index) {
    return mix_seed(master_seed, static_cast<std::uint64_t>(index));
}

}  // namespace petersburg
