#pragma once

#include "petersburg/engine.hpp"
#include "petersburg/exact.hpp"

#include <cstddef>
#include <vector>

namespace petersburg {

/// Threshold gain of the doubling-down game over `flips` fair flips: L/2.
Rational expected_value(std::size_t flips);

/// Expected per-flip stake of the doubling-down strategy with base bet 1:
/// (L - 1)/4 + 1. DomainError for L = 0.
Rational average_bet(std::size_t flips);

/// Exact expected per-flip stake of `spec` over `flips` fair flips.
Rational expected_average_bet(const StrategySpec& spec, std::size_t flips);

/// C(L, k) p^k (1 - p)^(L - k). DomainError when k > L.
ExactProbability binomial_pmf(std::size_t k, std::size_t flips, const ExactProbability& p);

/// Sum of binomial_pmf(k, L, p) for k in [k_from, L]; zero when k_from = L + 1.
ExactProbability binomial_tail(std::size_t k_from, std::size_t flips, const ExactProbability& p);

/// Smallest k in [0, L] with AB(L)(2k - L) > EV(L), or L + 1 when none exists.
std::size_t beat_threshold(std::size_t flips);

/// Probability that the constant-AB random baseline strictly beats EV(L).
ExactProbability beat_probability(std::size_t flips);

struct SweepRow {
    std::size_t flips = 0;
    Rational average_bet;
    Rational expected_value;
    std::size_t win_threshold = 0;
    ExactProbability beat_probability;
};

SweepRow sweep_row(std::size_t flips);

/// Rows for L = l_min, l_min + step, ... <= l_max, ordered by L. Rows are
/// computed on up to `threads` workers; the result does not depend on it.
std::vector<SweepRow> sweep(std::size_t l_min, std::size_t l_max, std::size_t step, unsigned threads = 1);

}  // namespace petersburg
