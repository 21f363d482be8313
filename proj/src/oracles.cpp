#include "petersburg/oracles.hpp"

#include "petersburg/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

namespace petersburg {

namespace {

unsigned long as_ulong(std::size_t n) { return static_cast<unsigned long>(n); }

struct EnumerationState {
    std::size_t flips;
    const BetPolicy& policy;
    std::vector<BetRecord> history;
    Rational staked{0};
    Rational staked_sum{0};
    std::map<Rational, std::uint64_t> gain_counts;

    void descend() {
        if (history.size() == flips) {
            staked_sum += staked;
            ++gain_counts[history.back().cumulative_gain];
            return;
        }
        const Rational bet = policy(history);
        if (bet <= 0) throw DomainError("enumerate: policy produced a non-positive bet");
        const BetRecord* previous = history.empty() ? nullptr : &history.back();
        const BetRecord win = settle({bet, FlipOutcome::Heads}, FlipOutcome::Heads, previous);
        const BetRecord loss = settle({bet, FlipOutcome::Heads}, FlipOutcome::Tails, previous);
        staked += bet;
        history.push_back(win);
        descend();
        history.back() = loss;
        descend();
        history.pop_back();
        staked -= bet;
    }
};

}  // namespace

EnumerationSummary enumerate(const BetPolicy& policy, std::size_t flips) {
    if (flips < 1 || flips > kMaxEnumerationFlips)
        throw DomainError("enumerate: L must lie in [1, " + std::to_string(kMaxEnumerationFlips) + "]");

    EnumerationState state{flips, policy, {}, Rational{0}, Rational{0}, {}};
    state.history.reserve(flips);
    state.descend();

    const BigInt sequences = pow2(as_ulong(flips));
    const Rational threshold = expected_value(flips);
    EnumerationSummary summary;
    summary.flips = flips;
    Rational gain_sum{0};
    BigInt beating = 0;
    for (const auto& [gain, count] : state.gain_counts) {
        const BigInt n{static_cast<unsigned long>(count)};
        gain_sum += gain * Rational{n};
        if (gain > threshold) beating += n;
        summary.gain_distribution.emplace(gain, ExactProbability{n, sequences});
    }
    summary.expected_gain = gain_sum / Rational{sequences};
    summary.expected_average_bet = state.staked_sum / Rational{sequences * as_ulong(flips)};
    summary.beat_fraction = ExactProbability{beating, sequences};
    return summary;
}

EnumerationSummary enumerate(const StrategySpec& spec, std::size_t flips) {
    if (const auto* m = std::get_if<Martingale>(&spec.kind())) {
        const Rational base = m->base_bet;
        return enumerate(BetPolicy{[base](std::span<const BetRecord> history) {
                             std::optional<BetRecord> previous;
                             if (!history.empty()) previous = history.back();
                             return next_bet_martingale(previous, base).bet;
                         }},
                         flips);
    }
    if (const auto* c = std::get_if<ConstantRandom>(&spec.kind())) {
        const Rational bet = c->bet;
        return enumerate(BetPolicy{[bet](std::span<const BetRecord>) { return bet; }}, flips);
    }
    throw DomainError("enumerate: synthetic-edge outcomes are not coin-driven and cannot be enumerated");
}

ExactMoments exact_moments(const StrategySpec& spec, std::size_t flips) {
    if (flips == 0) throw DomainError("exact_moments requires at least one flip");
    const Rational length{as_ulong(flips)};
    ExactMoments out;

    if (const auto* m = std::get_if<Martingale>(&spec.kind())) {
        // Bets in units of the base bet. With streak s before flip n the bet is
        // 2^s, and E[B_j | B_i] = B_i + (j - i)/2 for j > i.
        std::vector<Rational> mean(flips + 1), square(flips + 1);
        for (std::size_t n = 1; n <= flips; ++n) {
            mean[n] = ratio(as_ulong(n - 1), 2UL) + 1;
            const Rational top{pow2(as_ulong(n - 1))};
            square[n] = (top - 1) / 2 + top;
        }
        Rational sum_mean{0}, sum_square{0}, cross{0};
        for (std::size_t i = 1; i <= flips; ++i) {
            sum_mean += mean[i];
            sum_square += square[i];
            const std::size_t later = flips - i;
            // sum over j > i of (E[B_i^2] + (j - i)/2 E[B_i])
            cross += square[i] * as_ulong(later) + mean[i] * ratio(as_ulong(later * (later + 1)), 4UL);
        }
        const Rational base = m->base_bet;
        const Rational stake_second = sum_square + 2 * cross;
        out.mean_gain = 0;
        out.variance_gain = base * base * sum_square;
        out.mean_average_bet = base * sum_mean / length;
        out.variance_average_bet = base * base * (stake_second - sum_mean * sum_mean) / (length * length);
    } else if (const auto* c = std::get_if<ConstantRandom>(&spec.kind())) {
        out.mean_gain = 0;
        out.variance_gain = c->bet * c->bet * length;
        out.mean_average_bet = c->bet;
        out.variance_average_bet = 0;
    } else {
        const auto& e = std::get<SyntheticEdge>(spec.kind());
        const Rational& p = e.win_prob;
        out.mean_gain = e.bet * length * (2 * p - 1);
        out.variance_gain = e.bet * e.bet * length * 4 * p * (1 - p);
        out.mean_average_bet = e.bet;
        out.variance_average_bet = 0;
    }
    out.mean_gain.canonicalize();
    out.variance_gain.canonicalize();
    out.mean_average_bet.canonicalize();
    out.variance_average_bet.canonicalize();
    return out;
}

namespace {

struct PartialSums {
    Rational gain{0}, gain_sq{0}, average{0}, average_sq{0};
    std::size_t beats = 0;

    void add(const PartialSums& o) {
        gain += o.gain;
        gain_sq += o.gain_sq;
        average += o.average;
        average_sq += o.average_sq;
        beats += o.beats;
    }
};

double sample_standard_error(const Rational& sum, const Rational& sum_sq, std::size_t n) {
    if (n < 2) return 0.0;
    const Rational count{static_cast<unsigned long>(n)};
    const Rational variance = (sum_sq - sum * sum / count) / (count - 1);
    return std::sqrt(std::max(0.0, variance.get_d()) / static_cast<double>(n));
}

}  // namespace

MonteCarloSummary monte_carlo(const StrategySpec& spec, std::size_t flips, std::size_t trials,
                              std::uint64_t master_seed, unsigned threads) {
    if (trials < 1) throw DomainError("monte_carlo: trials must be at least 1");
    if (flips < 1) throw DomainError("monte_carlo: L must be at least 1");

    const Rational threshold = expected_value(flips);
    const Rational length{as_ulong(flips)};
    auto run_range = [&](std::size_t begin, std::size_t end) {
        PartialSums sums;
        for (std::size_t i = begin; i < end; ++i) {
            const Trajectory t = play(spec, flips, trial_seed(master_seed, i));
            const Rational average = t.total_staked() / length;
            sums.gain += t.final_gain();
            sums.gain_sq += t.final_gain() * t.final_gain();
            sums.average += average;
            sums.average_sq += average * average;
            if (t.final_gain() > threshold) ++sums.beats;
        }
        return sums;
    };

    const unsigned workers = static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, trials));
    std::vector<PartialSums> partial(workers);
    if (workers == 1) {
        partial[0] = run_range(0, trials);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = trials * w / workers;
            const std::size_t end = trials * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] { partial[w] = run_range(begin, end); });
        }
    }
    PartialSums total;
    for (const auto& p : partial) total.add(p);

    const Rational n{static_cast<unsigned long>(trials)};
    MonteCarloSummary s;
    s.trials = trials;
    s.flips = flips;
    s.master_seed = master_seed;
    s.mean_gain = total.gain / n;
    s.mean_average_bet = total.average / n;
    s.beat_frequency = Rational{static_cast<unsigned long>(total.beats)} / n;
    const double f = s.beat_frequency.get_d();
    s.standard_error = std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
    s.gain_sample_se = sample_standard_error(total.gain, total.gain_sq, trials);
    s.average_bet_sample_se = sample_standard_error(total.average, total.average_sq, trials);
    s.exact = exact_moments(spec, flips);
    s.gain_exact_se = std::sqrt(s.exact.variance_gain.get_d() / static_cast<double>(trials));
    s.average_bet_exact_se = std::sqrt(s.exact.variance_average_bet.get_d() / static_cast<double>(trials));
    return s;
}

}  // namespace petersburg
