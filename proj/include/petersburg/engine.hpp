#pragma once

#include "petersburg/exact.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace petersburg {

enum class FlipOutcome : std::uint8_t { Heads, Tails };

char to_char(FlipOutcome side);
FlipOutcome flip_from_char(char c);

/// Stateless 64-bit mixer (splitmix64 finalizer over a combined key). Used to
/// derive per-trial and per-purpose seeds so results never depend on
/// scheduling order.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

/// Seeded stream of random bits for strategies that randomize. Independent
/// from the flip generator by construction of its seed.
class SeedStream {
public:
    explicit SeedStream(std::uint64_t seed) : engine_(seed) {}

    FlipOutcome next_side();
    /// Uniform integer in [0, bound), exact (rejection sampling).
    std::uint64_t next_below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

std::vector<FlipOutcome> generate_flips(std::size_t count, std::uint64_t seed);

struct Martingale {
    Rational base_bet{1};
};

struct ConstantRandom {
    Rational bet{1};
};

/// Test fixture: each bet wins with probability `win_prob` regardless of the
/// coin. Stands in for a strategy that has real information.
struct SyntheticEdge {
    Rational bet{1};
    Rational win_prob{1, 2};
};

class StrategySpec {
public:
    using Kind = std::variant<Martingale, ConstantRandom, SyntheticEdge>;

    static StrategySpec martingale(const Rational& base_bet = Rational{1});
    static StrategySpec constant_random(const Rational& bet);
    static StrategySpec synthetic_edge(const Rational& bet, const Rational& win_prob);

    const Kind& kind() const noexcept { return kind_; }
    std::string name() const;

private:
    explicit StrategySpec(Kind kind) : kind_(std::move(kind)) {}
    Kind kind_;
};

struct BetRecord {
    std::size_t index = 0;  // 1-based
    Rational bet;
    FlipOutcome call = FlipOutcome::Heads;
    FlipOutcome outcome = FlipOutcome::Heads;
    bool won = false;
    Rational cumulative_gain;
};

struct BetDecision {
    Rational bet;
    FlipOutcome call;
};

BetDecision next_bet_martingale(const std::optional<BetRecord>& previous, const Rational& base_bet);
BetDecision next_bet_constant_random(const Rational& bet, SeedStream& stream);

/// Appends the record produced by `decision` meeting `outcome`.
BetRecord settle(const BetDecision& decision, FlipOutcome outcome, const BetRecord* previous);

class Trajectory {
public:
    Trajectory() = default;
    explicit Trajectory(std::vector<BetRecord> records);

    std::span<const BetRecord> records() const noexcept { return records_; }
    std::size_t length() const noexcept { return records_.size(); }
    const Rational& total_staked() const noexcept { return total_staked_; }
    const Rational& final_gain() const noexcept { return final_gain_; }
    std::size_t win_count() const noexcept { return win_count_; }

    /// total_staked / length; DomainError for an empty trajectory.
    Rational average_bet() const;

    /// Checks every record-level and summary invariant; DomainError on the first violation.
    void validate() const;

private:
    std::vector<BetRecord> records_;
    Rational total_staked_{0};
    Rational final_gain_{0};
    std::size_t win_count_ = 0;
};

/// Plays `spec` against `flips`. `seed` feeds only strategies that randomize.
/// SyntheticEdge ignores the coin and plays flips.size() bets.
Trajectory apply_strategy(const StrategySpec& spec, std::span<const FlipOutcome> flips, std::uint64_t seed);

/// One seeded play-through of `length` flips: flips from mix_seed(seed, 0),
/// strategy randomness from mix_seed(seed, 1).
Trajectory play(const StrategySpec& spec, std::size_t length, std::uint64_t seed);

}  // namespace petersburg
