#include "petersburg/engine.hpp"

#include <limits>
#include <stdexcept>

namespace petersburg {

char to_char(FlipOutcome side) { return side == FlipOutcome::Heads ? 'H' : 'T'; }

FlipOutcome flip_from_char(char c) {
    switch (c) {
    case 'H': return FlipOutcome::Heads;
    case 'T': return FlipOutcome::Tails;
    default: throw std::invalid_argument(std::string{"flip must be 'H' or 'T', got '"} + c + "'");
    }
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

FlipOutcome SeedStream::next_side() {
    return (engine_() >> 63) != 0 ? FlipOutcome::Heads : FlipOutcome::Tails;
}

std::uint64_t SeedStream::next_below(std::uint64_t bound) {
    if (bound == 0) throw DomainError("next_below: bound must be positive");
    // Largest multiple of bound representable; values at or above it are rejected.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t x = engine_();
        if (x < limit) return x % bound;
    }
}

std::vector<FlipOutcome> generate_flips(std::size_t count, std::uint64_t seed) {
    SeedStream stream{seed};
    std::vector<FlipOutcome> flips;
    flips.reserve(count);
    for (std::size_t i = 0; i < count; ++i) flips.push_back(stream.next_side());
    return flips;
}

StrategySpec StrategySpec::martingale(const Rational& base_bet) {
    if (base_bet <= 0) throw DomainError("martingale base bet must be positive");
    return StrategySpec{Martingale{base_bet}};
}

StrategySpec StrategySpec::constant_random(const Rational& bet) {
    if (bet <= 0) throw DomainError("constant bet must be positive");
    return StrategySpec{ConstantRandom{bet}};
}

StrategySpec StrategySpec::synthetic_edge(const Rational& bet, const Rational& win_prob) {
    if (bet <= 0) throw DomainError("synthetic-edge bet must be positive");
    if (win_prob <= 0 || win_prob >= 1) throw DomainError("win probability must lie strictly inside (0, 1)");
    if (!win_prob.get_den().fits_ulong_p() ||
        sizeof(unsigned long) < sizeof(std::uint64_t))
        throw DomainError("win probability denominator must fit in 64 bits");
    return StrategySpec{SyntheticEdge{bet, win_prob}};
}

std::string StrategySpec::name() const {
    struct Visitor {
        std::string operator()(const Martingale&) const { return "martingale"; }
        std::string operator()(const ConstantRandom&) const { return "constant-random"; }
        std::string operator()(const SyntheticEdge&) const { return "synthetic-edge"; }
    };
    return std::visit(Visitor{}, kind_);
}

BetDecision next_bet_martingale(const std::optional<BetRecord>& previous, const Rational& base_bet) {
    if (base_bet <= 0) throw DomainError("martingale base bet must be positive");
    if (!previous || previous->won) return {base_bet, FlipOutcome::Heads};
    return {Rational{previous->bet * 2}, FlipOutcome::Heads};
}

BetDecision next_bet_constant_random(const Rational& bet, SeedStream& stream) {
    if (bet <= 0) throw DomainError("constant bet must be positive");
    return {bet, stream.next_side()};
}

BetRecord settle(const BetDecision& decision, FlipOutcome outcome, const BetRecord* previous) {
    BetRecord r;
    r.index = previous ? previous->index + 1 : 1;
    r.bet = decision.bet;
    r.call = decision.call;
    r.outcome = outcome;
    r.won = decision.call == outcome;
    const Rational before = previous ? previous->cumulative_gain : Rational{0};
    r.cumulative_gain = r.won ? Rational{before + r.bet} : Rational{before - r.bet};
    return r;
}

Trajectory::Trajectory(std::vector<BetRecord> records) : records_(std::move(records)) {
    for (const auto& r : records_) {
        total_staked_ += r.bet;
        if (r.won) ++win_count_;
    }
    if (!records_.empty()) final_gain_ = records_.back().cumulative_gain;
}

Rational Trajectory::average_bet() const {
    if (records_.empty()) throw DomainError("average bet of an empty trajectory is undefined");
    return total_staked_ / static_cast<unsigned long>(records_.size());
}

void Trajectory::validate() const {
    Rational running{0};
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        const std::string where = "record " + std::to_string(i + 1) + ": ";
        if (r.index != i + 1) throw DomainError(where + "index out of sequence");
        if (r.bet <= 0) throw DomainError(where + "bet must be positive");
        if (r.won != (r.call == r.outcome)) throw DomainError(where + "won flag disagrees with call/outcome");
        running += r.won ? r.bet : Rational{-r.bet};
        if (r.cumulative_gain != running) throw DomainError(where + "cumulative gain does not telescope");
    }
}

Trajectory apply_strategy(const StrategySpec& spec, std::span<const FlipOutcome> flips, std::uint64_t seed) {
    std::vector<BetRecord> records;
    records.reserve(flips.size());
    SeedStream stream{seed};
    auto previous = [&]() -> const BetRecord* { return records.empty() ? nullptr : &records.back(); };

    if (const auto* m = std::get_if<Martingale>(&spec.kind())) {
        std::optional<BetRecord> last;
        for (FlipOutcome outcome : flips) {
            records.push_back(settle(next_bet_martingale(last, m->base_bet), outcome, previous()));
            last = records.back();
        }
    } else if (const auto* c = std::get_if<ConstantRandom>(&spec.kind())) {
        for (FlipOutcome outcome : flips)
            records.push_back(settle(next_bet_constant_random(c->bet, stream), outcome, previous()));
    } else {
        const auto& e = std::get<SyntheticEdge>(spec.kind());
        const std::uint64_t den = e.win_prob.get_den().get_ui();
        const std::uint64_t num = e.win_prob.get_num().get_ui();
        for (std::size_t i = 0; i < flips.size(); ++i) {
            const bool win = stream.next_below(den) < num;
            records.push_back(settle({e.bet, FlipOutcome::Heads}, win ? FlipOutcome::Heads : FlipOutcome::Tails,
                                     previous()));
        }
    }
    return Trajectory{std::move(records)};
}

Trajectory play(const StrategySpec& spec, std::size_t length, std::uint64_t seed) {
    const auto flips = generate_flips(length, mix_seed(seed, 0));
    return apply_strategy(spec, flips, mix_seed(seed, 1));
}

}  // namespace petersburg
