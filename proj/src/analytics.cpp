#include "petersburg/analytics.hpp"

#include <algorithm>
#include <thread>

namespace petersburg {

namespace {

unsigned long as_ulong(std::size_t n) { return static_cast<unsigned long>(n); }

}  // namespace

Rational expected_value(std::size_t flips) { return ratio(as_ulong(flips), 2UL); }

Rational average_bet(std::size_t flips) {
    if (flips == 0) throw DomainError("average bet over zero flips is undefined");
    Rational ab = ratio(as_ulong(flips - 1), 4UL);
    ab += 1;
    return ab;
}

Rational expected_average_bet(const StrategySpec& spec, std::size_t flips) {
    if (flips == 0) throw DomainError("average bet over zero flips is undefined");
    struct Visitor {
        std::size_t flips;
        Rational operator()(const Martingale& m) const { return m.base_bet * average_bet(flips); }
        Rational operator()(const ConstantRandom& c) const { return c.bet; }
        Rational operator()(const SyntheticEdge& e) const { return e.bet; }
    };
    return std::visit(Visitor{flips}, spec.kind());
}

ExactProbability binomial_pmf(std::size_t k, std::size_t flips, const ExactProbability& p) {
    if (k > flips) throw DomainError("binomial_pmf: k exceeds L");
    const Rational& win = p.value();
    const Rational lose = 1 - win;
    BigInt num = binomial_coefficient(as_ulong(flips), as_ulong(k));
    BigInt den = 1;
    BigInt factor;
    mpz_pow_ui(factor.get_mpz_t(), win.get_num_mpz_t(), as_ulong(k));
    num *= factor;
    mpz_pow_ui(factor.get_mpz_t(), win.get_den_mpz_t(), as_ulong(k));
    den *= factor;
    mpz_pow_ui(factor.get_mpz_t(), lose.get_num_mpz_t(), as_ulong(flips - k));
    num *= factor;
    mpz_pow_ui(factor.get_mpz_t(), lose.get_den_mpz_t(), as_ulong(flips - k));
    den *= factor;
    return ExactProbability{num, den};
}

ExactProbability binomial_tail(std::size_t k_from, std::size_t flips, const ExactProbability& p) {
    if (k_from > flips + 1) throw DomainError("binomial_tail: k_from exceeds L + 1");
    if (k_from == flips + 1) return ExactProbability::zero();
    if (k_from == 0) return ExactProbability::one();

    if (p == ExactProbability::half()) {
        BigInt count = 0;
        for (std::size_t k = k_from; k <= flips; ++k) count += binomial_coefficient(as_ulong(flips), as_ulong(k));
        return ExactProbability{count, pow2(as_ulong(flips))};
    }
    Rational sum{0};
    for (std::size_t k = k_from; k <= flips; ++k) sum += binomial_pmf(k, flips, p).value();
    return ExactProbability{sum};
}

std::size_t beat_threshold(std::size_t flips) {
    if (flips == 0) throw DomainError("beat_threshold requires at least one flip");
    // AB(2k - L) > EV  <=>  k > (EV/AB + L)/2.
    const Rational bound = (expected_value(flips) / average_bet(flips) + as_ulong(flips)) / 2;
    BigInt k;
    mpz_fdiv_q(k.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
    k += 1;
    if (k < 0) return 0;
    if (k > as_ulong(flips)) return flips + 1;
    return static_cast<std::size_t>(k.get_ui());
}

ExactProbability beat_probability(std::size_t flips) {
    return binomial_tail(beat_threshold(flips), flips, ExactProbability::half());
}

SweepRow sweep_row(std::size_t flips) {
    SweepRow row;
    row.flips = flips;
    row.average_bet = average_bet(flips);
    row.expected_value = expected_value(flips);
    row.win_threshold = beat_threshold(flips);
    row.beat_probability = binomial_tail(row.win_threshold, flips, ExactProbability::half());
    return row;
}

std::vector<SweepRow> sweep(std::size_t l_min, std::size_t l_max, std::size_t step, unsigned threads) {
    if (l_min < 1) throw DomainError("sweep: L_min must be at least 1");
    if (l_max < l_min) throw DomainError("sweep: L_max must be at least L_min");
    if (step < 1) throw DomainError("sweep: step must be at least 1");

    std::vector<std::size_t> ls;
    for (std::size_t l = l_min; l <= l_max; l += step) ls.push_back(l);
    std::vector<SweepRow> rows(ls.size());

    const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(ls.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < ls.size(); ++i) rows[i] = sweep_row(ls[i]);
        return rows;
    }
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < ls.size(); i += workers) rows[i] = sweep_row(ls[i]);
        });
    pool.clear();
    return rows;
}

}  // namespace petersburg
