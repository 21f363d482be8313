#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace petersburg {

/// Exact rational amount (money, expectations). Always canonicalized.
using Rational = mpq_class;
using BigInt = mpz_class;

/// num/den in canonical form. Prefer this over mpq_class's two-argument
/// constructor, which leaves the fraction unreduced.
template <class Num, class Den>
Rational ratio(const Num& num, const Den& den) {
    Rational r{num, den};
    r.canonicalize();
    return r;
}

/// Raised when an operation is called outside its mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A probability held as an exact ratio in lowest terms, 0 <= p <= 1.
class ExactProbability {
public:
    ExactProbability() = default;
    ExactProbability(const BigInt& numerator, const BigInt& denominator);
    explicit ExactProbability(const Rational& value);

    static ExactProbability zero() { return ExactProbability{}; }
    static ExactProbability one() { return ExactProbability{Rational{1}}; }
    static ExactProbability half() { return ExactProbability{ratio(1, 2)}; }

    const Rational& value() const noexcept { return value_; }
    BigInt numerator() const { return value_.get_num(); }
    BigInt denominator() const { return value_.get_den(); }
    ExactProbability complement() const { return ExactProbability{Rational{1 - value_}}; }
    double to_double() const { return value_.get_d(); }

    /// "num/den" in lowest terms.
    std::string to_fraction_string() const;

    friend bool operator==(const ExactProbability& a, const ExactProbability& b) { return a.value_ == b.value_; }
    friend bool operator<(const ExactProbability& a, const ExactProbability& b) { return a.value_ < b.value_; }
    friend bool operator<=(const ExactProbability& a, const ExactProbability& b) { return a.value_ <= b.value_; }

private:
    Rational value_{0};
};

/// Lossless "num/den" (or "num" for integers) rendering.
std::string to_fraction_string(const Rational& value);

/// Parses "3", "-13/4", "3.25", "1e-3". Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// Decimal rendering with `significant` digits, round-half-even, computed
/// exactly. Layout follows printf's %g: scientific when the decimal exponent
/// is below -4 or at least `significant`, trailing zeros stripped.
std::string to_decimal(const Rational& value, int significant = 12);
std::string to_decimal(double value, int significant = 12);

BigInt pow2(unsigned long exponent);
BigInt binomial_coefficient(unsigned long n, unsigned long k);

/// Smallest integer >= value.
BigInt ceil(const Rational& value);

}  // namespace petersburg
