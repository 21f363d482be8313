#include "petersburg/exact.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace petersburg {

namespace {

BigInt pow10(long exponent) {
    BigInt result;
    mpz_ui_pow_ui(result.get_mpz_t(), 10, static_cast<unsigned long>(exponent));
    return result;
}

Rational pow10_rational(long exponent) {
    if (exponent >= 0) return Rational{pow10(exponent)};
    return Rational{BigInt{1}, pow10(-exponent)};
}

BigInt parse_integer_digits(std::string_view digits) {
    if (digits.empty()) return BigInt{0};
    return BigInt{std::string{digits}, 10};
}

bool all_digits(std::string_view s) {
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

ExactProbability::ExactProbability(const BigInt& numerator, const BigInt& denominator) {
    if (denominator <= 0) throw DomainError("probability denominator must be positive");
    value_ = Rational{numerator, denominator};
    value_.canonicalize();
    if (value_ < 0 || value_ > 1) throw DomainError("probability outside [0, 1]: " + petersburg::to_fraction_string(value_));
}

ExactProbability::ExactProbability(const Rational& value) : value_(value) {
    value_.canonicalize();
    if (value_ < 0 || value_ > 1) throw DomainError("probability outside [0, 1]: " + petersburg::to_fraction_string(value_));
}

std::string ExactProbability::to_fraction_string() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string to_fraction_string(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
    const std::string original{text};
    if (text.empty()) throw std::invalid_argument("empty number");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        bool negative = false;
        if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
            negative = num.front() == '-';
            num.remove_prefix(1);
        }
        if (num.empty() || den.empty() || !all_digits(num) || !all_digits(den))
            throw std::invalid_argument("malformed fraction: " + original);
        BigInt d = parse_integer_digits(den);
        if (d == 0) throw std::invalid_argument("zero denominator: " + original);
        Rational r{parse_integer_digits(num), d};
        r.canonicalize();
        return negative ? Rational{-r} : r;
    }

    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = text.substr(e + 1);
        text = text.substr(0, e);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (exp_text.empty() || exp_text.size() > 6 || !all_digits(exp_text))
            throw std::invalid_argument("malformed exponent: " + original);
        exponent = std::stol(std::string{exp_text});
        if (exp_negative) exponent = -exponent;
    }
    std::string_view int_part = text;
    std::string_view frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        int_part = text.substr(0, dot);
        frac_part = text.substr(dot + 1);
    }
    if ((int_part.empty() && frac_part.empty()) || !all_digits(int_part) || !all_digits(frac_part))
        throw std::invalid_argument("malformed number: " + original);

    std::string digits{int_part};
    digits += frac_part;
    Rational r{parse_integer_digits(digits)};
    r *= pow10_rational(exponent - static_cast<long>(frac_part.size()));
    r.canonicalize();
    return negative ? Rational{-r} : r;
}

std::string to_decimal(const Rational& value, int significant) {
    if (significant < 1) throw DomainError("significant digits must be positive");
    if (value == 0) return "0";
    const bool negative = value < 0;
    const Rational magnitude = abs(value);

    // Decimal exponent e with 10^e <= magnitude < 10^(e+1).
    long e = static_cast<long>(mpz_sizeinbase(magnitude.get_num().get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(magnitude.get_den().get_mpz_t(), 10));
    while (magnitude < pow10_rational(e)) --e;
    while (magnitude >= pow10_rational(e + 1)) ++e;

    Rational scaled = magnitude * pow10_rational(significant - 1 - e);
    BigInt digits_value;
    mpz_fdiv_q(digits_value.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    const Rational remainder = scaled - Rational{digits_value};
    const Rational half{1, 2};
    if (remainder > half || (remainder == half && mpz_odd_p(digits_value.get_mpz_t()))) ++digits_value;
    if (digits_value == pow10(significant)) {
        digits_value /= 10;
        ++e;
    }
    const std::string digits = digits_value.get_str();

    std::string out = negative ? "-" : "";
    auto strip = [](std::string s) {
        if (s.find('.') == std::string::npos) return s;
        while (!s.empty() && s.back() == '0') s.pop_back();
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    };
    if (e < -4 || e >= significant) {
        std::string mantissa = digits.substr(0, 1);
        if (digits.size() > 1) mantissa += "." + digits.substr(1);
        mantissa = strip(mantissa);
        const long abs_e = e < 0 ? -e : e;
        std::string exp_digits = std::to_string(abs_e);
        if (exp_digits.size() < 2) exp_digits.insert(0, "0");
        out += mantissa + (e < 0 ? "e-" : "e+") + exp_digits;
    } else if (e >= 0) {
        const auto int_len = static_cast<std::size_t>(e + 1);
        std::string s = digits.substr(0, int_len);
        if (digits.size() > int_len) s += "." + digits.substr(int_len);
        out += strip(s);
    } else {
        out += strip("0." + std::string(static_cast<std::size_t>(-e - 1), '0') + digits);
    }
    return out;
}

std::string to_decimal(double value, int significant) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
    Rational exact;
    mpq_set_d(exact.get_mpq_t(), value);
    return to_decimal(exact, significant);
}

BigInt pow2(unsigned long exponent) {
    BigInt result;
    mpz_ui_pow_ui(result.get_mpz_t(), 2, exponent);
    return result;
}

BigInt binomial_coefficient(unsigned long n, unsigned long k) {
    BigInt result;
    if (k > n) return result;
    mpz_bin_uiui(result.get_mpz_t(), n, k);
    return result;
}

BigInt ceil(const Rational& value) {
    BigInt result;
    mpz_cdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return result;
}

}  // namespace petersburg
