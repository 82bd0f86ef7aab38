#pragma once

// Exact rational arithmetic used everywhere results must be exact.
// Efficiencies are counted as integer numerators over power-of-two (or
// mixed) denominators; floating point appears only at output boundaries
// and inside the repeater's continuous optimization.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cssbell {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational_pow(const Rational& base, unsigned exp) {
    Rational out = 1;
    Rational acc = base;
    while (exp != 0) {
        if (exp & 1u) {
            out *= acc;
        }
        exp >>= 1u;
        if (exp != 0) {
            acc *= acc;
        }
    }
    return out;
}

inline BigInt pow2(std::size_t exp) {
    BigInt one = 1;
    return one << exp;
}

inline BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    BigInt out = 1;
    for (std::size_t i = 0; i < k; ++i) {
        out *= static_cast<unsigned long>(n - i);
        out /= static_cast<unsigned long>(i + 1);
    }
    return out;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace detail {

// Parses an optionally signed decimal integer.  Done by hand because the
// multiprecision string constructor treats a leading 0 as an octal prefix
// and throws std::runtime_error on bad input; we want plain base-10 and
// std::invalid_argument.
inline BigInt parse_decimal_int(std::string_view digits, std::string_view whole) {
    std::string s(digits);
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = s[0] == '-';
        s = s.substr(1);
    }
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("parse_rational: cannot parse '" + std::string(whole) +
                                    "'");
    }
    std::size_t first = s.find_first_not_of('0');
    if (first == std::string::npos) {
        return 0;
    }
    BigInt value(s.substr(first));
    return negative ? BigInt(-value) : value;
}

}  // namespace detail

// Parses "3/4", "1", or plain decimals like "0.25" exactly.  Decimal
// strings become numerator/10^digits with no rounding.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) {
        throw std::invalid_argument("parse_rational: empty string");
    }
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num = detail::parse_decimal_int(s.substr(0, slash), s);
        BigInt den = detail::parse_decimal_int(s.substr(slash + 1), s);
        if (den == 0) {
            throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
        }
        return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        return Rational(detail::parse_decimal_int(s, s));
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    BigInt num = detail::parse_decimal_int(digits, s);
    BigInt den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) {
        den *= 10;
    }
    return Rational(num, den);
}

inline std::string to_string(const Rational& r) {
    return r.str();
}

}  // namespace cssbell
