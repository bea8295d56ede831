#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qcoin {

// Exact arithmetic used throughout: arbitrary-precision integers and
// gcd-reduced rationals (denominator kept positive by the backend).
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt int_pow(const BigInt& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

template <typename T>
T value_pow(const T& base, unsigned exp) {
    T result(1);
    T factor = base;
    while (exp != 0) {
        if (exp & 1u) result *= factor;
        exp >>= 1u;
        if (exp != 0) factor *= factor;
    }
    return result;
}

// Quotient of an exact division. A nonzero remainder means a broken
// identity upstream, so it is reported instead of truncated.
inline BigInt exact_div(const BigInt& value, const BigInt& divisor) {
    BigInt quotient, remainder;
    boost::multiprecision::divide_qr(value, divisor, quotient, remainder);
    if (remainder != 0) {
        throw std::logic_error("exact_div: division left remainder " + remainder.str());
    }
    return quotient;
}

inline double to_double(const BigInt& value) { return value.convert_to<double>(); }
inline double to_double(const Rational& value) { return value.convert_to<double>(); }

// Parses "a/b", a plain integer, or a decimal literal into an exact rational.
inline Rational parse_rational(std::string_view text) {
    const auto fail = [&] {
        throw std::invalid_argument("parse_rational: cannot parse '" + std::string(text) + "'");
    };
    if (text.empty()) fail();

    const auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        const std::string num(text.substr(0, slash));
        const std::string den(text.substr(slash + 1));
        if (num.empty() || den.empty()) fail();
        try {
            BigInt n(num), d(den);
            if (d == 0) throw std::invalid_argument("parse_rational: zero denominator");
            return Rational(n, d);
        } catch (const std::runtime_error&) {
            fail();
        }
    }

    bool negative = false;
    std::string_view body = text;
    if (body.front() == '+' || body.front() == '-') {
        negative = body.front() == '-';
        body.remove_prefix(1);
        if (body.empty()) fail();
    }
    const auto dot = body.find('.');
    std::string digits;
    unsigned scale = 0;
    if (dot == std::string_view::npos) {
        digits = std::string(body);
    } else {
        digits = std::string(body.substr(0, dot)) + std::string(body.substr(dot + 1));
        scale = static_cast<unsigned>(body.size() - dot - 1);
        if (digits.empty()) fail();
    }
    for (char c : digits) {
        if (c < '0' || c > '9') fail();
    }
    BigInt numerator = digits.empty() ? BigInt(0) : BigInt(digits);
    if (negative) numerator = -numerator;
    return Rational(numerator, int_pow(10, scale));
}

}  // namespace qcoin
