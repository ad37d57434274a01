#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "regba/errors.hpp"

namespace regba {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rational& q) { return boost::multiprecision::denominator(q); }

// Accepts "p/q" or "p" with optional sign; denominator must be positive.
inline Rational parse_rational(const std::string& s) {
    auto bad = [&]() -> Error { return OutOfRange("not a rational: '" + s + "'"); };
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q <= 0) throw bad();
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

inline std::string to_string(const Rational& q) {
    if (rat_den(q) == 1) return rat_num(q).str();
    return rat_num(q).str() + "/" + rat_den(q).str();
}

inline Int pow_int(Int base, unsigned exp) {
    Int out = 1;
    while (exp--) out *= base;
    return out;
}

}  // namespace regba
