#ifndef SIDCERT_RATIONAL_HPP
#define SIDCERT_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>

#include "sidcert/error.hpp"

namespace sidcert {

// Exact arithmetic everywhere probabilities and certificates are involved;
// floating point appears only when a logarithm is taken.  HighFloat carries a
// 40-digit (~133 bit) significand so that 1e-9 tolerances are never at risk
// from rounding.
using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using HighFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<40>>;

inline HighFloat to_float(const Rational& q) { return HighFloat(q); }

/** Natural logarithm of a positive rational. */
inline HighFloat log_rational(const Rational& q) {
    if (q <= 0) throw ParameterError("log_rational: argument must be positive");
    return log(HighFloat(q));
}

inline Integer int_pow(Integer base, unsigned long e) { return pow(base, e); }

inline Integer factorial(int k) {
    Integer out = 1;
    for (int i = 2; i <= k; ++i) out *= i;
    return out;
}

inline Rational rat_pow(const Rational& q, unsigned long e) {
    return Rational(pow(numerator(q), e), pow(denominator(q), e));
}

/** Renders q as "p" or "p/q" in lowest terms. */
inline std::string format_rational(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

/** Parses "p", "p/q", or a plain integer literal. */
inline Rational parse_rational(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw ParseError("parse_rational: zero denominator in \"" + s + "\"");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw ParseError("parse_rational: cannot parse \"" + s + "\"");
    }
}

} // namespace sidcert

#endif
