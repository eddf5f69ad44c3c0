#ifndef DRINFELD_RATIONAL_HPP
#define DRINFELD_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace drinfeld {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt ipow(std::uint64_t base, std::uint64_t exp) {
    BigInt r = 1;
    BigInt b = base;
    while (exp) {
        if (exp & 1U) r *= b;
        b *= b;
        exp >>= 1U;
    }
    return r;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

/// Always "num/den", including integers ("1/1").
inline std::string to_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline std::string to_string(const BigInt& n) { return n.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parses "n", "n/d" or "-n/d".
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

} // namespace drinfeld

#endif // DRINFELD_RATIONAL_HPP
