#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "logsurf/errors.hpp"

namespace logsurf {

// Every coefficient in the system is an exact rational. No floating point
// anywhere: bark coefficients like 1/3, 2/3, 1/6 and the floor arithmetic of
// the fibration criterion are all decided exactly.
using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer floor_int(const Rational& q) {
    Integer n = numerator(q), d = denominator(q); // d > 0 canonical
    Integer f = n / d;
    if (n < 0 && f * d != n) --f;
    return f;
}

inline Integer ceil_int(const Rational& q) { return -floor_int(-q); }

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) throw Error("zero denominator in '" + s + "'");
        return Rational(num, den);
    } catch (const std::exception& e) {
        throw Error("bad rational '" + s + "': " + e.what());
    }
}

inline std::string to_string(const Rational& q) {
    return q.str(); // "n" or "n/d"
}

} // namespace logsurf
