#pragma once

// Formal rational combinations of tracked curves. Floor and ceiling are
// coefficientwise. Stored as an ordered map so iteration (and hence every
// report) is deterministic.

#include <map>
#include <string>

#include "logsurf/rational.hpp"

namespace logsurf {

struct QDivisor {
    std::map<std::string, Rational> terms;

    Rational coeff(const std::string& name) const {
        auto it = terms.find(name);
        return it == terms.end() ? Rational(0) : it->second;
    }

    void set(const std::string& name, const Rational& c) {
        if (c == 0) terms.erase(name);
        else terms[name] = c;
    }

    void add(const std::string& name, const Rational& c) { set(name, coeff(name) + c); }

    bool is_zero() const { return terms.empty(); }

    QDivisor& operator+=(const QDivisor& o) {
        for (const auto& [n, c] : o.terms) add(n, c);
        return *this;
    }
    QDivisor& operator-=(const QDivisor& o) {
        for (const auto& [n, c] : o.terms) add(n, -c);
        return *this;
    }
    QDivisor& operator*=(const Rational& s) {
        if (s == 0) { terms.clear(); return *this; }
        for (auto& [n, c] : terms) c *= s;
        return *this;
    }
    friend QDivisor operator+(QDivisor a, const QDivisor& b) { return a += b; }
    friend QDivisor operator-(QDivisor a, const QDivisor& b) { return a -= b; }
    friend QDivisor operator*(const Rational& s, QDivisor a) { return a *= s; }
    friend bool operator==(const QDivisor& a, const QDivisor& b) { return a.terms == b.terms; }

    QDivisor floor() const {
        QDivisor out;
        for (const auto& [n, c] : terms) out.set(n, Rational(floor_int(c)));
        return out;
    }
    QDivisor ceil() const {
        QDivisor out;
        for (const auto& [n, c] : terms) out.set(n, Rational(ceil_int(c)));
        return out;
    }
};

} // namespace logsurf
