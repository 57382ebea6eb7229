#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

#include "rcm/errors.hpp"

namespace rcm {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "a/b", "a", or a finite decimal such as "0.25" into an exact rational.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty()) throw UsageError("empty rational");

    auto digits_only = [](std::string_view t, bool allow_sign) {
        if (t.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) ++i;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };

    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole = whole.substr(1);
        if (whole.empty()) whole = "0";
        if (!digits_only(whole, false) || (!frac.empty() && !digits_only(frac, false)))
            throw UsageError("malformed decimal: " + s);
        Integer num(whole + frac, 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        Rational r(num, den);
        r.canonicalize();
        return negative ? Rational(-r) : r;
    }
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string a = s.substr(0, slash), b = s.substr(slash + 1);
        if (!digits_only(a, true) || !digits_only(b, false)) throw UsageError("malformed rational: " + s);
        if (a[0] == '+') a = a.substr(1);
        Integer den(b, 10);
        if (den == 0) throw UsageError("zero denominator: " + s);
        Rational r(Integer(a, 10), den);
        r.canonicalize();
        return r;
    }
    if (!digits_only(s, true)) throw UsageError("malformed rational: " + s);
    if (s[0] == '+') s = s.substr(1);
    return Rational(Integer(s, 10));
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Rational pow(const Rational& base, long exponent) {
    if (exponent < 0) {
        if (base == 0) throw UsageError("zero to a negative power");
        return pow(Rational(1) / base, -exponent);
    }
    Rational out(1), b(base);
    unsigned long e = static_cast<unsigned long>(exponent);
    while (e) {
        if (e & 1u) out *= b;
        e >>= 1u;
        if (e) b *= b;
    }
    return out;
}

inline Integer pow(const Integer& base, unsigned long exponent) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

inline double to_double(const Rational& r) { return r.get_d(); }

/// Exact conversion of a finite double.
inline Rational from_double(double x) {
    if (!std::isfinite(x)) throw UsageError("non-finite value");
    return Rational(x);
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

} // namespace rcm
