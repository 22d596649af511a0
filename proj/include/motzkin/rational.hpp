#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace motzkin {

// Exact rational scalar used throughout the exact code paths.
using Rational = mpq_class;

// Parses "7", "-3/4", "12/8" (reduced on the way in). Decimal or scientific
// notation is rejected on purpose: drift sign detection must stay exact, and
// a float weight would silently break that.
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    std::string s(text);
    for (char ch : s) {
        if (ch == '.' || ch == 'e' || ch == 'E') {
            throw std::invalid_argument(
                "rational literal '" + s + "' must be an integer or a/b fraction, not a float");
        }
    }
    Rational q;
    if (q.set_str(s, 10) != 0) {
        throw std::invalid_argument("cannot parse rational literal '" + s + "'");
    }
    if (q.get_den() == 0) {
        throw std::invalid_argument("zero denominator in rational literal '" + s + "'");
    }
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace motzkin
