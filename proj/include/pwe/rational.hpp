#ifndef PWE_RATIONAL_HPP
#define PWE_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pwe {

// Exact rational arithmetic everywhere outside the LP-float / SDP layers.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p/q" or a bare integer "p". Throws std::invalid_argument on garbage.
inline Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    mpq_class r;
    if (r.set_str(text, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + text);
    if (r.get_den() == 0)
        throw std::invalid_argument("rational with zero denominator: " + text);
    r.canonicalize();
    return r;
}

inline std::string rational_to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double rational_to_double(const Rational& r) { return r.get_d(); }

}  // namespace pwe

#endif
