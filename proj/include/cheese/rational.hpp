#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace cheese {

/// Exact rational scalar used for every edge length and distance.
/// Strict tie-freeness of the perturbed metric is only checkable with
/// exact arithmetic, so no floating point appears on any metric path.
using Rational = mpq_class;

inline Rational rational_from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + s);
    q.canonicalize();
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator in rational: " + s);
    return q;
}

/// Canonical "num/den" form ("num" when den == 1).
inline std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

/// num/den in canonical form. mpq_class(num, den) alone leaves the value
/// unreduced, which breaks GMP comparisons.
inline Rational ratio(long num, unsigned long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rational_pow2(unsigned k) {
    mpq_class q(1);
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), k);
    return q;
}

inline double rational_to_double(const Rational& q) { return q.get_d(); }

}  // namespace cheese
