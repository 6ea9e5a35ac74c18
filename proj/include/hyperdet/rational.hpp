#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hyperdet {

// Canonical (lowest terms, positive denominator) after every gmpxx operation.
using Rational = mpq_class;
using Integer = mpz_class;

using RationalVector = std::vector<Rational>;

Rational parse_rational(std::string_view text);

// "a" for integers, "a/b" otherwise.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

// Best rational approximation of x with denominator <= max_denominator
// (continued-fraction convergents and the final semiconvergent).
Rational rationalize(double x, const Integer& max_denominator);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace hyperdet
