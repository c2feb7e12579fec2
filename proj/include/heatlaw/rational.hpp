#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace heatlaw {

using Rational = mpq_class;
using RationalVec = std::vector<Rational>;

/// Parses "p", "p/q", or a decimal literal such as "-0.125" or "2.5e-3".
/// Decimals are converted exactly (0.1 becomes 1/10).
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

std::vector<double> to_doubles(const RationalVec& values);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

/// Drops trailing zero entries (polynomial degree normalization).
RationalVec trim_trailing_zeros(RationalVec values);

/// Coefficient-list product; index i is the coefficient of x^i.
RationalVec poly_multiply(const RationalVec& lhs, const RationalVec& rhs);

/// Entry-wise sum with implicit zero padding.
RationalVec poly_add(const RationalVec& lhs, const RationalVec& rhs);

}  // namespace heatlaw
