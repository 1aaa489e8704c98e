#pragma once

#include <optional>

#include "hupcf/rational.hpp"

namespace hupcf {

/// A point of R/2Z represented on the half-open interval ]-1,1].
/// The right-closed convention matters: -1 normalizes to 1, and every
/// branch formula downstream assumes it.
struct IntervalPoint {
  double value = 1.0;
  std::optional<Rational> exact;

  IntervalPoint() = default;
  explicit IntervalPoint(double v, std::optional<Rational> e = std::nullopt);

  bool is_zero() const { return exact ? exact->is_zero() : value == 0.0; }
  bool is_one() const { return exact ? exact->is_one() : value == 1.0; }

  static IntervalPoint zero() {
    return IntervalPoint(0.0, Rational::from_reduced(0, 1));
  }
  static IntervalPoint one() {
    return IntervalPoint(1.0, Rational::from_reduced(1, 1));
  }
};

/// {x}_2: the unique r in ]-1,1] with x - r an even integer.
/// Non-finite input is a domain error.
IntervalPoint mod2_reduce(double x);

/// Exact {p/q}_2. The returned point carries the reduced rational
/// representative; the float field is its rounding. q = 0 is a domain
/// error; a negative q is folded into the numerator.
IntervalPoint mod2_reduce_exact(std::int64_t p, std::int64_t q);

/// Exact reduction of a Rational, with the even integer that was
/// subtracted reported through shift: r = x - 2*shift.
IntervalPoint mod2_reduce_exact(const Rational& x, std::int64_t* shift = nullptr);

} // namespace hupcf
