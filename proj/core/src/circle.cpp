#include "hupcf/circle.hpp"

#include <cmath>
#include <stdexcept>

namespace hupcf {

IntervalPoint::IntervalPoint(double v, std::optional<Rational> e)
    : value(v), exact(std::move(e)) {
  if (!std::isfinite(v) || v <= -1.0 || v > 1.0)
    throw std::domain_error("IntervalPoint: value outside ]-1,1]");
}

IntervalPoint mod2_reduce(double x) {
  if (!std::isfinite(x)) throw std::domain_error("mod2_reduce: non-finite input");
  // Subtract the nearest even integer, then correct into ]-1,1]. The
  // single rounded subtraction avoids cancellation for large |x|.
  double r = x - 2.0 * std::round(x * 0.5);
  if (r <= -1.0)
    r += 2.0;
  else if (r > 1.0)
    r -= 2.0;
  return IntervalPoint(r);
}

IntervalPoint mod2_reduce_exact(std::int64_t p, std::int64_t q) {
  if (q == 0) throw std::domain_error("mod2_reduce_exact: zero denominator");
  return mod2_reduce_exact(Rational(p, q));
}

IntervalPoint mod2_reduce_exact(const Rational& x, std::int64_t* shift) {
  // Want r = x - 2k in ]-1,1], i.e. k = ceil((p - q) / (2q)).
  const std::int64_t p = x.num;
  const std::int64_t q = x.den;
  const std::int64_t k = -floor_div(-(p - q), 2 * q); // ceil((p-q)/(2q))
  if (shift) *shift = k;
  const Rational r = detail::make_reduced_i128(
      static_cast<__int128>(p) - static_cast<__int128>(2) * k * q, q);
  return IntervalPoint(r.to_double(), r);
}

} // namespace hupcf
