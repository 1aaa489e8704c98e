#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hupcf {

/// Reduced fraction num/den with den > 0. All arithmetic funnels through
/// __int128 and throws std::overflow_error instead of wrapping silently.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;

  Rational(std::int64_t p, std::int64_t q) {
    if (q == 0) throw std::domain_error("Rational: zero denominator");
    if (q < 0) {
      p = -p;
      q = -q;
    }
    const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
    num = g ? p / g : p;
    den = g ? q / g : q;
  }

  static Rational from_reduced(std::int64_t p, std::int64_t q) {
    Rational r;
    r.num = p;
    r.den = q;
    return r;
  }

  bool is_zero() const { return num == 0; }
  bool is_one() const { return num == 1 && den == 1; }

  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  Rational negated() const { return from_reduced(-num, den); }

  Rational reciprocal() const {
    if (num == 0) throw std::domain_error("Rational: reciprocal of zero");
    return num > 0 ? from_reduced(den, num) : from_reduced(-den, -num);
  }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num) * b.den;
    const __int128 rhs = static_cast<__int128>(b.num) * a.den;
    return lhs < rhs   ? std::strong_ordering::less
           : lhs > rhs ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
  }

  std::string str() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }
};

namespace detail {

inline std::int64_t narrow_i128(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw std::overflow_error("Rational: 64-bit overflow");
  return static_cast<std::int64_t>(v);
}

inline Rational make_reduced_i128(__int128 p, __int128 q) {
  if (q == 0) throw std::domain_error("Rational: zero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  __int128 a = p < 0 ? -p : p;
  __int128 b = q;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a != 0) {
    p /= a;
    q /= a;
  }
  return Rational::from_reduced(narrow_i128(p), narrow_i128(q));
}

} // namespace detail

inline Rational operator+(const Rational& a, const Rational& b) {
  return detail::make_reduced_i128(
      static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
      static_cast<__int128>(a.den) * b.den);
}
inline Rational operator-(const Rational& a, const Rational& b) {
  return detail::make_reduced_i128(
      static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
      static_cast<__int128>(a.den) * b.den);
}
inline Rational operator*(const Rational& a, const Rational& b) {
  return detail::make_reduced_i128(static_cast<__int128>(a.num) * b.num,
                                   static_cast<__int128>(a.den) * b.den);
}
inline Rational operator/(const Rational& a, const Rational& b) {
  if (b.num == 0) throw std::domain_error("Rational: division by zero");
  return detail::make_reduced_i128(static_cast<__int128>(a.num) * b.den,
                                   static_cast<__int128>(a.den) * b.num);
}

/// floor(a/b) for b > 0, exact for negative a as well.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

} // namespace hupcf
