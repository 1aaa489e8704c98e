#include "hupcf/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hupcf {

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

double hurwitz_tail(int m, double x) {
  if (m < 2 || x <= 0.0) throw std::domain_error("hurwitz_tail: need m>=2, x>0");
  double acc = 0.0;
  while (x < 24.0) {
    acc += std::pow(x, -m);
    x += 1.0;
  }
  // Euler-Maclaurin: sum_{k>=0}(x+k)^{-m}
  //   = x^{1-m}/(m-1) + x^{-m}/2 + m x^{-m-1}/12 - m(m+1)(m+2) x^{-m-3}/720
  //     + m(m+1)...(m+4) x^{-m-5}/30240 - ...
  const double inv = 1.0 / x;
  const double xm = std::pow(inv, m);
  double s = xm * x / (m - 1) + 0.5 * xm;
  double c = m * xm * inv / 12.0;
  s += c;
  c *= -(m + 1.0) * (m + 2.0) * inv * inv / 60.0; // B4/4! = -1/720 vs 1/12: ratio -1/60
  s += c;
  c *= -(m + 3.0) * (m + 4.0) * inv * inv / 42.0; // B6 step: 1/30240 vs -1/720: -1/42
  s += c;
  return acc + s;
}

double digamma(double x) {
  if (x <= 0.0) throw std::domain_error("digamma: need x>0");
  double acc = 0.0;
  while (x < 24.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // ln x - 1/(2x) - 1/(12x^2) + 1/(120x^4) - 1/(252x^6)
  return acc + std::log(x) - 0.5 * inv -
         inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
}

double sum_branch_derivative(double t) {
  const double at = std::fabs(t);
  if (at > 1.0) throw std::domain_error("sum_branch_derivative: |t| > 1");
  if (at < 0.05) {
    // pi^2/4 * (1/sin^2 x - 1/x^2) at x = pi t / 2, series in x^2.
    const double x2 = kPi * t * 0.5 * (kPi * t * 0.5);
    return (kPi * kPi / 4.0) *
           (1.0 / 3.0 +
            x2 * (1.0 / 15.0 +
                  x2 * (2.0 / 189.0 + x2 * (1.0 / 675.0 + x2 * 2.0 / 10395.0))));
  }
  const double s = std::sin(kPi * t * 0.5);
  return kPi * kPi / (4.0 * s * s) - 1.0 / (t * t);
}

BranchTails branch_tails(int J, double t) {
  if (J < 1) throw std::domain_error("branch_tails: need J >= 1");
  // Sum_{j>J} (2j-t)^{-m} = 2^{-m} zeta(m, J+1-t/2),
  // Sum_{j<-J} (2j-t)^{-m} = (-1)^m 2^{-m} zeta(m, J+1+t/2).
  const double xp = J + 1 - 0.5 * t;
  const double xn = J + 1 + 0.5 * t;
  BranchTails out{};
  out.s2 = 0.25 * (hurwitz_tail(2, xp) + hurwitz_tail(2, xn));
  out.s3 = 0.125 * (hurwitz_tail(3, xp) - hurwitz_tail(3, xn));
  out.s4 = 0.0625 * (hurwitz_tail(4, xp) + hurwitz_tail(4, xn));
  return out;
}

double branch_image_tail_length(int J, double a, double b) {
  // Sum_{j>J} [1/(2j-b) - 1/(2j-a)] telescopes into digammas.
  return 0.5 * (digamma(J + 1 - 0.5 * a) - digamma(J + 1 - 0.5 * b));
}

} // namespace hupcf
