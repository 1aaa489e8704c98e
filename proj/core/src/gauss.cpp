#include "hupcf/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hupcf/special.hpp"
#include "orbit_mp.hpp"

namespace hupcf {

namespace {

void check_beta(double beta) {
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("beta must lie in ]0,1]");
}

std::int64_t clamp_digit(double jd) {
  if (std::fabs(jd) < 9.0e18) return std::llround(jd);
  return jd > 0 ? std::numeric_limits<std::int64_t>::max()
                : std::numeric_limits<std::int64_t>::min();
}

} // namespace

std::int64_t branch_index(const IntervalPoint& x) {
  if (x.is_zero())
    throw std::domain_error("branch_index: 0 is the fixed point outside the branches");
  if (x.exact) {
    // j = floor((q+p)/(2p)) for x = p/q.
    const std::int64_t p = x.exact->num;
    const std::int64_t q = x.exact->den;
    return floor_div(q + p, 2 * p);
  }
  const double jd = std::floor((1.0 / x.value + 1.0) * 0.5);
  return clamp_digit(jd);
}

IntervalPoint gauss_step(const IntervalPoint& x, double beta, std::int64_t* digit) {
  check_beta(beta);
  if (x.is_zero()) {
    if (digit) *digit = 0;
    return IntervalPoint::zero();
  }
  if (x.exact && beta == 1.0)
    return gauss_step(x, Rational::from_reduced(1, 1), digit);
  const double y = -beta / x.value;
  IntervalPoint r = mod2_reduce(y);
  if (digit) *digit = clamp_digit((r.value - y) * 0.5);
  return r;
}

IntervalPoint gauss_step(const IntervalPoint& x, const Rational& beta,
                         std::int64_t* digit) {
  if (beta.num <= 0 || Rational::from_reduced(1, 1) < beta)
    throw std::invalid_argument("beta must lie in ]0,1]");
  if (x.is_zero()) {
    if (digit) *digit = 0;
    return IntervalPoint::zero();
  }
  if (!x.exact) return gauss_step(x, beta.to_double(), digit);
  const Rational y = (beta / *x.exact).negated();
  std::int64_t k = 0;
  IntervalPoint r = mod2_reduce_exact(y, &k);
  if (digit) *digit = -k;
  return r;
}

double derivative(const IntervalPoint& x, double beta) {
  check_beta(beta);
  if (x.is_zero()) throw std::domain_error("derivative: undefined at 0");
  if (x.exact) {
    const std::int64_t p = x.exact->num;
    const std::int64_t q = x.exact->den;
    // Interior branch endpoints +-1/(2j-1); the fixed point 1 keeps its
    // one-sided derivative.
    if ((p == 1 || p == -1) && q >= 3 && q % 2 == 1)
      throw std::domain_error("derivative: undefined at branch endpoint");
  }
  return beta / (x.value * x.value);
}

IntervalPoint inverse_branch(const IntervalPoint& t, std::int64_t j, double beta) {
  check_beta(beta);
  if (j == 0) throw std::invalid_argument("inverse_branch: j must be nonzero");
  if (t.exact && beta == 1.0)
    return inverse_branch_exact(t, j, Rational::from_reduced(1, 1));
  return IntervalPoint(beta / (2.0 * static_cast<double>(j) - t.value));
}

IntervalPoint inverse_branch_exact(const IntervalPoint& t, std::int64_t j,
                                   const Rational& beta) {
  if (j == 0) throw std::invalid_argument("inverse_branch: j must be nonzero");
  if (!t.exact) return inverse_branch(t, j, beta.to_double());
  const Rational denom = Rational(2 * j, 1) - *t.exact;
  const Rational y = beta / denom;
  return IntervalPoint(y.to_double(), y);
}

namespace {

double log2_abs(const Rational& r) {
  return std::log2(std::fabs(static_cast<double>(r.num))) -
         std::log2(static_cast<double>(r.den));
}

OrbitRecord orbit_exact(const IntervalPoint& x, int n, const Rational& beta,
                        int precision_bits, bool stop_at_one) {
  OrbitRecord rec;
  rec.start = x;
  rec.exact = true;
  rec.iterates.push_back(x);
  Rational cur = *x.exact;
  for (int step = 0; step < n; ++step) {
    if (cur.is_zero()) {
      rec.terminated = Termination::hit_zero;
      break;
    }
    if (cur.is_one()) rec.terminated = Termination::hit_one;
    IntervalPoint next;
    std::int64_t digit = 0;
    try {
      std::int64_t k = 0;
      next = mod2_reduce_exact((beta / cur).negated(), &k);
      digit = -k;
    } catch (const std::overflow_error&) {
      // 64-bit exact arithmetic exhausted (possible for rational
      // beta < 1); finish the orbit in floating point.
      rec.exact = false;
      IntervalPoint fcur(cur.to_double());
      OrbitRecord rest = orbit(fcur, n - step, beta.to_double(), precision_bits);
      rec.iterates.insert(rec.iterates.end(), rest.iterates.begin() + 1,
                          rest.iterates.end());
      rec.digits.insert(rec.digits.end(), rest.digits.begin(), rest.digits.end());
      rec.log2_derivative_product += rest.log2_derivative_product;
      rec.terminated = rest.terminated;
      rec.trusted = rest.trusted;
      return rec;
    }
    rec.log2_derivative_product += log2_abs(beta) - 2.0 * log2_abs(cur);
    rec.digits.push_back(digit);
    cur = *next.exact;
    rec.iterates.push_back(next);
    ++rec.exact_steps;
    if (stop_at_one && cur.is_one()) {
      rec.terminated = Termination::hit_one;
      break;
    }
  }
  if (rec.terminated == Termination::none) {
    if (cur.is_zero()) rec.terminated = Termination::hit_zero;
    if (cur.is_one()) rec.terminated = Termination::hit_one;
  }
  return rec;
}

template <typename Real>
OrbitRecord orbit_float_impl(const IntervalPoint& x, int n, double beta,
                             int precision_bits, bool stop_at_one) {
  OrbitRecord rec;
  rec.start = x;
  rec.iterates.push_back(x);
  Real cur = static_cast<Real>(x.value);
  const double log2_beta = std::log2(beta);
  for (int step = 0; step < n; ++step) {
    if (cur == Real(0)) {
      rec.terminated = Termination::hit_zero;
      break;
    }
    if (cur == Real(1)) rec.terminated = Termination::hit_one;
    const Real y = -static_cast<Real>(beta) / cur;
    Real r = y - Real(2) * std::round(y * Real(0.5));
    if (r <= Real(-1))
      r += Real(2);
    else if (r > Real(1))
      r -= Real(2);
    rec.digits.push_back(clamp_digit(static_cast<double>((r - y) * Real(0.5))));
    rec.log2_derivative_product +=
        log2_beta - 2.0 * static_cast<double>(std::log2(std::fabs(cur)));
    cur = r;
    rec.iterates.push_back(IntervalPoint(static_cast<double>(cur)));
    if (stop_at_one && cur == Real(1)) {
      rec.terminated = Termination::hit_one;
      break;
    }
  }
  if (rec.terminated == Termination::none) {
    if (cur == Real(0)) rec.terminated = Termination::hit_zero;
    if (cur == Real(1)) rec.terminated = Termination::hit_one;
  }
  rec.trusted = rec.log2_derivative_product + 8.0 <= precision_bits;
  return rec;
}

} // namespace

OrbitRecord orbit(const IntervalPoint& x, int n, double beta, int precision_bits,
                  bool stop_at_one) {
  check_beta(beta);
  if (n < 0) throw std::invalid_argument("orbit: negative step count");
  if (x.exact && beta == 1.0)
    return orbit_exact(x, n, Rational::from_reduced(1, 1), precision_bits,
                       stop_at_one);
  if (precision_bits <= 53)
    return orbit_float_impl<double>(x, n, beta, precision_bits, stop_at_one);
  if (precision_bits <= 64)
    return orbit_float_impl<long double>(x, n, beta, precision_bits,
                                         stop_at_one);
  return detail::orbit_mpfr(x, n, beta, precision_bits);
}

OrbitRecord random_orbit(std::uint64_t seed, int n, double beta,
                         int precision_bits) {
  check_beta(beta);
  if (n < 0) throw std::invalid_argument("random_orbit: negative step count");
  return detail::random_orbit_mpfr(seed, n, beta, std::max(precision_bits, 64));
}

OrbitRecord orbit(const IntervalPoint& x, int n, const Rational& beta,
                  int precision_bits, bool stop_at_one) {
  if (beta.num <= 0 || Rational::from_reduced(1, 1) < beta)
    throw std::invalid_argument("beta must lie in ]0,1]");
  if (n < 0) throw std::invalid_argument("orbit: negative step count");
  if (x.exact) return orbit_exact(x, n, beta, precision_bits, stop_at_one);
  return orbit(x, n, beta.to_double(), precision_bits, stop_at_one);
}

EvenCfExpansion even_cf_expand(const IntervalPoint& x, int max_depth) {
  if (max_depth < 0) throw std::invalid_argument("even_cf_expand: negative depth");
  EvenCfExpansion out;
  IntervalPoint cur = x;
  for (int depth = 0; depth < max_depth; ++depth) {
    if (cur.is_zero()) break;
    std::int64_t digit = 0;
    cur = gauss_step(cur, 1.0, &digit);
    out.digits.push_back(digit);
  }
  out.tail = cur;
  if (cur.is_zero())
    out.terminated = Termination::hit_zero;
  else if (cur.is_one())
    out.terminated = Termination::hit_one;
  return out;
}

IntervalPoint even_cf_reconstruct(const std::vector<std::int64_t>& digits,
                                  const IntervalPoint& tail) {
  for (std::int64_t j : digits)
    if (j == 0) throw std::invalid_argument("even_cf_reconstruct: zero digit");

  if (tail.exact) {
    Rational v = *tail.exact;
    bool exact_ok = true;
    std::size_t k = digits.size();
    for (; k > 0; --k) {
      try {
        const Rational denom = Rational(2 * digits[k - 1], 1) - v;
        if (denom.is_zero())
          throw std::domain_error("even_cf_reconstruct: malformed digits");
        v = denom.reciprocal();
      } catch (const std::overflow_error&) {
        exact_ok = false;
        break;
      }
    }
    if (exact_ok) return IntervalPoint(v.to_double(), v);
    // Finish in floating point from the innermost exact value.
    double vf = v.to_double();
    for (; k > 0; --k) {
      const double denom = 2.0 * static_cast<double>(digits[k - 1]) - vf;
      if (denom == 0.0)
        throw std::domain_error("even_cf_reconstruct: malformed digits");
      vf = 1.0 / denom;
    }
    return IntervalPoint(vf);
  }

  double v = tail.value;
  for (std::size_t k = digits.size(); k > 0; --k) {
    const double denom = 2.0 * static_cast<double>(digits[k - 1]) - v;
    if (denom == 0.0)
      throw std::domain_error("even_cf_reconstruct: malformed digits");
    v = 1.0 / denom;
  }
  return IntervalPoint(v);
}

double survivor_density_bound(double beta) {
  // Sum_{j!=0} (2j-t)^{-2} is even and increasing in |t| (its derivative
  // is Sum 2[(2j-t)^{-3} - (2j+t)^{-3}] > 0 for t > 0), so the sup over
  // [-beta, beta] sits at t = beta.
  return beta * sum_branch_derivative(beta);
}

IntervalUnion survivor_set(double beta, int n, int branch_cutoff) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("survivor_set: need 0 < beta < 1 (E_1(n) is all of ]-1,1])");
  if (n < 1 || branch_cutoff < 1)
    throw std::invalid_argument("survivor_set: need n >= 1, branch_cutoff >= 1");

  const int J = branch_cutoff;
  if (n == 1) {
    IntervalUnion out;
    out.intervals = {{-beta, beta}};
    out.measure_lower = 2.0 * beta;
    out.measure_upper = 2.0 * beta;
    out.tail_measure_bound = 0.0;
    return out;
  }
  std::vector<Interval> cur{{-beta, beta}};
  double tail = 0.0;

  const double growth = survivor_density_bound(beta);
  const double endpoint_slop = 4e-15;
  const std::size_t max_intervals = 200000;

  for (int step = 2; step <= n; ++step) {
    double cur_len = 0.0;
    for (const Interval& I : cur) cur_len += I.length();
    // slivers finer than the retained resolution would be truncated by
    // the cap anyway; dropping them early keeps the branch loops short,
    // and every dropped length is accounted in the tail
    const double drop_tol =
        std::max(1e-12, 0.25 * cur_len / static_cast<double>(max_intervals));

    std::vector<Interval> next;
    next.reserve(cur.size() * 8);
    double dropped = 0.0;
    for (const Interval& I : cur) {
      const double len = I.length();
      // branches beyond jcut produce only sub-drop_tol slivers; their
      // summed mass is bounded by len * beta * sum_{|j|>jcut} (2j-1)^-2
      int jcut = J;
      if (beta * len < drop_tol * (2.0 * J - 1.0) * (2.0 * J - 1.0)) {
        jcut = std::min(
            J, 1 + static_cast<int>(0.5 * (std::sqrt(beta * len / drop_tol) + 1.0)));
      }
      for (int sj = 1; sj <= jcut; ++sj) {
        for (const double twoj : {2.0 * sj, -2.0 * sj}) {
          // phi_j is increasing, so ]a,b] maps to ]phi(a), phi(b)].
          const double lo = beta / (twoj - I.lo);
          const double hi = beta / (twoj - I.hi);
          const double plen = hi - lo;
          if (!(plen > 0.0)) continue;
          if (plen < drop_tol) {
            dropped += plen;
            continue;
          }
          next.push_back({lo, hi});
        }
      }
      dropped += len * beta / (2.0 * jcut - 1.0);
    }

    if (next.size() > max_intervals) {
      std::nth_element(next.begin(), next.begin() + max_intervals, next.end(),
                       [](const Interval& a, const Interval& b) {
                         return a.length() > b.length();
                       });
      for (std::size_t i = max_intervals; i < next.size(); ++i)
        dropped += next[i].length();
      next.resize(max_intervals);
    }

    std::sort(next.begin(), next.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    merged.reserve(next.size());
    for (const Interval& I : next) {
      if (!merged.empty() && I.lo <= merged.back().hi) {
        merged.back().hi = std::max(merged.back().hi, I.hi);
      } else {
        merged.push_back(I);
      }
    }

    tail = growth * tail + dropped +
           endpoint_slop * static_cast<double>(merged.size() + 1);
    cur = std::move(merged);
  }

  IntervalUnion out;
  out.intervals = std::move(cur);
  double len = 0.0;
  for (const Interval& I : out.intervals) len += I.length();
  const double slop = endpoint_slop * static_cast<double>(out.intervals.size());
  out.measure_lower = std::max(0.0, len - slop);
  out.measure_upper = len + slop + tail;
  out.tail_measure_bound = out.measure_upper - out.measure_lower;
  return out;
}

} // namespace hupcf
