#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "hupcf/circle.hpp"

namespace hupcf {

// ---------------------------------------------------------------------------
// The Gauss-type map U_beta(x) = {-beta/x}_2 on ]-1,1], U_beta(0) = 0.
// For beta = 1 the branch j maps ]1/(2j+1), 1/(2j-1)] bijectively onto
// ]-1,1]; the even digits 2j are the partial quotients of the expansion
// x = 1/(2 j_1 - 1/(2 j_2 - ...)).
// ---------------------------------------------------------------------------

/// Branch index for beta = 1: the unique j != 0 with
/// 1/(2j+1) < x <= 1/(2j-1). x = 0 is a domain error (the caller maps
/// 0 -> 0 outside the branch structure).
std::int64_t branch_index(const IntervalPoint& x);

/// One step of U_beta. beta must lie in ]0,1]. Exact arithmetic is used
/// automatically when x carries a rational and beta == 1; use the
/// Rational-beta overload to stay exact for rational beta < 1.
/// The even shift applied by the mod-2 reduction is reported through
/// digit when non-null (equals branch_index(x) when beta = 1; may be 0
/// for beta < 1 on |x| > beta).
IntervalPoint gauss_step(const IntervalPoint& x, double beta,
                         std::int64_t* digit = nullptr);
IntervalPoint gauss_step(const IntervalPoint& x, const Rational& beta,
                         std::int64_t* digit = nullptr);

/// |U_beta'(x)| = beta/x^2. Undefined at 0 and (in exact mode) at the
/// interior branch endpoints 1/(2j-1), |2j-1| >= 3; the fixed point 1
/// keeps its one-sided derivative.
double derivative(const IntervalPoint& x, double beta);

/// The branch inverse t -> beta/(2j - t); a left inverse of gauss_step:
/// gauss_step(inverse_branch(t, j, beta), beta) == t.
IntervalPoint inverse_branch(const IntervalPoint& t, std::int64_t j, double beta);
IntervalPoint inverse_branch_exact(const IntervalPoint& t, std::int64_t j,
                                   const Rational& beta);

enum class Termination { none, hit_zero, hit_one };

/// Record of an orbit under U_beta. iterates[0] is the start, so up to
/// n+1 entries; digits[k] is the even shift for the step leaving
/// iterates[k]. Iteration stops early only at 0 (nothing to divide);
/// reaching the fixed point 1 sets the flag but keeps stepping.
///
/// log2_derivative_product accumulates log2 of prod beta/x_k^2, the
/// local expansion factor. Once it exceeds the working precision the
/// remaining iterates carry no correct bits, so trusted drops to false
/// rather than returning garbage silently.
struct OrbitRecord {
  IntervalPoint start;
  std::vector<IntervalPoint> iterates;
  std::vector<std::int64_t> digits;
  double log2_derivative_product = 0.0;
  Termination terminated = Termination::none;
  bool trusted = true;
  int exact_steps = 0;
  bool exact = false;

  double derivative_product() const { return std::exp2(log2_derivative_product); }
};

/// n steps of U_beta from x. Rational starts with beta = 1 (or the
/// Rational-beta overload) run in exact integer arithmetic; rational
/// orbits under U_1 terminate at 0 or 1. Float orbits run in double
/// (precision_bits <= 53), long double (<= 64) or MPFR arithmetic at
/// the requested precision, and are flagged untrusted when the
/// derivative product eats through that precision.
///
/// stop_at_one ends the record when a step lands on the fixed point 1;
/// termination sweeps over many rationals want this, trajectory studies
/// usually do not (the default keeps stepping, 1 being a fixed point).
OrbitRecord orbit(const IntervalPoint& x, int n, double beta,
                  int precision_bits = 53, bool stop_at_one = false);
OrbitRecord orbit(const IntervalPoint& x, int n, const Rational& beta,
                  int precision_bits = 53, bool stop_at_one = false);

/// Orbit from a uniform random start drawn with the full working
/// precision. A double start is a dyadic rational, and dyadic orbits
/// under U terminate; float orbits launched from doubles therefore keep
/// collapsing onto near-terminating points and trip the trust flag no
/// matter the precision. Long trusted orbits need a start carrying as
/// many random bits as the arithmetic, which is what this provides.
OrbitRecord random_orbit(std::uint64_t seed, int n, double beta,
                         int precision_bits);

/// Continued fraction with even partial quotients: digits are the
/// successive branch indices of the beta = 1 orbit, tail is the final
/// iterate, so x = 1/(2 j_1 - 1/(2 j_2 - ... - tail)).
struct EvenCfExpansion {
  std::vector<std::int64_t> digits;
  IntervalPoint tail;
  Termination terminated = Termination::none;
};
EvenCfExpansion even_cf_expand(const IntervalPoint& x, int max_depth);

/// Evaluate the nested fraction 1/(2 j_1 - 1/(... - tail)). Digits must
/// be nonzero; a zero divisor during nesting is a malformed-digit error.
IntervalPoint even_cf_reconstruct(const std::vector<std::int64_t>& digits,
                                  const IntervalPoint& tail);

// ---------------------------------------------------------------------------
// Survivor sets E_beta(n) = { t : U_beta^k(t) in ]-beta,beta] for
// k = 0..n-1 }, as rigorous interval enclosures. The enclosure carries a
// [lower, upper] measure pair; upper - lower collects the branch-cutoff
// tail, dropped slivers and float rounding slop, each propagated through
// later refinements by the pullback density bound C(beta).
// ---------------------------------------------------------------------------

struct Interval {
  double lo;
  double hi; // the interval ]lo, hi]
  double length() const { return hi - lo; }
};

struct IntervalUnion {
  std::vector<Interval> intervals; // disjoint, sorted, inside ]-1,1]
  double measure_lower = 0.0;
  double measure_upper = 0.0;
  double tail_measure_bound = 0.0; // == measure_upper - measure_lower
};

/// Enclosure of E_beta(n) for 0 < beta < 1, branch sum cut at |j| <= J.
/// n = 1 returns ]-beta,beta] with measure exactly 2 beta. beta >= 1 is
/// a parameter error (E_1(n) is all of ]-1,1]; stated, not computed).
IntervalUnion survivor_set(double beta, int n, int branch_cutoff);

/// sup over |t| <= beta of the pullback density
/// Sum_{j != 0} beta/(2j-t)^2; the growth factor for tail mass under one
/// refinement step.
double survivor_density_bound(double beta);

} // namespace hupcf
