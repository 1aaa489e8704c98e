#include "orbit_mp.hpp"

#include <mpfr.h>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hupcf::detail {

namespace {

double log2_abs_mpfr(mpfr_srcptr v) {
  long e = 0;
  const double d = mpfr_get_d_2exp(&e, v, MPFR_RNDN); // |d| in [0.5, 1)
  return static_cast<double>(e) + std::log2(std::fabs(d));
}

std::int64_t digit_from(mpfr_srcptr k) {
  if (!mpfr_fits_intmax_p(k, MPFR_RNDN))
    return mpfr_sgn(k) > 0 ? std::numeric_limits<std::int64_t>::min()
                           : std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(-mpfr_get_sj(k, MPFR_RNDN));
}

} // namespace

namespace {

OrbitRecord orbit_mpfr_from(mpfr_srcptr start, int n, double beta,
                            int precision_bits) {
  OrbitRecord rec;
  {
    double sv = mpfr_get_d(start, MPFR_RNDN);
    if (sv <= -1.0) sv = 1.0;
    if (sv > 1.0) sv = 1.0;
    rec.start = IntervalPoint(sv);
  }
  rec.iterates.push_back(rec.start);

  mpfr_t cur, y, k, r;
  mpfr_inits2(precision_bits, cur, y, k, r, static_cast<mpfr_ptr>(nullptr));
  mpfr_set(cur, start, MPFR_RNDN);
  const double log2_beta = std::log2(beta);

  for (int step = 0; step < n; ++step) {
    if (mpfr_zero_p(cur)) {
      rec.terminated = Termination::hit_zero;
      break;
    }
    if (mpfr_cmp_ui(cur, 1) == 0) rec.terminated = Termination::hit_one;

    mpfr_d_div(y, -beta, cur, MPFR_RNDN);
    mpfr_div_2ui(k, y, 1, MPFR_RNDN);
    mpfr_rint(k, k, MPFR_RNDN);
    mpfr_mul_2ui(r, k, 1, MPFR_RNDN);
    mpfr_sub(r, y, r, MPFR_RNDN);
    if (mpfr_cmp_si(r, -1) <= 0)
      mpfr_add_ui(r, r, 2, MPFR_RNDN);
    else if (mpfr_cmp_ui(r, 1) > 0)
      mpfr_sub_ui(r, r, 2, MPFR_RNDN);

    rec.digits.push_back(digit_from(k));
    rec.log2_derivative_product += log2_beta - 2.0 * log2_abs_mpfr(cur);
    mpfr_set(cur, r, MPFR_RNDN);

    double dv = mpfr_get_d(cur, MPFR_RNDN);
    if (dv <= -1.0) dv = 1.0; // rounding across the seam of ]-1,1]
    if (dv > 1.0) dv = 1.0;
    rec.iterates.push_back(IntervalPoint(dv));
  }
  if (rec.terminated == Termination::none) {
    if (mpfr_zero_p(cur)) rec.terminated = Termination::hit_zero;
    if (mpfr_cmp_ui(cur, 1) == 0) rec.terminated = Termination::hit_one;
  }

  mpfr_clears(cur, y, k, r, static_cast<mpfr_ptr>(nullptr));
  rec.trusted = rec.log2_derivative_product + 8.0 <= precision_bits;
  return rec;
}

} // namespace

OrbitRecord orbit_mpfr(const IntervalPoint& x, int n, double beta,
                       int precision_bits) {
  if (precision_bits < 64 || precision_bits > (1 << 24))
    throw std::invalid_argument("orbit_mpfr: unreasonable precision");
  mpfr_t start;
  mpfr_init2(start, precision_bits);
  mpfr_set_d(start, x.value, MPFR_RNDN);
  OrbitRecord rec = orbit_mpfr_from(start, n, beta, precision_bits);
  rec.start = x;
  rec.iterates.front() = x;
  mpfr_clear(start);
  return rec;
}

OrbitRecord random_orbit_mpfr(std::uint64_t seed, int n, double beta,
                              int precision_bits) {
  if (precision_bits < 64 || precision_bits > (1 << 24))
    throw std::invalid_argument("random_orbit: unreasonable precision");
  gmp_randstate_t rng;
  gmp_randinit_mt(rng);
  gmp_randseed_ui(rng, static_cast<unsigned long>(seed));
  mpfr_t start;
  mpfr_init2(start, precision_bits);
  // uniform in ]0,1[, then stretched to ]-1,1[
  mpfr_urandomb(start, rng);
  mpfr_mul_2ui(start, start, 1, MPFR_RNDN);
  mpfr_sub_ui(start, start, 1, MPFR_RNDN);
  if (mpfr_zero_p(start)) mpfr_set_d(start, 0.5, MPFR_RNDN);
  OrbitRecord rec = orbit_mpfr_from(start, n, beta, precision_bits);
  mpfr_clear(start);
  gmp_randclear(rng);
  return rec;
}

} // namespace hupcf::detail
