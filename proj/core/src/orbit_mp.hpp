#pragma once

#include "hupcf/gauss.hpp"

namespace hupcf::detail {

/// Orbit of U_beta in MPFR arithmetic at the requested precision.
OrbitRecord orbit_mpfr(const IntervalPoint& x, int n, double beta,
                       int precision_bits);

/// Orbit from a full-precision uniform random start.
OrbitRecord random_orbit_mpfr(std::uint64_t seed, int n, double beta,
                              int precision_bits);

} // namespace hupcf::detail
