#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "hupcf/circle.hpp"
#include "hupcf/gauss.hpp"

namespace hupcf {

/// A complex measure on ]-1,1]: masses on the N half-open cells
/// ]-1+2i/N, -1+2(i+1)/N] of the uniform partition, plus a finite atom
/// list. The atom at 0 has its own slot (it is the only invariant atom
/// of the dynamics and must never be smeared into a cell).
struct GridMeasure {
  int grid_size = 0;
  std::vector<std::complex<double>> cell_weights;
  std::complex<double> atom_at_zero{0.0, 0.0};
  std::vector<std::pair<double, std::complex<double>>> atoms; // positions != 0

  GridMeasure() = default;
  explicit GridMeasure(int n);

  double cell_width() const { return 2.0 / grid_size; }
  double cell_lo(int i) const { return -1.0 + 2.0 * i / grid_size; }
  double cell_hi(int i) const { return -1.0 + 2.0 * (i + 1) / grid_size; }
  double cell_mid(int i) const { return -1.0 + (2.0 * i + 1.0) / grid_size; }
  /// Index of the half-open cell containing t in ]-1,1].
  int cell_of(double t) const;

  double total_variation() const;

  void add_atom(double position, std::complex<double> mass);

  static GridMeasure zero(int n) { return GridMeasure(n); }
  static GridMeasure lebesgue(int n);
  static GridMeasure dirac(int n, double position, std::complex<double> mass);
  /// Cell masses f(midpoint) * h; first-order, Ulam-style.
  static GridMeasure from_density(int n,
                                  const std::function<std::complex<double>(double)>& f);
};

/// d omega / dx = 1/(1-x^2); pole error at |t| = 1.
double omega_density(double t);

/// Branch pullback nu_j: nu_j(A) = nu(beta/(2j - A)). Cell masses move
/// by proportional overlap of the image interval; atoms transport
/// through the branch inverse (an atom lands at t* = 2j - beta/s when
/// that is in range). The atom at 0 has no pullback.
GridMeasure pullback_branch(const GridMeasure& nu, std::int64_t j, double beta);

/// Total-variation data for lambda*nu - nu({0}) delta_0 - sum_j nu_j,
/// branch sum truncated at |j| <= branch_cutoff.
struct ResidualReport {
  double total = 0.0;    // TV of the truncated residual measure
  double interior = 0.0; // TV over cells and atoms within |t| <= 0.9
  double tail_bound = 0.0; // |nu| mass reachable by the |j| > J branches
};
ResidualReport invariance_residual(const GridMeasure& nu,
                                   std::complex<double> lambda, double beta,
                                   int branch_cutoff = 512);

/// Birkhoff average (1/N) sum_{k<N} phi(U^k t). A terminated orbit
/// contributes its terminal point once; untrusted orbits are flagged,
/// never silently averaged.
struct BirkhoffResult {
  double average = 0.0;
  bool trusted = true;
  int terms = 0; // orbit points actually summed
  Termination terminated = Termination::none;
  double log2_derivative_product = 0.0;
};
BirkhoffResult birkhoff_average(const IntervalPoint& t, int steps,
                                const std::function<double(double)>& phi = {},
                                int precision_bits = 64, double beta = 1.0);

/// (cells-only, atoms-only) split; the two parts sum back to nu exactly.
std::pair<GridMeasure, GridMeasure> split_abs_singular(const GridMeasure& nu);

} // namespace hupcf
