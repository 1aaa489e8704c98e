#pragma once

#include <complex>
#include <functional>
#include <span>
#include <variant>
#include <vector>

namespace hupcf {

struct HyperbolaAtom {
  double t;
  std::complex<double> mass;
};

/// A measure on the hyperbola x1 x2 = eps, parametrized t -> (t, eps/t):
/// an absolutely continuous part density(t) dt supported on
/// [-window, window], plus finitely many atoms. tail_bound declares the
/// |density| mass beyond the window (it enters error reports whenever
/// oscillation cannot be integrated by parts).
struct HyperbolaMeasure {
  double eps = 1.0;
  std::function<std::complex<double>(double)> density; // may be empty
  double window = 30.0;
  double tail_bound = 0.0;
  std::vector<HyperbolaAtom> atoms;
  double quad_tol = 1e-8;
  int max_panels = 400000;
};

struct FourierValue {
  std::complex<double> value{0.0, 0.0};
  double err_est = 0.0;
};

/// mu^(xi) = int exp(i pi (xi1 t + xi2 eps/t)) dmu(t). Atoms are summed
/// in closed form with phases reduced mod 2 first. The density part
/// splits at |t| = min(1, window): the outer piece integrates directly,
/// the inner piece through the substitution t -> eps/u (the hyperbola's
/// own symmetry), so both pieces carry bounded phase derivatives;
/// endpoint tails get analytic integration-by-parts corrections when
/// the phase moves fast enough, and honest mass bounds when it does not.
FourierValue fourier_transform(const HyperbolaMeasure& mu, double xi1, double xi2);

/// Same transform for the measure translated by (shift1, shift2) in the
/// plane (support leaves the hyperbola; only the phase changes pointwise).
FourierValue fourier_transform_translated(const HyperbolaMeasure& mu, double xi1,
                                          double xi2, double shift1,
                                          double shift2);

struct LatticeCross {
  double alpha = 1.0;
  double beta = 1.0;
  int j_range = 50;
  int k_range = 50;
};

struct LatticeSample {
  double xi1 = 0.0;
  double xi2 = 0.0;
  std::complex<double> value{0.0, 0.0};
  double err_est = 0.0;
};

struct LatticeResidualReport {
  double max_abs = 0.0;
  double argmax_xi1 = 0.0;
  double argmax_xi2 = 0.0;
  std::vector<LatticeSample> samples;
};

/// max |mu^| over (alpha j, 0), |j| <= j_range and (0, beta k),
/// |k| <= k_range (the origin included once).
LatticeResidualReport lattice_residual(const HyperbolaMeasure& mu,
                                       const LatticeCross& cross);

enum class AnnihilatorKind { singular_pair, poisson_difference };

struct AnnihilatorCertificate {
  AnnihilatorKind kind = AnnihilatorKind::singular_pair;
  double alpha = 1.0;
  double beta = 1.0;
  std::complex<double> z1{0.0, 0.0}; // atom abscissae u1, v1 (real) or
  std::complex<double> z2{0.0, 0.0}; // the separated points in C_+
  double max_lattice_residual = 0.0;
  double witness_xi1 = 0.0;
  double witness_xi2 = 0.0;
  double witness_value = 0.0;

  bool valid() const { return witness_value > 10.0 * max_lattice_residual; }
};

struct SingularAnnihilator {
  HyperbolaMeasure measure;
  AnnihilatorCertificate certificate;
};

/// mu = delta_u - delta_v on x1 x2 = 1 with u1 - v1 = 2m/alpha and
/// 1/u1 - 1/v1 in (2/beta)Z, from the quadratic root formula
/// u1 = (m/alpha)(1 + sqrt(1 - alpha beta/(m n))). Requires
/// m n > alpha beta; equality is the degenerate double root u1 = v1.
SingularAnnihilator singular_annihilator(double alpha, double beta, int m, int n,
                                         int lattice_range = 50);

struct AcAnnihilator {
  HyperbolaMeasure measure;
  AnnihilatorCertificate certificate;
};

/// For beta > 1 (alpha normalized to 1 by dilation): density
/// (1/pi)(P(t,z1) - P(t,z2)) with z1 = 1 + i s, z2 = -1 + i s,
/// s = sqrt(beta-1). The constructor asserts z1 - z2 = 2 and
/// 1/conj(z1) - 1/conj(z2) = 2/beta to 1e-14 and refuses beta <= 1,
/// where no annihilator exists.
AcAnnihilator ac_annihilator(double beta, int lattice_range = 20);

double poisson_kernel(double t, std::complex<double> z);

/// (1/pi) int P(t,z) f(t) dt. osc_freq = w declares f(t) = smooth *
/// e^(i pi w t) so the window tails can be integrated by parts;
/// f_bound bounds |f| outside the window for the non-oscillatory case.
FourierValue poisson_extend(const std::function<std::complex<double>(double)>& f,
                            std::complex<double> z, double f_bound = 1.0,
                            double tol = 1e-8, double osc_freq = 0.0);

// ---------------------------------------------------------------------------
// Finite-rank proxy of the weak-star spanning question: least-squares
// distance from a target to span{e_n, e_n^<beta> : |n| <= N} in
// L^2(R, w dx), w(x) = (1/pi)/(1+x^2). A finite-rank proxy only; the
// spanning statement itself is infinite-dimensional.
// ---------------------------------------------------------------------------

/// Target of the least-squares problem: either a basis member (by
/// family and frequency, kept exactly consistent with the Gram matrix)
/// or an arbitrary callable.
struct BasisTarget {
  bool inverted = false; // false: e_n, true: e_n^<beta>
  int n = 1;
};
using DensityGapTarget =
    std::variant<BasisTarget, std::function<std::complex<double>(double)>>;

struct DensityGapReport {
  double residual = 0.0;
  double gram_condition = 0.0;
  int basis_size = 0;
  bool regularization_flagged = false;
  double rhs_quadrature_error = 0.0; // accumulated over the pairings
};

/// Gram entries use the closed forms <e_m, e_n> = e^{-pi|m-n|} and
/// <e^<b>_m, e^<b>_n> = e^{-pi b|m-n|}; the mixed entries are the
/// oscillatory integrals I(m, beta n), computed by split + inversion +
/// integration by parts. Normal equations are Tikhonov-regularized with
/// 1e-12 * trace, and the Gram condition number is always reported.
DensityGapReport density_gap(double beta, int N, const DensityGapTarget& target);

/// For beta > 1: the certified duality lower bound on the residual of
/// the normalized annihilator density K/||K||_w against every finite N:
/// ||K||^2_{L2(dt)} / (||K||_{L2(w)} * ||K/sqrt(w)||_{L2(dt)}).
double density_gap_duality_bound(double beta);

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct ProjectionPartition {
  std::vector<double> a_set;
  std::vector<double> b_set;
};

/// Two-parallel-lines partition of the distinct first coordinates:
/// t lands in a_set iff two points share xi1 = t with xi2-difference
/// outside 2Z; otherwise in b_set.
ProjectionPartition classify_projection(std::span<const Point2> lambda);

} // namespace hupcf
