#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace hupcf {

/// Real Moebius transformation z -> (az+b)/(cz+d) preserving the upper
/// half plane, stored with ad - bc = 1.
struct MoebiusMap {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  MoebiusMap() = default;
  MoebiusMap(double a_, double b_, double c_, double d_); // normalizes, det > 0

  MoebiusMap inverse() const { return MoebiusMap(d, -b, -c, a); }
  friend MoebiusMap operator*(const MoebiusMap& lhs, const MoebiusMap& rhs);

  static MoebiusMap identity() { return MoebiusMap(); }
};

/// Apply to a point of the upper half plane (Im z > 0 required).
std::complex<double> apply(const MoebiusMap& m, std::complex<double> z);

/// Generators of G(beta): A is z -> z+2, B is z -> beta z / (beta - 2z).
struct Generators {
  MoebiusMap A;
  MoebiusMap B;
};
Generators generators(double beta);

/// Strict membership in the fundamental polygon
/// D(beta) = { |Re z| < 1, |z - beta/2| > beta/2, |z + beta/2| > beta/2 }.
bool in_fundamental_domain(std::complex<double> z, double beta);

enum class Letter { A, Ainv, B, Binv };

/// Greedy reduction into the closure of D(beta): translate Re z into
/// ]-1,1], invert out of whichever isometric circle contains the point,
/// repeat. Near the cusps (0 and infinity-like behaviour) the reduction
/// can stall; that is flagged, never silent.
struct ReduceResult {
  std::complex<double> z{0.0, 1.0};
  std::vector<Letter> word; // letters applied, in order, z' = w(z)
  bool completed = false;
  bool cusp_proximity = false;
};
ReduceResult reduce_to_domain(std::complex<double> z, double beta, int max_steps);

MoebiusMap letter_map(Letter l, double beta);
const char* letter_name(Letter l);

/// Discreteness of G(beta): free for beta <= 1; for beta > 1 discrete
/// exactly when beta = 1/cos^2(p pi/(2q)) with coprime p < q, p in {1,2}.
enum class GroupClass { discrete_free, discrete_pq, non_discrete };
struct DomainVerdict {
  GroupClass status = GroupClass::discrete_free;
  std::optional<int> p;
  std::optional<int> q;
  int q_max = 0; // search bound the verdict is honest up to
};

/// Search (p,q) up to q_max; a float hit is re-verified in long double
/// before being reported, since the eq values crowd together as q grows.
DomainVerdict discreteness_classify(double beta, int q_max);

/// Cusps of the quotient for beta <= 1: {infinity, 0}, plus {+-1} at
/// beta = 1. beta > 1 is unsupported (the inventory depends on p).
struct CuspPoint {
  bool at_infinity = false;
  double value = 0.0;
};
std::vector<CuspPoint> cusps(double beta);

/// Reduce the lattice-cross problem (alpha, beta, eps) to its single
/// dilation-invariant parameter beta' = alpha*beta*|eps| and the
/// uniqueness verdict beta' <= 1.
struct PairVerdict {
  double beta_prime = 0.0;
  bool is_hup = false;
};
PairVerdict normalize_pair(double alpha, double beta, double eps);

} // namespace hupcf
