#include "hupcf/moebius.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace hupcf {

MoebiusMap::MoebiusMap(double a_, double b_, double c_, double d_) {
  const double det = a_ * d_ - b_ * c_;
  if (!(det > 0.0))
    throw std::invalid_argument("MoebiusMap: determinant must be positive");
  const double s = std::sqrt(det);
  a = a_ / s;
  b = b_ / s;
  c = c_ / s;
  d = d_ / s;
}

MoebiusMap operator*(const MoebiusMap& lhs, const MoebiusMap& rhs) {
  return MoebiusMap(lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
                    lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d);
}

std::complex<double> apply(const MoebiusMap& m, std::complex<double> z) {
  if (!(z.imag() > 0.0))
    throw std::domain_error("apply: point must lie in the upper half plane");
  return (m.a * z + m.b) / (m.c * z + m.d);
}

Generators generators(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("generators: beta must be positive");
  // A: z + 2. B: beta z / (beta - 2z), matrix [[beta,0],[-2,beta]] scaled
  // to determinant 1.
  return {MoebiusMap(1.0, 2.0, 0.0, 1.0), MoebiusMap(1.0, 0.0, -2.0 / beta, 1.0)};
}

bool in_fundamental_domain(std::complex<double> z, double beta) {
  if (!(z.imag() > 0.0))
    throw std::domain_error("in_fundamental_domain: Im z must be positive");
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("in_fundamental_domain: beta must lie in ]0,1]");
  const double r = 0.5 * beta;
  return std::fabs(z.real()) < 1.0 && std::abs(z - r) > r && std::abs(z + r) > r;
}

MoebiusMap letter_map(Letter l, double beta) {
  const Generators g = generators(beta);
  switch (l) {
    case Letter::A: return g.A;
    case Letter::Ainv: return g.A.inverse();
    case Letter::B: return g.B;
    case Letter::Binv: return g.B.inverse();
  }
  throw std::logic_error("letter_map: bad letter");
}

const char* letter_name(Letter l) {
  switch (l) {
    case Letter::A: return "A";
    case Letter::Ainv: return "A^-1";
    case Letter::B: return "B";
    case Letter::Binv: return "B^-1";
  }
  return "?";
}

ReduceResult reduce_to_domain(std::complex<double> z, double beta, int max_steps) {
  if (!(z.imag() > 0.0))
    throw std::domain_error("reduce_to_domain: Im z must be positive");
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("reduce_to_domain: beta must lie in ]0,1]");
  const Generators g = generators(beta);
  const MoebiusMap binv = g.B.inverse();
  const double r = 0.5 * beta;

  ReduceResult res;
  res.z = z;
  double min_abs = std::abs(z);
  for (int step = 0; step < max_steps; ++step) {
    const double re = res.z.real();
    // one translation letter per step keeps the word faithful; Re = 1
    // exactly sits on the closure and falls through to the circles
    if (re > 1.0) {
      res.z -= 2.0;
      res.word.push_back(Letter::Ainv);
    } else if (re <= -1.0) {
      res.z += 2.0;
      res.word.push_back(Letter::A);
    } else if (std::abs(res.z - r) < r) {
      res.z = apply(g.B, res.z);
      res.word.push_back(Letter::B);
    } else if (std::abs(res.z + r) < r) {
      res.z = apply(binv, res.z);
      res.word.push_back(Letter::Binv);
    } else {
      res.completed = true;
      return res;
    }
    min_abs = std::min(min_abs, std::abs(res.z));
  }
  // max_steps exhausted; |z| collapsing toward 0 marks the cusp there.
  res.cusp_proximity = std::abs(res.z) < 1e-6 || min_abs < 1e-9;
  return res;
}

DomainVerdict discreteness_classify(double beta, int q_max) {
  if (!(beta > 0.0)) throw std::invalid_argument("discreteness_classify: beta <= 0");
  if (q_max < 2) throw std::invalid_argument("discreteness_classify: q_max < 2");
  DomainVerdict v;
  v.q_max = q_max;
  if (beta <= 1.0) {
    v.status = GroupClass::discrete_free;
    return v;
  }
  const double tol = 1e-12 * (1.0 + beta * beta);
  for (int p = 1; p <= 2; ++p) {
    for (int q = p + 1; q <= q_max; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const double c = std::cos(std::numbers::pi * p / (2.0 * q));
      const double candidate = 1.0 / (c * c);
      if (std::fabs(beta - candidate) < tol) {
        // re-verify in long double; candidates crowd together as q grows
        const long double cl =
            std::cos(std::numbers::pi_v<long double> * p / (2.0L * q));
        const long double diff = std::fabs(static_cast<long double>(beta) -
                                           1.0L / (cl * cl));
        if (diff < static_cast<long double>(tol)) {
          v.status = GroupClass::discrete_pq;
          v.p = p;
          v.q = q;
          return v;
        }
      }
    }
  }
  v.status = GroupClass::non_discrete;
  return v;
}

std::vector<CuspPoint> cusps(double beta) {
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument(
        "cusps: only beta in ]0,1] is supported (the inventory for beta > 1 depends on p)");
  std::vector<CuspPoint> out{{true, 0.0}, {false, 0.0}};
  if (beta == 1.0) {
    out.push_back({false, 1.0});
    out.push_back({false, -1.0});
  }
  return out;
}

PairVerdict normalize_pair(double alpha, double beta, double eps) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("normalize_pair: alpha, beta must be positive");
  if (eps == 0.0)
    throw std::invalid_argument(
        "normalize_pair: eps = 0 is the cross, a qualitatively different problem");
  PairVerdict v;
  v.beta_prime = alpha * beta * std::fabs(eps);
  v.is_hup = v.beta_prime <= 1.0;
  return v;
}

} // namespace hupcf
