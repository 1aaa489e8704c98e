#include "hupcf/hyperbola.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "hupcf/errors.hpp"
#include "hupcf/quadrature.hpp"

namespace hupcf {

namespace {

constexpr double kPi = std::numbers::pi;
const std::complex<double> kI{0.0, 1.0};

/// e^{i pi p} with p reduced mod 2 before scaling by pi.
std::complex<double> unit_phase(double p) {
  const double r = p - 2.0 * std::round(p * 0.5);
  return std::polar(1.0, kPi * r);
}

using Fn = std::function<std::complex<double>(double)>;
using RFn = std::function<double(double)>;

/// Analytic continuation of an oscillatory integral beyond a window
/// endpoint: two integration-by-parts terms of int g e^{i phi} over
/// [X, inf) (direction +1) or (-inf, X] (direction -1). Valid when
/// |phi'| stays away from 0 outward of X.
struct IbpTail {
  std::complex<double> correction{0.0, 0.0};
  double remainder = 0.0;
};

IbpTail ibp_outward(const Fn& g, const RFn& phi, const RFn& dphi, double x,
                    int direction) {
  auto cap_g = [&](double t) { return g(t) / (kI * dphi(t)); };
  const double h = 1e-4 * (1.0 + std::fabs(x));
  const std::complex<double> g1 = cap_g(x);
  const std::complex<double> g1p = (cap_g(x + h) - cap_g(x - h)) / (2.0 * h);
  const std::complex<double> g2 = g1p / (kI * dphi(x));
  const std::complex<double> rot = std::polar(1.0, phi(x));
  IbpTail out;
  out.correction =
      static_cast<double>(direction) * rot * (-g1 + g2);
  out.remainder = std::abs(g2);
  return out;
}

/// Integrate g(u) e^{i phi(u)} over the outward ray starting at u0
/// (direction +1: [u0,inf), -1: (-inf,u0]) by octave doubling until the
/// IBP tail takes over.
void integrate_ray(const Fn& g, const RFn& phi, const RFn& dphi, double u0,
                   int direction, double tol, int max_panels,
                   std::complex<double>& value, double& err) {
  auto integrand = [&](double u) { return g(u) * std::polar(1.0, phi(u)); };
  QuadOptions opt;
  opt.abs_tol = tol * 0.25;
  opt.max_panels = max_panels;
  double cur = u0;
  for (int octave = 0; octave < 40; ++octave) {
    const double next = 2.0 * std::fabs(cur) + 4.0;
    const double a = direction > 0 ? cur : -next;
    const double b = direction > 0 ? next : cur;
    const QuadResult q = integrate(integrand, a, b, opt, dphi);
    value += q.value;
    err += q.err_est;
    cur = direction > 0 ? next : -next;
    if (std::fabs(dphi(cur)) >= 0.5) {
      const IbpTail tail = ibp_outward(g, phi, dphi, cur, direction);
      if (std::abs(tail.correction) + tail.remainder < tol * 0.5 ||
          octave >= 6) {
        value += tail.correction;
        err += tail.remainder;
        return;
      }
    } else {
      // slow phase: accept once the amplitude tail alone is small
      // (|g| ~ c/u^2 out here, so the rest is below |g(cur)| * |cur|)
      const double raw_tail = std::abs(g(cur)) * std::fabs(cur) * 2.0;
      if (raw_tail < tol * 0.5) {
        err += raw_tail;
        return;
      }
    }
  }
  throw accuracy_error("integrate_ray: tail did not become tractable");
}

struct TransformAccumulator {
  std::complex<double> value{0.0, 0.0};
  double err = 0.0;
};

void add_density_transform(const HyperbolaMeasure& mu, double xi1, double xi2,
                           double shift1, double shift2,
                           TransformAccumulator& acc) {
  const double eps = mu.eps;
  const double T = mu.window;
  const Fn f = mu.density;
  const double tol = mu.quad_tol;
  QuadOptions opt;
  opt.abs_tol = tol * 0.25;
  opt.max_panels = mu.max_panels;

  const double const_phase = kPi * (xi1 * shift1 + xi2 * shift2);
  auto phase = [=](double t) {
    return kPi * (xi1 * t + xi2 * eps / t) + const_phase;
  };
  auto dphase = [=](double t) { return kPi * (xi1 - xi2 * eps / (t * t)); };
  auto integrand = [=](double t) { return f(t) * std::polar(1.0, phase(t)); };

  if (xi2 == 0.0) {
    const QuadResult qa = integrate(integrand, -T, 0.0, opt, dphase);
    const QuadResult qb = integrate(integrand, 0.0, T, opt, dphase);
    acc.value += qa.value + qb.value;
    acc.err += qa.err_est + qb.err_est;
    // window tails
    if (std::fabs(dphase(T)) >= 0.5) {
      const IbpTail up = ibp_outward(f, phase, dphase, T, +1);
      const IbpTail dn = ibp_outward(f, phase, dphase, -T, -1);
      acc.value += up.correction + dn.correction;
      acc.err += up.remainder + dn.remainder;
    } else {
      acc.err += mu.tail_bound;
    }
    return;
  }

  auto g_inv = [=](double u) {
    return f(eps / u) * (std::fabs(eps) / (u * u));
  };
  auto phase_inv = [=](double u) {
    return kPi * (xi1 * eps / u + xi2 * u) + const_phase;
  };
  auto dphase_inv = [=](double u) {
    return kPi * (xi2 - xi1 * eps / (u * u));
  };

  const double s0 = std::min(1.0, T);
  if (T > s0) {
    // outer direct pieces, |t| in [s0, T]
    for (const auto& [a, b] : {std::pair{s0, T}, std::pair{-T, -s0}}) {
      const QuadResult q = integrate(integrand, a, b, opt, dphase);
      acc.value += q.value;
      acc.err += q.err_est;
    }
    const double edge = std::fabs(dphase(T));
    if (edge >= 0.5) {
      const IbpTail up = ibp_outward(f, phase, dphase, T, +1);
      const IbpTail dn = ibp_outward(f, phase, dphase, -T, -1);
      acc.value += up.correction + dn.correction;
      acc.err += up.remainder + dn.remainder;
    } else if (xi1 == 0.0) {
      // |t| > T through u = eps/t is the bounded interval |u| < eps/T
      // with the tame phase pi xi2 u; integrable whenever the density
      // decays, so the far tail is computed, not merely bounded
      const double uc = std::fabs(eps) / T;
      const QuadResult qa = integrate(
          [&](double u) { return g_inv(u) * std::polar(1.0, phase_inv(u)); },
          -uc, 0.0, opt, dphase_inv);
      const QuadResult qb = integrate(
          [&](double u) { return g_inv(u) * std::polar(1.0, phase_inv(u)); },
          0.0, uc, opt, dphase_inv);
      acc.value += qa.value + qb.value;
      acc.err += qa.err_est + qb.err_est;
    } else {
      acc.err += mu.tail_bound;
    }
  }

  // inner piece |t| <= s0 through u = eps/t; both rays |u| >= |eps|/s0
  const double u0 = std::fabs(eps) / s0;
  integrate_ray(g_inv, phase_inv, dphase_inv, u0, +1, tol, mu.max_panels,
                acc.value, acc.err);
  integrate_ray(g_inv, phase_inv, dphase_inv, -u0, -1, tol, mu.max_panels,
                acc.value, acc.err);
}

FourierValue transform_impl(const HyperbolaMeasure& mu, double xi1, double xi2,
                            double shift1, double shift2) {
  if (mu.eps == 0.0)
    throw std::invalid_argument("fourier_transform: eps = 0 is not a hyperbola");
  TransformAccumulator acc;
  for (const HyperbolaAtom& a : mu.atoms) {
    acc.value += a.mass * unit_phase(xi1 * (a.t + shift1) +
                                     xi2 * (mu.eps / a.t + shift2));
  }
  if (mu.density) add_density_transform(mu, xi1, xi2, shift1, shift2, acc);
  return {acc.value, acc.err};
}

} // namespace

FourierValue fourier_transform(const HyperbolaMeasure& mu, double xi1,
                               double xi2) {
  return transform_impl(mu, xi1, xi2, 0.0, 0.0);
}

FourierValue fourier_transform_translated(const HyperbolaMeasure& mu, double xi1,
                                          double xi2, double shift1,
                                          double shift2) {
  return transform_impl(mu, xi1, xi2, shift1, shift2);
}

LatticeResidualReport lattice_residual(const HyperbolaMeasure& mu,
                                       const LatticeCross& cross) {
  if (!(cross.alpha > 0.0) || !(cross.beta > 0.0))
    throw std::invalid_argument("lattice_residual: alpha, beta must be positive");
  LatticeResidualReport rep;
  auto record = [&](double xi1, double xi2) {
    const FourierValue v = fourier_transform(mu, xi1, xi2);
    rep.samples.push_back({xi1, xi2, v.value, v.err_est});
    const double a = std::abs(v.value);
    if (a > rep.max_abs) {
      rep.max_abs = a;
      rep.argmax_xi1 = xi1;
      rep.argmax_xi2 = xi2;
    }
  };
  for (int j = -cross.j_range; j <= cross.j_range; ++j)
    record(cross.alpha * j, 0.0);
  for (int k = -cross.k_range; k <= cross.k_range; ++k)
    if (k != 0) record(0.0, cross.beta * k);
  return rep;
}

SingularAnnihilator singular_annihilator(double alpha, double beta, int m, int n,
                                         int lattice_range) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("singular_annihilator: alpha, beta must be positive");
  if (m < 1 || n < 1)
    throw std::invalid_argument("singular_annihilator: m, n must be positive");
  const double ratio = alpha * beta / (static_cast<double>(m) * n);
  const double disc = 1.0 - ratio;
  if (disc < 0.0)
    throw std::domain_error(
        "singular_annihilator: no real solution (need m n >= alpha beta)");
  if (disc < 1e-12)
    throw std::domain_error(
        "singular_annihilator: degenerate double root (m n = alpha beta gives u = v)");

  const double u1 = (m / alpha) * (1.0 + std::sqrt(disc));
  const double v1 = u1 - 2.0 * m / alpha;

  SingularAnnihilator out;
  out.measure.eps = 1.0;
  out.measure.atoms = {{u1, {1.0, 0.0}}, {v1, {-1.0, 0.0}}};
  out.measure.quad_tol = 1e-12;

  AnnihilatorCertificate& cert = out.certificate;
  cert.kind = AnnihilatorKind::singular_pair;
  cert.alpha = alpha;
  cert.beta = beta;
  cert.z1 = u1;
  cert.z2 = v1;
  const LatticeResidualReport rep = lattice_residual(
      out.measure, {alpha, beta, lattice_range, lattice_range});
  cert.max_lattice_residual = rep.max_abs;
  // off-lattice witness: xi1 = alpha/(2m) turns the phase difference
  // into exactly pi, so |mu^| = 2 there
  cert.witness_xi1 = alpha / (2.0 * m);
  cert.witness_xi2 = 0.0;
  cert.witness_value =
      std::abs(fourier_transform(out.measure, cert.witness_xi1, 0.0).value);
  return out;
}

double poisson_kernel(double t, std::complex<double> z) {
  if (!(z.imag() > 0.0))
    throw std::domain_error("poisson_kernel: Im z must be positive");
  const double dx = z.real() - t;
  return z.imag() / (dx * dx + z.imag() * z.imag());
}

AcAnnihilator ac_annihilator(double beta, int lattice_range) {
  if (!(beta > 1.0))
    throw std::domain_error(
        "ac_annihilator: no absolutely continuous annihilator exists for beta <= 1");
  const double s = std::sqrt(beta - 1.0);
  const std::complex<double> z1{1.0, s};
  const std::complex<double> z2{-1.0, s};
  // construction-time self-check of the separation identities
  const std::complex<double> d1 = z1 - z2;
  const std::complex<double> d2 =
      1.0 / std::conj(z1) - 1.0 / std::conj(z2);
  if (std::abs(d1 - 2.0) > 1e-14 || std::abs(d2 - 2.0 / beta) > 1e-14)
    throw std::logic_error("ac_annihilator: separation identities failed");

  AcAnnihilator out;
  out.measure.eps = 1.0;
  out.measure.density = [z1, z2](double t) -> std::complex<double> {
    return {(poisson_kernel(t, z1) - poisson_kernel(t, z2)) / kPi, 0.0};
  };
  out.measure.window = 128.0 * std::max(1.0, std::sqrt(s));
  // |density| ~ 4s/(pi t^3) far out
  out.measure.tail_bound =
      4.0 * s / (kPi * out.measure.window * out.measure.window);
  out.measure.quad_tol = 1e-8;

  AnnihilatorCertificate& cert = out.certificate;
  cert.kind = AnnihilatorKind::poisson_difference;
  cert.alpha = 1.0;
  cert.beta = beta;
  cert.z1 = z1;
  cert.z2 = z2;
  const LatticeResidualReport rep =
      lattice_residual(out.measure, {1.0, beta, lattice_range, lattice_range});
  cert.max_lattice_residual = rep.max_abs;
  cert.witness_xi1 = 0.5;
  cert.witness_xi2 = 0.0;
  cert.witness_value =
      std::abs(fourier_transform(out.measure, 0.5, 0.0).value);
  return out;
}

FourierValue poisson_extend(const Fn& f, std::complex<double> z, double f_bound,
                            double tol, double osc_freq) {
  if (!(z.imag() > 0.0))
    throw std::domain_error("poisson_extend: Im z must be positive");
  const double x0 = z.real();
  const double y0 = z.imag();
  auto g = [&](double t) { return f(t) * (poisson_kernel(t, z) / kPi); };
  auto phase = [=](double t) { return kPi * osc_freq * t; };
  auto dphase = [=](double t) {
    (void)t;
    return kPi * osc_freq;
  };

  QuadOptions opt;
  opt.abs_tol = tol * 0.25;
  std::complex<double> value{0.0, 0.0};
  double err = 0.0;

  if (osc_freq != 0.0) {
    // f carries the oscillation already; split it off as amp * e^{i phi}
    // so the boundary integration by parts sees a smooth amplitude
    auto amp = [&](double t) { return g(t) * std::polar(1.0, -phase(t)); };
    const double X = std::max(std::fabs(x0) + 64.0 * y0, 512.0);
    const QuadResult q = integrate(g, x0 - X, x0 + X, opt, dphase);
    value = q.value;
    err = q.err_est;
    const IbpTail up = ibp_outward(amp, phase, dphase, x0 + X, +1);
    const IbpTail dn = ibp_outward(amp, phase, dphase, x0 - X, -1);
    value += up.correction + dn.correction;
    err += up.remainder + dn.remainder;
  } else {
    // no oscillation declared: use the exact Poisson mass outside the
    // window as the tail bound
    const double X = std::max(std::fabs(x0) + 64.0 * y0,
                              2.0 * y0 * f_bound / (kPi * tol));
    const QuadResult q = integrate(g, x0 - X, x0 + X, opt);
    value = q.value;
    err = q.err_est;
    const double covered =
        (std::atan(X / y0) + std::atan(X / y0)) / kPi;
    err += f_bound * std::max(0.0, 1.0 - covered);
  }
  return {value, err};
}

// ---------------------------------------------------------------------------
// density_gap machinery
// ---------------------------------------------------------------------------

namespace {

double poisson_weight(double x) { return (1.0 / kPi) / (1.0 + x * x); }

/// D(a, g) = int_1^inf 2 w(x) cos(pi (a x - g / x)) dx, a != 0.
double cross_half_integral(double a, double g, double tol) {
  if (a < 0.0) {
    a = -a;
    g = -g;
  }
  auto amp = [](double x) -> std::complex<double> {
    return {2.0 * poisson_weight(x), 0.0};
  };
  auto phase = [=](double x) { return kPi * (a * x - g / x); };
  auto dphase = [=](double x) { return kPi * (a + g / (x * x)); };
  // window end past any stationary point, shrinking as the IBP terms
  // improve with a
  const double X = std::max({16.0, 56.0 / std::pow(a, 0.75),
                             2.0 * std::sqrt(std::fabs(g) / a) + 12.0});
  auto integrand = [&](double x) { return amp(x) * std::polar(1.0, phase(x)); };
  QuadOptions opt;
  opt.abs_tol = tol;
  const QuadResult q = integrate(integrand, 1.0, X, opt, dphase);
  const IbpTail tail = ibp_outward(amp, phase, dphase, X, +1);
  return (q.value + tail.correction).real();
}

/// I(m, b) = int e^{i pi (m x - b / x)} w(x) dx over R (real-valued).
double cross_gram_entry(int m, double b, double tol,
                        std::map<std::pair<int, double>, double>& memo) {
  if (m == 0) return std::exp(-kPi * std::fabs(b));
  // I(-m,-b) = I(m,b)
  if (m < 0) {
    m = -m;
    b = -b;
  }
  const auto key = std::make_pair(m, b);
  if (const auto it = memo.find(key); it != memo.end()) return it->second;
  const double v = cross_half_integral(static_cast<double>(m), b, tol) +
                   cross_half_integral(b, static_cast<double>(m), tol);
  memo.emplace(key, v);
  return v;
}

/// J(f, a, c) = int f(x) e^{-i pi (a x + c / x)} w(x) dx over R,
/// split at |x| = 1 with the weight-preserving inversion u = 1/x.
std::complex<double> weighted_pairing(const Fn& f, double a, double c,
                                      double tol, double& err_acc) {
  std::complex<double> total{0.0, 0.0};
  QuadOptions opt;
  opt.abs_tol = tol * 0.25;

  struct Piece {
    Fn amp;
    RFn phase;
    RFn dphase;
    double slope; // asymptotic phase derivative / pi on this piece
    double other;
  };
  // direct piece on |x| > 1 and inverted piece (u = 1/x) on |u| > 1
  const Piece pieces[2] = {
      {[=](double x) { return f(x) * poisson_weight(x); },
       [=](double x) { return -kPi * (a * x + c / x); },
       [=](double x) { return -kPi * (a - c / (x * x)); },
       std::fabs(a), std::fabs(c)},
      {[=](double u) { return f(1.0 / u) * poisson_weight(u); },
       [=](double u) { return -kPi * (a / u + c * u); },
       [=](double u) { return -kPi * (c - a / (u * u)); },
       std::fabs(c), std::fabs(a)},
  };
  for (const Piece& p : pieces) {
    auto integrand = [&](double x) {
      return p.amp(x) * std::polar(1.0, p.phase(x));
    };
    if (p.slope < 0.25) {
      // the oscillation dies out on this piece; honest amplitude tail
      const double X = 256.0;
      const QuadResult qp = integrate(integrand, 1.0, X, opt, p.dphase);
      const QuadResult qn = integrate(integrand, -X, -1.0, opt, p.dphase);
      total += qp.value + qn.value;
      err_acc += qp.err_est + qn.err_est;
      const double fedge = std::max(std::abs(p.amp(X)), std::abs(p.amp(-X)));
      err_acc += 2.0 * fedge * X; // integral of amp beyond X, amp ~ 1/x^2
    } else {
      const double X = std::max({16.0, 56.0 / std::pow(p.slope, 0.75),
                                 2.0 * std::sqrt(p.other / p.slope) + 12.0});
      const QuadResult qp = integrate(integrand, 1.0, X, opt, p.dphase);
      const QuadResult qn = integrate(integrand, -X, -1.0, opt, p.dphase);
      total += qp.value + qn.value;
      err_acc += qp.err_est + qn.err_est;
      const IbpTail up = ibp_outward(p.amp, p.phase, p.dphase, X, +1);
      const IbpTail dn = ibp_outward(p.amp, p.phase, p.dphase, -X, -1);
      total += up.correction + dn.correction;
      err_acc += up.remainder + dn.remainder;
    }
  }
  return total;
}

} // namespace

DensityGapReport density_gap(double beta, int N, const DensityGapTarget& target) {
  if (!(beta > 0.0)) throw std::invalid_argument("density_gap: beta must be positive");
  if (N < 1) throw std::invalid_argument("density_gap: need N >= 1");

  // basis: e_n for |n| <= N, then e^<beta>_n for |n| <= N, n != 0
  struct Basis {
    bool inverted;
    int n;
  };
  std::vector<Basis> basis;
  for (int n = -N; n <= N; ++n) basis.push_back({false, n});
  for (int n = -N; n <= N; ++n)
    if (n != 0) basis.push_back({true, n});
  const int dim = static_cast<int>(basis.size());

  const double gram_tol = 3e-9;
  std::map<std::pair<int, double>, double> memo;
  Eigen::MatrixXd gram(dim, dim);
  for (int p = 0; p < dim; ++p) {
    for (int q = p; q < dim; ++q) {
      const Basis& bp = basis[p];
      const Basis& bq = basis[q];
      double v;
      if (!bp.inverted && !bq.inverted) {
        v = std::exp(-kPi * std::abs(bp.n - bq.n));
      } else if (bp.inverted && bq.inverted) {
        v = std::exp(-kPi * beta * std::abs(bp.n - bq.n));
      } else {
        const int m = bp.inverted ? bq.n : bp.n;
        const int k = bp.inverted ? bp.n : bq.n;
        v = cross_gram_entry(m, beta * k, gram_tol, memo);
      }
      gram(p, q) = v;
      gram(q, p) = v;
    }
  }

  const double tau = 1e-12 * gram.trace();
  Eigen::MatrixXd reg = gram;
  reg.diagonal().array() += tau;
  const Eigen::LDLT<Eigen::MatrixXd> solver(reg);

  Eigen::VectorXcd rhs(dim);
  double target_norm2 = 0.0;
  double quad_err = 0.0;
  if (const auto* bt = std::get_if<BasisTarget>(&target)) {
    // keep the right-hand side exactly consistent with the Gram matrix
    int row = -1;
    for (int p = 0; p < dim; ++p)
      if (basis[p].inverted == bt->inverted && basis[p].n == bt->n) row = p;
    if (row < 0)
      throw std::invalid_argument("density_gap: basis target outside |n| <= N");
    for (int p = 0; p < dim; ++p) rhs(p) = gram(p, row);
    target_norm2 = gram(row, row);
  } else {
    const Fn& f = std::get<Fn>(target);
    for (int p = 0; p < dim; ++p) {
      const Basis& bp = basis[p];
      const double a = bp.inverted ? 0.0 : bp.n;
      const double c = bp.inverted ? beta * bp.n : 0.0;
      rhs(p) = weighted_pairing(f, a, c, gram_tol, quad_err);
    }
    auto f2 = [&](double x) -> std::complex<double> {
      const std::complex<double> v = f(x);
      return {std::norm(v), 0.0};
    };
    target_norm2 = weighted_pairing(f2, 0.0, 0.0, gram_tol, quad_err).real();
  }

  const Eigen::VectorXd rhs_re = rhs.real();
  const Eigen::VectorXd rhs_im = rhs.imag();
  const Eigen::VectorXd cre = solver.solve(rhs_re);
  const Eigen::VectorXd cim = solver.solve(rhs_im);

  // gram is real symmetric, so the complex quadratic form splits
  const double cb_re = cre.dot(rhs_re) + cim.dot(rhs_im);
  const double quad_form = cre.dot(gram * cre) + cim.dot(gram * cim);
  const double res2 = target_norm2 - 2.0 * cb_re + quad_form;

  DensityGapReport rep;
  rep.basis_size = dim;
  rep.residual = std::sqrt(std::max(res2, 0.0));
  rep.rhs_quadrature_error = quad_err;

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      gram, Eigen::EigenvaluesOnly);
  const double lmax = eig.eigenvalues().maxCoeff();
  const double lmin = eig.eigenvalues().minCoeff();
  rep.gram_condition = lmax / std::max(lmin, 1e-300);
  rep.regularization_flagged = lmin <= 10.0 * tau;
  return rep;
}

double density_gap_duality_bound(double beta) {
  if (!(beta > 1.0))
    throw std::domain_error("density_gap_duality_bound: needs beta > 1");
  const AcAnnihilator ann = ac_annihilator(beta, 1);
  const Fn& k = ann.measure.density;
  QuadOptions opt;
  opt.abs_tol = 1e-10;
  const double X = 600.0;
  auto sq = [&](const Fn& h) {
    auto integrand = [&](double x) -> std::complex<double> {
      return {std::norm(h(x)), 0.0};
    };
    const QuadResult a = integrate(integrand, -X, 0.0, opt);
    const QuadResult b = integrate(integrand, 0.0, X, opt);
    return (a.value + b.value).real();
  };
  const double n1 = sq(k); // ||K||^2 in L2(dt)
  auto k_sqrtw = [&](double x) -> std::complex<double> {
    return k(x) * std::sqrt(poisson_weight(x));
  };
  auto k_over_sqrtw = [&](double x) -> std::complex<double> {
    return k(x) / std::sqrt(poisson_weight(x));
  };
  const double n2 = std::sqrt(sq(k_sqrtw));      // ||K||_{L2(w)}
  const double n3 = std::sqrt(sq(k_over_sqrtw)); // ||K/sqrt(w)||_{L2(dt)}
  return n1 / (n2 * n3);
}

ProjectionPartition classify_projection(std::span<const Point2> lambda) {
  std::map<double, std::vector<double>> groups;
  for (const Point2& p : lambda) groups[p.x1].push_back(p.x2);
  ProjectionPartition out;
  for (const auto& [t, seconds] : groups) {
    bool in_a = false;
    for (std::size_t i = 0; i < seconds.size() && !in_a; ++i) {
      for (std::size_t j = i + 1; j < seconds.size() && !in_a; ++j) {
        const double d = seconds[i] - seconds[j];
        if (std::fabs(d - 2.0 * std::round(d * 0.5)) > 1e-9) in_a = true;
      }
    }
    (in_a ? out.a_set : out.b_set).push_back(t);
  }
  return out;
}

} // namespace hupcf
