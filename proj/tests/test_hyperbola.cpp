#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "hupcf/hyperbola.hpp"
#include "hupcf/moebius.hpp"

using namespace hupcf;
using C = std::complex<double>;

namespace {
constexpr double kPi = std::numbers::pi;

HyperbolaMeasure gaussian_measure(double eps) {
  HyperbolaMeasure mu;
  mu.eps = eps;
  mu.density = [](double t) -> C { return {std::exp(-t * t), 0.0}; };
  mu.window = 8.0;
  mu.tail_bound = 1e-25;
  mu.quad_tol = 1e-10;
  return mu;
}
} // namespace

TEST_CASE("atom transform is an exact phase") {
  HyperbolaMeasure mu;
  mu.eps = 0.7;
  mu.atoms = {{1.0, {1.0, 0.0}}};
  for (const auto& [x1, x2] : {std::pair{0.3, 1.9}, std::pair{-4.0, 0.0}}) {
    const FourierValue v = fourier_transform(mu, x1, x2);
    const C expect = std::polar(1.0, kPi * (x1 * 1.0 + x2 * 0.7));
    CHECK(std::abs(v.value - expect) < 1e-14);
    CHECK(v.err_est == 0.0);
  }
}

TEST_CASE("transform at the origin is the total mass") {
  const FourierValue v = fourier_transform(gaussian_measure(1.0), 0.0, 0.0);
  CHECK(v.value.real() ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-10));
  CHECK(std::fabs(v.value.imag()) < 1e-12);
}

TEST_CASE("gaussian transform self-converges") {
  HyperbolaMeasure mu = gaussian_measure(1.0);
  const FourierValue coarse = fourier_transform(mu, 2.0, 0.0);
  mu.quad_tol = 1e-13;
  const FourierValue fine = fourier_transform(mu, 2.0, 0.0);
  CHECK(std::abs(coarse.value - fine.value) < 1e-8);
  CHECK(coarse.err_est < 1e-8);
  // closed form for comparison: int e^{-t^2} e^{i pi xi t} dt
  //   = sqrt(pi) e^{-(pi xi)^2/4}
  const double expect = std::sqrt(kPi) * std::exp(-kPi * kPi);
  CHECK(fine.value.real() == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("transform handles xi2 through the inversion split") {
  // mixed-frequency evaluation against a brute high-budget reference
  HyperbolaMeasure mu = gaussian_measure(1.0);
  const FourierValue v = fourier_transform(mu, 1.0, 2.0);
  mu.quad_tol = 1e-12;
  const FourierValue ref = fourier_transform(mu, 1.0, 2.0);
  CHECK(std::abs(v.value - ref.value) <= 2e-8);
}

TEST_CASE("translation covariance (inv-1)") {
  const HyperbolaMeasure mu = gaussian_measure(1.0);
  const double s1 = 0.37, s2 = -1.21;
  for (const auto& [x1, x2] : {std::pair{1.0, 0.0}, std::pair{0.5, 1.5}}) {
    const FourierValue direct = fourier_transform_translated(mu, x1, x2, s1, s2);
    const FourierValue base = fourier_transform(mu, x1, x2);
    const C expect = std::polar(1.0, kPi * (s1 * x1 + s2 * x2)) * base.value;
    CHECK(std::abs(direct.value - expect) <=
          2.0 * (direct.err_est + base.err_est) + 1e-10);
  }
}

TEST_CASE("dilation covariance (inv-2) maps Gamma_eps to Gamma_1") {
  // T = diag(1, 1/2) carries x1 x2 = 2 to x1 x2 = 1 preserving the
  // x1-parametrization, so the pushforward keeps the same density
  const HyperbolaMeasure mu2 = gaussian_measure(2.0);
  HyperbolaMeasure nu = gaussian_measure(1.0);
  for (const auto& [x1, x2] : {std::pair{1.5, 0.0}, std::pair{0.0, 2.0}}) {
    const FourierValue lhs = fourier_transform(nu, x1, x2);
    const FourierValue rhs = fourier_transform(mu2, x1, x2 / 2.0);
    CHECK(std::abs(lhs.value - rhs.value) <=
          2.0 * (lhs.err_est + rhs.err_est) + 1e-9);
  }
}

TEST_CASE("parametrization swap: mu^(xi1, xi2) equals the x2-view at (xi2, xi1)") {
  // the same measure written in the x2 parametrization has density
  // f(eps/s) eps/s^2, and its transform swaps the frequency slots; the
  // direct and inverted integration paths trade places, so agreement is
  // a genuine two-route check
  const double eps = 1.0;
  HyperbolaMeasure mu;
  mu.eps = eps;
  mu.density = [](double t) -> C { return {std::exp(-(t - 3.0) * (t - 3.0)), 0.0}; };
  mu.window = 12.0;
  mu.tail_bound = 1e-25;
  mu.quad_tol = 1e-9;

  HyperbolaMeasure swapped;
  swapped.eps = eps;
  swapped.density = [eps](double s) -> C {
    const double t = eps / s;
    return {std::exp(-(t - 3.0) * (t - 3.0)) * eps / (s * s), 0.0};
  };
  swapped.window = 64.0;
  swapped.tail_bound = 1e-20;
  swapped.quad_tol = 1e-9;

  for (const auto& [x1, x2] :
       {std::pair{0.7, 1.3}, std::pair{2.0, 0.4}, std::pair{0.0, 3.0}}) {
    const FourierValue a = fourier_transform(mu, x1, x2);
    const FourierValue b = fourier_transform(swapped, x2, x1);
    CHECK(std::abs(a.value - b.value) <=
          4.0 * (a.err_est + b.err_est) + 1e-8);
  }
}

TEST_CASE("lattice residual of the zero measure") {
  HyperbolaMeasure zero;
  zero.eps = 1.0;
  const LatticeResidualReport rep = lattice_residual(zero, {1.0, 1.0, 5, 5});
  CHECK(rep.max_abs == 0.0);
  CHECK(rep.samples.size() == 11 + 10);
}

TEST_CASE("singular annihilator: degenerate parameter sets refuse") {
  CHECK_THROWS_AS(singular_annihilator(1.0, 1.0, 1, 1), std::domain_error);
  CHECK_THROWS_AS(singular_annihilator(2.0, 1.0, 2, 1), std::domain_error);
  CHECK_THROWS_AS(singular_annihilator(4.0, 4.0, 2, 2), std::domain_error);
}

TEST_CASE("singular annihilator at (1,1,2,2): the root-formula pair") {
  const SingularAnnihilator ann = singular_annihilator(1.0, 1.0, 2, 2, 50);
  const double u1 = ann.certificate.z1.real();
  const double v1 = ann.certificate.z2.real();
  // oracle: substitute into both constraints
  CHECK(u1 == doctest::Approx(2.0 + std::sqrt(3.0)).epsilon(1e-15));
  CHECK(v1 == doctest::Approx(std::sqrt(3.0) - 2.0).epsilon(1e-13));
  CHECK(u1 - v1 == doctest::Approx(4.0).epsilon(1e-15));       // 2m/alpha
  CHECK(1.0 / u1 - 1.0 / v1 == doctest::Approx(4.0).epsilon(1e-13)); // 2n/beta
  CHECK(ann.certificate.max_lattice_residual < 1e-12);
  CHECK(ann.certificate.witness_value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ann.certificate.valid());
}

TEST_CASE("ac annihilator: threshold behavior and self-checks") {
  CHECK_THROWS_AS(ac_annihilator(1.0), std::domain_error);
  CHECK_THROWS_AS(ac_annihilator(0.5), std::domain_error);

  const AcAnnihilator ann = ac_annihilator(2.0, 6);
  CHECK(ann.certificate.z1 == C(1.0, 1.0)); // s = sqrt(beta-1) = 1
  CHECK(ann.certificate.z2 == C(-1.0, 1.0));
  CHECK(ann.certificate.max_lattice_residual < 1e-6);
  // witness at (1/2, 0): |e^{i pi z1/2} - e^{i pi z2/2}| = 2 e^{-pi/2}
  CHECK(ann.certificate.witness_value ==
        doctest::Approx(2.0 * std::exp(-kPi / 2.0)).epsilon(1e-4));
  CHECK(ann.certificate.valid());

  // threshold consistency with normalize_pair on both sides
  for (const double beta : {0.5, 1.0}) {
    CHECK(normalize_pair(1.0, beta, 1.0).is_hup);
    CHECK_THROWS_AS(ac_annihilator(beta), std::domain_error);
  }
  for (const double beta : {1.0001, 2.0}) {
    CHECK_FALSE(normalize_pair(1.0, beta, 1.0).is_hup);
    CHECK_NOTHROW(ac_annihilator(beta, 2));
  }
}

TEST_CASE("poisson_extend: unit mass, harmonic extension of e_1 and e_-1") {
  const FourierValue unit =
      poisson_extend([](double) -> C { return {1.0, 0.0}; }, C(0.0, 1.0));
  CHECK(std::abs(unit.value - 1.0) <= unit.err_est + 1e-9);
  CHECK(unit.err_est < 1e-3);

  const FourierValue e1 = poisson_extend(
      [](double t) -> C { return std::polar(1.0, kPi * t); }, C(0.0, 1.0), 1.0,
      1e-9, 1.0);
  CHECK(std::abs(e1.value - std::exp(-kPi)) < 1e-7);

  const FourierValue em1 = poisson_extend(
      [](double t) -> C { return std::polar(1.0, -kPi * t); }, C(0.0, 1.0), 1.0,
      1e-9, -1.0);
  CHECK(std::abs(em1.value - std::exp(-kPi)) < 1e-7);
}

TEST_CASE("harmonic extensions cannot separate the ac annihilator's points") {
  // e_3 extended to z1 = 1+i and z2 = -1+i takes the same value
  const C z1(1.0, 1.0), z2(-1.0, 1.0);
  auto e3 = [](double t) -> C { return std::polar(1.0, 3.0 * kPi * t); };
  const FourierValue a = poisson_extend(e3, z1, 1.0, 1e-9, 3.0);
  const FourierValue b = poisson_extend(e3, z2, 1.0, 1e-9, 3.0);
  CHECK(std::abs(a.value - b.value) < 1e-7);
  // and the closed form e^{3 pi i (1+i)} = e^{3 pi i} e^{-3 pi}
  const C closed = std::polar(std::exp(-3.0 * kPi), 3.0 * kPi);
  CHECK(std::abs(a.value - closed) < 1e-7);
}

TEST_CASE("density_gap: a basis member has negligible residual") {
  const DensityGapReport rep = density_gap(0.7, 4, BasisTarget{false, 1});
  CHECK(rep.residual < 1e-8);
  CHECK(rep.basis_size == 17);
  CHECK(rep.gram_condition >= 1.0);
}

TEST_CASE("density_gap conditioning degrades as the families align") {
  // beta -> 0 drives the inverted family toward the constant e_0; the
  // smallest Gram eigenvalue shrinks like beta, which the condition
  // report must show while the solve is still far from the
  // regularization floor
  const DensityGapReport healthy = density_gap(0.7, 3, BasisTarget{false, 1});
  const DensityGapReport tight = density_gap(0.02, 3, BasisTarget{false, 1});
  CHECK(tight.gram_condition > 50.0 * healthy.gram_condition);
  CHECK_FALSE(healthy.regularization_flagged);
  CHECK_FALSE(tight.regularization_flagged);
}

TEST_CASE("density_gap decreases with N below threshold, floors above") {
  const AcAnnihilator ann = ac_annihilator(2.0, 2);
  const auto target = ann.measure.density;
  double prev = 1e9;
  for (const int n : {2, 4, 8}) {
    const DensityGapReport rep = density_gap(0.5, n, target);
    CHECK(rep.residual < prev);
    prev = rep.residual;
  }

  const double bound = density_gap_duality_bound(2.0);
  CHECK(bound > 0.0);
  // normalized target K/||K||_w must stay above the duality bound
  double norm_w = 0.0;
  {
    // ||K||_w via the weighted pairing the library exposes indirectly:
    // reuse density_gap machinery through a brute quadrature here
    const int cells = 400000;
    const double X = 400.0;
    for (int i = 0; i < cells; ++i) {
      const double x = -X + (2.0 * X) * (i + 0.5) / cells;
      norm_w += std::norm(target(x)) / (kPi * (1.0 + x * x)) * (2.0 * X / cells);
    }
    norm_w = std::sqrt(norm_w);
  }
  const auto normalized = [target, norm_w](double x) { return target(x) / norm_w; };
  const DensityGapReport above = density_gap(2.0, 4, normalized);
  CHECK(above.residual > bound - 1e-4);
  CHECK(above.residual <= 1.0 + 1e-6);
}

TEST_CASE("Riemann-Lebesgue probe along a slanted ray") {
  const HyperbolaMeasure mu = gaussian_measure(1.0);
  const double c = std::cos(0.5), s = std::sin(0.5);
  double prev = 1e9;
  for (const double r : {2.0, 6.0, 12.0}) {
    const FourierValue v = fourier_transform(mu, r * c, r * s);
    CHECK(std::abs(v.value) < prev);
    prev = std::abs(v.value);
  }
}

TEST_CASE("projection partition of finite lattice sets") {
  {
    const Point2 pts[] = {{1.0, 0.0}, {1.0, 1.0}};
    const ProjectionPartition p = classify_projection(pts);
    CHECK(p.a_set == std::vector<double>{1.0});
    CHECK(p.b_set.empty());
  }
  {
    const Point2 pts[] = {{1.0, 0.0}, {1.0, 2.0}};
    const ProjectionPartition p = classify_projection(pts);
    CHECK(p.a_set.empty());
    CHECK(p.b_set == std::vector<double>{1.0});
  }
  {
    const Point2 pts[] = {{1.0, 0.0}, {2.0, 5.0}};
    const ProjectionPartition p = classify_projection(pts);
    CHECK(p.a_set.empty());
    CHECK(p.b_set == std::vector<double>{1.0, 2.0});
  }
}
