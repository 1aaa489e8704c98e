#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hupcf/measures.hpp"
#include "hupcf/special.hpp"

using namespace hupcf;

TEST_CASE("omega_density examples") {
  CHECK(omega_density(0.0) == 1.0);
  CHECK(omega_density(0.5) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(omega_density(0.999) ==
        doctest::Approx(1.0 / (1.0 - 0.999 * 0.999)).epsilon(1e-15));
  CHECK_THROWS_AS(omega_density(1.0), std::domain_error);
  CHECK_THROWS_AS(omega_density(-1.0), std::domain_error);
}

TEST_CASE("GridMeasure cell bookkeeping") {
  GridMeasure m(8);
  CHECK(m.cell_of(-1.0 + 0.25) == 0);  // right endpoint belongs to its cell
  CHECK(m.cell_of(-1.0 + 0.2500001) == 1);
  CHECK(m.cell_of(1.0) == 7);
  CHECK_THROWS_AS(m.cell_of(-1.0), std::domain_error);
  m.add_atom(0.0, {2.0, 0.0});
  CHECK(m.atom_at_zero == std::complex<double>(2.0, 0.0));
  CHECK(m.total_variation() == doctest::Approx(2.0));
}

TEST_CASE("atom pullback follows the branch inverse") {
  // delta at -1/2 pulls back to nothing through branch 1 (t* = 4)
  const GridMeasure none = pullback_branch(GridMeasure::dirac(64, -0.5, 1.0), 1, 1.0);
  CHECK(none.total_variation() == 0.0);
  // delta at 2/5 pulls back to delta at -1/2
  const GridMeasure d = pullback_branch(GridMeasure::dirac(64, 0.4, 1.0), 1, 1.0);
  REQUIRE(d.atoms.size() == 1);
  CHECK(d.atoms[0].first == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(std::abs(d.atoms[0].second - 1.0) < 1e-15);
}

TEST_CASE("Lebesgue pullback has density 1/(2j-t)^2") {
  const int n = 256;
  const GridMeasure leb = GridMeasure::lebesgue(n);
  const GridMeasure pb = pullback_branch(leb, 1, 1.0);
  // change-of-variables oracle: mass of cell ]a,b] is [1/(2-t)]_a^b
  for (int i = 40; i < 200; i += 13) {
    const double a = pb.cell_lo(i), b = pb.cell_hi(i);
    const double ref = 1.0 / (2.0 - b) - 1.0 / (2.0 - a);
    CHECK(pb.cell_weights[i].real() == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("invariance residual vanishes for the point mass at 0") {
  GridMeasure nu = GridMeasure::dirac(128, 0.0, 1.0);
  const ResidualReport rep = invariance_residual(nu, 1.0, 1.0, 64);
  CHECK(rep.total == 0.0);
}

TEST_CASE("truncated omega is nearly invariant on the interior") {
  auto omega_cells = [](int n) {
    return GridMeasure::from_density(n, [](double t) -> std::complex<double> {
      return std::fabs(t) <= 0.95 ? omega_density(t) : 0.0;
    });
  };
  const ResidualReport coarse = invariance_residual(omega_cells(256), 1.0, 1.0, 512);
  const ResidualReport fine = invariance_residual(omega_cells(1024), 1.0, 1.0, 512);
  CHECK(fine.interior < coarse.interior);
  CHECK(fine.interior < 0.02);
}

TEST_CASE("Lebesgue is not invariant: residual bounded away from zero") {
  // oracle: the residual density is 1 - sum_j (2j-t)^-2, so the TV is
  // the integral of its absolute value
  const int oracle_cells = 200000;
  double oracle = 0.0;
  for (int i = 0; i < oracle_cells; ++i) {
    const double t = -1.0 + (2.0 * i + 1.0) / oracle_cells;
    oracle += std::fabs(1.0 - sum_branch_derivative(t)) * (2.0 / oracle_cells);
  }
  const GridMeasure leb = GridMeasure::lebesgue(4096);
  const ResidualReport rep = invariance_residual(leb, 1.0, 1.0, 512);
  CHECK(rep.total > 0.2);
  CHECK(rep.total == doctest::Approx(oracle).epsilon(0.02));
}

TEST_CASE("mass transport: pullbacks never create variation") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int n = 128, J = 32;
  GridMeasure nu(n);
  for (int i = 0; i < n; ++i)
    nu.cell_weights[i] = {unit(rng), unit(rng)};
  nu.add_atom(0.37, {0.5, -0.25});

  GridMeasure sum(n);
  double tv_each = 0.0;
  for (int sj = 1; sj <= J; ++sj) {
    for (const std::int64_t j : {sj, -sj}) {
      const GridMeasure pb = pullback_branch(nu, j, 1.0);
      tv_each += pb.total_variation();
      for (int i = 0; i < n; ++i) sum.cell_weights[i] += pb.cell_weights[i];
      for (const auto& [pos, mass] : pb.atoms) sum.add_atom(pos, mass);
    }
  }
  // TV(sum nu_j) <= sum TV(nu_j) = |nu| on the union of branch images
  CHECK(sum.total_variation() <= tv_each + 1e-9);
  CHECK(tv_each <= nu.total_variation() + 1e-9);
}

TEST_CASE("splitting is exact and consistent with the residual") {
  GridMeasure nu = GridMeasure::lebesgue(64);
  nu.add_atom(0.0, {0.3, 0.0});
  nu.add_atom(-0.21, {0.0, 1.0});
  const auto [ac, sing] = split_abs_singular(nu);
  CHECK(ac.atoms.empty());
  CHECK(ac.atom_at_zero == std::complex<double>(0.0, 0.0));
  CHECK(sing.cell_weights == std::vector<std::complex<double>>(64, {0.0, 0.0}));
  for (int i = 0; i < 64; ++i)
    CHECK(ac.cell_weights[i] + sing.cell_weights[i] == nu.cell_weights[i]);

  const double whole = invariance_residual(nu, 1.0, 1.0, 64).total;
  const double parts = invariance_residual(ac, 1.0, 1.0, 64).total +
                       invariance_residual(sing, 1.0, 1.0, 64).total;
  CHECK(whole <= parts + 1e-10);
}

TEST_CASE("Birkhoff averages at the trivial points") {
  const BirkhoffResult at_one = birkhoff_average(IntervalPoint::one(), 50);
  CHECK(at_one.average == 0.0);
  CHECK(at_one.trusted);

  const BirkhoffResult at_zero = birkhoff_average(IntervalPoint::zero(), 10);
  CHECK(at_zero.average == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(at_zero.terminated == Termination::hit_zero);
}

TEST_CASE("Birkhoff averages decay along a trusted high-precision orbit") {
  // a double start is dyadic and its exact orbit terminates, so the
  // probe draws its start with the full working precision
  const OrbitRecord rec = random_orbit(1234, 9999, 1.0, 16384);
  REQUIRE(rec.trusted);
  double prev = 2.0;
  double acc = 0.0;
  std::size_t k = 0;
  for (const int steps : {100, 1000, 10000}) {
    for (; k < static_cast<std::size_t>(steps); ++k) {
      const double v = rec.iterates[k].value;
      acc += 1.0 - v * v;
    }
    const double avg = acc / steps;
    CHECK(avg < prev);
    prev = avg;
  }
}

TEST_CASE("untrusted float orbits are flagged, not averaged silently") {
  const BirkhoffResult r = birkhoff_average(IntervalPoint(0.612398741), 10000, {}, 53);
  CHECK_FALSE(r.trusted);
}
