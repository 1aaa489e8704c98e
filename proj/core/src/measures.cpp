#include "hupcf/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hupcf/special.hpp"

namespace hupcf {

GridMeasure::GridMeasure(int n) : grid_size(n) {
  if (n < 1) throw std::invalid_argument("GridMeasure: grid_size must be >= 1");
  cell_weights.assign(static_cast<std::size_t>(n), {0.0, 0.0});
}

int GridMeasure::cell_of(double t) const {
  if (!(t > -1.0) || t > 1.0)
    throw std::domain_error("GridMeasure::cell_of: t outside ]-1,1]");
  // right endpoints belong to their cell
  int i = static_cast<int>(std::ceil((t + 1.0) * grid_size / 2.0)) - 1;
  return std::clamp(i, 0, grid_size - 1);
}

double GridMeasure::total_variation() const {
  double tv = std::abs(atom_at_zero);
  for (const auto& w : cell_weights) tv += std::abs(w);
  for (const auto& [pos, mass] : atoms) tv += std::abs(mass);
  return tv;
}

void GridMeasure::add_atom(double position, std::complex<double> mass) {
  if (position == 0.0) {
    atom_at_zero += mass;
    return;
  }
  if (!(position > -1.0) || position > 1.0)
    throw std::domain_error("GridMeasure: atom outside ]-1,1]");
  for (auto& [pos, m] : atoms) {
    if (pos == position) {
      m += mass;
      return;
    }
  }
  atoms.emplace_back(position, mass);
}

GridMeasure GridMeasure::lebesgue(int n) {
  GridMeasure m(n);
  const std::complex<double> w{2.0 / n, 0.0};
  std::fill(m.cell_weights.begin(), m.cell_weights.end(), w);
  return m;
}

GridMeasure GridMeasure::dirac(int n, double position, std::complex<double> mass) {
  GridMeasure m(n);
  m.add_atom(position, mass);
  return m;
}

GridMeasure GridMeasure::from_density(
    int n, const std::function<std::complex<double>(double)>& f) {
  GridMeasure m(n);
  const double h = m.cell_width();
  for (int i = 0; i < n; ++i) m.cell_weights[i] = f(m.cell_mid(i)) * h;
  return m;
}

double omega_density(double t) {
  if (std::fabs(t) >= 1.0)
    throw std::domain_error("omega_density: pole at |t| = 1");
  return 1.0 / (1.0 - t * t);
}

namespace {

/// nu's cell mass on the interval ]a,b] by proportional overlap.
std::complex<double> cells_on_interval(const GridMeasure& nu, double a, double b) {
  if (!(b > a)) return {0.0, 0.0};
  const double h = nu.cell_width();
  const int n = nu.grid_size;
  int i0 = std::clamp(static_cast<int>(std::floor((a + 1.0) / h)), 0, n - 1);
  int i1 = std::clamp(static_cast<int>(std::floor((b + 1.0) / h)), 0, n - 1);
  std::complex<double> acc{0.0, 0.0};
  for (int i = i0; i <= i1; ++i) {
    const double lo = std::max(a, nu.cell_lo(i));
    const double hi = std::min(b, nu.cell_hi(i));
    if (hi > lo) acc += nu.cell_weights[i] * ((hi - lo) / h);
  }
  return acc;
}

/// |nu|'s cell mass on ]a,b] (total variation, not the signed sum).
double abs_cells_on_interval(const GridMeasure& nu, double a, double b) {
  if (!(b > a)) return 0.0;
  const double h = nu.cell_width();
  const int n = nu.grid_size;
  int i0 = std::clamp(static_cast<int>(std::floor((a + 1.0) / h)), 0, n - 1);
  int i1 = std::clamp(static_cast<int>(std::floor((b + 1.0) / h)), 0, n - 1);
  double acc = 0.0;
  for (int i = i0; i <= i1; ++i) {
    const double lo = std::max(a, nu.cell_lo(i));
    const double hi = std::min(b, nu.cell_hi(i));
    if (hi > lo) acc += std::abs(nu.cell_weights[i]) * ((hi - lo) / h);
  }
  return acc;
}

void pullback_cells_accumulate(const GridMeasure& nu, std::int64_t j, double beta,
                               std::vector<std::complex<double>>& out,
                               double sign) {
  const double twoj = 2.0 * static_cast<double>(j);
  const int n = nu.grid_size;
  for (int k = 0; k < n; ++k) {
    const double pa = beta / (twoj - nu.cell_lo(k));
    const double pb = beta / (twoj - nu.cell_hi(k));
    out[k] += sign * cells_on_interval(nu, pa, pb);
  }
}

} // namespace

GridMeasure pullback_branch(const GridMeasure& nu, std::int64_t j, double beta) {
  if (j == 0) throw std::invalid_argument("pullback_branch: j must be nonzero");
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("pullback_branch: beta must lie in ]0,1]");
  GridMeasure out(nu.grid_size);
  pullback_cells_accumulate(nu, j, beta, out.cell_weights, 1.0);
  for (const auto& [s, mass] : nu.atoms) {
    const double tstar = 2.0 * static_cast<double>(j) - beta / s;
    if (tstar > -1.0 && tstar <= 1.0) out.add_atom(tstar, mass);
  }
  return out;
}

ResidualReport invariance_residual(const GridMeasure& nu,
                                   std::complex<double> lambda, double beta,
                                   int branch_cutoff) {
  if (std::abs(lambda) > 1.0 + 1e-12)
    throw std::invalid_argument(
        "invariance_residual: |lambda| > 1 admits only the zero measure");
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("invariance_residual: beta must lie in ]0,1]");
  const int J = branch_cutoff;
  const int n = nu.grid_size;

  // rho = lambda nu - nu({0}) delta_0 - sum_{|j|<=J} nu_j
  std::vector<std::complex<double>> cells(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cells[i] = lambda * nu.cell_weights[i];
  std::vector<std::pair<double, std::complex<double>>> atom_acc;
  for (const auto& [pos, mass] : nu.atoms) atom_acc.emplace_back(pos, lambda * mass);
  std::complex<double> atom0 = lambda * nu.atom_at_zero - nu.atom_at_zero;

  auto add_atom = [&](double pos, std::complex<double> mass) {
    for (auto& [p, m] : atom_acc) {
      if (p == pos) {
        m += mass;
        return;
      }
    }
    atom_acc.emplace_back(pos, mass);
  };

  for (int sj = 1; sj <= J; ++sj) {
    for (const std::int64_t j :
         {static_cast<std::int64_t>(sj), static_cast<std::int64_t>(-sj)}) {
      pullback_cells_accumulate(nu, j, beta, cells, -1.0);
      for (const auto& [s, mass] : nu.atoms) {
        const double tstar = 2.0 * static_cast<double>(j) - beta / s;
        if (tstar > -1.0 && tstar <= 1.0) add_atom(tstar, -mass);
      }
    }
  }

  ResidualReport rep;
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(cells[i]);
    rep.total += a;
    if (nu.cell_lo(i) >= -0.9 && nu.cell_hi(i) <= 0.9) rep.interior += a;
  }
  rep.total += std::abs(atom0);
  if (std::abs(atom0) > 0.0) rep.interior += std::abs(atom0);
  for (const auto& [pos, mass] : atom_acc) {
    rep.total += std::abs(mass);
    if (std::fabs(pos) <= 0.9) rep.interior += std::abs(mass);
  }

  // |nu| mass reachable through the |j| > J branches: the far branch
  // images fill +-]0, beta/(2J+1)].
  const double cut = beta / (2.0 * J + 1.0);
  rep.tail_bound = abs_cells_on_interval(nu, 0.0, cut) +
                   abs_cells_on_interval(nu, -cut, 0.0);
  for (const auto& [pos, mass] : nu.atoms)
    if (std::fabs(pos) <= cut) rep.tail_bound += std::abs(mass);
  return rep;
}

BirkhoffResult birkhoff_average(const IntervalPoint& t, int steps,
                                const std::function<double(double)>& phi,
                                int precision_bits, double beta) {
  if (steps < 1) throw std::invalid_argument("birkhoff_average: need steps >= 1");
  const auto f = phi ? phi : [](double x) { return 1.0 - x * x; };
  const OrbitRecord rec = orbit(t, steps - 1, beta, precision_bits);
  BirkhoffResult out;
  double acc = 0.0;
  for (const IntervalPoint& p : rec.iterates) acc += f(p.value);
  out.average = acc / static_cast<double>(steps);
  out.terms = static_cast<int>(rec.iterates.size());
  out.trusted = rec.trusted;
  out.terminated = rec.terminated;
  out.log2_derivative_product = rec.log2_derivative_product;
  return out;
}

std::pair<GridMeasure, GridMeasure> split_abs_singular(const GridMeasure& nu) {
  GridMeasure ac(nu.grid_size);
  ac.cell_weights = nu.cell_weights;
  GridMeasure sing(nu.grid_size);
  sing.atom_at_zero = nu.atom_at_zero;
  sing.atoms = nu.atoms;
  return {std::move(ac), std::move(sing)};
}

} // namespace hupcf
