#include "hupcf/transfer.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hupcf/errors.hpp"
#include "hupcf/special.hpp"

namespace hupcf {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_beta(double beta) {
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("beta must lie in ]0,1]");
}

struct Grid {
  int n;
  double h;
  explicit Grid(int n_) : n(n_), h(2.0 / n_) {}
  double lo(int i) const { return -1.0 + 2.0 * i / n; }
  double hi(int i) const { return -1.0 + 2.0 * (i + 1) / n; }
  int floor_cell(double t) const {
    return std::clamp(static_cast<int>(std::floor((t + 1.0) / h)), 0, n - 1);
  }
  /// Add |]lo,hi] cap A_i| / h into column k.
  void deposit(std::vector<double>& entries, int k, double a, double b) const {
    if (!(b > a)) return;
    const int i0 = floor_cell(a);
    const int i1 = floor_cell(b);
    for (int i = i0; i <= i1; ++i) {
      const double ov = std::min(b, hi(i)) - std::max(a, lo(i));
      if (ov > 0.0)
        entries[static_cast<std::size_t>(i) * n + k] += ov / h;
    }
  }
};

} // namespace

double TransferMatrix::row_sum(int i) const {
  double s = 0.0;
  for (int k = 0; k < grid_size; ++k) s += entry(i, k);
  return s;
}

TransferMatrix ulam_matrix(double beta, int grid_size, int branch_cutoff) {
  check_beta(beta);
  if (grid_size < 2) throw std::invalid_argument("ulam_matrix: grid_size < 2");
  if (branch_cutoff < 1) throw std::invalid_argument("ulam_matrix: branch_cutoff < 1");

  TransferMatrix m;
  m.beta = beta;
  m.grid_size = grid_size;
  m.branch_cutoff = branch_cutoff;
  m.discretization = Discretization::ulam;
  m.entries.assign(static_cast<std::size_t>(grid_size) * grid_size, 0.0);

  const Grid grid(grid_size);
  for (int sj = 1; sj <= branch_cutoff; ++sj) {
    for (const double j : {static_cast<double>(sj), static_cast<double>(-sj)}) {
      const double twoj = 2.0 * j;
      for (int k = 0; k < grid_size; ++k) {
        const double a = beta / (twoj - grid.lo(k));
        const double b = beta / (twoj - grid.hi(k));
        grid.deposit(m.entries, k, a, b);
      }
    }
  }
  // Branches |j| > J only reach +-]0, beta/(2J+1)]; a row can miss at
  // most that much of its cell.
  const double cut = beta / (2.0 * branch_cutoff + 1.0);
  m.tail_bound = std::min(1.0, cut / grid.h);
  return m;
}

TransferApplied apply_transfer(const std::function<double(double)>& g,
                               std::span<const double> ts, double beta,
                               int branch_cutoff) {
  check_beta(beta);
  if (branch_cutoff < 1)
    throw std::invalid_argument("apply_transfer: branch_cutoff < 1");
  const int J = branch_cutoff;

  // Taylor data of g at 0 for the analytic far-branch sum.
  const double fd = 1e-4;
  const double g0 = g(0.0);
  const double gph = g(fd), gmh = g(-fd);
  const double gp = (gph - gmh) / (2.0 * fd);
  const double gpp = (gph - 2.0 * g0 + gmh) / (fd * fd);
  const double g3 =
      (g(2.0 * fd) - 2.0 * gph + 2.0 * gmh - g(-2.0 * fd)) / (2.0 * fd * fd * fd);

  TransferApplied out;
  out.values.reserve(ts.size());
  const double b2 = beta * beta;
  const double b3 = b2 * beta;
  const double b4 = b2 * b2;
  for (const double t : ts) {
    double acc = 0.0;
    for (int sj = 1; sj <= J; ++sj) {
      const double dp = 2.0 * sj - t;
      const double dn = -2.0 * sj - t;
      acc += g(beta / dp) * beta / (dp * dp);
      acc += g(beta / dn) * beta / (dn * dn);
    }
    const BranchTails bt = branch_tails(J, t);
    acc += beta * g0 * bt.s2 + b2 * gp * bt.s3 + 0.5 * b3 * gpp * bt.s4;
    out.values.push_back(acc);

    // Third-order remainder of the far expansion: sum beta^4 |2j-t|^-5.
    const double s5 = (hurwitz_tail(5, J + 1 - 0.5 * t) +
                       hurwitz_tail(5, J + 1 + 0.5 * t)) /
                      32.0;
    const double rem = std::fabs(g3) / 6.0 * b4 * s5;
    out.tail_remainder_bound = std::max(out.tail_remainder_bound, rem);
  }
  return out;
}

SpectrumReport spectrum(const TransferMatrix& m, int top_k) {
  const int n = m.grid_size;
  if (n < 1) throw std::invalid_argument("spectrum: empty matrix");
  if (top_k < 0 || top_k > n)
    throw std::invalid_argument("spectrum: need 0 <= top_k <= grid_size");

  Eigen::Map<const RowMat> a(m.entries.data(), n, n);
  Eigen::MatrixXd dense = a;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(dense, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw accuracy_error("spectrum: dense eigensolver did not converge");

  std::vector<std::complex<double>> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = solver.eigenvalues()[i];
  std::sort(ev.begin(), ev.end(),
            [](const std::complex<double>& x, const std::complex<double>& y) {
              const double ax = std::abs(x), ay = std::abs(y);
              if (ax != ay) return ax > ay;
              return std::arg(x) < std::arg(y);
            });

  SpectrumReport rep;
  rep.spectral_radius = ev.empty() ? 0.0 : std::abs(ev.front());
  rep.peripheral_gap = 1.0 - rep.spectral_radius;
  rep.eigenvalues.assign(ev.begin(), ev.begin() + top_k);
  return rep;
}

double factorization_check(const TransferMatrix& m) {
  const int n = m.grid_size;
  Eigen::Map<const RowMat> a(m.entries.data(), n, n);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd lhs = id - (a * a).eval();
  const Eigen::MatrixXd rhs = (id + a) * (id - a);
  return (lhs - rhs).norm();
}

// ---------------------------------------------------------------------------
// Ulam matrix of the composed map, by two-level branch preimages.
//
// For a target cell A_k, the inner preimage U^{-1}(A_k) is the disjoint
// union of phi_{j2}(A_k); applying U^{-1} once more gives the mass
// |A_i cap U^{-2}(A_k)|. Small branch indices are enumerated exactly;
// the rest cluster at 0 and are summed in closed form with digammas so
// that no mass is silently dropped (only misplaced within a cell width,
// at second order).
// ---------------------------------------------------------------------------

namespace {

struct ComposedAssembler {
  double beta;
  Grid grid;
  int inner_pos;      // cell containing 0+
  int inner_neg;      // cell containing 0-
  int j1_star;        // outer branches enumerated exactly up to here
  static constexpr int kInnerExplicit = 64; // explicit inner branches
  static constexpr int kGroups = 12;        // octave groups beyond that

  std::vector<std::pair<int, double>> spread_pos[kGroups];
  std::vector<std::pair<int, double>> spread_neg[kGroups];

  ComposedAssembler(double beta_, int n)
      : beta(beta_), grid(n) {
    inner_pos = grid.floor_cell(0.5 * grid.h);
    inner_neg = grid.floor_cell(-0.5 * grid.h);
    const double target = 1e-4; // column-norm scale of tolerated misplacement
    j1_star = std::max(
        64, static_cast<int>(std::ceil(
                0.5 * std::cbrt(2.0 * beta * beta * beta / (target * grid.h)))));
    for (int g = 0; g < kGroups; ++g) {
      const double jmid = kInnerExplicit * std::pow(2.0, g + 0.5);
      const double sbar = beta / (2.0 * jmid);
      spread_pos[g] = spread_vector(sbar);
      spread_neg[g] = spread_vector(-sbar);
    }
  }

  /// Preimage length per unit source length concentrated at s (s != 0),
  /// as cell-indexed deposits. Branch points beta/(2j - s) are
  /// enumerated up to |j| = j1_star and digamma-batched into the near-0
  /// cells beyond, down to and including the innermost cell (no drop).
  std::vector<std::pair<int, double>> spread_vector(double s) const {
    std::vector<double> acc(static_cast<std::size_t>(grid.n), 0.0);
    for (int j = 1; j <= j1_star; ++j) {
      const double dp = 2.0 * j - s;
      const double dn = -2.0 * j - s;
      acc[grid.floor_cell(beta / dp)] += beta / (dp * dp);
      acc[grid.floor_cell(beta / dn)] += beta / (dn * dn);
    }
    // positive side: branches j >= j1_star+1 at x = beta/(2j-s) -> 0+
    {
      int jcur = j1_star + 1;
      int i = grid.floor_cell(beta / (2.0 * jcur - s));
      for (; i >= inner_pos; --i) {
        double mass;
        if (i == inner_pos) {
          mass = 0.25 * beta * hurwitz_tail(2, jcur - 0.5 * s);
        } else {
          const double c = grid.lo(i);
          const int jend =
              static_cast<int>(std::ceil((beta / c + s) * 0.5)) - 1;
          if (jend < jcur) continue;
          mass = 0.25 * beta *
                 (hurwitz_tail(2, jcur - 0.5 * s) -
                  hurwitz_tail(2, jend + 1 - 0.5 * s));
          jcur = jend + 1;
        }
        acc[i] += mass;
        if (i == inner_pos) break;
      }
    }
    // negative side: branches j <= -(j1_star+1), x in ]-..., 0[
    {
      int jcur = j1_star + 1;
      int i = grid.floor_cell(-beta / (2.0 * jcur + s));
      for (; i <= inner_neg; ++i) {
        double mass;
        if (i == inner_neg) {
          mass = 0.25 * beta * hurwitz_tail(2, jcur + 0.5 * s);
        } else {
          const double d = grid.hi(i); // d < 0 here
          const int jend =
              static_cast<int>(std::ceil((beta / (-d) - s) * 0.5)) - 1;
          if (jend < jcur) continue;
          mass = 0.25 * beta *
                 (hurwitz_tail(2, jcur + 0.5 * s) -
                  hurwitz_tail(2, jend + 1 + 0.5 * s));
          jcur = jend + 1;
        }
        acc[i] += mass;
        if (i == inner_neg) break;
      }
    }
    std::vector<std::pair<int, double>> out;
    for (int i = 0; i < grid.n; ++i)
      if (acc[i] != 0.0) out.emplace_back(i, acc[i]);
    return out;
  }

  /// Outer preimage of the inner interval ]p,q] into column k.
  void distribute_outer(std::vector<double>& entries, int k, double p,
                        double q) const {
    if (!(q > p)) return;
    for (int j = 1; j <= j1_star; ++j) {
      const double twoj = 2.0 * j;
      grid.deposit(entries, k, beta / (twoj - p), beta / (twoj - q));
      grid.deposit(entries, k, beta / (-twoj - p), beta / (-twoj - q));
    }
    const double mid = 0.5 * (p + q);
    // far positive branches
    {
      int jcur = j1_star + 1;
      int i = grid.floor_cell(beta / (2.0 * jcur - mid));
      for (; i >= inner_pos; --i) {
        double mass;
        if (i == inner_pos) {
          mass = beta * 0.5 *
                 (digamma(jcur - 0.5 * p) - digamma(jcur - 0.5 * q));
        } else {
          const double c = grid.lo(i);
          const int jend =
              static_cast<int>(std::ceil((beta / c + mid) * 0.5)) - 1;
          if (jend < jcur) continue;
          mass = beta * 0.5 *
                 ((digamma(jend + 1 - 0.5 * q) - digamma(jcur - 0.5 * q)) -
                  (digamma(jend + 1 - 0.5 * p) - digamma(jcur - 0.5 * p)));
          jcur = jend + 1;
        }
        entries[static_cast<std::size_t>(i) * grid.n + k] += mass / grid.h;
        if (i == inner_pos) break;
      }
    }
    // far negative branches
    {
      int jcur = j1_star + 1;
      int i = grid.floor_cell(-beta / (2.0 * jcur + mid));
      for (; i <= inner_neg; ++i) {
        double mass;
        if (i == inner_neg) {
          mass = beta * 0.5 *
                 (digamma(jcur + 0.5 * q) - digamma(jcur + 0.5 * p));
        } else {
          const double d = grid.hi(i);
          const int jend =
              static_cast<int>(std::ceil((beta / (-d) - mid) * 0.5)) - 1;
          if (jend < jcur) continue;
          mass = beta * 0.5 *
                 ((digamma(jend + 1 + 0.5 * p) - digamma(jcur + 0.5 * p)) -
                  (digamma(jend + 1 + 0.5 * q) - digamma(jcur + 0.5 * q)));
          jcur = jend + 1;
        }
        entries[static_cast<std::size_t>(i) * grid.n + k] += mass / grid.h;
        if (i == inner_neg) break;
      }
    }
  }
};

} // namespace

TransferMatrix composed_map_ulam_matrix(double beta, int grid_size) {
  check_beta(beta);
  if (grid_size < 2)
    throw std::invalid_argument("composed_map_ulam_matrix: grid_size < 2");

  const ComposedAssembler asmb(beta, grid_size);
  const Grid& grid = asmb.grid;
  const int n = grid_size;

  TransferMatrix w;
  w.beta = beta;
  w.grid_size = n;
  w.branch_cutoff =
      ComposedAssembler::kInnerExplicit << ComposedAssembler::kGroups;
  w.discretization = Discretization::ulam;
  w.entries.assign(static_cast<std::size_t>(n) * n, 0.0);

  for (int k = 0; k < n; ++k) {
    const double a = grid.lo(k);
    const double b = grid.hi(k);
    // inner branches, explicit
    for (int j = 1; j <= ComposedAssembler::kInnerExplicit; ++j) {
      const double twoj = 2.0 * j;
      asmb.distribute_outer(w.entries, k, beta / (twoj - a), beta / (twoj - b));
      asmb.distribute_outer(w.entries, k, beta / (-twoj - a),
                            beta / (-twoj - b));
    }
    // inner branches, octave groups with per-group spread vectors
    for (int g = 0; g < ComposedAssembler::kGroups; ++g) {
      const int jlo = (ComposedAssembler::kInnerExplicit << g) + 1;
      const int jhi = ComposedAssembler::kInnerExplicit << (g + 1);
      const double lpos =
          beta * 0.5 *
          ((digamma(jhi + 1 - 0.5 * b) - digamma(jlo - 0.5 * b)) -
           (digamma(jhi + 1 - 0.5 * a) - digamma(jlo - 0.5 * a)));
      const double lneg =
          beta * 0.5 *
          ((digamma(jhi + 1 + 0.5 * a) - digamma(jlo + 0.5 * a)) -
           (digamma(jhi + 1 + 0.5 * b) - digamma(jlo + 0.5 * b)));
      for (const auto& [i, dens] : asmb.spread_pos[g])
        w.entries[static_cast<std::size_t>(i) * n + k] += lpos * dens / grid.h;
      for (const auto& [i, dens] : asmb.spread_neg[g])
        w.entries[static_cast<std::size_t>(i) * n + k] += lneg * dens / grid.h;
    }
  }
  // inner branches beyond the last group are dropped; record the bound.
  const int jmax = ComposedAssembler::kInnerExplicit << ComposedAssembler::kGroups;
  w.tail_bound = beta / (2.0 * jmax);
  return w;
}

double composition_consistency(double beta, int grid_size, int branch_cutoff) {
  const TransferMatrix m = ulam_matrix(beta, grid_size, branch_cutoff);
  const TransferMatrix w = composed_map_ulam_matrix(beta, grid_size);
  const int n = grid_size;
  Eigen::Map<const RowMat> a(m.entries.data(), n, n);
  Eigen::Map<const RowMat> wm(w.entries.data(), n, n);

  // The raw matrix difference does not converge: ulam^2 smears every
  // sub-cell intermediate interval over neighbouring cells while the
  // composed-map matrix resolves it sharply (Ulam schemes converge
  // strongly, not in norm). Compare the two actions on a fixed smooth
  // density instead; that distance vanishes O(1/N).
  Eigen::VectorXd v(n);
  const double h = 2.0 / n;
  double tv = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = -1.0 + (2.0 * i + 1.0) / n;
    v(i) = (2.0 + std::cos(std::numbers::pi * t) +
            0.5 * std::sin(2.0 * std::numbers::pi * t)) *
           h;
    tv += v(i);
  }
  v /= tv; // unit total variation

  const Eigen::VectorXd via_m2 = a.transpose() * (a.transpose() * v).eval();
  const Eigen::VectorXd via_w = wm.transpose() * v;
  return (via_m2 - via_w).lpNorm<1>();
}

GridMeasure evolve(const TransferMatrix& m, const GridMeasure& nu) {
  if (nu.grid_size != m.grid_size)
    throw std::invalid_argument("evolve: grid size mismatch");
  const int n = m.grid_size;
  GridMeasure out(n);
  for (int i = 0; i < n; ++i) {
    const std::complex<double> wi = nu.cell_weights[i];
    if (wi == 0.0) continue;
    const double* row = &m.entries[static_cast<std::size_t>(i) * n];
    for (int k = 0; k < n; ++k)
      if (row[k] != 0.0) out.cell_weights[k] += wi * row[k];
  }
  out.atom_at_zero = nu.atom_at_zero;
  for (const auto& [s, mass] : nu.atoms) {
    if (s > -m.beta && s <= m.beta) {
      const IntervalPoint img = gauss_step(IntervalPoint(s), m.beta);
      out.add_atom(img.value, mass);
    }
  }
  return out;
}

} // namespace hupcf
