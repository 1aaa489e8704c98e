// Acceptance suite: runs every release criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code is the number
// of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hupcf/gauss.hpp"
#include "hupcf/hyperbola.hpp"
#include "hupcf/measures.hpp"
#include "hupcf/moebius.hpp"
#include "hupcf/quadrature.hpp"
#include "hupcf/special.hpp"
#include "hupcf/transfer.hpp"

using namespace hupcf;

namespace {

int g_failures = 0;
int g_index = 0;

class Criterion {
public:
  Criterion(const char* name, double budget_seconds)
      : name_(name), budget_(budget_seconds),
        start_(std::chrono::steady_clock::now()) {}

  void finish(bool pass, const std::string& detail) {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    const bool in_budget = elapsed <= budget_;
    const bool ok = pass && in_budget;
    ++g_index;
    if (!ok) ++g_failures;
    std::printf("[%2d/13] %s  %s: %s  [%.2f s / %.0f s]%s\n", g_index,
                ok ? "PASS" : "FAIL", name_, detail.c_str(), elapsed, budget_,
                !pass ? "" : (in_budget ? "" : "  (over budget)"));
    std::fflush(stdout);
  }

private:
  const char* name_;
  double budget_;
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// 1. collocation identity sum_j 1/((2j-t)^2-1) = 1/(1-t^2), analytic tail
void criterion_invariant_density() {
  Criterion c("invariant-density identity", 1.0);
  const int J = 512;
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = -0.9 + 1.8 * i / 1000.0;
    double sum = 0.0;
    for (int j = 1; j <= J; ++j) {
      const double dp = 2.0 * j - t;
      const double dn = -2.0 * j - t;
      sum += 1.0 / (dp * dp - 1.0) + 1.0 / (dn * dn - 1.0);
    }
    // telescoping tail: each side collapses to a single term
    sum += 0.5 * (1.0 / (2.0 * J + 1.0 - t) + 1.0 / (2.0 * J + 1.0 + t));
    worst = std::max(worst, std::fabs(sum - 1.0 / (1.0 - t * t)));
  }
  c.finish(worst < 1e-10, "max residual " + fmt(worst) + " (tol 1e-10)");
}

// 2. apply_transfer reproduces the omega density at beta = 1
void criterion_transfer_eigenfunction() {
  Criterion c("transfer eigenfunction", 1.0);
  std::vector<double> ts(1001);
  for (int i = 0; i <= 1000; ++i) ts[i] = -0.9 + 1.8 * i / 1000.0;
  const auto omega = [](double t) { return 1.0 / (1.0 - t * t); };
  const TransferApplied out = apply_transfer(omega, ts, 1.0, 512);
  double worst = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i)
    worst = std::max(worst, std::fabs(out.values[i] - omega(ts[i])));
  c.finish(worst < 1e-10, "max deviation " + fmt(worst) + " (tol 1e-10)");
}

// 3. even-CF round trip and rational termination
void criterion_even_cf() {
  Criterion c("even-CF round trip & rational termination", 10.0);
  std::mt19937_64 rng(20250812);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double x = unit(rng);
    if (x == 0.0 || x <= -1.0) continue;
    const EvenCfExpansion e = even_cf_expand(IntervalPoint(x), 40);
    const IntervalPoint back = even_cf_reconstruct(e.digits, e.tail);
    worst = std::max(worst, std::fabs(back.value - x));
  }
  long terminated = 0, total = 0;
  for (std::int64_t q = 1; q <= 500; ++q) {
    for (std::int64_t p = -q + 1; p <= q; ++p) {
      if (std::gcd(p < 0 ? -p : p, q) != 1) continue;
      ++total;
      const Rational r(p, q);
      const OrbitRecord rec = orbit(IntervalPoint(r.to_double(), r), 100000,
                                    1.0, 53, /*stop_at_one=*/true);
      if (rec.exact && rec.terminated != Termination::none) ++terminated;
    }
  }
  const bool pass = worst <= 1e-12 && terminated == total;
  c.finish(pass, "round-trip err " + fmt(worst) + " (tol 1e-12), " +
                     std::to_string(terminated) + "/" + std::to_string(total) +
                     " rational orbits terminated");
}

// 4. factorization identity on Ulam matrices
void criterion_factorization() {
  Criterion c("factorization identity", 5.0);
  bool pass = true;
  std::string detail;
  for (const double beta : {0.5, 1.0}) {
    const TransferMatrix m = ulam_matrix(beta, 512, 512);
    double frob2 = 0.0;
    for (const double e : m.entries) frob2 += e * e;
    const double d = factorization_check(m);
    pass = pass && d <= 1e-12 * frob2;
    detail += "beta=" + fmt(beta) + ": " + fmt(d) + " vs " + fmt(1e-12 * frob2) + "  ";
  }
  c.finish(pass, detail);
}

// 5. ulam^2 against the directly-built composed-map Ulam matrix
void criterion_composition() {
  Criterion c("composition consistency", 30.0);
  bool pass = true;
  std::string detail;
  for (const double beta : {0.5, 1.0}) {
    double prev = 1e300;
    detail += "beta=" + fmt(beta) + ":";
    for (const int n : {256, 512, 1024}) {
      const double d = composition_consistency(beta, n, 4 * n);
      detail += " " + fmt(d);
      pass = pass && d < prev;
      prev = d;
    }
    detail += "  ";
  }
  c.finish(pass, detail + "(each sequence strictly decreasing)");
}

// 6. peripheral spectral gap of the compressed operator; the recorded
// radii are regression fixtures
void criterion_peripheral_gap() {
  Criterion c("peripheral gap", 120.0);
  struct Fixture {
    double beta;
    double radius;
  };
  const Fixture fixtures[] = {{0.3, 0.24831805894559367},
                              {0.5, 0.42006487446451402},
                              {0.7, 0.60423836344299209},
                              {0.9, 0.8203959151013287}};
  bool pass = true;
  std::string detail;
  for (const Fixture& f : fixtures) {
    const SpectrumReport rep = spectrum(ulam_matrix(f.beta, 1024, 512), 1);
    pass = pass && rep.spectral_radius < 1.0 && rep.peripheral_gap > 0.0 &&
           std::fabs(rep.spectral_radius - f.radius) < 1e-6;
    detail += "r(" + fmt(f.beta) + ")=" + fmt(rep.spectral_radius) + " ";
  }
  c.finish(pass, detail + "(fixtures held to 1e-6)");
}

// 7. survivor-set measure decay at beta = 0.8
void criterion_survivor_decay() {
  Criterion c("survivor decay", 60.0);
  const double beta = 0.8;
  bool pass = true;
  double prev = 1e300;
  std::string detail = "uppers:";
  double last = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const IntervalUnion e = survivor_set(beta, n, 256);
    pass = pass && e.measure_upper < prev;
    prev = e.measure_upper;
    last = e.measure_upper;
    detail += " " + fmt(e.measure_upper);
  }
  pass = pass && last < 0.5 * (2.0 * beta);
  c.finish(pass, detail + " (E(8) upper < 0.8)");
}

// 8. singular annihilator certificate at (1,1,2,2)
void criterion_singular_annihilator() {
  Criterion c("singular annihilator", 1.0);
  const SingularAnnihilator ann = singular_annihilator(1.0, 1.0, 2, 2, 50);
  const bool pass = ann.certificate.max_lattice_residual < 1e-12 &&
                    ann.certificate.witness_value > 0.1 &&
                    ann.certificate.valid();
  c.finish(pass, "residual " + fmt(ann.certificate.max_lattice_residual) +
                     " (tol 1e-12), witness " +
                     fmt(ann.certificate.witness_value));
}

// 9. absolutely continuous annihilator at beta = 2
void criterion_ac_annihilator() {
  Criterion c("ac annihilator at beta = 2", 30.0);
  const AcAnnihilator ann = ac_annihilator(2.0, 20);
  const std::complex<double> z1 = ann.certificate.z1;
  const std::complex<double> z2 = ann.certificate.z2;
  const bool ids = std::abs(z1 - z2 - 2.0) <= 1e-14 &&
                   std::abs(1.0 / std::conj(z1) - 1.0 / std::conj(z2) - 1.0) <=
                       1e-14;
  const bool pass = ann.certificate.max_lattice_residual < 1e-6 &&
                    ann.certificate.witness_value > 0.1 && ids &&
                    ann.certificate.valid();
  c.finish(pass, "residual " + fmt(ann.certificate.max_lattice_residual) +
                     " (tol 1e-6), witness " +
                     fmt(ann.certificate.witness_value) +
                     ", separation identities to 1e-14");
}

// 10. density-gap threshold behavior
void criterion_density_gap() {
  Criterion c("density-gap threshold", 120.0);
  const AcAnnihilator ann = ac_annihilator(2.0, 2);
  const auto raw = ann.measure.density;

  bool pass = true;
  std::string detail = "beta=0.5:";
  double prev = 1e300;
  for (const int n : {4, 8, 16, 32}) {
    const DensityGapReport rep = density_gap(0.5, n, raw);
    detail += " " + fmt(rep.residual);
    pass = pass && rep.residual < prev;
    prev = rep.residual;
  }

  // normalize the annihilator in L2(w)
  QuadOptions opt;
  opt.abs_tol = 1e-10;
  const QuadResult nw = integrate(
      [&](double x) -> std::complex<double> {
        return {std::norm(raw(x)) / (std::numbers::pi * (1.0 + x * x)), 0.0};
      },
      -500.0, 500.0, opt);
  const double norm_w = std::sqrt(nw.value.real());
  const auto normalized = [raw, norm_w](double x) { return raw(x) / norm_w; };

  const double bound = density_gap_duality_bound(2.0);
  pass = pass && bound > 0.0;
  detail += "  beta=2 (bound " + fmt(bound) + "):";
  for (const int n : {4, 8, 16, 32}) {
    const DensityGapReport rep = density_gap(2.0, n, normalized);
    detail += " " + fmt(rep.residual);
    pass = pass && rep.residual > bound - 1e-6;
  }
  c.finish(pass, detail);
}

// 11. discreteness classifier
void criterion_discreteness() {
  Criterion c("discreteness classifier", 5.0);
  const DomainVerdict two = discreteness_classify(2.0, 100);
  const DomainVerdict ft = discreteness_classify(4.0 / 3.0, 100);
  const DomainVerdict off = discreteness_classify(1.5, 10000);
  bool frees = true;
  for (int i = 1; i <= 20; ++i)
    frees = frees && discreteness_classify(i / 20.0, 100).status ==
                         GroupClass::discrete_free;
  const bool pass = two.status == GroupClass::discrete_pq && two.p == 1 &&
                    two.q == 2 && ft.status == GroupClass::discrete_pq &&
                    ft.p == 1 && ft.q == 3 &&
                    off.status == GroupClass::non_discrete && frees;
  c.finish(pass, "beta=2 -> (1,2); beta=4/3 -> (1,3); beta=1.5 -> non-discrete "
                 "(q_max 10^4); beta <= 1 -> free");
}

// 12. HUP verdict truth table
void criterion_hup_verdicts() {
  Criterion c("HUP verdicts", 1.0);
  const bool pass = normalize_pair(1.0, 1.0, 1.0).is_hup &&
                    !normalize_pair(2.0, 1.0, 1.0).is_hup &&
                    normalize_pair(2.0, 1.0, 0.25).is_hup &&
                    !normalize_pair(1.0, 1.0001, 1.0).is_hup;
  c.finish(pass, "(1,1,1) true; (2,1,1) false; (2,1,1/4) true; (1,1.0001,1) false");
}

// 13. Birkhoff decay probe on trusted extended-precision orbits. The
// starts carry the full working precision: any double start is dyadic,
// and dyadic orbits terminate, poisoning the product bound.
void criterion_birkhoff() {
  Criterion c("Birkhoff decay probe", 120.0);
  int decayed = 0;
  int trusted = 0;
  for (int i = 0; i < 32; ++i) {
    const std::uint64_t seed = 20250801 + 1000 * static_cast<std::uint64_t>(i);
    OrbitRecord rec;
    for (int prec = 16384; prec <= (1 << 18); prec *= 2) {
      rec = random_orbit(seed, 9999, 1.0, prec);
      if (rec.trusted) break;
    }
    if (!rec.trusted) continue;
    ++trusted;
    double sum100 = 0.0, sum10000 = 0.0;
    for (std::size_t k = 0; k < rec.iterates.size(); ++k) {
      const double v = 1.0 - rec.iterates[k].value * rec.iterates[k].value;
      if (k < 100) sum100 += v;
      sum10000 += v;
    }
    if (sum10000 / 10000.0 < sum100 / 100.0) ++decayed;
  }
  const bool pass = decayed >= 30;
  c.finish(pass, std::to_string(decayed) + "/32 decayed (need >= 30), " +
                     std::to_string(trusted) + " trusted");
}

} // namespace

int main() {
  std::printf("hupcf acceptance suite\n");
  criterion_invariant_density();
  criterion_transfer_eigenfunction();
  criterion_even_cf();
  criterion_factorization();
  criterion_composition();
  criterion_peripheral_gap();
  criterion_survivor_decay();
  criterion_singular_annihilator();
  criterion_ac_annihilator();
  criterion_density_gap();
  criterion_discreteness();
  criterion_hup_verdicts();
  criterion_birkhoff();
  std::printf("%s: %d/13 criteria passed\n",
              g_failures == 0 ? "SUCCESS" : "FAILURE", 13 - g_failures);
  return g_failures;
}
