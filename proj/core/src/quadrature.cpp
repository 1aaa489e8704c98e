#include "hupcf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "hupcf/errors.hpp"

namespace hupcf {

namespace {

// Gauss-Kronrod 7/15 pair (QUADPACK dqk15 coefficients).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi;
  std::complex<double> value;
  double err;
};

Panel evaluate_panel(const std::function<std::complex<double>(double)>& f,
                     double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double hl = 0.5 * (hi - lo);
  std::complex<double> k15{0.0, 0.0};
  std::complex<double> g7{0.0, 0.0};
  for (int i = 0; i < 8; ++i) {
    std::complex<double> fsum;
    if (i == 7) {
      fsum = f(c);
    } else {
      fsum = f(c - hl * kXgk[i]) + f(c + hl * kXgk[i]);
    }
    k15 += kWgk[i] * fsum;
    if (i % 2 == 1) g7 += kWg[i / 2] * fsum;
  }
  Panel p;
  p.lo = lo;
  p.hi = hi;
  p.value = hl * k15;
  p.err = std::abs(hl * (k15 - g7));
  return p;
}

void initial_split(double lo, double hi, const std::function<double(double)>& dphi,
                   double phase_per_panel, int depth, std::size_t budget,
                   std::vector<std::pair<double, double>>& out) {
  if (out.size() > budget)
    throw accuracy_error("integrate: oscillation exceeds the panel budget");
  const double len = hi - lo;
  if (depth > 0 && dphi) {
    const double m = 0.5 * (lo + hi);
    // Simpson estimate of the phase variation across the panel
    const double var =
        (std::fabs(dphi(lo)) + 4.0 * std::fabs(dphi(m)) + std::fabs(dphi(hi))) /
        6.0 * len;
    if (var > phase_per_panel && len > 1e-13 * (1.0 + std::fabs(lo))) {
      initial_split(lo, m, dphi, phase_per_panel, depth - 1, budget, out);
      initial_split(m, hi, dphi, phase_per_panel, depth - 1, budget, out);
      return;
    }
  }
  out.emplace_back(lo, hi);
}

} // namespace

QuadResult integrate(const std::function<std::complex<double>(double)>& f,
                     double a, double b, const QuadOptions& opt,
                     const std::function<double(double)>& phase_derivative) {
  if (!(b > a)) return {};

  // A single wide panel can hide all the integrand's structure between
  // its nodes and fool the embedded estimator, so always start from a
  // uniform subdivision before the phase-driven refinement.
  std::vector<std::pair<double, double>> seeds;
  constexpr int kMinSeeds = 16;
  const auto budget = static_cast<std::size_t>(opt.max_panels);
  for (int s = 0; s < kMinSeeds; ++s) {
    const double lo = a + (b - a) * s / kMinSeeds;
    const double hi = a + (b - a) * (s + 1) / kMinSeeds;
    initial_split(lo, hi, phase_derivative, opt.phase_per_panel, 44, budget, seeds);
  }
  if (seeds.size() > budget)
    throw accuracy_error("integrate: oscillation exceeds the panel budget");

  auto worse = [](const Panel& x, const Panel& y) { return x.err < y.err; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> queue(worse);
  std::complex<double> total{0.0, 0.0};
  double err = 0.0;
  int panels = 0;
  for (const auto& [lo, hi] : seeds) {
    Panel p = evaluate_panel(f, lo, hi);
    total += p.value;
    err += p.err;
    ++panels;
    queue.push(p);
  }

  while (err > opt.abs_tol && !queue.empty()) {
    if (panels + 2 > opt.max_panels)
      throw accuracy_error("integrate: requested accuracy unattainable within the panel budget");
    Panel worst = queue.top();
    queue.pop();
    if (worst.hi - worst.lo < 1e-15 * (1.0 + std::fabs(worst.lo))) {
      // cannot split further; leave its error in the estimate
      if (queue.empty() || queue.top().err <= 0.0) break;
      continue;
    }
    const double m = 0.5 * (worst.lo + worst.hi);
    Panel left = evaluate_panel(f, worst.lo, m);
    Panel right = evaluate_panel(f, m, worst.hi);
    total += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    ++panels;
    queue.push(left);
    queue.push(right);
  }

  QuadResult res;
  res.value = total;
  res.err_est = std::max(err, 0.0);
  res.panels = panels;
  return res;
}

} // namespace hupcf
