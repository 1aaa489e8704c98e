#pragma once

#include <complex>
#include <functional>

namespace hupcf {

struct QuadResult {
  std::complex<double> value{0.0, 0.0};
  double err_est = 0.0;
  int panels = 0;
};

struct QuadOptions {
  double abs_tol = 1e-9;
  int max_panels = 400000;
  double phase_per_panel = 1.5; // radians of oscillation per initial panel
};

/// Adaptive Gauss-Kronrod 7/15 over [a,b] for a complex integrand.
/// When phase_derivative is supplied, the initial subdivision grades the
/// panels so each sees a bounded amount of phase variation (Legendre
/// rules only converge on resolved oscillations); the embedded error
/// then drives refinement until abs_tol or the panel budget, and an
/// exhausted budget raises accuracy_error rather than returning a value
/// that merely looks converged.
QuadResult integrate(const std::function<std::complex<double>(double)>& f,
                     double a, double b, const QuadOptions& opt = {},
                     const std::function<double(double)>& phase_derivative = {});

/// Gauss-Legendre nodes never touch the endpoints, so integrable
/// endpoint blowups are tolerated; still, prefer splitting at known
/// singular points.
} // namespace hupcf
