#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "hupcf/errors.hpp"
#include "hupcf/quadrature.hpp"

using namespace hupcf;
using C = std::complex<double>;

TEST_CASE("polynomial and smooth integrals") {
  const QuadResult q1 =
      integrate([](double x) -> C { return {x * x, 0.0}; }, 0.0, 1.0);
  CHECK(q1.value.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(q1.err_est < 1e-10);

  const QuadResult q2 =
      integrate([](double x) -> C { return {std::exp(-x * x), 0.0}; }, -8.0, 8.0);
  CHECK(q2.value.real() ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("oscillatory integral with phase hint") {
  // int_0^10 e^{i 40 x} dx = (e^{400 i} - 1)/(40 i)
  const double w = 40.0;
  auto f = [=](double x) -> C { return std::polar(1.0, w * x); };
  QuadOptions opt;
  opt.abs_tol = 1e-11;
  const QuadResult q =
      integrate(f, 0.0, 10.0, opt, [=](double) { return w; });
  const C expect = (std::polar(1.0, w * 10.0) - C(1.0, 0.0)) / (C(0.0, 1.0) * w);
  CHECK(std::abs(q.value - expect) < 1e-10);
}

TEST_CASE("sharply peaked integrand is found by refinement") {
  // Poisson kernel with tiny height: total mass over wide window
  const double y = 1e-3;
  auto f = [=](double t) -> C { return {y / (t * t + y * y), 0.0}; };
  const QuadResult q = integrate(f, -100.0, 100.0);
  CHECK(q.value.real() ==
        doctest::Approx(2.0 * std::atan(100.0 / y)).epsilon(1e-9));
}

TEST_CASE("budget exhaustion raises accuracy_error") {
  QuadOptions opt;
  opt.abs_tol = 1e-14;
  opt.max_panels = 8;
  auto f = [](double x) -> C { return std::polar(1.0, 5000.0 * x); };
  CHECK_THROWS_AS(integrate(f, 0.0, 50.0, opt, [](double) { return 5000.0; }),
                  accuracy_error);
}
