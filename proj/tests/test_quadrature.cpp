#include "unihardy/quadrature.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "unihardy/errors.hpp"

using namespace unihardy;

namespace {
double beta_fn(double x, double y) {
  return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}
}  // namespace

TEST_CASE("tanh-sinh absorbs endpoint power singularities") {
  auto inv_sqrt_lo = [](const QuadPoint& q) { return std::pow(q.d_lo, -0.5); };
  auto r1 = tanh_sinh(inv_sqrt_lo, 0.0, 1.0);
  CHECK(r1.converged);
  CHECK(std::abs(r1.value - 2.0) <= 1e-10);

  auto inv_sqrt_hi = [](const QuadPoint& q) { return std::pow(q.d_hi, -0.5); };
  auto r2 = tanh_sinh(inv_sqrt_hi, 0.0, 1.0);
  CHECK(std::abs(r2.value - 2.0) <= 1e-10);

  auto logsing = [](const QuadPoint& q) { return -std::log(q.d_lo); };
  auto r3 = tanh_sinh(logsing, 0.0, 1.0);
  CHECK(std::abs(r3.value - 1.0) <= 1e-10);
}

TEST_CASE("beta-function exactness grid") {
  for (double x : {0.5, 1.0, 2.5, 4.0}) {
    for (double y : {0.5, 1.0, 2.5, 4.0}) {
      auto f = [&](const QuadPoint& q) {
        return std::pow(q.d_lo, x - 1.0) * std::pow(q.d_hi, y - 1.0);
      };
      auto r = tanh_sinh(f, 0.0, 1.0);
      CHECK(std::abs(r.value - beta_fn(x, y)) <= 1e-10 * beta_fn(x, y));
    }
  }
}

TEST_CASE("integrate: hints, splits, and error flags") {
  SingularHints hints;
  hints.origin_exponent = 3.0;
  hints.boundary_exponent = 1.0;
  auto f = [](const QuadPoint& q) { return std::pow(q.x, 3.0) * q.d_hi; };
  auto r = integrate(f, 0.0, 1.0, hints, 1e-10);
  CHECK(std::abs(r.value - beta_fn(4.0, 2.0)) <= 1e-10 * r.value);  // B(4,2) = 1/20
  CHECK(r.value == doctest::Approx(0.05));

  hints.boundary_exponent = -1.5;
  CHECK_THROWS_AS(integrate(f, 0.0, 1.0, hints, 1e-10), error);
}

TEST_CASE("non-finite samples abort with the abscissa named") {
  auto bad = [](const QuadPoint& q) { return 1.0 / (q.x - 0.5) / (q.x - 0.5) * 0.0 + (q.x > 0.49 && q.x < 0.51 ? std::nan("") : 1.0); };
  SingularHints hints;
  CHECK_THROWS_WITH_AS(integrate(bad, 0.0, 1.0, hints, 1e-8), doctest::Contains("NonFiniteSample"),
                       error);
}

TEST_CASE("gauss-kronrod fallback integrates kinky but bounded integrands") {
  auto kink = [](const QuadPoint& q) { return std::abs(q.x - 0.3); };
  auto r = gauss_kronrod(kink, 0.0, 1.0);
  const double exact = 0.5 * (0.3 * 0.3 + 0.7 * 0.7);
  CHECK(std::abs(r.value - exact) <= 1e-9);
}

TEST_CASE("radial_integral closed forms") {
  // g = 1: int_0^1 r^3 dr = 1/4
  auto one = RadialExpr::constant(1.0);
  auto r1 = radial_integral(one, 4.0, 0.0, 0.0, 1.0, 1.0, 1.0, PowMode::AbsPow);
  CHECK(std::abs(r1.value - 0.25) <= 1e-11);

  // g = (1-r), p = 2, Q = 2: int (1-r)^2 r dr = 1/12
  auto g = RadialExpr::boundary_power(1.0, 1.0, 1.0);
  auto r2 = radial_integral(g, 2.0, 0.0, 0.0, 1.0, 1.0, 2.0, PowMode::AbsPow);
  CHECK(std::abs(r2.value - 1.0 / 12.0) <= 1e-11);

  // singular weight: Q=4, b=2, beta oracle B(4,2)... int r^3 (1-r)^{-b} with b=-2
  auto r3 = radial_integral(one, 4.0, 0.0, -2.0, 1.0, 1.0, 1.0, PowMode::Plain);
  CHECK(std::abs(r3.value - beta_fn(4.0, 3.0)) <= 1e-10 * r3.value);
}

TEST_CASE("radial_integral agrees with a doubled-depth oracle") {
  auto g = RadialExpr::bump(0.2, 0.8) * RadialExpr::power(1.0);
  RadialIntegralOptions fast;
  fast.quad.rel_tol = 1e-10;
  RadialIntegralOptions deep;
  deep.quad.rel_tol = 1e-13;
  deep.quad.max_levels = 15;
  auto a = radial_integral(g, 3.0, 1.0, 1.0, 1.0, 1.0, 2.0, PowMode::AbsPow, fast);
  auto b = radial_integral(g, 3.0, 1.0, 1.0, 1.0, 1.0, 2.0, PowMode::AbsPow, deep);
  CHECK(std::abs(a.value - b.value) <= 1e-9 * std::abs(b.value));
}

TEST_CASE("substitution invariance of the radial integral") {
  auto g = RadialExpr::bump(0.2, 0.8) * RadialExpr::power(2.0);
  for (double c : {0.5, 1.0, 2.0}) {
    RadialIntegralOptions direct;
    RadialIntegralOptions subst;
    subst.power_substitution = true;
    auto a = radial_integral(g, 4.0, 1.0, 2.0, c, 1.0, 2.0, PowMode::AbsPow, direct);
    auto b = radial_integral(g, 4.0, 1.0, 2.0, c, 1.0, 2.0, PowMode::AbsPow, subst);
    CHECK(std::abs(a.value - b.value) <= 10.0 * (a.err_est + b.err_est) + 1e-13 * std::abs(a.value));
  }
  // non-localized profile with genuine boundary singularity
  auto v = extremal_candidate(2.0, 2.0, 1.0, 1.0);
  auto a = radial_integral(v, 4.0, 1.0, 1.0, 1.0, 1.0, 2.0, PowMode::AbsPow);
  RadialIntegralOptions subst;
  subst.power_substitution = true;
  auto b = radial_integral(v, 4.0, 1.0, 1.0, 1.0, 1.0, 2.0, PowMode::AbsPow, subst);
  CHECK(std::abs(a.value - b.value) <= 10.0 * (a.err_est + b.err_est) + 1e-12 * std::abs(a.value));
}

TEST_CASE("radial_integral rejects divergent combinations") {
  auto v = extremal_candidate(2.0, 2.0, 1.0, 1.0);
  CHECK_THROWS_WITH_AS(radial_integral(v, 4.0, 1.0, 2.0, 1.0, 1.0, 2.0, PowMode::AbsPow),
                       doctest::Contains("Inadmissible"), error);
}

TEST_CASE("ip_value closed cases") {
  CHECK(ip_value(3.7, -1.2, 2.0) == 0.5);
  CHECK(ip_value(1.0, 0.0, 3.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  for (double p : {1.5, 2.0, 3.0, 4.7}) {
    for (double v : {-2.0, 0.7, 3.0}) {
      CHECK(ip_value(v, v, p) ==
            doctest::Approx(0.5 * (p - 1.0) * std::pow(std::abs(v), p - 2.0)).epsilon(1e-12));
    }
  }
  auto z = ip_value_full(0.0, 0.0, 1.5);
  CHECK(z.undefined_at_origin);
  CHECK(z.value == 0.0);
}

TEST_CASE("ip positivity on random pairs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (double p : {1.5, 2.0, 3.0, 4.7}) {
    for (int it = 0; it < 200; ++it) {
      const double a = u(rng), b = u(rng);
      if (p < 2.0 && a == b && a == 0.0) continue;
      CHECK(ip_value(a, b, p) >= 0.0);
    }
  }
}

TEST_CASE("convexity-kernel identity residual over the random suite") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  double worst = 0.0;
  for (double p : {1.5, 2.0, 3.0, 4.7}) {
    for (int it = 0; it < 250; ++it) {
      const double v = u(rng), w = u(rng);
      if (p < 2.0 && v == 0.0 && w == 0.0) continue;
      worst = std::max(worst, ip_identity_check(v, w, p));
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("max-depth exhaustion is flagged, not fabricated") {
  // rapidly oscillating integrand with a tiny level budget
  auto osc = [](const QuadPoint& q) { return std::sin(500.0 / (q.x + 0.01)); };
  QuadOptions opt;
  opt.rel_tol = 1e-12;
  opt.max_levels = 3;
  opt.max_intervals = 4;
  auto r = tanh_sinh(osc, 0.0, 1.0, opt);
  CHECK(!r.converged);
  CHECK(r.err_est > 0.0);
}

TEST_CASE("integrate meets the requested error estimate on closed forms") {
  SingularHints hints;
  hints.origin_exponent = -0.5;
  auto f = [](const QuadPoint& q) { return std::pow(q.d_lo, -0.5); };
  auto r = integrate(f, 0.0, 1.0, hints, 1e-10);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 2.0) <= 1e-10);
  CHECK(r.err_est <= 1e-9);
  CHECK(r.evals > 0);
}
