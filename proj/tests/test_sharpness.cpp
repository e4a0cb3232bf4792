#include "unihardy/sharpness.hpp"

#include <cmath>

#include "doctest.h"
#include "unihardy/errors.hpp"

using namespace unihardy;

namespace {
HardyParams params(double Q, double p, double a, double b, double c) {
  HardyParams prm;
  prm.Q = Q;
  prm.p = p;
  prm.a = a;
  prm.b = b;
  prm.c = c;
  return prm;
}
}  // namespace

TEST_CASE("rayleigh quotients dominate their sharp constants") {
  const auto prm = params(4, 2, 1, 2, 1);
  const auto u = make_boundary_family(1.0, 0.25, 1.0, 1.0);
  const double ratio = rayleigh(prm, u, RayleighKind::UnifiedHardy);
  CHECK(ratio >= 0.25);

  const auto uo = make_origin_family(2.0, 0.1);
  const double r7 = rayleigh(params(4, 2, 1, 1, 1), uo, RayleighKind::Hardy7);
  CHECK(r7 >= 2.25);

  CHECK_THROWS_AS(rayleigh(prm, RadialExpr::constant(0.0) * RadialExpr::bump(0.2, 0.8),
                           RayleighKind::UnifiedHardy),
                  error);
}

TEST_CASE("non-extremal directions stay far from the target") {
  // kappa = 0: constant near the origin; ratio far above ((Q-a)/p)^p
  const auto u = make_origin_family(1e-9, 0.05);
  const double r = rayleigh(params(4, 2, 1, 1, 1), u, RayleighKind::Hardy7);
  CHECK(r > 2.25 * 2.0);
}

TEST_CASE("boundary scan approaches ((b-1)c/p)^p") {
  const auto prm = params(4, 2, 1, 2, 1);
  const auto scan = scan_boundary(prm);
  REQUIRE(scan.rows.size() == 6);
  CHECK(scan.target == 0.25);
  for (const auto& row : scan.rows) {
    CHECK(row.admissible);
    CHECK(row.ratio >= scan.target - 1e-9);
  }
  // monotone decrease toward the target as kappa decreases
  for (size_t i = 1; i < scan.rows.size(); ++i)
    CHECK(scan.rows[i].ratio <= scan.rows[i - 1].ratio * (1.0 + 1e-6));
  CHECK(scan.finest_gap <= 0.25);  // frozen first-run at-grid calibration
  CHECK(scan.relative_gap <= 0.05);
  CHECK(scan.pass);
  CHECK(scan.csv().rfind("kappa,delta,ratio,err_est\n", 0) == 0);
  CHECK(scan.summary_json().find("relative_gap") != std::string::npos);
}

TEST_CASE("origin scan approaches ((Q-a)/p)^p") {
  const auto prm = params(4, 2, 1, 1, 1);
  const auto scan = scan_origin(prm);
  CHECK(scan.target == doctest::Approx(2.25));
  for (const auto& row : scan.rows) {
    CHECK(row.admissible);
    CHECK(row.ratio >= scan.target - 1e-9);
  }
  CHECK(scan.finest_gap <= 0.05);
  CHECK(scan.pass);
}

TEST_CASE("dilation invariance of the unified Hardy quotient") {
  auto prm1 = params(4, 2, 1, 2, 1);
  const auto u1 = make_boundary_family(1.3, 0.2, 1.0, 1.0);
  const double r1 = rayleigh(prm1, u1, RayleighKind::UnifiedHardy);

  auto prm2 = prm1;
  prm2.R = 3.0;
  const auto u2 = make_boundary_family(1.3, 0.2, 1.0, 3.0);
  const double r2 = rayleigh(prm2, u2, RayleighKind::UnifiedHardy);
  CHECK(std::abs(r1 - r2) <= 1e-9 * std::abs(r1));
}

TEST_CASE("non-attainment probe: log divergence with unit loglog slope") {
  const auto prm = params(4, 2, 1, 2, 1);
  const double eps[] = {1e-1, 1e-2, 1e-3, 1e-4};
  const auto probe = nonattainment_probe(prm, eps);
  REQUIRE(probe.rows.size() == 4);
  for (const auto& row : probe.rows) CHECK(std::isfinite(row.integral));
  CHECK(probe.r_squared >= 0.999);
  CHECK(probe.fit_exponent >= 0.9);
  CHECK(probe.fit_exponent <= 1.1);
  // doubling shells add a constant; here the analytic density is rho/(4(1-rho)),
  // so I(eps) ~ log(1/eps)/4 and consecutive decades differ by log(10)/4
  const double d1 = probe.rows[1].integral - probe.rows[0].integral;
  const double d2 = probe.rows[2].integral - probe.rows[1].integral;
  CHECK(d1 == doctest::Approx(std::log(10.0) / 4.0).epsilon(0.05));
  CHECK(d2 == doctest::Approx(std::log(10.0) / 4.0).epsilon(0.005));
}

TEST_CASE("scan rejects inadmissible parameters") {
  CHECK_THROWS_AS(scan_boundary(params(4, 2, 1, 0.5, 1)), error);
}

TEST_CASE("Rellich Rayleigh quotients dominate their constants") {
  const auto f = RadialExpr::bump(0.2, 0.8) * RadialExpr::power(2.0);
  auto p24 = params(5, 2, 4, 2, 1);
  CHECK(rayleigh(p24, f, RayleighKind::Rellich24) >= sharp_constant(p24, RayleighKind::Rellich24));
  auto p25 = params(8, 2, 4, 2, 1);
  CHECK(rayleigh(p25, f, RayleighKind::Rellich25) >= sharp_constant(p25, RayleighKind::Rellich25));
  auto p35 = params(9, 3, 2, 3, 1);
  CHECK(rayleigh(p35, f, RayleighKind::Rellich35) >= sharp_constant(p35, RayleighKind::Rellich35));
  auto p8 = params(4, 2, 1, 2, 1);
  CHECK(rayleigh(p8, f, RayleighKind::Hardy8) >= sharp_constant(p8, RayleighKind::Hardy8));
}
