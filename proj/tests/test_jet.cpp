#include "unihardy/jet.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "unihardy/errors.hpp"

using namespace unihardy;

TEST_CASE("jet of a constant has zero higher coefficients") {
  const Jet c = Jet::constant(3.5, 4);
  CHECK(c.value() == 3.5);
  for (int j = 1; j <= 4; ++j) CHECK(c.derivative(j) == 0.0);
}

TEST_CASE("polynomial jets are exact") {
  // f(r) = r^2 at r=3: (9, 6, 2)
  const Jet r = Jet::variable(3.0, 2);
  const Jet f = r * r;
  CHECK(f.value() == 9.0);
  CHECK(f.derivative(1) == 6.0);
  CHECK(f.derivative(2) == 2.0);
}

TEST_CASE("product rule matches the Leibniz combination") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  for (int it = 0; it < 50; ++it) {
    const double r = u(rng);
    const Jet a = pow(Jet::variable(r, 3), 1.7);
    const Jet b = exp(Jet::variable(r, 3) * 0.5);
    const Jet ab = a * b;
    // Leibniz: (ab)'' = a''b + 2a'b' + ab''
    const double d2 = a.derivative(2) * b.value() + 2 * a.derivative(1) * b.derivative(1) +
                      a.value() * b.derivative(2);
    CHECK(ab.derivative(2) == doctest::Approx(d2).epsilon(1e-13));
    const double d3 = a.derivative(3) * b.value() + 3 * a.derivative(2) * b.derivative(1) +
                      3 * a.derivative(1) * b.derivative(2) + a.value() * b.derivative(3);
    CHECK(ab.derivative(3) == doctest::Approx(d3).epsilon(1e-13));
  }
}

TEST_CASE("elementary function jets against closed-form derivatives") {
  const double r = 0.7;
  SUBCASE("pow") {
    const Jet f = pow(Jet::variable(r, 3), -2.5);
    CHECK(f.value() == doctest::Approx(std::pow(r, -2.5)).epsilon(1e-14));
    CHECK(f.derivative(1) == doctest::Approx(-2.5 * std::pow(r, -3.5)).epsilon(1e-14));
    CHECK(f.derivative(2) == doctest::Approx(8.75 * std::pow(r, -4.5)).epsilon(1e-14));
  }
  SUBCASE("exp/log/reciprocal") {
    const Jet e = exp(Jet::variable(r, 3));
    for (int j = 0; j <= 3; ++j) CHECK(e.derivative(j) == doctest::Approx(std::exp(r)).epsilon(1e-14));
    const Jet l = log(Jet::variable(r, 3));
    CHECK(l.derivative(1) == doctest::Approx(1.0 / r).epsilon(1e-14));
    CHECK(l.derivative(2) == doctest::Approx(-1.0 / (r * r)).epsilon(1e-14));
    const Jet inv = reciprocal(Jet::variable(r, 2));
    CHECK(inv.derivative(2) == doctest::Approx(2.0 / (r * r * r)).epsilon(1e-14));
  }
}

TEST_CASE("pole conditions throw") {
  CHECK_THROWS_AS(pow(Jet::constant(0.0, 2), -1.0), error);
  CHECK_THROWS_AS(log(Jet::constant(-1.0, 2)), error);
  CHECK_THROWS_AS(pow(Jet::constant(-2.0, 2), 0.5), error);
}
