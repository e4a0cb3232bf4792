#include "unihardy/jet.hpp"

#include <cmath>

#include "unihardy/errors.hpp"

namespace unihardy {

Jet Jet::constant(double v, int order) {
  Jet j(order);
  j.coeffs_[0] = v;
  return j;
}

Jet Jet::variable(double r, int order) {
  Jet j(order);
  j.coeffs_[0] = r;
  if (order >= 1) j.coeffs_[1] = 1.0;
  return j;
}

double Jet::derivative(int j) const {
  double fact = 1.0;
  for (int i = 2; i <= j; ++i) fact *= i;
  return coeffs_[static_cast<size_t>(j)] * fact;
}

Jet& Jet::operator+=(const Jet& o) {
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  const int n = a.order();
  Jet r(n);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += a.coeffs_[static_cast<size_t>(j)] * b.coeffs_[static_cast<size_t>(k - j)];
    r.coeffs_[static_cast<size_t>(k)] = s;
  }
  return r;
}

Jet pow(const Jet& a, double alpha) {
  const int n = a.order();
  const double a0 = a.taylor_coeff(0);
  Jet b(n);
  if (a0 == 0.0) throw error(errc::pole_hit, "pow() of jet with zero value");
  if (a0 < 0.0 && alpha != std::floor(alpha))
    throw error(errc::pole_hit, "pow() of negative jet with non-integer exponent");
  b.taylor_coeff(0) = std::pow(a0, alpha);
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j)
      s += ((alpha + 1.0) * j - k) * a.taylor_coeff(j) * b.taylor_coeff(k - j);
    b.taylor_coeff(k) = s / (k * a0);
  }
  return b;
}

Jet exp(const Jet& a) {
  const int n = a.order();
  Jet b(n);
  b.taylor_coeff(0) = std::exp(a.taylor_coeff(0));
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * a.taylor_coeff(j) * b.taylor_coeff(k - j);
    b.taylor_coeff(k) = s / k;
  }
  return b;
}

Jet log(const Jet& a) {
  const int n = a.order();
  const double a0 = a.taylor_coeff(0);
  if (a0 <= 0.0) throw error(errc::pole_hit, "log() of non-positive jet");
  Jet b(n);
  b.taylor_coeff(0) = std::log(a0);
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int j = 1; j < k; ++j) s += j * b.taylor_coeff(j) * a.taylor_coeff(k - j);
    b.taylor_coeff(k) = (a.taylor_coeff(k) - s / k) / a0;
  }
  return b;
}

Jet reciprocal(const Jet& a) { return pow(a, -1.0); }

}  // namespace unihardy
