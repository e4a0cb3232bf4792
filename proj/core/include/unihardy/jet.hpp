#pragma once

#include <cstddef>
#include <vector>

namespace unihardy {

// Truncated Taylor series at a point: coeffs_[j] = f^(j)(r)/j!.
// Arithmetic is exact to round-off for +, -, *, and the composed elementary
// functions below, which is what makes order-k radial derivatives reliable
// where symbolic differentiation of the bump family is not closed.
class Jet {
 public:
  Jet() : coeffs_(1, 0.0) {}
  explicit Jet(int order) : coeffs_(static_cast<size_t>(order) + 1, 0.0) {}

  static Jet constant(double v, int order);
  // The identity function r -> r: value r, first derivative 1.
  static Jet variable(double r, int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  double value() const { return coeffs_[0]; }
  // j-th derivative, j <= order()
  double derivative(int j) const;

  double taylor_coeff(int j) const { return coeffs_[static_cast<size_t>(j)]; }
  double& taylor_coeff(int j) { return coeffs_[static_cast<size_t>(j)]; }

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
  friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
  friend Jet operator*(Jet a, double s) { a *= s; return a; }
  friend Jet operator*(double s, Jet a) { a *= s; return a; }
  friend Jet operator-(Jet a) { a *= -1.0; return a; }
  friend Jet operator*(const Jet& a, const Jet& b);  // Cauchy product

 private:
  std::vector<double> coeffs_;
};

// a^alpha for a.value() > 0 (or a.value() < 0 with integer alpha).
Jet pow(const Jet& a, double alpha);
Jet exp(const Jet& a);
Jet log(const Jet& a);  // a.value() > 0
Jet reciprocal(const Jet& a);

}  // namespace unihardy
