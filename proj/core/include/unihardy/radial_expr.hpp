#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "unihardy/jet.hpp"

namespace unihardy {

struct Interval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

// Carries the caller's exactly-known distance from r to a reference radius,
// so that 1-(r/R)^c and log(R/r) can be evaluated without cancellation when
// quadrature nodes crowd the boundary. R_ref is NaN when no distance is known.
struct BoundaryDistance {
  double R_ref = std::numeric_limits<double>::quiet_NaN();
  double dist = std::numeric_limits<double>::quiet_NaN();

  bool matches(double R) const {
    return R_ref == R_ref && std::abs(R_ref - R) <= 1e-12 * std::abs(R);
  }
};

// 1 - (r/R)^c, stable near r = R when a boundary distance is supplied.
double one_minus_pow(double r, double c, double R, const BoundaryDistance& bd = {});
// log(R/r), same contract.
double log_ratio(double r, double R, const BoundaryDistance& bd = {});

struct DivergenceReason {
  enum class Endpoint { origin, boundary } endpoint;
  double exponent;  // the offending leading local exponent (must exceed -1)
  std::string describe() const;
};

struct RadialPowerSplit;

// Immutable expression tree for radial functions on (0, R). Nodes:
//   Const(v), PowerR(alpha)=r^alpha, BoundaryPower(c,kappa,R)=(1-(r/R)^c)^kappa,
//   LogR(R)=log(R/r), RampUp/RampDown/Bump (exp-based C^inf cutoffs),
//   Sum, Product, Negate.
// Evaluation produces order-k jets; all ramp plateaus are exact constants.
class RadialExpr {
 public:
  RadialExpr() = default;

  static RadialExpr constant(double v);
  static RadialExpr power(double alpha);
  static RadialExpr boundary_power(double c, double kappa, double R = 1.0);
  static RadialExpr log_weight(double R = 1.0);
  // 0 on (0,r0], C^inf ramp on (r0,r1), 1 on [r1, inf)
  static RadialExpr ramp_up(double r0, double r1);
  // 1 on (0,r0], ramp, 0 on [r1, inf)
  static RadialExpr ramp_down(double r0, double r1);
  // 0 outside (r0,r1), exact plateau 1 on the middle half [r0+w, r1-w], w=(r1-r0)/4
  static RadialExpr bump(double r0, double r1);

  friend RadialExpr operator+(const RadialExpr& a, const RadialExpr& b);
  friend RadialExpr operator*(const RadialExpr& a, const RadialExpr& b);
  friend RadialPowerSplit split_power(const RadialExpr& f);
  RadialExpr operator-() const;

  bool valid() const { return node_ != nullptr; }

  Jet eval_jet(double r, int order, const BoundaryDistance& bd = {}) const;
  double value(double r, const BoundaryDistance& bd = {}) const;

  // Conservative superset of {r : f(r) != 0}.
  Interval support() const;
  // Cutoff edges; quadrature always splits here.
  std::vector<double> breakpoints() const;

  // Lower bound for the power of r in the j-th derivative as r -> 0+
  // (+inf when identically zero near 0). Log factors count as power 0.
  double origin_order(int deriv = 0) const;
  // Lower bound for the power of (R - r) as r -> R-.
  double boundary_order(double R, int deriv = 0) const;

  double smallest_boundary_radius() const;  // min over BoundaryPower/LogR nodes, +inf if none

  std::string to_string() const;

 private:
  struct Node;
  explicit RadialExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Weight r^origin_power * (1-(r/R)^c)^boundary_power attached to a target
// integral; the r^{Q-1} polar measure factor is accounted separately.
struct WeightSpec {
  double origin_power = 0.0;
  double boundary_power = 0.0;
  double c = 1.0;
  double R = 1.0;
};

// ok (nullopt) iff the leading local exponent of |f|^p * weight * r^{Q-1}
// exceeds -1 at each endpoint its support touches.
std::optional<DivergenceReason> admissible(const RadialExpr& f, double p, double Q,
                                           const WeightSpec& w);

// u_kappa = phi_delta * (1-(r/R)^c)^kappa with phi_delta == 0 on (0, R(1-2delta)),
// == 1 on (R(1-delta), R).
RadialExpr make_boundary_family(double kappa, double delta, double c, double R = 1.0);
// u_kappa = phi_delta * r^kappa with phi_delta == 1 on (0, delta), == 0 on (2delta, R).
RadialExpr make_origin_family(double kappa, double delta);
// ((r/R)^{-c} - 1)^{(b-1)/p}
RadialExpr extremal_candidate(double b, double p, double c, double R = 1.0);

// f''(r) + (Q-1)/r * f'(r), the radial second-order operator.
double rellich_operand(const RadialExpr& f, double Q, double r,
                       const BoundaryDistance& bd = {});

// Factor f = r^alpha * rest by pulling top-level PowerR factors out of
// products; rest carries bounded jets near the origin when f itself does up
// to the pure power. Sums are not split.
struct RadialPowerSplit {
  double alpha;
  RadialExpr rest;
};
RadialPowerSplit split_power(const RadialExpr& f);

}  // namespace unihardy
