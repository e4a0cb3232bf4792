#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "unihardy/radial_expr.hpp"

namespace unihardy {

// A quadrature node with exactly-propagated distances to the endpoints of the
// sub-interval [lo,hi] it was generated on. d_lo and d_hi are free of the
// cancellation that recomputing x-lo / hi-x would suffer near the endpoints.
struct QuadPoint {
  double x;
  double d_lo;
  double d_hi;
  double lo;
  double hi;

  // Distance from x to an outer radius R >= hi, exact when hi == R.
  double dist_to(double R) const { return (R - hi) + d_hi; }
};

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;
  std::int64_t evals = 0;
  bool converged = true;
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_levels = 13;        // tanh-sinh refinement levels
  int max_intervals = 4000;   // adaptive Gauss-Kronrod budget
};

using PointIntegrand = std::function<double(const QuadPoint&)>;

// Double-exponential rule on (lo,hi); absorbs endpoint power singularities
// with exponent > -1. Never evaluates at the endpoints.
QuadResult tanh_sinh(const PointIntegrand& f, double lo, double hi, const QuadOptions& opt = {});

// Adaptive 15-point Gauss-Kronrod bisection; fallback for integrands that are
// bounded but not smooth enough for the DE rule to converge cleanly.
QuadResult gauss_kronrod(const PointIntegrand& f, double lo, double hi,
                         const QuadOptions& opt = {});

struct SingularHints {
  double origin_exponent = 0.0;    // local power of the integrand as x -> lo
  double boundary_exponent = 0.0;  // local power as x -> hi
  std::vector<double> split_points;
};

// Splits at hints.split_points, runs tanh-sinh per piece with the
// Gauss-Kronrod fallback when a piece fails to converge, and sums.
QuadResult integrate(const PointIntegrand& f, double lo, double hi, const SingularHints& hints,
                     double target_rel_tol = 1e-10, const QuadOptions& opt = {});

enum class PowMode { AbsPow, Plain };

struct RadialIntegralOptions {
  QuadOptions quad;
  bool power_substitution = false;  // integrate in t = (r/R)^c instead of r
};

// \int_0^R |g(r)|^p r^{Q-a-1} (1-(r/R)^c)^{-b} dr   (AbsPow)
// \int_0^R  g(r)    r^{Q-a-1} (1-(r/R)^c)^{-b} dr   (Plain)
// in the |sphere| = 1 normalization. Throws errc::inadmissible when the
// endpoint bookkeeping says the integral diverges.
QuadResult radial_integral(const RadialExpr& g, double Q, double a, double b, double c, double R,
                           double p, PowMode mode, const RadialIntegralOptions& opt = {});

struct IpResult {
  double value = 0.0;
  bool undefined_at_origin = false;
  std::int64_t evals = 0;
};

// I_p(f,u) = (p-1) \int_0^1 |xi f + (1-xi) u|^{p-2} xi dxi, computed by
// quadrature: the integral is split at the sign change of the affine
// argument and each piece is integrated in the distance-to-crossing
// variable t = |L(xi)|, whose t^{p-2} endpoint the DE rule absorbs.
// (f,u) = (0,0) with p < 2 is flagged and returns 0 by convention.
IpResult ip_value_full(double fv, double uv, double p, double rel_tol = 1e-12);
double ip_value(double fv, double uv, double p);

// Residual of |u|^p/p + (p-1)/p |v|^p - |v|^{p-2} v u = I_p(v,u) |v-u|^2
// with I_p taken from the quadrature route above.
double ip_identity_check(double v, double u, double p);

}  // namespace unihardy
