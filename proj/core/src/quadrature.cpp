#include "unihardy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

#include "unihardy/errors.hpp"

namespace unihardy {

namespace {

constexpr double kPiHalf = std::numbers::pi / 2.0;
constexpr double kMinDist = 1e-290;  // closest approach to an endpoint

[[noreturn]] void throw_nonfinite(double x, double v) {
  std::ostringstream os;
  os << "integrand returned " << v << " at x = " << x;
  throw error(errc::non_finite_sample, os.str());
}

struct Accum {
  double sum = 0.0;
  double comp = 0.0;  // Kahan compensation
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// One tanh-sinh node: t -> (y, complement 1-|y|) with y = tanh((pi/2) sinh t).
struct DeNode {
  double y_abs;        // |tanh(z)|
  double complement;   // 1 - |tanh(z)|, computed from the exp side
  double weight;       // (pi/2) cosh(t) / cosh^2(z)
};

bool de_node(double t_abs, DeNode& out) {
  const double z = kPiHalf * std::sinh(t_abs);
  if (z > 350.0) return false;  // complement underflows past ~e^{-700}
  const double e2z = std::exp(-2.0 * z);
  out.complement = 2.0 * e2z / (1.0 + e2z);
  out.y_abs = 1.0 - out.complement;
  const double ch = std::cosh(z);
  out.weight = kPiHalf * std::cosh(t_abs) / (ch * ch);
  return true;
}

}  // namespace

QuadResult tanh_sinh(const PointIntegrand& f, double lo, double hi, const QuadOptions& opt) {
  QuadResult res;
  if (!(hi > lo)) return res;
  const double half = 0.5 * (hi - lo);

  auto sample = [&](double t_signed) -> double {
    DeNode n;
    if (!de_node(std::abs(t_signed), n)) return 0.0;
    QuadPoint q;
    q.lo = lo;
    q.hi = hi;
    const double d_near = std::max(half * n.complement, kMinDist);
    if (t_signed >= 0.0) {
      q.d_hi = d_near;
      q.d_lo = (hi - lo) - d_near;
      q.x = hi - d_near;
    } else {
      q.d_lo = d_near;
      q.d_hi = (hi - lo) - d_near;
      q.x = lo + d_near;
    }
    // q.x may round onto an endpoint; the distances carry the true position.
    ++res.evals;
    const double v = f(q);
    if (!std::isfinite(v)) throw_nonfinite(q.x, v);
    return v * half * n.weight;
  };

  // Level 0: h = 1, all integer nodes; level l adds odd multiples of h/2^l.
  const double h0 = 1.0;
  Accum level_sum;
  level_sum.add(sample(0.0));
  for (int dir = -1; dir <= 1; dir += 2) {
    int consecutive_tiny = 0;
    for (int k = 1; k < 80; ++k) {
      const double term = sample(dir * k * h0);
      level_sum.add(term);
      if (std::abs(term) <= 1e-300 + 1e-18 * std::abs(level_sum.sum)) {
        if (++consecutive_tiny >= 3) break;
      } else {
        consecutive_tiny = 0;
      }
    }
  }
  double integral = h0 * level_sum.sum;
  double prev = integral;
  double err = std::abs(integral);
  res.converged = false;

  for (int level = 1; level <= opt.max_levels; ++level) {
    const double h = h0 / static_cast<double>(1 << level);
    Accum add_sum;
    for (int dir = -1; dir <= 1; dir += 2) {
      int consecutive_tiny = 0;
      for (std::int64_t k = 1;; k += 2) {
        const double t = dir * static_cast<double>(k) * h;
        if (std::abs(t) > 7.0) break;
        const double term = sample(t);
        add_sum.add(term);
        if (std::abs(term) <= 1e-300 + 1e-18 * (std::abs(add_sum.sum) + std::abs(level_sum.sum))) {
          if (++consecutive_tiny >= 4) break;
        } else {
          consecutive_tiny = 0;
        }
      }
    }
    level_sum.add(add_sum.sum);
    integral = h * level_sum.sum;
    err = std::abs(integral - prev);
    prev = integral;
    const double tol = std::max(opt.rel_tol * std::abs(integral), opt.abs_tol);
    if (level >= 3 && err <= tol) {
      res.converged = true;
      break;
    }
  }
  res.value = integral;
  res.err_est = std::max(err, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(integral));
  return res;
}

namespace {

// 15-point Gauss-Kronrod pair (G7,K15) abscissae/weights on [-1,1].
constexpr double kGk15X[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kGk15Wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kG7W[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct GkSegment {
  double a, b, value, err;
};

GkSegment gk15(const PointIntegrand& f, double a, double b, double lo, double hi,
               std::int64_t& evals) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kron = 0.0, gauss = 0.0, abs_int = 0.0;
  for (int i = 0; i < 8; ++i) {
    for (int sgn = (i == 7 ? 1 : -1); sgn <= 1; sgn += 2) {
      const double xi = sgn * kGk15X[i];
      QuadPoint q;
      q.lo = lo;
      q.hi = hi;
      q.x = mid + half * xi;
      q.d_lo = std::max(q.x - lo, kMinDist);
      q.d_hi = std::max(hi - q.x, kMinDist);
      ++evals;
      const double v = f(q);
      if (!std::isfinite(v)) throw_nonfinite(q.x, v);
      kron += kGk15Wk[i] * v;
      abs_int += kGk15Wk[i] * std::abs(v);
      if (i % 2 == 1) gauss += kG7W[i / 2] * v;
      if (i == 7) break;
    }
  }
  GkSegment s;
  s.a = a;
  s.b = b;
  s.value = kron * half;
  const double diff = std::abs(kron - gauss) * half;
  const double scale = abs_int * half;
  s.err = scale > 0.0 ? scale * std::min(1.0, std::pow(200.0 * diff / scale, 1.5)) : diff;
  return s;
}

}  // namespace

QuadResult gauss_kronrod(const PointIntegrand& f, double lo, double hi, const QuadOptions& opt) {
  QuadResult res;
  if (!(hi > lo)) return res;
  auto cmp = [](const GkSegment& x, const GkSegment& y) { return x.err < y.err; };
  std::priority_queue<GkSegment, std::vector<GkSegment>, decltype(cmp)> heap(cmp);
  heap.push(gk15(f, lo, hi, lo, hi, res.evals));
  double total = heap.top().value;
  double total_err = heap.top().err;
  int segments = 1;
  while (segments < opt.max_intervals) {
    const double tol = std::max(opt.rel_tol * std::abs(total), opt.abs_tol);
    if (total_err <= tol) break;
    GkSegment worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) {  // interval exhausted at double resolution
      heap.push(worst);
      break;
    }
    GkSegment left = gk15(f, worst.a, m, lo, hi, res.evals);
    GkSegment right = gk15(f, m, worst.b, lo, hi, res.evals);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    ++segments;
  }
  res.value = total;
  res.err_est = total_err;
  res.converged = total_err <= std::max(opt.rel_tol * std::abs(total), opt.abs_tol);
  return res;
}

QuadResult integrate(const PointIntegrand& f, double lo, double hi, const SingularHints& hints,
                     double target_rel_tol, const QuadOptions& opt_in) {
  if (!(lo < hi)) throw error(errc::bad_parameter, "integrate needs lo < hi");
  if (!(hints.origin_exponent > -1.0))
    throw error(errc::inadmissible, "origin exponent <= -1, integral diverges");
  if (!(hints.boundary_exponent > -1.0))
    throw error(errc::inadmissible, "boundary exponent <= -1, integral diverges");

  QuadOptions opt = opt_in;
  opt.rel_tol = target_rel_tol;

  std::vector<double> cuts{lo};
  for (double s : hints.split_points)
    if (s > lo && s < hi) cuts.push_back(s);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  QuadResult total;
  total.converged = true;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    QuadResult piece = tanh_sinh(f, cuts[i], cuts[i + 1], opt);
    if (!piece.converged) {
      QuadResult fb = gauss_kronrod(f, cuts[i], cuts[i + 1], opt);
      fb.evals += piece.evals;
      if (fb.converged || fb.err_est < piece.err_est) piece = fb;
    }
    total.value += piece.value;
    total.err_est += piece.err_est;
    total.evals += piece.evals;
    total.converged = total.converged && piece.converged;
  }
  return total;
}

QuadResult radial_integral(const RadialExpr& g, double Q, double a, double b, double c, double R,
                           double p, PowMode mode, const RadialIntegralOptions& opt) {
  if (!(R > 0.0) || !(c > 0.0)) throw error(errc::bad_parameter, "radial_integral needs R > 0, c > 0");
  const double p_eff = mode == PowMode::AbsPow ? p : 1.0;
  WeightSpec w{Q - a - 1.0 - (Q - 1.0), -b, c, R};  // extra r-power beyond the measure
  if (auto why = admissible(g, p_eff, Q, w))
    throw error(errc::inadmissible, why->describe());

  const Interval sup = g.support();
  const double lo = std::max(0.0, sup.lo);
  const double hi = std::min(R, sup.hi);
  if (!(lo < hi)) return {};

  SingularHints hints;
  hints.origin_exponent = p_eff * g.origin_order(0) + (Q - a - 1.0);
  hints.boundary_exponent = p_eff * g.boundary_order(R, 0) - b;
  if (lo > 0.0) hints.origin_exponent = 0.0;
  if (hi < R) hints.boundary_exponent = 0.0;
  for (double e : g.breakpoints())
    if (e > lo && e < hi) hints.split_points.push_back(e);

  if (!opt.power_substitution) {
    auto integrand = [&](const QuadPoint& q) {
      BoundaryDistance bd{R, q.dist_to(R)};
      const double gv = g.value(q.x, bd);
      double val = mode == PowMode::AbsPow ? std::pow(std::abs(gv), p) : gv;
      if (val == 0.0) return 0.0;
      const double wv = one_minus_pow(q.x, c, R, bd);
      return val * std::pow(q.x, Q - a - 1.0) * std::pow(wv, -b);
    };
    return integrate(integrand, lo, hi, hints, opt.quad.rel_tol, opt.quad);
  }

  // t = (r/R)^c:  (R^{Q-a}/c) \int t^{(Q-a)/c - 1} (1-t)^{-b} |g(R t^{1/c})|^p dt
  const double t_lo = std::pow(lo / R, c);
  const double t_hi = std::pow(hi / R, c);
  SingularHints th;
  th.origin_exponent = lo > 0.0 ? 0.0 : (p_eff * g.origin_order(0) + Q - a) / c - 1.0;
  th.boundary_exponent = hi < R ? 0.0 : p_eff * g.boundary_order(R, 0) - b;
  for (double e : hints.split_points) th.split_points.push_back(std::pow(e / R, c));
  auto integrand_t = [&](const QuadPoint& q) {
    const double dist_t = q.dist_to(1.0);
    const double r_dist = -R * std::expm1(std::log1p(-dist_t) / c);
    double r = R - r_dist;
    if (r >= R) r = std::nextafter(R, 0.0);
    if (r <= 0.0) r = 1e-300;
    BoundaryDistance bd{R, r_dist};
    const double gv = g.value(r, bd);
    double val = mode == PowMode::AbsPow ? std::pow(std::abs(gv), p) : gv;
    if (val == 0.0) return 0.0;
    return val * std::pow(q.x, (Q - a) / c - 1.0) * std::pow(dist_t, -b);
  };
  QuadResult out = integrate(integrand_t, t_lo, t_hi, th, opt.quad.rel_tol, opt.quad);
  const double scale = std::pow(R, Q - a) / c;
  out.value *= scale;
  out.err_est *= std::abs(scale);
  return out;
}

IpResult ip_value_full(double fv, double uv, double p, double rel_tol) {
  if (!(p > 1.0)) throw error(errc::bad_parameter, "I_p needs p > 1");
  IpResult out;
  if (p == 2.0) {
    out.value = 0.5;
    return out;
  }
  if (fv == uv) {
    if (fv == 0.0) {
      if (p < 2.0) {
        out.undefined_at_origin = true;  // integrand identically singular
        return out;
      }
      return out;  // |0|^{p-2} = 0 for p > 2
    }
    out.value = 0.5 * (p - 1.0) * std::pow(std::abs(fv), p - 2.0);
    return out;
  }

  const double slope = fv - uv;                  // L(xi) = uv + xi * slope
  const double xi_star = -uv / slope;            // zero crossing of L
  const bool crossing = xi_star > 0.0 && xi_star < 1.0;

  QuadOptions qopt;
  qopt.rel_tol = rel_tol;
  auto piece = [&](double a, double b, bool sing_lo, bool sing_hi) -> double {
    auto integrand = [&](const QuadPoint& q) {
      double t;  // t = |L(xi)|, measured from the crossing when it is an endpoint
      if (sing_lo)
        t = std::abs(slope) * q.d_lo;
      else if (sing_hi)
        t = std::abs(slope) * q.d_hi;
      else
        t = std::abs(uv + q.x * slope);
      if (t == 0.0) return 0.0;
      return std::pow(t, p - 2.0) * q.x;
    };
    QuadResult r = tanh_sinh(integrand, a, b, qopt);
    out.evals += r.evals;
    return r.value;
  };

  double integral = 0.0;
  if (crossing) {
    integral += piece(0.0, xi_star, false, true);
    integral += piece(xi_star, 1.0, true, false);
  } else {
    // |L| bounded away from 0 on (0,1) unless an endpoint is the crossing
    const bool lo_sing = uv == 0.0;
    const bool hi_sing = fv == 0.0;
    integral += piece(0.0, 1.0, lo_sing, hi_sing);
  }
  out.value = (p - 1.0) * integral;
  return out;
}

double ip_value(double fv, double uv, double p) { return ip_value_full(fv, uv, p).value; }

double ip_identity_check(double v, double u, double p) {
  const auto ip = ip_value_full(v, u, p, 1e-14);
  const double pu = std::pow(std::abs(u), p);
  const double pv = std::pow(std::abs(v), p);
  const double sign_term = v == 0.0 ? 0.0 : std::pow(std::abs(v), p - 2.0) * v * u;
  const double lhs = pu / p + (p - 1.0) / p * pv - sign_term;
  const double rhs = ip.value * (v - u) * (v - u);
  return std::abs(lhs - rhs);
}

}  // namespace unihardy
