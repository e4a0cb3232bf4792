#include "unihardy/radial_expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "unihardy/errors.hpp"

namespace unihardy {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRampTiny = 1.5e-3;

double binom_falling(double alpha, int k) {
  // alpha * (alpha-1) * ... * (alpha-k+1) / k!
  double v = 1.0;
  for (int i = 0; i < k; ++i) v *= (alpha - i) / (i + 1);
  return v;
}

// C^inf ramp s(t) = E(t)/(E(t)+E(1-t)), E(t)=exp(-1/t) for t>0 else 0.
Jet ramp_shape(const Jet& t) {
  const Jet et = exp(-reciprocal(t));
  const Jet emt = exp(-reciprocal(Jet::constant(1.0, t.order()) - t));
  return et * reciprocal(et + emt);
}
}  // namespace

double one_minus_pow(double r, double c, double R, const BoundaryDistance& bd) {
  if (bd.matches(R)) return -std::expm1(c * std::log1p(-bd.dist / R));
  return -std::expm1(c * std::log(r / R));
}

double log_ratio(double r, double R, const BoundaryDistance& bd) {
  if (bd.matches(R)) return -std::log1p(-bd.dist / R);
  return std::log(R / r);
}

std::string DivergenceReason::describe() const {
  std::ostringstream os;
  os << "integral diverges at the " << (endpoint == Endpoint::origin ? "origin" : "boundary")
     << " (leading local exponent " << exponent << " <= -1)";
  return os.str();
}

struct RadialExpr::Node {
  enum class Kind { Const, PowerR, BoundaryPower, LogR, RampUp, RampDown, Sum, Product, Negate };
  Kind kind;
  double v = 0.0;      // Const value / PowerR alpha / BoundaryPower kappa
  double c = 1.0;      // BoundaryPower exponent c
  double R = 1.0;      // BoundaryPower / LogR reference radius
  double r0 = 0.0, r1 = 0.0;  // ramp edges
  std::vector<std::shared_ptr<const Node>> children;

  Jet eval(double r, int order, const BoundaryDistance& bd) const {
    switch (kind) {
      case Kind::Const:
        return Jet::constant(v, order);
      case Kind::PowerR: {
        Jet j(order);
        for (int k = 0; k <= order; ++k) {
          const double bc = binom_falling(v, k);
          j.taylor_coeff(k) = bc == 0.0 ? 0.0 : bc * std::pow(r, v - k);
        }
        return j;
      }
      case Kind::BoundaryPower: {
        // u = 1-(r/R)^c with a stable constant term, then u^kappa.
        Jet t = Jet::variable(r, order) * (1.0 / R);
        Jet u = -pow(t, c);
        u.taylor_coeff(0) = one_minus_pow(r, c, R, bd);
        return pow(u, v);
      }
      case Kind::LogR: {
        Jet l = -log(Jet::variable(r, order));
        l.taylor_coeff(0) = log_ratio(r, R, bd);
        return l;
      }
      case Kind::RampUp: {
        // e^{-1/t} underflows below t ~ 1.34e-3; the ramp is 0 (resp. 1) to
        // double precision there, so clamp before 1/t^2 factors can overflow.
        const double tv = (r - r0) / (r1 - r0);
        if (tv <= kRampTiny) return Jet::constant(0.0, order);
        if (tv >= 1.0 - kRampTiny) return Jet::constant(1.0, order);
        Jet t = (Jet::variable(r, order) - Jet::constant(r0, order)) * (1.0 / (r1 - r0));
        return ramp_shape(t);
      }
      case Kind::RampDown: {
        const double tv = (r1 - r) / (r1 - r0);
        if (tv <= kRampTiny) return Jet::constant(0.0, order);
        if (tv >= 1.0 - kRampTiny) return Jet::constant(1.0, order);
        Jet t = (Jet::constant(r1, order) - Jet::variable(r, order)) * (1.0 / (r1 - r0));
        return ramp_shape(t);
      }
      case Kind::Sum: {
        Jet acc(order);
        for (const auto& ch : children) acc += ch->eval(r, order, bd);
        return acc;
      }
      case Kind::Product: {
        Jet acc = children[0]->eval(r, order, bd);
        for (size_t i = 1; i < children.size(); ++i) acc = acc * children[i]->eval(r, order, bd);
        return acc;
      }
      case Kind::Negate:
        return -children[0]->eval(r, order, bd);
    }
    throw error(errc::eval_outside_domain, "corrupt expression node");
  }

  Interval support() const {
    switch (kind) {
      case Kind::Const:
        return v == 0.0 ? Interval{0.0, 0.0} : Interval{};
      case Kind::PowerR:
        return {};
      case Kind::BoundaryPower:
      case Kind::LogR:
        return {0.0, R};  // undefined (or sign-flipping) beyond the reference radius
      case Kind::RampUp:
        return {r0, kInf};
      case Kind::RampDown:
        return {0.0, r1};
      case Kind::Sum: {
        Interval s{kInf, -kInf};
        for (const auto& ch : children) {
          const Interval ci = ch->support();
          s.lo = std::min(s.lo, ci.lo);
          s.hi = std::max(s.hi, ci.hi);
        }
        return s;
      }
      case Kind::Product: {
        Interval s{};
        for (const auto& ch : children) {
          const Interval ci = ch->support();
          s.lo = std::max(s.lo, ci.lo);
          s.hi = std::min(s.hi, ci.hi);
        }
        return s;
      }
      case Kind::Negate:
        return children[0]->support();
    }
    return {};
  }

  void collect_breakpoints(std::vector<double>& out) const {
    switch (kind) {
      case Kind::RampUp:
      case Kind::RampDown:
        out.push_back(r0);
        out.push_back(r1);
        break;
      case Kind::Sum:
      case Kind::Product:
      case Kind::Negate:
        for (const auto& ch : children) ch->collect_breakpoints(out);
        break;
      default:
        break;
    }
  }

  template <class OrdFn>
  static double fold_product_order(const std::vector<std::shared_ptr<const Node>>& ch, int j,
                                   OrdFn&& ord) {
    std::vector<double> acc(static_cast<size_t>(j) + 1);
    for (int m = 0; m <= j; ++m) acc[static_cast<size_t>(m)] = ord(*ch[0], m);
    for (size_t idx = 1; idx < ch.size(); ++idx) {
      std::vector<double> cur(static_cast<size_t>(j) + 1), nxt(static_cast<size_t>(j) + 1, kInf);
      for (int m = 0; m <= j; ++m) cur[static_cast<size_t>(m)] = ord(*ch[idx], m);
      for (int m = 0; m <= j; ++m)
        for (int i = 0; i <= m; ++i)
          nxt[static_cast<size_t>(m)] =
              std::min(nxt[static_cast<size_t>(m)],
                       acc[static_cast<size_t>(i)] + cur[static_cast<size_t>(m - i)]);
      acc = std::move(nxt);
    }
    return acc[static_cast<size_t>(j)];
  }

  // Lower bound for the local power of r in the j-th derivative as r -> 0+;
  // +inf when identically zero near the origin. Log factors count as power 0.
  double ord0(int j) const {
    switch (kind) {
      case Kind::Const:
        return (v == 0.0 || j >= 1) ? kInf : 0.0;
      case Kind::PowerR: {
        const bool integer_poly = v >= 0.0 && v == std::floor(v);
        if (integer_poly && j > v) return kInf;
        return v - j;
      }
      case Kind::BoundaryPower:
        return j == 0 ? 0.0 : c - j;
      case Kind::LogR:
        return j == 0 ? 0.0 : -static_cast<double>(j);
      case Kind::RampUp:
        return kInf;  // identically 0 (r0 > 0) or flatter than any power near 0
      case Kind::RampDown:
        return j == 0 ? 0.0 : kInf;
      case Kind::Sum: {
        double m = kInf;
        for (const auto& ch : children) m = std::min(m, ch->ord0(j));
        return m;
      }
      case Kind::Product:
        return fold_product_order(children, j, [](const Node& n, int jj) { return n.ord0(jj); });
      case Kind::Negate:
        return children[0]->ord0(j);
    }
    return 0.0;
  }

  // Lower bound for the power of (R_at - r) in the j-th derivative as r -> R_at-.
  double ord1(double R_at, int j) const {
    switch (kind) {
      case Kind::Const:
        return (v == 0.0 || j >= 1) ? kInf : 0.0;
      case Kind::PowerR:
        return 0.0;
      case Kind::BoundaryPower:
        if (std::abs(R - R_at) > 1e-12 * R) return 0.0;
        return v - j;
      case Kind::LogR:
        // log(R/r) ~ (R-r)/R at the boundary; derivatives are regular there.
        if (std::abs(R - R_at) > 1e-12 * R) return 0.0;
        return j == 0 ? 1.0 : 0.0;
      case Kind::RampUp:
        if (r0 >= R_at) return kInf;                       // still identically 0
        if (r1 < R_at) return j == 0 ? 0.0 : kInf;         // exact plateau 1
        return 0.0;                                        // mid-ramp at the boundary
      case Kind::RampDown:
        if (r1 < R_at) return kInf;                        // identically 0
        if (r0 >= R_at) return j == 0 ? 0.0 : kInf;        // plateau 1
        return 0.0;
      case Kind::Sum: {
        double m = kInf;
        for (const auto& ch : children) m = std::min(m, ch->ord1(R_at, j));
        return m;
      }
      case Kind::Product:
        return fold_product_order(children, j,
                                  [R_at](const Node& n, int jj) { return n.ord1(R_at, jj); });
      case Kind::Negate:
        return children[0]->ord1(R_at, j);
    }
    return 0.0;
  }

  double min_R() const {
    switch (kind) {
      case Kind::BoundaryPower:
      case Kind::LogR:
        return R;
      case Kind::Sum:
      case Kind::Product:
      case Kind::Negate: {
        double m = kInf;
        for (const auto& ch : children) m = std::min(m, ch->min_R());
        return m;
      }
      default:
        return kInf;
    }
  }

  void print(std::ostringstream& os) const {
    switch (kind) {
      case Kind::Const: os << "const(" << v << ")"; break;
      case Kind::PowerR: os << "powr(" << v << ")"; break;
      case Kind::BoundaryPower: os << "bnd(c=" << c << ",k=" << v << ",R=" << R << ")"; break;
      case Kind::LogR: os << "logr(R=" << R << ")"; break;
      case Kind::RampUp: os << "rampup(" << r0 << "," << r1 << ")"; break;
      case Kind::RampDown: os << "rampdown(" << r0 << "," << r1 << ")"; break;
      case Kind::Sum:
      case Kind::Product: {
        os << (kind == Kind::Sum ? "add(" : "mul(");
        for (size_t i = 0; i < children.size(); ++i) {
          if (i) os << ",";
          children[i]->print(os);
        }
        os << ")";
        break;
      }
      case Kind::Negate:
        os << "neg(";
        children[0]->print(os);
        os << ")";
        break;
    }
  }
};

RadialExpr RadialExpr::constant(double v) {
  Node n;
  n.kind = Node::Kind::Const;
  n.v = v;
  return RadialExpr(std::make_shared<const Node>(std::move(n)));
}

RadialExpr RadialExpr::power(double alpha) {
  Node n;
  n.kind = Node::Kind::PowerR;
  n.v = alpha;
  return RadialExpr(std::make_shared<const Node>(std::move(n)));
}

RadialExpr RadialExpr::boundary_power(double c, double kappa, double R) {
  if (!(c > 0.0) || !(R > 0.0))
    throw error(errc::bad_parameter, "boundary_power needs c > 0 and R > 0");
  Node n;
  n.kind = Node::Kind::BoundaryPower;
  n.v = kappa;
  n.c = c;
  n.R = R;
  return RadialExpr(std::make_shared<const Node>(std::move(n)));
}

RadialExpr RadialExpr::log_weight(double R) {
  if (!(R > 0.0)) throw error(errc::bad_parameter, "log weight needs R > 0");
  Node n;
  n.kind = Node::Kind::LogR;
  n.R = R;
  return RadialExpr(std::make_shared<const Node>(std::move(n)));
}

RadialExpr RadialExpr::ramp_up(double r0, double r1) {
  if (!(r0 >= 0.0 && r1 > r0)) throw error(errc::bad_parameter, "ramp needs 0 <= r0 < r1");
  Node n;
  n.kind = Node::Kind::RampUp;
  n.r0 = r0;
  n.r1 = r1;
  return RadialExpr(std::make_shared<const Node>(std::move(n)));
}

RadialExpr RadialExpr::ramp_down(double r0, double r1) {
  if (!(r0 >= 0.0 && r1 > r0)) throw error(errc::bad_parameter, "ramp needs 0 <= r0 < r1");
  Node n;
  n.kind = Node::Kind::RampDown;
  n.r0 = r0;
  n.r1 = r1;
  return RadialExpr(std::make_shared<const Node>(std::move(n)));
}

RadialExpr RadialExpr::bump(double r0, double r1) {
  if (!(r0 >= 0.0 && r1 > r0)) throw error(errc::bad_parameter, "bump needs 0 <= r0 < r1");
  const double w = (r1 - r0) / 4.0;
  return ramp_up(r0, r0 + w) * ramp_down(r1 - w, r1);
}

RadialExpr operator+(const RadialExpr& a, const RadialExpr& b) {
  RadialExpr::Node n;
  n.kind = RadialExpr::Node::Kind::Sum;
  n.children = {a.node_, b.node_};
  return RadialExpr(std::make_shared<const RadialExpr::Node>(std::move(n)));
}

RadialExpr operator*(const RadialExpr& a, const RadialExpr& b) {
  RadialExpr::Node n;
  n.kind = RadialExpr::Node::Kind::Product;
  n.children = {a.node_, b.node_};
  return RadialExpr(std::make_shared<const RadialExpr::Node>(std::move(n)));
}

RadialExpr RadialExpr::operator-() const {
  Node n;
  n.kind = Node::Kind::Negate;
  n.children = {node_};
  return RadialExpr(std::make_shared<const Node>(std::move(n)));
}

Jet RadialExpr::eval_jet(double r, int order, const BoundaryDistance& bd) const {
  if (!node_) throw error(errc::eval_outside_domain, "empty expression");
  if (!(r > 0.0)) throw error(errc::eval_outside_domain, "radial evaluation needs r > 0");
  const double Rmin = node_->min_R();
  if (r >= Rmin) {
    // r may round onto the boundary radius when the caller supplies the true
    // (sub-ulp) distance; anything else is genuinely out of domain.
    const bool stable_at_boundary = bd.matches(Rmin) && bd.dist > 0.0 && r <= Rmin;
    if (!stable_at_boundary)
      throw error(errc::eval_outside_domain, "evaluation at or beyond the boundary radius");
  }
  if (order < 0 || order > 16) throw error(errc::bad_parameter, "jet order out of range");
  return node_->eval(r, order, bd);
}

double RadialExpr::value(double r, const BoundaryDistance& bd) const {
  return eval_jet(r, 0, bd).value();
}

Interval RadialExpr::support() const { return node_ ? node_->support() : Interval{0.0, 0.0}; }

std::vector<double> RadialExpr::breakpoints() const {
  std::vector<double> out;
  if (node_) node_->collect_breakpoints(out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double RadialExpr::origin_order(int deriv) const { return node_ ? node_->ord0(deriv) : kInf; }

double RadialExpr::boundary_order(double R, int deriv) const {
  return node_ ? node_->ord1(R, deriv) : kInf;
}

double RadialExpr::smallest_boundary_radius() const { return node_ ? node_->min_R() : kInf; }

RadialPowerSplit split_power(const RadialExpr& f) {
  using Kind = RadialExpr::Node::Kind;
  const auto* node = f.node_.get();
  if (!node) return {0.0, f};
  switch (node->kind) {
    case Kind::PowerR:
      return {node->v, RadialExpr::constant(1.0)};
    case Kind::Negate: {
      const RadialPowerSplit inner = split_power(RadialExpr(node->children[0]));
      return {inner.alpha, -inner.rest};
    }
    case Kind::Product: {
      double alpha = 0.0;
      RadialExpr rest;
      bool first = true;
      for (const auto& ch : node->children) {
        const RadialPowerSplit inner = split_power(RadialExpr(ch));
        alpha += inner.alpha;
        rest = first ? inner.rest : rest * inner.rest;
        first = false;
      }
      return {alpha, rest};
    }
    default:
      return {0.0, f};
  }
}

std::string RadialExpr::to_string() const {
  if (!node_) return "<empty>";
  std::ostringstream os;
  node_->print(os);
  return os.str();
}

std::optional<DivergenceReason> admissible(const RadialExpr& f, double p, double Q,
                                           const WeightSpec& w) {
  const Interval sup = f.support();
  if (sup.lo <= 0.0) {
    const double e = p * f.origin_order(0) + w.origin_power + (Q - 1.0);
    if (!(e > -1.0)) return DivergenceReason{DivergenceReason::Endpoint::origin, e};
  }
  if (sup.hi >= w.R) {
    const double e = p * f.boundary_order(w.R, 0) + w.boundary_power;
    if (!(e > -1.0)) return DivergenceReason{DivergenceReason::Endpoint::boundary, e};
  }
  return std::nullopt;
}

RadialExpr make_boundary_family(double kappa, double delta, double c, double R) {
  if (!(delta > 0.0 && delta < 0.5))
    throw error(errc::bad_delta, "boundary family needs 0 < delta < 1/2");
  if (!(kappa > 0.0)) throw error(errc::bad_parameter, "boundary family needs kappa > 0");
  return RadialExpr::ramp_up(R * (1.0 - 2.0 * delta), R * (1.0 - delta)) *
         RadialExpr::boundary_power(c, kappa, R);
}

RadialExpr make_origin_family(double kappa, double delta) {
  if (!(delta > 0.0 && delta < 0.5))
    throw error(errc::bad_delta, "origin family needs 0 < delta < 1/2");
  return RadialExpr::ramp_down(delta, 2.0 * delta) * RadialExpr::power(kappa);
}

RadialExpr extremal_candidate(double b, double p, double c, double R) {
  if (!(b > 1.0 && p > 1.0 && c > 0.0))
    throw error(errc::bad_parameter, "extremal candidate needs b > 1, p > 1, c > 0");
  const double kappa = (b - 1.0) / p;
  return RadialExpr::constant(std::pow(R, c * kappa)) * RadialExpr::power(-c * kappa) *
         RadialExpr::boundary_power(c, kappa, R);
}

double rellich_operand(const RadialExpr& f, double Q, double r, const BoundaryDistance& bd) {
  const Jet j = f.eval_jet(r, 2, bd);
  return j.derivative(2) + (Q - 1.0) / r * j.derivative(1);
}

}  // namespace unihardy
