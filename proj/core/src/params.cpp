#include "unihardy/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "unihardy/errors.hpp"

namespace unihardy {

namespace {
void need(std::vector<std::string>& out, bool ok, const std::string& what) {
  if (!ok) out.push_back(what);
}

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}
}  // namespace

double critical_c(const HardyParams& prm) {
  return (prm.Q - prm.a - (prm.k - 1) * prm.p) / (prm.b + (prm.k - 1) * prm.p - 1.0);
}

bool at_critical_c(const HardyParams& prm) {
  const double crit = critical_c(prm);
  return std::abs(prm.c - crit) <= 1e-12 * std::max(std::abs(crit), 1.0);
}

std::vector<std::string> check_unified_hardy(const HardyParams& prm) {
  std::vector<std::string> out;
  need(out, prm.p > 1.0 && std::isfinite(prm.p), "1<p<oo");
  need(out, prm.b > 1.0, "b>1");
  need(out, prm.a < prm.Q, "a<Q");
  need(out, prm.c > 0.0 && prm.c <= (prm.Q - prm.a) / (prm.b - 1.0) + 1e-15,
       "0<c<=(Q-a)/(b-1)");
  need(out, prm.R > 0.0, "R>0");
  need(out, prm.Q > 1.0, "Q>1");
  return out;
}

std::vector<std::string> check_higher_order(const HardyParams& prm) {
  std::vector<std::string> out;
  const double kp = (prm.k - 1) * prm.p;
  need(out, prm.k >= 1, "k>=1");
  need(out, prm.p > 1.0 && std::isfinite(prm.p), "1<p<oo");
  need(out, prm.b + kp > 1.0, "b+(k-1)p>1");
  need(out, prm.a + kp < prm.Q, "a+(k-1)p<Q");
  need(out, prm.c > 0.0 && prm.c <= critical_c(prm) + 1e-15,
       "0<c<=(Q-a-(k-1)p)/(b+(k-1)p-1)");
  need(out, prm.R > 0.0, "R>0");
  return out;
}

std::vector<std::string> check_hardy_b(const HardyParams& prm) {
  std::vector<std::string> out;
  need(out, prm.p > 1.0 && std::isfinite(prm.p), "1<p<oo");
  need(out, prm.a < prm.Q, "a<Q");
  need(out, prm.b >= 1.0, "b>=1");
  need(out, prm.c > 0.0, "c>0");
  need(out, prm.R > 0.0, "R>0");
  return out;
}

std::vector<std::string> check_hardy_c(const HardyParams& prm) {
  std::vector<std::string> out;
  need(out, prm.p > 1.0 && std::isfinite(prm.p), "1<p<oo");
  need(out, prm.a < prm.Q, "a<Q");
  need(out, prm.b > 1.0, "b>1");
  need(out, prm.c > 0.0 && prm.c <= (prm.Q - prm.a) / (prm.p - 1.0) + 1e-15,
       "0<c<=(Q-a)/(p-1)");
  need(out, prm.R > 0.0, "R>0");
  return out;
}

std::vector<std::string> check_rellich_24(const HardyParams& prm) {
  std::vector<std::string> out;
  need(out, prm.p == 2.0, "p=2");
  need(out, prm.c > 0.0, "c>0");
  need(out, 4.0 - prm.Q < prm.a && prm.a <= prm.Q - prm.c + 1e-15, "4-Q<a<=Q-c");
  need(out, prm.R > 0.0, "R>0");
  return out;
}

std::vector<std::string> check_rellich_25(const HardyParams& prm) {
  std::vector<std::string> out;
  need(out, prm.p == 2.0, "p=2");
  need(out, prm.c > 0.0, "c>0");
  need(out, 3.0 <= prm.a && prm.a <= std::min(prm.Q - prm.c + 2.0, prm.Q - 3.0 * prm.c) + 1e-15,
       "3<=a<=min{Q-c+2,Q-3c}");
  need(out, prm.R > 0.0, "R>0");
  return out;
}

std::vector<std::string> check_rellich_lp(const HardyParams& prm) {
  std::vector<std::string> out;
  need(out, prm.p > 1.0 && std::isfinite(prm.p), "1<p<oo");
  need(out, prm.c > 0.0, "c>0");
  need(out, prm.a <= prm.Q - (prm.p - 1.0) * prm.c + 1e-15, "a<=Q-(p-1)c");
  need(out, prm.R > 0.0, "R>0");
  return out;
}

std::vector<std::string> check_radial_lower_bound(const HardyParams& prm) {
  std::vector<std::string> out;
  need(out, prm.p >= 1.0 && std::isfinite(prm.p), "1<=p<oo");
  need(out, prm.R > 0.0, "R>0");
  return out;
}

CknParams resolve_ckn_params(const HardyParams& base, double q, double r, double beta,
                             std::optional<double> delta_pick) {
  if (!(base.p > 1.0 && q > 1.0 && r > 0.0))
    throw error(errc::bad_parameter, "CKN needs 1<p,q<oo and 0<r<oo");
  if (!(base.p + q >= r)) throw error(errc::bad_parameter, "CKN needs p+q>=r");

  CknParams out;
  out.base = base;
  out.q = q;
  out.r = r;
  out.beta = beta;

  const double p = base.p;
  double delta;
  if (std::abs(r / p - r / q) < 1e-14) {
    // p == q: the Hoelder-exponent equation reads r/p = 1 for every delta.
    if (std::abs(r / p - 1.0) > 1e-12)
      throw error(errc::no_admissible_delta,
                  "p=q requires r=p; no delta satisfies delta*r/p+(1-delta)*r/q=1");
    if (!delta_pick)
      throw error(errc::no_admissible_delta,
                  "degenerate p=q case: an explicit delta pick is required");
    delta = *delta_pick;
  } else {
    delta = (1.0 - r / q) / (r / p - r / q);
    if (delta_pick && std::abs(*delta_pick - delta) > 1e-10)
      throw error(errc::window_violation,
                  "requested delta=" + num(*delta_pick) + " conflicts with the unique solution " +
                      num(delta) + " of delta*r/p+(1-delta)*r/q=1");
  }
  const double wlo = std::max(0.0, (r - q) / r);
  const double whi = std::min(1.0, p / r);
  if (!(delta >= wlo - 1e-12 && delta <= whi + 1e-12))
    throw error(errc::window_violation, "delta=" + num(delta) + " outside [0,1] n [(r-q)/r, p/r] = [" +
                                            num(wlo) + "," + num(whi) + "]");
  out.delta = std::clamp(delta, wlo, whi);
  out.gamma = -out.delta + beta * (1.0 - out.delta);
  return out;
}

std::vector<std::string> check_ckn(const CknParams& prm) {
  std::vector<std::string> out = check_higher_order(prm.base);
  need(out, prm.q > 1.0, "1<q<oo");
  need(out, prm.r > 0.0, "0<r<oo");
  need(out, prm.base.p + prm.q >= prm.r, "p+q>=r");
  const double eq = prm.delta * prm.r / prm.base.p + (1.0 - prm.delta) * prm.r / prm.q;
  need(out, std::abs(eq - 1.0) <= 1e-12, "delta*r/p+(1-delta)*r/q=1");
  need(out, std::abs(prm.gamma - (-prm.delta + prm.beta * (1.0 - prm.delta))) <= 1e-12,
       "gamma=-delta+beta(1-delta)");
  const double wlo = std::max(0.0, (prm.r - prm.q) / prm.r);
  const double whi = std::min(1.0, prm.base.p / prm.r);
  need(out, prm.delta >= wlo - 1e-12 && prm.delta <= whi + 1e-12,
       "delta in [0,1] n [(r-q)/r, p/r]");
  return out;
}

}  // namespace unihardy
