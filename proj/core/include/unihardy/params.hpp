#pragma once

#include <optional>
#include <string>
#include <vector>

namespace unihardy {

// Exponent tuple shared by the Hardy/Rellich verifiers. R is the ball radius;
// every verifier works internally in the r -> r/R normalized frame.
struct HardyParams {
  double Q = 4.0;
  double p = 2.0;
  double a = 1.0;
  double b = 2.0;
  double c = 1.0;
  double R = 1.0;
  int k = 1;
};

// Each validator returns the violated constraints verbatim; empty means admissible.
std::vector<std::string> check_unified_hardy(const HardyParams& prm);
std::vector<std::string> check_higher_order(const HardyParams& prm);
std::vector<std::string> check_hardy_b(const HardyParams& prm);   // (7)/(3.2)/(3.3)
std::vector<std::string> check_hardy_c(const HardyParams& prm);   // (8)/(3.2_8)/(3.3_8)
std::vector<std::string> check_rellich_24(const HardyParams& prm);
std::vector<std::string> check_rellich_25(const HardyParams& prm);
std::vector<std::string> check_rellich_lp(const HardyParams& prm);
std::vector<std::string> check_radial_lower_bound(const HardyParams& prm);

// (Q - a - (k-1)p) / (b + (k-1)p - 1), the upper limit for c.
double critical_c(const HardyParams& prm);
bool at_critical_c(const HardyParams& prm);

struct CknParams {
  HardyParams base;
  double q = 2.0;
  double r = 2.0;
  double delta = 0.5;
  double beta = 0.0;
  double gamma = 0.0;
};

// Solves delta from delta*r/p + (1-delta)*r/q = 1 (unique when p != q; the
// degenerate p == q case needs an explicit pick), sets gamma = -delta + beta(1-delta),
// and enforces delta in [0,1] n [(r-q)/r, p/r].
CknParams resolve_ckn_params(const HardyParams& base, double q, double r, double beta,
                             std::optional<double> delta_pick = std::nullopt);
std::vector<std::string> check_ckn(const CknParams& prm);

}  // namespace unihardy
