#pragma once

#include <span>
#include <string>
#include <vector>

#include "unihardy/params.hpp"
#include "unihardy/quadrature.hpp"
#include "unihardy/radial_expr.hpp"

namespace unihardy {

enum class RayleighKind { UnifiedHardy, Hardy7, Hardy8, Rellich24, Rellich25, Rellich35 };

// RHS-integral / LHS-integral of the chosen inequality, constants stripped;
// the theorem says this dominates its sharp constant.
double rayleigh(const HardyParams& prm, const RadialExpr& f, RayleighKind kind,
                const QuadOptions& opt = {}, double* err_out = nullptr);

double sharp_constant(const HardyParams& prm, RayleighKind kind);

struct ScanRow {
  double kappa = 0.0;
  double delta = 0.0;
  double ratio = 0.0;
  double err_est = 0.0;
  bool admissible = true;
  std::string note;
};

struct SharpnessScan {
  std::vector<ScanRow> rows;  // ordered by decreasing offset
  double target = 0.0;
  double extrapolated = 0.0;
  double relative_gap = 0.0;  // |extrapolated - target| / target
  double finest_gap = 0.0;    // |last ratio - target| / target
  bool pass = false;

  std::string csv() const;           // kappa,delta,ratio,err_est
  std::string summary_json() const;  // {target, extrapolated, relative_gap}
};

// kappa-offsets above the critical exponent; delta is tied as offset/10.
inline constexpr double kScanOffsets[] = {0.32, 0.16, 0.08, 0.04, 0.02, 0.01};

// u_kappa = phi_delta (1-(r/R)^c)^kappa driven to kappa -> (b-1)/p from above,
// against the unified Hardy quotient; target ((b-1)c/p)^p.
SharpnessScan scan_boundary(const HardyParams& prm,
                            std::span<const double> offsets = kScanOffsets,
                            const QuadOptions& opt = {});

// u_kappa = phi_delta r^kappa driven to kappa -> -(Q-a)/p from above, against
// the (7) quotient; target ((Q-a)/p)^p.
SharpnessScan scan_origin(const HardyParams& prm,
                          std::span<const double> offsets = kScanOffsets,
                          const QuadOptions& opt = {});

struct ProbeRow {
  double eps = 0.0;
  double integral = 0.0;
};

struct NonattainmentProbe {
  std::vector<ProbeRow> rows;
  double log_slope = 0.0;      // d I / d log(1/eps)
  double loglog_slope = 0.0;   // raw d log I / d log log(1/eps); biased by the bounded part
  double fit_exponent = 0.0;   // gamma from I ~ A + B log(1/eps)^gamma, -> 1 for log divergence
  double r_squared = 0.0;      // linearity of I against log(1/eps)
  std::string csv() const;
};

// Energy of the extremal candidate over (1/2, 1-eps): grows like log(1/eps),
// witnessing that the dropped-remainder inequality admits no extremizer.
NonattainmentProbe nonattainment_probe(const HardyParams& prm, std::span<const double> eps_grid,
                                       const QuadOptions& opt = {});

}  // namespace unihardy
