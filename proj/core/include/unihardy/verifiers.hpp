#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "unihardy/group.hpp"
#include "unihardy/params.hpp"
#include "unihardy/quadrature.hpp"
#include "unihardy/radial_expr.hpp"
#include "unihardy/report.hpp"

namespace unihardy {

struct VerifyOptions {
  double tol_scale = 1.0;    // multiplies every identity tolerance
  QuadOptions quad;          // per-integral quadrature control (rel 1e-10)
  double ip_rel_tol = 1e-11; // inner I_p quadrature
};

// Complex-valued radial functions are carried as (re, im) expression pairs.
struct ComplexRadial {
  RadialExpr re;
  std::optional<RadialExpr> im;
};

// Thm on (IH remainder): ((b-1)c/p)^p * LHS + psi <= RHS. Below the critical
// c the explicit psi is asserted; at c = (Q-a)/(b-1) the inequality is checked
// without psi and the remainder shape is reported with an empirical lower
// bound for its unspecified constant.
VerificationReport verify_unified_hardy(const HardyParams& prm, const ComplexRadial& f,
                                        const VerifyOptions& opt = {});

// The p=2 remainder identity (four terms, complex allowed).
VerificationReport verify_l2_identity(const HardyParams& prm, const ComplexRadial& f,
                                      const VerifyOptions& opt = {});

// The L^p remainder identity with the I_p term via nested quadrature (real f).
VerificationReport verify_lp_identity(const HardyParams& prm, const RadialExpr& f,
                                      const VerifyOptions& opt = {});

// Higher-order iterated identities.
VerificationReport verify_high_l2(const HardyParams& prm, const ComplexRadial& f,
                                  const VerifyOptions& opt = {});
VerificationReport verify_high_lp(const HardyParams& prm, const RadialExpr& f,
                                  const VerifyOptions& opt = {});
// Inequality-only higher-order L^p form (complex allowed).
VerificationReport verify_high_lp_inequality(const HardyParams& prm, const ComplexRadial& f,
                                             const VerifyOptions& opt = {});

// Higher-order CKN interpolation inequality, remainder included, plus the
// intermediate Hoelder step.
VerificationReport verify_ckn(const CknParams& prm, const ComplexRadial& f,
                              const VerifyOptions& opt = {});

enum class HardyBMode { ineq7, identity32, identity33 };
VerificationReport verify_hardy_b(const HardyParams& prm, const ComplexRadial& f, HardyBMode mode,
                                  const VerifyOptions& opt = {});

enum class HardyCMode { ineq8, identity32_8, identity33_8 };
VerificationReport verify_hardy_c(const HardyParams& prm, const ComplexRadial& f, HardyCMode mode,
                                  const VerifyOptions& opt = {});

// The integration-by-parts identity behind Thms on (7)/(8).
VerificationReport verify_ibp_identity(const HardyParams& prm, const RadialExpr& f,
                                       const VerifyOptions& opt = {});

enum class RellichL2Which { ineq24, ineq25, expansion };
VerificationReport verify_rellich_l2(const HardyParams& prm, const ComplexRadial& f,
                                     RellichL2Which which, const VerifyOptions& opt = {});

// Radial lower bound: |(Q(p-1)+a-p)/p|^p int |Rf|^p/|x|^a <= int |R^2f+(Q-1)/|x| Rf|^p/|x|^{a-p}.
VerificationReport verify_radial_lower_bound(const HardyParams& prm, const ComplexRadial& f,
                                             const VerifyOptions& opt = {});

// L^p Rellich with the psi remainder at b=p.
VerificationReport verify_rellich_lp(const HardyParams& prm, const ComplexRadial& f,
                                     const VerifyOptions& opt = {});

// Log-weight limit: the direct log-weight inequality plus the c->0 convergence
// table of the rescaled c-family sides.
VerificationReport verify_log_limits(const HardyParams& prm, const ComplexRadial& f,
                                     std::span<const double> c_grid, const VerifyOptions& opt = {});

// Euclidean comparison chains (classical Hardy, geometric Hardy, Rellich), each
// displayed link asserted individually. Needs a Euclidean model.
VerificationReport verify_chains(const GroupModel& model, const RadialExpr& f, double p = 2.0,
                                 double b_geo = 2.0, const VerifyOptions& opt = {});

// Monte-Carlo suite for the pointwise fundamental inequalities behind the
// critical-regime remainders; reports empirical infima.
VerificationReport fundamental_inequality_suite(double p, std::int64_t samples, std::uint64_t seed,
                                                const VerifyOptions& opt = {});

}  // namespace unihardy
