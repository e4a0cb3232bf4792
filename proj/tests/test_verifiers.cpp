#include "unihardy/verifiers.hpp"

#include <cmath>

#include "doctest.h"
#include "unihardy/errors.hpp"

using namespace unihardy;

namespace {

ComplexRadial real_only(const RadialExpr& f) { return ComplexRadial{f, std::nullopt}; }

RadialExpr bump_r() { return RadialExpr::bump(0.2, 0.8) * RadialExpr::power(1.0); }

HardyParams params(double Q, double p, double a, double b, double c, double R = 1.0, int k = 1) {
  HardyParams prm;
  prm.Q = Q;
  prm.p = p;
  prm.a = a;
  prm.b = b;
  prm.c = c;
  prm.R = R;
  prm.k = k;
  return prm;
}

}  // namespace

TEST_CASE("L2 identity: acceptance parameters and abstract Q") {
  const auto f = real_only(bump_r());
  for (double Q : {2.5, 4.0, 7.0}) {
    const auto rep = verify_l2_identity(params(Q, 2, 1, 2, 1), f);
    CAPTURE(Q);
    CHECK(rep.status == Status::IdentityPass);
    CHECK(rep.residual_rel <= 1e-8);
  }
}

TEST_CASE("L2 identity: complex-valued f") {
  ComplexRadial f{bump_r(), RadialExpr::bump(0.3, 0.7) * RadialExpr::power(2.0)};
  const auto rep = verify_l2_identity(params(4, 2, 1, 2, 1), f);
  CHECK(rep.status == Status::IdentityPass);
  CHECK(rep.residual_rel <= 1e-8);
}

TEST_CASE("L2 identity: zero function gives zero terms") {
  const auto rep = verify_l2_identity(params(4, 2, 1, 2, 1),
                                      real_only(RadialExpr::constant(0.0) * bump_r()));
  CHECK(rep.status == Status::IdentityPass);
  CHECK(rep.residual_abs == 0.0);
  for (const auto& [name, tv] : rep.terms) CHECK(tv.value == 0.0);
}

TEST_CASE("L2 identity: critical c drops the third term") {
  // c = (Q-a)/(b-1) = 3 at (4,2,1,2)
  const auto rep = verify_l2_identity(params(4, 2, 1, 2, 3), real_only(bump_r()));
  CHECK(rep.status == Status::IdentityPass);
  CHECK(rep.term("remainder_coefficient") == 0.0);
}

TEST_CASE("L2 identity: extremal profile kills the bracket on the plateau") {
  const double b = 2.0, c = 1.0;
  const auto shape = extremal_candidate(b, 2.0, c, 1.0);
  const auto f = shape * RadialExpr::bump(0.2, 0.8);
  // pointwise: f + (2/((b-1)c)) rho w f' == 0 wherever the bump is exactly 1
  for (double rho : {0.36, 0.5, 0.64}) {
    const Jet j = f.eval_jet(rho, 1);
    const double w = 1.0 - rho;
    const double bracket = j.value() + 2.0 / ((b - 1.0) * c) * rho * w * j.derivative(1);
    CHECK(std::abs(bracket) <= 1e-12);
  }
  const auto rep = verify_l2_identity(params(4, 2, 1, b, c), real_only(f));
  CHECK(rep.status == Status::IdentityPass);
}

TEST_CASE("Lp identity at p in {1.5, 3} and p=2 term collapse") {
  const auto f = bump_r();
  const auto prm15 = params(4, 1.5, 1, 2, 1);
  const auto rep15 = verify_lp_identity(prm15, f);
  CHECK(rep15.status == Status::IdentityPass);
  CHECK(rep15.residual_rel <= 1e-6);

  const auto rep3 = verify_lp_identity(params(4, 3, 1, 2, 1), f);
  CHECK(rep3.status == Status::IdentityPass);
  CHECK(rep3.residual_rel <= 1e-7);

  const auto rep2 = verify_lp_identity(params(4, 2, 1, 2, 1), f);
  const auto repl2 = verify_l2_identity(params(4, 2, 1, 2, 1), real_only(f));
  CHECK(rep2.status == Status::IdentityPass);
  for (const auto& name : {"lhs_main", "rhs_derivative", "remainder_quadratic",
                           "remainder_coefficient"}) {
    const double x = rep2.term(name), y = repl2.term(name);
    CHECK(std::abs(x - y) <= 1e-9 * std::max({std::abs(x), std::abs(y), 1e-12}));
  }
}

TEST_CASE("unified Hardy: subcritical slack is the identity remainder") {
  const auto f = bump_r();
  const auto prm = params(4, 2, 1, 2, 1);
  const auto hardy = verify_unified_hardy(prm, real_only(f));
  CHECK(hardy.status == Status::InequalityPass);
  CHECK(hardy.slack > 0.0);

  const auto iden = verify_lp_identity(prm, f);
  const double remainder = iden.term("remainder_quadratic");
  CHECK(std::abs(hardy.slack - remainder) <= 1e-6 * remainder);
}

TEST_CASE("unified Hardy: critical regime reports the remainder shape") {
  const auto f = bump_r();
  auto prm = params(4, 2, 1, 2, 3);  // c = (Q-a)/(b-1)
  auto rep = verify_unified_hardy(prm, real_only(f));
  CHECK(rep.status == Status::InequalityPass);
  CHECK(rep.terms.count("critical_g_integral") == 1);
  CHECK(rep.term("critical_g_integral") > 0.0);

  prm.p = 1.5;  // singular branch carries the second shape factor
  rep = verify_unified_hardy(prm, real_only(f));
  CHECK(rep.status == Status::InequalityPass);
  CHECK(rep.terms.count("critical_h_integral") == 1);
}

TEST_CASE("unified Hardy: classical-chain consequence at b=p, critical c") {
  // RHS >= ((Q-a)/p)^p int |f|^p rho^{Q-a-1}
  const double Q = 4, p = 2, a = 1;
  auto prm = params(Q, p, a, p, (Q - a) / (p - 1.0));
  const auto f = bump_r();
  const auto rep = verify_unified_hardy(prm, real_only(f));
  CHECK(rep.status == Status::InequalityPass);
  const auto plain = radial_integral(f, Q, a, 0.0, 1.0, 1.0, p, PowMode::AbsPow);
  CHECK(rep.rhs >= std::pow((Q - a) / p, p) * plain.value - 1e-9);
}

TEST_CASE("unified Hardy: inadmissible parameters cite the constraint") {
  auto prm = params(4, 2, 1, 0.5, 1);  // b <= 1
  const auto rep = verify_unified_hardy(prm, real_only(bump_r()));
  CHECK(rep.status == Status::Inadmissible);
  REQUIRE(!rep.diagnostics.empty());
  CHECK(rep.diagnostics[0].find("b>1") != std::string::npos);
}

TEST_CASE("higher-order L2: k=1 equals the flat identity term-for-term") {
  const auto f = real_only(bump_r());
  const auto prm = params(4, 2, 1, 2, 1, 1.0, 1);
  const auto hi = verify_high_l2(prm, f);
  const auto flat = verify_l2_identity(prm, f);
  REQUIRE(hi.status == Status::IdentityPass);
  CHECK(hi.term("lhs_main") == flat.term("lhs_main"));
  CHECK(hi.term("rhs_derivative") == flat.term("rhs_derivative"));
  CHECK(hi.term("remainder_quadratic_1") == flat.term("remainder_quadratic"));
  CHECK(hi.term("remainder_coefficient_1") == flat.term("remainder_coefficient"));
}

TEST_CASE("higher-order identities at k=2") {
  const auto f3 = RadialExpr::bump(0.2, 0.8) * RadialExpr::power(3.0);
  auto prm = params(8, 2, 1, 2, 0.5, 1.0, 2);
  const auto l2 = verify_high_l2(prm, real_only(f3));
  CHECK(l2.status == Status::IdentityPass);
  CHECK(l2.residual_rel <= 1e-6);

  auto prm3 = params(9, 3, 1, 2, 0.5, 1.0, 2);
  const auto lp = verify_high_lp(prm3, f3);
  CHECK(lp.status == Status::IdentityPass);
  CHECK(lp.residual_rel <= 1e-6);

  // dropped-remainder inequality: slack equals the remainder sum
  double remainder_sum = 0.0;
  for (const auto& [name, tv] : lp.terms)
    if (name.rfind("remainder_", 0) == 0) remainder_sum += tv.value;
  CHECK(std::abs(lp.slack - remainder_sum) <= 1e-6 * std::abs(remainder_sum));

  const auto ineq = verify_high_lp_inequality(prm3, real_only(f3));
  CHECK(ineq.status == Status::InequalityPass);
}

TEST_CASE("higher-order L2: the level-2 coefficient vanishes at its critical c") {
  const double Q = 8, a = 1, b = 2;
  const double c = (Q - a - 2) / (b + 1);  // kills Q-a-2-(b+1)c
  auto prm = params(Q, 2, a, b, c, 1.0, 2);
  const auto rep = verify_high_l2(prm, real_only(RadialExpr::bump(0.2, 0.8) * RadialExpr::power(3.0)));
  CHECK(rep.status == Status::IdentityPass);
  CHECK(rep.term("remainder_coefficient_2") == 0.0);
}

TEST_CASE("resolve_ckn_params") {
  HardyParams base = params(4, 3, 1, 2, 1);
  // p=3, q=2, r=2.4 -> delta = 1/2, window [1/6, 1.25]
  const auto ckn = resolve_ckn_params(base, 2.0, 2.4, 0.0);
  CHECK(ckn.delta == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ckn.gamma == doctest::Approx(-0.5).epsilon(1e-12));

  // degenerate p=q needs an explicit pick
  HardyParams b2 = params(4, 2, 1, 2, 1);
  CHECK_THROWS_AS(resolve_ckn_params(b2, 2.0, 2.0, 0.0), error);
  const auto picked = resolve_ckn_params(b2, 2.0, 2.0, 0.0, 0.5);
  CHECK(picked.delta == 0.5);
  CHECK(picked.gamma == -0.5);

  // delta = 1 forces r = p
  CHECK_THROWS_AS(resolve_ckn_params(params(4, 3, 1, 2, 1), 2.0, 2.4, 0.0, 1.0), error);
}

TEST_CASE("CKN: delta=0 trivial equality, delta=1/2 passes, delta=1 equals high-lp") {
  const auto f = bump_r();
  HardyParams base = params(4, 2, 1, 2, 1);

  // delta = 0: q = r, gamma = beta; equality with slack 0
  auto c0 = resolve_ckn_params(base, 2.0, 2.0, 0.25, 0.0);
  auto rep0 = verify_ckn(c0, real_only(f));
  CHECK(rep0.status == Status::InequalityPass);
  CHECK(std::abs(rep0.slack) <= 1e-9 * std::abs(rep0.rhs));

  // delta = 1/2 at p=q=r=2
  auto ch = resolve_ckn_params(base, 2.0, 2.0, 0.0, 0.5);
  auto reph = verify_ckn(ch, real_only(f));
  CHECK(reph.status == Status::InequalityPass);
  CHECK(reph.slack >= -1e-12);

  // delta = 1 (r=p, gamma=-1): the identity makes it an equality
  auto c1 = resolve_ckn_params(base, 2.0, 2.0, 0.0, 1.0);
  CHECK(c1.gamma == doctest::Approx(-1.0));
  auto rep1 = verify_ckn(c1, real_only(f));
  CHECK(rep1.status == Status::InequalityPass);
  CHECK(std::abs(rep1.slack) <= 1e-7 * std::abs(rep1.rhs));
}

TEST_CASE("CKN Hoelder step holds on a small corpus") {
  for (double beta : {-0.5, 0.0, 0.7}) {
    auto ckn = resolve_ckn_params(params(5, 3, 1, 2, 0.8), 2.0, 2.4, beta);
    auto rep = verify_ckn(ckn, real_only(bump_r()));
    CHECK(rep.status == Status::InequalityPass);
    bool hoelder_ok = false;
    for (const auto& d : rep.diagnostics)
      if (d.find("hoelder_slack=") != std::string::npos && d.find("-") == std::string::npos)
        hoelder_ok = true;
    // explicit check from the stored terms
    CHECK(rep.term("hoelder_lhs") <= rep.term("hoelder_rhs") + 1e-10);
    (void)hoelder_ok;
  }
}

TEST_CASE("hardy_b: inequality (7), identities (3.2)/(3.3)") {
  const auto f = bump_r();
  auto prm = params(4, 2, 1, 2, 1);

  auto i7 = verify_hardy_b(prm, real_only(f), HardyBMode::ineq7);
  CHECK(i7.status == Status::InequalityPass);
  CHECK(i7.slack > 0.0);

  // b=1 reduces to the weighted Hardy inequality
  auto b1 = params(4, 2, 1, 1, 1);
  auto i7b1 = verify_hardy_b(b1, real_only(f), HardyBMode::ineq7);
  CHECK(i7b1.status == Status::InequalityPass);

  auto i32 = verify_hardy_b(prm, real_only(f), HardyBMode::identity32);
  CHECK(i32.status == Status::IdentityPass);
  CHECK(i32.residual_rel <= 1e-8);

  auto i33 = verify_hardy_b(prm, real_only(f), HardyBMode::identity33);
  CHECK(i33.status == Status::IdentityPass);
  CHECK(std::abs(i32.residual_abs - i33.residual_abs) <= 1e-9);

  auto i32p3 = verify_hardy_b(params(4, 3, 1, 2, 1), real_only(f), HardyBMode::identity32);
  CHECK(i32p3.status == Status::IdentityPass);
  CHECK(i32p3.residual_rel <= 1e-7);
}

TEST_CASE("hardy_c: inequality ineq8, identities, alternative-weight diagnostics") {
  const auto f = bump_r();
  auto prm = params(4, 2, 1, 2, 1);

  auto i8 = verify_hardy_c(prm, real_only(f), HardyCMode::ineq8);
  CHECK(i8.status == Status::InequalityPass);

  auto i328 = verify_hardy_c(params(4, 3, 1, 2, 1), real_only(f), HardyCMode::identity32_8);
  CHECK(i328.status == Status::IdentityPass);
  CHECK(i328.residual_rel <= 1e-7);
  bool flagged = false;
  for (const auto& d : i328.diagnostics)
    if (d.find("alternative display weights") != std::string::npos) flagged = true;
  CHECK(flagged);
  CHECK(i328.terms.count("alt_weight_first_term") == 1);

  auto i338 = verify_hardy_c(prm, real_only(f), HardyCMode::identity33_8);
  CHECK(i338.status == Status::IdentityPass);

  auto zero = verify_hardy_c(prm, real_only(RadialExpr::constant(0.0) * bump_r()),
                             HardyCMode::identity32_8);
  CHECK(zero.status == Status::IdentityPass);
  CHECK(zero.residual_abs == 0.0);
}

TEST_CASE("hardy_c at R=a=c=1 matches the geometric Hardy form") {
  // weights collapse: |x|^{a-c} = 1 and |x|^{a-c+(c-1)p} = 1
  const auto f = bump_r();
  auto prm = params(3, 2, 1, 2, 1);
  auto i8 = verify_hardy_c(prm, real_only(f), HardyCMode::ineq8);
  REQUIRE(i8.status == Status::InequalityPass);
  // lhs = ((b-1)/p)^p int |f|^p (1-rho)^{-b} rho^{n-1}, the geometric LHS at R=1
  const auto geo = radial_integral(f, 3.0, 0.0, 2.0, 1.0, 1.0, 2.0, PowMode::AbsPow);
  CHECK(i8.lhs == doctest::Approx(0.25 * geo.value).epsilon(1e-9));
}

TEST_CASE("integration-by-parts identity (21)") {
  const auto f = bump_r();
  for (double p : {1.5, 2.0, 3.0}) {
    auto rep = verify_ibp_identity(params(4, p, 1, 2, 1), f);
    CAPTURE(p);
    CHECK(rep.status == Status::IdentityPass);
    CHECK(rep.residual_rel <= (p < 2 ? 1e-7 : 1e-8));
  }
  auto zero = verify_ibp_identity(params(4, 2, 1, 2, 1), RadialExpr::constant(0.0) * bump_r());
  CHECK(zero.status == Status::IdentityPass);
}

TEST_CASE("Rellich L2: expansion identity and the exact-zero case a=3") {
  const auto f = real_only(RadialExpr::bump(0.2, 0.8) * RadialExpr::power(2.0));
  auto rep = verify_rellich_l2(params(5, 2, 2, 2, 1), f, RellichL2Which::expansion);
  CHECK(rep.status == Status::IdentityPass);
  CHECK(rep.residual_rel <= 1e-8);

  auto rep3 = verify_rellich_l2(params(5, 2, 3, 2, 1), f, RellichL2Which::expansion);
  CHECK(rep3.status == Status::IdentityPass);
  CHECK(rep3.term("first_derivative") == 0.0);
}

TEST_CASE("Rellich L2 inequalities (24) and (25)") {
  const auto f = real_only(RadialExpr::bump(0.2, 0.8) * RadialExpr::power(2.0));
  auto r24 = verify_rellich_l2(params(5, 2, 4, 2, 1), f, RellichL2Which::ineq24);
  CHECK(r24.status == Status::InequalityPass);
  auto r25 = verify_rellich_l2(params(8, 2, 4, 2, 1), f, RellichL2Which::ineq25);
  CHECK(r25.status == Status::InequalityPass);
  // constraint violations surface as Inadmissible
  auto bad = verify_rellich_l2(params(5, 2, 5, 2, 1), f, RellichL2Which::ineq24);
  CHECK(bad.status == Status::Inadmissible);
}

TEST_CASE("radial lower bound (38)") {
  const auto f = real_only(RadialExpr::bump(0.2, 0.8) * RadialExpr::power(2.0));
  for (double p : {1.5, 2.0, 3.0}) {
    auto rep = verify_radial_lower_bound(params(5, p, 2, 2, 1), f);
    CAPTURE(p);
    CHECK(rep.status == Status::InequalityPass);
  }
  // radial-harmonic core: still an inequality, checked against the budget
  const double Q = 5.0;
  const auto fh = real_only(RadialExpr::power(2.0 - Q) * RadialExpr::bump(0.2, 0.8));
  auto reph = verify_radial_lower_bound(params(Q, 2, 2, 2, 1), fh);
  CHECK(reph.status == Status::InequalityPass);
  // coefficient-zero case a = p - Q(p-1)
  auto rep0 = verify_radial_lower_bound(params(Q, 2, 2.0 - Q, 2, 1), f);
  CHECK(rep0.status == Status::InequalityPass);
  CHECK(rep0.lhs == 0.0);
}

TEST_CASE("Rellich Lp (35) and its p=2 cross-check against (24) machinery") {
  const auto f = real_only(RadialExpr::bump(0.2, 0.8) * RadialExpr::power(2.0));
  auto r35 = verify_rellich_lp(params(9, 3, 2, 3, 1), f);
  CHECK(r35.status == Status::InequalityPass);

  auto r35p2 = verify_rellich_lp(params(5, 2, 4, 2, 1), f);
  auto r24 = verify_rellich_l2(params(5, 2, 4, 2, 1), f, RellichL2Which::ineq24);
  REQUIRE(r35p2.status == Status::InequalityPass);
  // shared integrals agree: same main constant and operator integral at p=2
  CHECK(std::abs(r35p2.term("lhs_main") - r24.term("lhs_main")) <=
        1e-9 * std::abs(r24.term("lhs_main")));
  CHECK(std::abs(r35p2.term("rhs_operator") - r24.term("rhs_operator")) <=
        1e-9 * std::abs(r24.term("rhs_operator")));

  auto zero = verify_rellich_lp(params(9, 3, 2, 3, 1),
                                real_only(RadialExpr::constant(0.0) * bump_r()));
  CHECK(zero.status == Status::InequalityPass);
}

TEST_CASE("log limits: direct inequality and c->0 convergence") {
  const auto f = real_only(bump_r());
  const double grid[] = {0.2, 0.1, 0.05, 0.02, 0.01};
  auto rep = verify_log_limits(params(4, 2, 1, 2, 1), f, grid);
  CHECK(rep.status == Status::InequalityPass);
  CHECK(rep.term("final_gap") <= 0.01);

  auto zero = verify_log_limits(params(4, 2, 1, 2, 1),
                                real_only(RadialExpr::constant(0.0) * bump_r()), grid);
  CHECK(zero.passed());
}

TEST_CASE("Euclidean chains at n=3 and n=5") {
  const auto f = RadialExpr::bump(0.2, 0.8) * RadialExpr::power(2.0);
  auto n3 = verify_chains(GroupModel::euclidean(3), f);
  CHECK(n3.status == Status::InequalityPass);
  auto n5 = verify_chains(GroupModel::euclidean(5), f);
  CHECK(n5.status == Status::InequalityPass);
  CHECK(n5.terms.count("rellich_link2_lhs") == 1);
  auto kor = verify_chains(GroupModel::koranyi(), f);
  CHECK(kor.status == Status::Inadmissible);
}

TEST_CASE("fundamental inequality suite") {
  auto p2 = fundamental_inequality_suite(2.0, 20000, 7);
  CHECK(p2.status == Status::InequalityPass);
  // the ratio is identically 1 in exact arithmetic; small-|beta| samples see
  // the cancellation noise of (a-b)^2 - a^2 + 2ab
  CHECK(p2.term("empirical_inf") == doctest::Approx(1.0).epsilon(1e-5));

  for (double p : {1.5, 3.0}) {
    auto rep = fundamental_inequality_suite(p, 20000, 11);
    CAPTURE(p);
    CHECK(rep.status == Status::InequalityPass);
    CHECK(rep.term("empirical_inf") > 0.0);
  }
}

TEST_CASE("scale covariance: rescaled f and R leave residuals unchanged") {
  const auto f1 = bump_r();
  const auto rep1 = verify_l2_identity(params(4, 2, 1, 2, 1, 1.0), real_only(f1));

  // f2(r) = f1(r/2) on the ball of radius 2
  const auto f2 = RadialExpr::bump(0.4, 1.6) * RadialExpr::power(1.0) * RadialExpr::constant(0.5);
  const auto rep2 = verify_l2_identity(params(4, 2, 1, 2, 1, 2.0), real_only(f2));

  REQUIRE(rep1.status == Status::IdentityPass);
  REQUIRE(rep2.status == Status::IdentityPass);
  CHECK(std::abs(rep1.residual_rel - rep2.residual_rel) <= 1e-9);

  const auto hardy1 = verify_unified_hardy(params(4, 2, 1, 2, 1, 1.0), real_only(f1));
  const auto hardy2 = verify_unified_hardy(params(4, 2, 1, 2, 1, 2.0), real_only(f2));
  const double rel1 = hardy1.slack / hardy1.rhs;
  const double rel2 = hardy2.slack / hardy2.rhs;
  CHECK(std::abs(rel1 - rel2) <= 1e-9);
}

TEST_CASE("identity residuals stay within the error budget") {
  const auto f = bump_r();
  const auto rep = verify_l2_identity(params(4, 2, 1, 2, 1), real_only(f));
  CHECK(rep.residual_abs <= rep.error_budget());
}

TEST_CASE("complex-valued inequality forms") {
  ComplexRadial f{bump_r(), RadialExpr::bump(0.25, 0.75) * RadialExpr::power(2.0)};
  auto i7 = verify_hardy_b(params(4, 3, 1, 2, 1), f, HardyBMode::ineq7);
  CHECK(i7.status == Status::InequalityPass);
  auto i8 = verify_hardy_c(params(4, 3, 1, 2, 1), f, HardyCMode::ineq8);
  CHECK(i8.status == Status::InequalityPass);
  auto i33 = verify_hardy_b(params(4, 2, 1, 2, 1), f, HardyBMode::identity33);
  CHECK(i33.status == Status::IdentityPass);
  auto i338 = verify_hardy_c(params(4, 2, 1, 2, 1), f, HardyCMode::identity33_8);
  CHECK(i338.status == Status::IdentityPass);
  auto hardy = verify_unified_hardy(params(4, 3, 1, 2, 1), f);
  CHECK(hardy.status == Status::InequalityPass);
  auto exp2 = verify_rellich_l2(params(5, 2, 2, 2, 1), f, RellichL2Which::expansion);
  CHECK(exp2.status == Status::IdentityPass);
  auto hineq = verify_high_lp_inequality(params(8, 3, 1, 2, 0.5, 1.0, 2), f);
  CHECK(hineq.status == Status::InequalityPass);
  // real identities reject complex input
  auto bad = verify_hardy_b(params(4, 3, 1, 2, 1), f, HardyBMode::identity32);
  CHECK(bad.status == Status::Inadmissible);
}

TEST_CASE("iterated identities at k=3") {
  const auto f4 = RadialExpr::bump(0.2, 0.8) * RadialExpr::power(4.0);
  auto prm = params(10, 2, 1, 2, 0.5, 1.0, 3);
  const auto l2 = verify_high_l2(prm, real_only(f4));
  CHECK(l2.status == Status::IdentityPass);
  CHECK(l2.residual_rel <= 1e-6);
  CHECK(l2.terms.count("remainder_quadratic_3") == 1);

  auto prm3 = params(12, 3, 1, 2, 0.5, 1.0, 3);
  const auto lp = verify_high_lp(prm3, f4);
  CHECK(lp.status == Status::IdentityPass);
  CHECK(lp.residual_rel <= 1e-6);
}
