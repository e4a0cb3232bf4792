#include <benchmark/benchmark.h>

#include <cmath>

#include "unihardy/group.hpp"
#include "unihardy/sharpness.hpp"
#include "unihardy/verifiers.hpp"

using namespace unihardy;

namespace {

HardyParams params(double Q, double p, double a, double b, double c) {
  HardyParams prm;
  prm.Q = Q;
  prm.p = p;
  prm.a = a;
  prm.b = b;
  prm.c = c;
  return prm;
}

const RadialExpr& bump_r() {
  static const RadialExpr f = RadialExpr::bump(0.2, 0.8) * RadialExpr::power(1.0);
  return f;
}

void BM_TanhSinhBeta(benchmark::State& state) {
  auto f = [](const QuadPoint& q) { return std::pow(q.d_lo, -0.5) * std::pow(q.d_hi, 1.5); };
  for (auto _ : state) {
    auto r = tanh_sinh(f, 0.0, 1.0);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_TanhSinhBeta);

void BM_RadialIntegral(benchmark::State& state) {
  for (auto _ : state) {
    auto r = radial_integral(bump_r(), 4.0, 1.0, 2.0, 1.0, 1.0, 2.0, PowMode::AbsPow);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_RadialIntegral);

void BM_IpValue(benchmark::State& state) {
  const double p = state.range(0) / 10.0;
  double x = 0.1;
  for (auto _ : state) {
    x = std::fmod(x + 0.37, 3.0) - 1.5;
    benchmark::DoNotOptimize(ip_value(1.3, x, p));
  }
}
BENCHMARK(BM_IpValue)->Arg(15)->Arg(30);

void BM_JetEval(benchmark::State& state) {
  const auto f = bump_r() * RadialExpr::boundary_power(1.0, 1.5, 1.0);
  double r = 0.3;
  for (auto _ : state) {
    r = 0.25 + std::fmod(r, 0.5);
    benchmark::DoNotOptimize(f.eval_jet(r, 2).derivative(2));
  }
}
BENCHMARK(BM_JetEval);

void BM_VerifyL2Identity(benchmark::State& state) {
  const ComplexRadial f{bump_r(), std::nullopt};
  for (auto _ : state) {
    auto rep = verify_l2_identity(params(4, 2, 1, 2, 1), f);
    benchmark::DoNotOptimize(rep.residual_rel);
  }
}
BENCHMARK(BM_VerifyL2Identity);

void BM_VerifyLpIdentity(benchmark::State& state) {
  const double p = state.range(0) / 10.0;
  for (auto _ : state) {
    auto rep = verify_lp_identity(params(4, p, 1, 2, 1), bump_r());
    benchmark::DoNotOptimize(rep.residual_rel);
  }
}
BENCHMARK(BM_VerifyLpIdentity)->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_McBallMoment(benchmark::State& state) {
  const auto kor = GroupModel::koranyi();
  for (auto _ : state) {
    auto est = mc_ball_moment(kor, 1.0, 1.0, 100000, 42);
    benchmark::DoNotOptimize(est.estimate);
  }
}
BENCHMARK(BM_McBallMoment)->Unit(benchmark::kMillisecond);

void BM_BoundaryScanRow(benchmark::State& state) {
  const auto prm = params(4, 2, 1, 2, 1);
  const auto u = make_boundary_family(0.51, 0.001, 1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rayleigh(prm, u, RayleighKind::UnifiedHardy));
  }
}
BENCHMARK(BM_BoundaryScanRow)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
