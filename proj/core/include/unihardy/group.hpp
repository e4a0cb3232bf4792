#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace unihardy {

enum class NormKind {
  Euclidean,         // sqrt(sum x_i^2); requires all dilation weights = 1
  AnisotropicPower,  // (sum |x_i|^(2N/nu_i))^(1/2N)
  Koranyi,           // ((x1^2+x2^2)^2 + x3^2)^(1/4); n=3, weights (1,1,2)
};

// A homogeneous Lie group reduced to what the radial theory needs: the
// dilation weights nu_i (hence Q = sum nu_i) and a concrete quasi-norm.
struct GroupModel {
  int n = 0;
  std::vector<double> weights;
  NormKind norm_kind = NormKind::Euclidean;
  int power = 0;  // 2N for AnisotropicPower, unused otherwise

  double Q() const;

  static GroupModel euclidean(int n);
  static GroupModel anisotropic(std::vector<double> weights, int two_n);
  static GroupModel koranyi();
};

// Coordinate-free stand-in: every theorem verifier runs off Q alone.
struct AbstractRadialModel {
  double Q = 0.0;
};

double homogeneous_dimension(std::span<const double> weights);

std::vector<double> dilate(const GroupModel& model, double lambda, std::span<const double> x);

double quasi_norm(const GroupModel& model, std::span<const double> x);

struct McEstimate {
  double estimate = 0.0;
  double stderr_est = 0.0;
  std::int64_t samples = 0;
};

// Unbiased rejection-sampling estimate of \int_{B(0,R)} |x|^s dx from the
// covering box prod_i [-R^{nu_i}, R^{nu_i}]. Deterministic per seed.
McEstimate mc_ball_moment(const GroupModel& model, double s, double R,
                          std::int64_t samples, std::uint64_t seed);

struct McConfig {
  std::int64_t samples = 200000;
  std::uint64_t seed = 1;
};

// |℘| (unit quasi-sphere measure): closed form 2 pi^{n/2}/Gamma(n/2) for the
// Euclidean norm, otherwise fitted from (Q+s) * mc_ball_moment(s,R) / R^{Q+s}
// averaged over (s,R) in {(0,1),(1,2)}.
double sphere_measure(const GroupModel& model, const McConfig& cfg = {});

}  // namespace unihardy
