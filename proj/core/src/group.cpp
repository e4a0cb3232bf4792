#include "unihardy/group.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "unihardy/errors.hpp"

namespace unihardy {

double homogeneous_dimension(std::span<const double> weights) {
  if (weights.empty()) throw error(errc::empty_weights, "dilation weight list is empty");
  double q = 0.0;
  for (double nu : weights) {
    if (!(nu >= 1.0)) throw error(errc::weight_below_one, "dilation weight " + std::to_string(nu) + " < 1");
    q += nu;
  }
  return q;
}

double GroupModel::Q() const { return homogeneous_dimension(weights); }

GroupModel GroupModel::euclidean(int n) {
  if (n < 1) throw error(errc::bad_parameter, "euclidean model needs n >= 1");
  GroupModel m;
  m.n = n;
  m.weights.assign(static_cast<size_t>(n), 1.0);
  m.norm_kind = NormKind::Euclidean;
  return m;
}

GroupModel GroupModel::anisotropic(std::vector<double> weights, int two_n) {
  GroupModel m;
  m.n = static_cast<int>(weights.size());
  m.weights = std::move(weights);
  homogeneous_dimension(m.weights);  // validates
  if (two_n < 2 || two_n % 2 != 0)
    throw error(errc::bad_parameter, "anisotropic power norm needs a positive even exponent 2N");
  for (double nu : m.weights) {
    double ratio = two_n / nu;
    if (std::abs(ratio - std::round(ratio)) > 1e-12)
      throw error(errc::incompatible_norm_kind, "2N must be divisible by every dilation weight");
  }
  m.norm_kind = NormKind::AnisotropicPower;
  m.power = two_n;
  return m;
}

GroupModel GroupModel::koranyi() {
  GroupModel m;
  m.n = 3;
  m.weights = {1.0, 1.0, 2.0};
  m.norm_kind = NormKind::Koranyi;
  return m;
}

std::vector<double> dilate(const GroupModel& model, double lambda, std::span<const double> x) {
  if (!(lambda > 0.0)) throw error(errc::nonpositive_lambda, "dilation parameter must be positive");
  if (static_cast<int>(x.size()) != model.n)
    throw error(errc::dimension_mismatch, "point dimension does not match model");
  std::vector<double> y(x.size());
  for (size_t i = 0; i < x.size(); ++i) y[i] = std::pow(lambda, model.weights[i]) * x[i];
  return y;
}

double quasi_norm(const GroupModel& model, std::span<const double> x) {
  if (static_cast<int>(x.size()) != model.n)
    throw error(errc::dimension_mismatch, "point dimension does not match model");
  switch (model.norm_kind) {
    case NormKind::Euclidean: {
      for (double nu : model.weights)
        if (nu != 1.0)
          throw error(errc::incompatible_norm_kind, "Euclidean norm requires unit dilation weights");
      double s = 0.0;
      for (double xi : x) s += xi * xi;
      return std::sqrt(s);
    }
    case NormKind::AnisotropicPower: {
      double s = 0.0;
      for (size_t i = 0; i < x.size(); ++i)
        s += std::pow(std::abs(x[i]), model.power / model.weights[i]);
      return std::pow(s, 1.0 / model.power);
    }
    case NormKind::Koranyi: {
      const double horiz = x[0] * x[0] + x[1] * x[1];
      return std::pow(horiz * horiz + x[2] * x[2], 0.25);
    }
  }
  throw error(errc::incompatible_norm_kind, "unknown norm kind");
}

McEstimate mc_ball_moment(const GroupModel& model, double s, double R,
                          std::int64_t samples, std::uint64_t seed) {
  const double Q = model.Q();
  if (!(s > -Q)) throw error(errc::divergent_moment, "moment exponent s <= -Q diverges at the origin");
  if (!(R > 0.0)) throw error(errc::bad_parameter, "ball radius must be positive");
  if (samples < 10000) throw error(errc::bad_parameter, "mc_ball_moment needs at least 1e4 samples");

  // Box prod [-R^nu_i, R^nu_i] covers B(0,R): |x_i| <= 1 on the unit
  // quasi-sphere for all three norm kinds.
  double box_volume = 1.0;
  std::vector<double> half(model.weights.size());
  for (size_t i = 0; i < half.size(); ++i) {
    half[i] = std::pow(R, model.weights[i]);
    box_volume *= 2.0 * half[i];
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> x(half.size());
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t it = 0; it < samples; ++it) {
    for (size_t i = 0; i < x.size(); ++i) x[i] = half[i] * unit(rng);
    const double norm = quasi_norm(model, x);
    double v = 0.0;
    if (norm < R && norm > 0.0) v = std::pow(norm, s);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / static_cast<double>(samples);
  const double var = (sum_sq / static_cast<double>(samples) - mean * mean) /
                     static_cast<double>(samples - 1);
  McEstimate out;
  out.estimate = box_volume * mean;
  out.stderr_est = box_volume * std::sqrt(std::max(var, 0.0));
  out.samples = samples;
  return out;
}

double sphere_measure(const GroupModel& model, const McConfig& cfg) {
  if (model.norm_kind == NormKind::Euclidean) {
    const double n = model.n;
    return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
  }
  const double Q = model.Q();
  const double pairs[2][2] = {{0.0, 1.0}, {1.0, 2.0}};
  double acc = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double s = pairs[i][0], R = pairs[i][1];
    const McEstimate est = mc_ball_moment(model, s, R, cfg.samples, cfg.seed + static_cast<std::uint64_t>(i));
    acc += (Q + s) * est.estimate / std::pow(R, Q + s);
  }
  return acc / 2.0;
}

}  // namespace unihardy
