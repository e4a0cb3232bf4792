#pragma once

#include <stdexcept>
#include <string>

namespace unihardy {

enum class errc {
  empty_weights,
  weight_below_one,
  nonpositive_lambda,
  incompatible_norm_kind,
  dimension_mismatch,
  divergent_moment,
  eval_outside_domain,
  pole_hit,
  bad_delta,
  bad_parameter,
  non_finite_sample,
  max_depth_exceeded,
  undefined_at_origin,
  inadmissible,
  zero_denominator,
  no_admissible_delta,
  window_violation,
  constraint_violation,
  parse_error,
  config_error,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::empty_weights: return "EmptyWeights";
    case errc::weight_below_one: return "WeightBelowOne";
    case errc::nonpositive_lambda: return "NonpositiveLambda";
    case errc::incompatible_norm_kind: return "IncompatibleNormKind";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::divergent_moment: return "DivergentMoment";
    case errc::eval_outside_domain: return "EvalOutsideDomain";
    case errc::pole_hit: return "PoleHit";
    case errc::bad_delta: return "BadDelta";
    case errc::bad_parameter: return "BadParameter";
    case errc::non_finite_sample: return "NonFiniteSample";
    case errc::max_depth_exceeded: return "MaxDepthExceeded";
    case errc::undefined_at_origin: return "UndefinedAtOrigin";
    case errc::inadmissible: return "Inadmissible";
    case errc::zero_denominator: return "ZeroDenominator";
    case errc::no_admissible_delta: return "NoAdmissibleDelta";
    case errc::window_violation: return "WindowViolation";
    case errc::constraint_violation: return "ConstraintViolation";
    case errc::parse_error: return "ParseError";
    case errc::config_error: return "ConfigError";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

// Library-wide exception. Carries a machine-checkable code plus a human message.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace unihardy
