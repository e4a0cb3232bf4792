#pragma once

#include <map>
#include <string>
#include <vector>

namespace unihardy {

enum class Status { IdentityPass, InequalityPass, Fail, Inadmissible };

const char* status_name(Status s);

struct TermValue {
  double value = 0.0;
  double err = 0.0;
};

struct VerificationReport {
  std::string theorem_id;
  std::map<std::string, double> params;   // flat snapshot, key-sorted
  std::map<std::string, TermValue> terms; // named integrals, key-sorted
  double lhs = 0.0;
  double rhs = 0.0;
  double residual_abs = 0.0;
  double residual_rel = 0.0;
  double slack = 0.0;
  Status status = Status::Fail;
  std::vector<std::string> diagnostics;

  bool passed() const { return status == Status::IdentityPass || status == Status::InequalityPass; }
  double term(const std::string& name) const;
  double error_budget(double safety = 10.0) const;  // safety * sum of term err estimates
};

// Field order is fixed; the timestamp (when included) is always the last key so
// determinism checks can strip it.
std::string report_to_json(const VerificationReport& rep, bool include_timestamp = true);

std::string report_csv_header(const VerificationReport& rep);
std::string report_csv_row(const VerificationReport& rep);

}  // namespace unihardy
