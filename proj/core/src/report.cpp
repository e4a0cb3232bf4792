#include "unihardy/report.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace unihardy {

namespace {
std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::IdentityPass: return "IdentityPass";
    case Status::InequalityPass: return "InequalityPass";
    case Status::Fail: return "Fail";
    case Status::Inadmissible: return "Inadmissible";
  }
  return "Unknown";
}

double VerificationReport::term(const std::string& name) const {
  auto it = terms.find(name);
  return it == terms.end() ? 0.0 : it->second.value;
}

double VerificationReport::error_budget(double safety) const {
  double s = 0.0;
  for (const auto& [name, tv] : terms) s += tv.err;
  return safety * s;
}

std::string report_to_json(const VerificationReport& rep, bool include_timestamp) {
  nlohmann::ordered_json j;
  j["theorem_id"] = rep.theorem_id;
  nlohmann::ordered_json prm;
  for (const auto& [k, v] : rep.params) prm[k] = v;
  j["params"] = std::move(prm);
  nlohmann::ordered_json terms;
  for (const auto& [k, tv] : rep.terms) terms[k] = {{"value", tv.value}, {"err", tv.err}};
  j["terms"] = std::move(terms);
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["residual_abs"] = rep.residual_abs;
  j["residual_rel"] = rep.residual_rel;
  j["slack"] = rep.slack;
  j["status"] = status_name(rep.status);
  j["diagnostics"] = rep.diagnostics;
  if (include_timestamp) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    j["timestamp"] = buf;
  }
  return j.dump(2);
}

std::string report_csv_header(const VerificationReport& rep) {
  std::ostringstream os;
  os << "theorem_id,status,lhs,rhs,residual_abs,residual_rel,slack";
  for (const auto& [k, v] : rep.params) os << ",param_" << k;
  for (const auto& [k, tv] : rep.terms) os << ",term_" << k << ",term_" << k << "_err";
  return os.str();
}

std::string report_csv_row(const VerificationReport& rep) {
  std::ostringstream os;
  os << rep.theorem_id << "," << status_name(rep.status) << "," << fmt_double(rep.lhs) << ","
     << fmt_double(rep.rhs) << "," << fmt_double(rep.residual_abs) << ","
     << fmt_double(rep.residual_rel) << "," << fmt_double(rep.slack);
  for (const auto& [k, v] : rep.params) os << "," << fmt_double(v);
  for (const auto& [k, tv] : rep.terms) os << "," << fmt_double(tv.value) << "," << fmt_double(tv.err);
  return os.str();
}

}  // namespace unihardy
