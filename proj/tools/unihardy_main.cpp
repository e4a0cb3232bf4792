// Batch front end: runs verification suites, parameter sweeps, sharpness
// scans and Monte-Carlo checks from a JSON config, writing machine-readable
// reports (JSON/CSV/gnuplot .dat) atomically into an output directory.
//
// Exit codes: 0 all jobs pass, 1 any job fails its check, 2 config or
// admissibility errors.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "unihardy/errors.hpp"
#include "unihardy/expr_parse.hpp"
#include "unihardy/group.hpp"
#include "unihardy/sharpness.hpp"
#include "unihardy/verifiers.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace unihardy;

namespace {

struct GlobalOpts {
  int jobs = 1;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  double tol_scale = 1.0;
};

struct JobResult {
  std::string summary;
  bool pass = false;
  bool config_error = false;
};

[[noreturn]] void config_fail(const std::string& msg) {
  throw error(errc::config_error, msg);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      config_fail("unknown key '" + it.key() + "' in " + where);
}

void atomic_write(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw error(errc::io_error, "cannot open " + tmp.string());
    os << content;
  }
  fs::rename(tmp, path);
}

double jget(const json& j, const std::string& key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

GroupModel parse_group(const json& g) {
  reject_unknown_keys(g, {"kind", "n", "weights", "power"}, "model.group");
  const std::string kind = g.at("kind").get<std::string>();
  if (kind == "euclidean") return GroupModel::euclidean(g.at("n").get<int>());
  if (kind == "koranyi") return GroupModel::koranyi();
  if (kind == "anisotropic")
    return GroupModel::anisotropic(g.at("weights").get<std::vector<double>>(),
                                   g.at("power").get<int>());
  config_fail("unknown group kind '" + kind + "'");
}

// model -> homogeneous dimension (+ optional concrete group)
std::pair<double, std::optional<GroupModel>> parse_model(const json& job) {
  if (!job.contains("model")) config_fail("job needs a 'model'");
  const json& m = job.at("model");
  reject_unknown_keys(m, {"abstract", "group"}, "model");
  if (m.contains("abstract")) {
    reject_unknown_keys(m.at("abstract"), {"Q"}, "model.abstract");
    const double Q = m.at("abstract").at("Q").get<double>();
    if (!(Q > 1.0)) config_fail("abstract model needs Q > 1");
    return {Q, std::nullopt};
  }
  if (m.contains("group")) {
    GroupModel g = parse_group(m.at("group"));
    return {g.Q(), std::move(g)};
  }
  config_fail("model must be 'abstract' or 'group'");
}

HardyParams parse_params(const json& job, double Q) {
  HardyParams prm;
  prm.Q = Q;
  if (job.contains("params")) {
    const json& p = job.at("params");
    reject_unknown_keys(p, {"p", "a", "b", "c", "R", "k", "q", "r", "delta", "beta"}, "params");
    prm.p = jget(p, "p", 2.0);
    prm.a = jget(p, "a", 1.0);
    prm.b = jget(p, "b", 2.0);
    prm.c = jget(p, "c", 1.0);
    prm.R = jget(p, "R", 1.0);
    prm.k = static_cast<int>(jget(p, "k", 1.0));
  }
  return prm;
}

ComplexRadial parse_function(const json& job) {
  if (!job.contains("function")) config_fail("job needs a 'function' expression");
  ComplexRadial f{parse_radial_expr(job.at("function").get<std::string>()), std::nullopt};
  if (job.contains("function_imag"))
    f.im = parse_radial_expr(job.at("function_imag").get<std::string>());
  return f;
}

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {
      "unified_hardy",     "l2_identity",        "lp_identity",
      "high_l2",           "high_lp",            "high_lp_inequality",
      "ckn",               "hardy_b_ineq7",      "hardy_b_identity32",
      "hardy_b_identity33", "hardy_c_ineq8",     "hardy_c_identity32_8",
      "hardy_c_identity33_8", "ibp_identity",    "rellich_l2_ineq24",
      "rellich_l2_ineq25", "rellich_l2_expansion", "radial_lower_bound",
      "rellich_lp",        "log_limits",         "chains",
      "fundamental"};
  return ids;
}

std::vector<std::string> validate_theorem_params(const std::string& id, const HardyParams& prm) {
  std::vector<std::string> out;
  const bool needs_p2 = id == "l2_identity" || id == "high_l2" || id == "hardy_b_identity33" ||
                        id == "hardy_c_identity33_8" || id.rfind("rellich_l2_", 0) == 0;
  if (needs_p2 && prm.p != 2.0) out.push_back("p=2");
  auto merge = [&out](std::vector<std::string> v) {
    out.insert(out.end(), v.begin(), v.end());
    return out;
  };
  if (id == "unified_hardy" || id == "l2_identity" || id == "lp_identity")
    return merge(check_unified_hardy(prm));
  if (id == "high_l2" || id == "high_lp" || id == "high_lp_inequality" || id == "ckn")
    return merge(check_higher_order(prm));
  if (id.rfind("hardy_b", 0) == 0 || id == "ibp_identity" || id == "log_limits")
    return merge(check_hardy_b(prm));
  if (id.rfind("hardy_c", 0) == 0) return merge(check_hardy_c(prm));
  if (id == "rellich_l2_ineq24") return merge(check_rellich_24(prm));
  if (id == "rellich_l2_ineq25") return merge(check_rellich_25(prm));
  if (id == "rellich_l2_expansion" || id == "radial_lower_bound")
    return merge(check_radial_lower_bound(prm));
  if (id == "rellich_lp") return merge(check_rellich_lp(prm));
  return out;
}

VerificationReport dispatch_verify(const json& job, const GlobalOpts& g) {
  const std::string id = job.at("theorem_id").get<std::string>();
  const auto [Q, group] = parse_model(job);
  const HardyParams prm = parse_params(job, Q);
  VerifyOptions opt;
  opt.tol_scale = g.tol_scale * jget(job, "tol_scale", 1.0);

  if (id == "fundamental") {
    const auto samples = static_cast<std::int64_t>(jget(job, "samples", 100000.0));
    const auto seed = static_cast<std::uint64_t>(jget(job, "seed", g.seed ? double(*g.seed) : 1.0));
    return fundamental_inequality_suite(prm.p, samples, seed, opt);
  }
  if (id == "chains") {
    if (!group || group->norm_kind != NormKind::Euclidean)
      config_fail("'chains' needs a Euclidean group model");
    const ComplexRadial f = parse_function(job);
    return verify_chains(*group, f.re, prm.p, prm.b, opt);
  }

  const ComplexRadial f = parse_function(job);
  if (id == "unified_hardy") return verify_unified_hardy(prm, f, opt);
  if (id == "l2_identity") return verify_l2_identity(prm, f, opt);
  if (id == "lp_identity") {
    if (f.im) config_fail("lp_identity requires a real-valued function");
    return verify_lp_identity(prm, f.re, opt);
  }
  if (id == "high_l2") return verify_high_l2(prm, f, opt);
  if (id == "high_lp") {
    if (f.im) config_fail("high_lp requires a real-valued function");
    return verify_high_lp(prm, f.re, opt);
  }
  if (id == "high_lp_inequality") return verify_high_lp_inequality(prm, f, opt);
  if (id == "ckn") {
    const json& p = job.at("params");
    std::optional<double> pick;
    if (p.contains("delta")) pick = p.at("delta").get<double>();
    const CknParams ckn = resolve_ckn_params(prm, jget(p, "q", 2.0), jget(p, "r", 2.0),
                                             jget(p, "beta", 0.0), pick);
    return verify_ckn(ckn, f, opt);
  }
  if (id == "hardy_b_ineq7") return verify_hardy_b(prm, f, HardyBMode::ineq7, opt);
  if (id == "hardy_b_identity32") return verify_hardy_b(prm, f, HardyBMode::identity32, opt);
  if (id == "hardy_b_identity33") return verify_hardy_b(prm, f, HardyBMode::identity33, opt);
  if (id == "hardy_c_ineq8") return verify_hardy_c(prm, f, HardyCMode::ineq8, opt);
  if (id == "hardy_c_identity32_8") return verify_hardy_c(prm, f, HardyCMode::identity32_8, opt);
  if (id == "hardy_c_identity33_8") return verify_hardy_c(prm, f, HardyCMode::identity33_8, opt);
  if (id == "ibp_identity") {
    if (f.im) config_fail("ibp_identity requires a real-valued function");
    return verify_ibp_identity(prm, f.re, opt);
  }
  if (id == "rellich_l2_ineq24") return verify_rellich_l2(prm, f, RellichL2Which::ineq24, opt);
  if (id == "rellich_l2_ineq25") return verify_rellich_l2(prm, f, RellichL2Which::ineq25, opt);
  if (id == "rellich_l2_expansion")
    return verify_rellich_l2(prm, f, RellichL2Which::expansion, opt);
  if (id == "radial_lower_bound") return verify_radial_lower_bound(prm, f, opt);
  if (id == "rellich_lp") return verify_rellich_lp(prm, f, opt);
  if (id == "log_limits") {
    std::vector<double> grid = {0.2, 0.1, 0.05, 0.02, 0.01};
    if (job.contains("c_grid")) grid = job.at("c_grid").get<std::vector<double>>();
    return verify_log_limits(prm, f, grid, opt);
  }
  config_fail("unknown theorem_id '" + id + "'");
}

std::string gnuplot_from_terms(const VerificationReport& rep) {
  std::ostringstream os;
  os << "# term value err\n";
  int i = 0;
  for (const auto& [name, tv] : rep.terms) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%d %.17g %.17g # %s\n", i++, tv.value, tv.err, name.c_str());
    os << buf;
  }
  return os.str();
}

struct OutputSpec {
  fs::path dir;
  bool json_fmt = true;
  bool csv_fmt = false;
  bool dat_fmt = false;
};

void write_report_files(const OutputSpec& out, const std::string& stem,
                        const VerificationReport& rep) {
  if (out.json_fmt) atomic_write(out.dir / (stem + ".json"), report_to_json(rep) + "\n");
  if (out.csv_fmt)
    atomic_write(out.dir / (stem + ".csv"),
                 report_csv_header(rep) + "\n" + report_csv_row(rep) + "\n");
  if (out.dat_fmt) atomic_write(out.dir / (stem + ".dat"), gnuplot_from_terms(rep));
}

JobResult run_verify_job(const json& job, size_t idx, const OutputSpec& out, const GlobalOpts& g) {
  JobResult res;
  const std::string id = job.at("theorem_id").get<std::string>();
  const std::string stem = "job_" + std::to_string(idx) + "_verify_" + id;
  try {
    const VerificationReport rep = dispatch_verify(job, g);
    write_report_files(out, stem, rep);
    std::ostringstream os;
    os << "job " << idx << " verify " << id << ": " << status_name(rep.status);
    if (rep.status == Status::IdentityPass)
      os << " residual_rel=" << rep.residual_rel;
    else if (rep.status == Status::InequalityPass)
      os << " slack=" << rep.slack;
    else if (!rep.diagnostics.empty())
      os << " (" << rep.diagnostics.front() << ")";
    res.summary = os.str();
    res.pass = rep.passed();
    res.config_error = rep.status == Status::Inadmissible;
  } catch (const error& e) {
    res.summary = "job " + std::to_string(idx) + " verify " + id + ": error " + e.what();
    res.config_error = true;
  }
  return res;
}

JobResult run_sweep_job(const json& job, size_t idx, const OutputSpec& out, const GlobalOpts& g) {
  JobResult res;
  const std::string id = job.at("theorem_id").get<std::string>();
  const std::string stem = "job_" + std::to_string(idx) + "_sweep_" + id;
  const auto [Q, group] = parse_model(job);
  const HardyParams base = parse_params(job, Q);

  std::vector<double> as{base.a}, bs{base.b}, cs{base.c}, ps{base.p};
  if (job.contains("grid")) {
    const json& grid = job.at("grid");
    reject_unknown_keys(grid, {"a", "b", "c", "p"}, "grid");
    if (grid.contains("a")) as = grid.at("a").get<std::vector<double>>();
    if (grid.contains("b")) bs = grid.at("b").get<std::vector<double>>();
    if (grid.contains("c")) cs = grid.at("c").get<std::vector<double>>();
    if (grid.contains("p")) ps = grid.at("p").get<std::vector<double>>();
  }

  std::ostringstream csv, dat;
  csv << "p,a,b,c,status,lhs,rhs,residual_rel,slack\n";
  dat << "# p a b c slack residual_rel\n";
  size_t cells = 0, failed = 0, inadmissible = 0;
  for (double p : ps)
    for (double a : as)
      for (double b : bs)
        for (double c : cs) {
          json cell = job;
          cell.erase("grid");
          cell["params"]["p"] = p;
          cell["params"]["a"] = a;
          cell["params"]["b"] = b;
          cell["params"]["c"] = c;
          ++cells;
          VerificationReport rep;
          try {
            rep = dispatch_verify(cell, g);
          } catch (const error&) {
            rep.status = Status::Inadmissible;
          }
          if (rep.status == Status::Fail) ++failed;
          if (rep.status == Status::Inadmissible) ++inadmissible;
          char line[256];
          std::snprintf(line, sizeof(line), "%g,%g,%g,%g,%s,%.17g,%.17g,%.17g,%.17g\n", p, a, b, c,
                        status_name(rep.status), rep.lhs, rep.rhs, rep.residual_rel, rep.slack);
          csv << line;
          std::snprintf(line, sizeof(line), "%g %g %g %g %.17g %.17g\n", p, a, b, c, rep.slack,
                        rep.residual_rel);
          dat << line;
        }
  atomic_write(out.dir / (stem + ".csv"), csv.str());
  if (out.dat_fmt) atomic_write(out.dir / (stem + ".dat"), dat.str());
  res.pass = failed == 0;
  std::ostringstream os;
  os << "job " << idx << " sweep " << id << ": " << cells << " cells, " << failed << " failed, "
     << inadmissible << " inadmissible";
  res.summary = os.str();
  return res;
}

JobResult run_sharpness_job(const json& job, size_t idx, const OutputSpec& out,
                            const GlobalOpts& g) {
  (void)g;
  JobResult res;
  const std::string scan_kind = job.at("scan").get<std::string>();
  const std::string stem = "job_" + std::to_string(idx) + "_sharpness_" + scan_kind;
  const auto [Q, group] = parse_model(job);
  const HardyParams prm = parse_params(job, Q);
  try {
    if (scan_kind == "boundary" || scan_kind == "origin") {
      std::vector<double> offsets(std::begin(kScanOffsets), std::end(kScanOffsets));
      if (job.contains("offsets")) offsets = job.at("offsets").get<std::vector<double>>();
      const SharpnessScan scan = scan_kind == "boundary" ? scan_boundary(prm, offsets)
                                                         : scan_origin(prm, offsets);
      atomic_write(out.dir / (stem + ".csv"), scan.csv());
      atomic_write(out.dir / (stem + ".json"), scan.summary_json() + "\n");
      if (out.dat_fmt) {
        std::ostringstream dat;
        dat << "# kappa ratio\n";
        for (const auto& r : scan.rows) dat << r.kappa << " " << r.ratio << "\n";
        atomic_write(out.dir / (stem + ".dat"), dat.str());
      }
      res.pass = scan.pass;
      std::ostringstream os;
      os << "job " << idx << " sharpness " << scan_kind << ": target=" << scan.target
         << " extrapolated=" << scan.extrapolated << " relative_gap=" << scan.relative_gap
         << (scan.pass ? " Pass" : " Fail");
      res.summary = os.str();
    } else if (scan_kind == "nonattainment") {
      std::vector<double> eps = {1e-1, 1e-2, 1e-3, 1e-4};
      if (job.contains("eps_grid")) eps = job.at("eps_grid").get<std::vector<double>>();
      const NonattainmentProbe probe = nonattainment_probe(prm, eps);
      atomic_write(out.dir / (stem + ".csv"), probe.csv());
      char buf[256];
      std::snprintf(buf, sizeof(buf),
                    "{\"fit_exponent\": %.17g, \"loglog_slope\": %.17g, \"r_squared\": %.17g}\n",
                    probe.fit_exponent, probe.loglog_slope, probe.r_squared);
      atomic_write(out.dir / (stem + ".json"), buf);
      if (out.dat_fmt) {
        std::ostringstream dat;
        dat << "# eps integral\n";
        for (const auto& r : probe.rows) dat << r.eps << " " << r.integral << "\n";
        atomic_write(out.dir / (stem + ".dat"), dat.str());
      }
      res.pass = probe.fit_exponent >= 0.9 && probe.fit_exponent <= 1.1 &&
                 probe.r_squared >= 0.999;
      std::ostringstream os;
      os << "job " << idx << " sharpness nonattainment: fit_exponent=" << probe.fit_exponent
         << " r_squared=" << probe.r_squared << (res.pass ? " Pass" : " Fail");
      res.summary = os.str();
    } else {
      config_fail("unknown scan '" + scan_kind + "'");
    }
  } catch (const error& e) {
    res.summary = "job " + std::to_string(idx) + " sharpness: error " + std::string(e.what());
    res.config_error = true;
  }
  return res;
}

JobResult run_mc_job(const json& job, size_t idx, const OutputSpec& out, const GlobalOpts& g) {
  JobResult res;
  const std::string stem = "job_" + std::to_string(idx) + "_mc_check";
  try {
    const auto [Q, group_opt] = parse_model(job);
    if (!group_opt) config_fail("mc-check needs a concrete group model");
    const GroupModel& group = *group_opt;
    const auto samples = static_cast<std::int64_t>(jget(job, "samples", 200000.0));
    std::uint64_t seed = static_cast<std::uint64_t>(jget(job, "seed", 1.0));
    if (g.seed) seed = *g.seed;

    json rows = json::array();
    bool all_ok = true;
    json moments = job.contains("moments")
                       ? job.at("moments")
                       : json::array({json{{"s", 0.0}, {"R", 1.0}}, json{{"s", 1.0}, {"R", 1.0}}});
    int mi = 0;
    for (const auto& m : moments) {
      reject_unknown_keys(m, {"s", "R"}, "moments[]");
      const double s = m.at("s").get<double>();
      const double R = jget(m, "R", 1.0);
      const McEstimate est = mc_ball_moment(group, s, R, samples,
                                            seed + static_cast<std::uint64_t>(mi++));
      json row{{"s", s}, {"R", R}, {"estimate", est.estimate}, {"stderr", est.stderr_est}};
      if (group.norm_kind == NormKind::Euclidean) {
        const double closed = sphere_measure(group) * std::pow(R, Q + s) / (Q + s);
        row["closed_form"] = closed;
        const bool ok = std::abs(est.estimate - closed) <= 3.0 * est.stderr_est;
        row["within_3_sigma"] = ok;
        all_ok = all_ok && ok;
      } else {
        // homogeneity: estimate(2R)/estimate(R) should be 2^{Q+s}
        const McEstimate est2 = mc_ball_moment(group, s, 2.0 * R, samples,
                                               seed + 1000 + static_cast<std::uint64_t>(mi));
        const double ratio = est2.estimate / est.estimate;
        const double expected = std::pow(2.0, Q + s);
        const double sigma =
            std::abs(ratio) * (est.stderr_est / std::abs(est.estimate) +
                               est2.stderr_est / std::abs(est2.estimate));
        row["scaling_ratio"] = ratio;
        row["scaling_expected"] = expected;
        const bool ok = std::abs(ratio - expected) <= 3.0 * sigma;
        row["within_3_sigma"] = ok;
        all_ok = all_ok && ok;
      }
      rows.push_back(std::move(row));
    }
    json outj{{"Q", Q}, {"samples", samples}, {"seed", seed}, {"moments", rows},
              {"pass", all_ok}};
    atomic_write(out.dir / (stem + ".json"), outj.dump(2) + "\n");
    res.pass = all_ok;
    res.summary = "job " + std::to_string(idx) + " mc-check: " +
                  (all_ok ? std::string("Pass") : std::string("Fail")) + " (" +
                  std::to_string(rows.size()) + " moments)";
  } catch (const error& e) {
    res.summary = "job " + std::to_string(idx) + " mc-check: error " + std::string(e.what());
    res.config_error = true;
  }
  return res;
}

void validate_job(const json& job, const std::string& kind) {
  reject_unknown_keys(job,
                      {"kind", "theorem_id", "model", "params", "function", "function_imag",
                       "grid", "scan", "offsets", "eps_grid", "c_grid", "moments", "samples",
                       "seed", "tol_scale"},
                      "job");
  if (kind == "verify" || kind == "sweep") {
    if (!job.contains("theorem_id")) config_fail("job needs 'theorem_id'");
    const std::string id = job.at("theorem_id").get<std::string>();
    bool known = false;
    for (const auto& t : theorem_ids()) known = known || t == id;
    if (!known) config_fail("unknown theorem_id '" + id + "'");
    const auto [Q, group] = parse_model(job);
    if (id == "chains" && (!group || group->norm_kind != NormKind::Euclidean))
      config_fail("'chains' needs a Euclidean group model");
    if (kind == "verify") {
      const HardyParams prm = parse_params(job, Q);
      const auto violations = validate_theorem_params(id, prm);
      if (!violations.empty()) {
        std::string msg = "job parameters violate theorem constraints:";
        for (const auto& v : violations) msg += " " + v;
        config_fail(msg);
      }
    }
    if (id != "fundamental") parse_function(job);  // parse errors surface now
  } else if (kind == "sharpness") {
    if (!job.contains("scan")) config_fail("sharpness job needs 'scan'");
    parse_model(job);
  } else if (kind == "mc-check") {
    parse_model(job);
  } else {
    config_fail("unknown job kind '" + kind + "'");
  }
}

int run_command(const std::string& kind, const std::string& config_path, GlobalOpts& g) {
  json cfg;
  {
    std::ifstream is(config_path);
    if (!is) {
      std::fprintf(stderr, "error: cannot read config '%s'\n", config_path.c_str());
      return 2;
    }
    try {
      is >> cfg;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: config parse: %s\n", e.what());
      return 2;
    }
  }

  try {
    reject_unknown_keys(cfg, {"schema", "jobs", "output"}, "config");
    if (!cfg.contains("schema") || cfg.at("schema").get<int>() != 1)
      config_fail("config needs \"schema\": 1");
    if (!cfg.contains("jobs") || !cfg.at("jobs").is_array() || cfg.at("jobs").empty())
      config_fail("config needs a non-empty 'jobs' array");

    OutputSpec out;
    out.dir = g.out_dir.empty() ? fs::path("out") : fs::path(g.out_dir);
    if (cfg.contains("output")) {
      const json& o = cfg.at("output");
      reject_unknown_keys(o, {"dir", "formats"}, "output");
      if (o.contains("dir") && g.out_dir.empty()) out.dir = o.at("dir").get<std::string>();
      if (o.contains("formats")) {
        out.json_fmt = out.csv_fmt = out.dat_fmt = false;
        for (const auto& f : o.at("formats")) {
          const std::string fmt = f.get<std::string>();
          if (fmt == "json")
            out.json_fmt = true;
          else if (fmt == "csv")
            out.csv_fmt = true;
          else if (fmt == "gnuplot-dat")
            out.dat_fmt = true;
          else
            config_fail("unknown output format '" + fmt + "'");
        }
      }
    }

    // jobs of this subcommand's kind; everything validates before any work
    std::vector<std::pair<size_t, json>> selected;
    size_t idx = 0;
    for (const auto& job : cfg.at("jobs")) {
      const std::string jk = job.contains("kind") ? job.at("kind").get<std::string>() : kind;
      validate_job(job, jk);
      if (jk == kind) selected.emplace_back(idx, job);
      ++idx;
    }
    if (selected.empty()) config_fail("no jobs of kind '" + kind + "' in config");

    fs::create_directories(out.dir);

    std::vector<JobResult> results(selected.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= selected.size()) break;
        const auto& [jidx, job] = selected[i];
        if (kind == "verify")
          results[i] = run_verify_job(job, jidx, out, g);
        else if (kind == "sweep")
          results[i] = run_sweep_job(job, jidx, out, g);
        else if (kind == "sharpness")
          results[i] = run_sharpness_job(job, jidx, out, g);
        else
          results[i] = run_mc_job(job, jidx, out, g);
      }
    };
    const int nthreads = std::max(1, std::min<int>(g.jobs, static_cast<int>(selected.size())));
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    bool any_fail = false, any_config = false;
    for (const auto& r : results) {
      std::printf("%s\n", r.summary.c_str());
      any_fail = any_fail || (!r.pass && !r.config_error);
      any_config = any_config || r.config_error;
    }
    if (any_config) return 2;
    return any_fail ? 1 : 0;
  } catch (const error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification of unified weighted Hardy/Rellich/CKN inequalities"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--jobs", g.jobs, "concurrent jobs")->capture_default_str();
  app.add_option("--out", g.out_dir, "output directory (overrides config)");
  std::uint64_t seed_val = 0;
  auto* seed_opt = app.add_option("--seed", seed_val, "override Monte-Carlo seeds");
  app.add_option("--tol-scale", g.tol_scale, "scale identity tolerances")->capture_default_str();

  std::string config_path;
  std::string chosen;
  for (const char* name : {"verify", "sweep", "sharpness", "mc-check"}) {
    auto* sub = app.add_subcommand(name, std::string("run ") + name + " jobs from a config");
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->callback([&chosen, name] { chosen = name; });
  }

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) g.seed = seed_val;
  return run_command(chosen, config_path, g);
}
