#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args, const fs::path& workdir) {
  const fs::path log = workdir / "cli.log";
  const std::string cmd = "cd " + workdir.string() + " && " + UNIHARDY_CLI_PATH + " " + args +
                          " > cli.log 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WEXITSTATUS(status);
  std::ifstream is(log);
  std::stringstream ss;
  ss << is.rdbuf();
  res.output = ss.str();
  return res;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("unihardy_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream os(p);
  os << content;
}

std::string read_file(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string strip_timestamp(std::string s) {
  return std::regex_replace(s, std::regex("\\n?\\s*\"timestamp\": \"[^\"]*\""), "");
}

const char* kGoodConfig = R"js({
  "schema": 1,
  "jobs": [
    {"kind": "verify", "theorem_id": "l2_identity",
     "model": {"abstract": {"Q": 4.0}},
     "params": {"p": 2, "a": 1, "b": 2, "c": 1},
     "function": "mul(bump(0.2,0.8),powr(1))"}
  ],
  "output": {"dir": "out", "formats": ["json", "csv"]}
})js";

}  // namespace

TEST_CASE("verify: passing config exits 0 and writes reports") {
  const auto dir = fresh_dir("ok");
  write_file(dir / "cfg.json", kGoodConfig);
  const auto res = run_cli("verify --config cfg.json", dir);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("IdentityPass") != std::string::npos);
  CHECK(fs::exists(dir / "out/job_0_verify_l2_identity.json"));
  CHECK(fs::exists(dir / "out/job_0_verify_l2_identity.csv"));
  // no stray temp files from the atomic writes
  for (const auto& e : fs::directory_iterator(dir / "out"))
    CHECK(e.path().extension() != ".tmp");
}

TEST_CASE("verify: constraint violations exit 2 citing the constraint") {
  const auto dir = fresh_dir("badparam");
  std::string cfg = kGoodConfig;
  cfg.replace(cfg.find("\"b\": 2"), 6, "\"b\": 0.5");
  write_file(dir / "cfg.json", cfg);
  const auto res = run_cli("verify --config cfg.json", dir);
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("b>1") != std::string::npos);
}

TEST_CASE("empty job list and unknown keys exit 2") {
  const auto dir = fresh_dir("empty");
  write_file(dir / "cfg.json", R"js({"schema": 1, "jobs": []})js");
  CHECK(run_cli("verify --config cfg.json", dir).exit_code == 2);

  write_file(dir / "cfg2.json", R"js({"schema": 1, "jobs": [
    {"kind": "verify", "theorem_id": "l2_identity", "model": {"abstract": {"Q": 4}},
     "function": "powr(1)", "bogus_key": 1}]})js");
  const auto res = run_cli("verify --config cfg2.json", dir);
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("bogus_key") != std::string::npos);

  write_file(dir / "cfg3.json", R"js({"schema": 2, "jobs": [{}]})js");
  CHECK(run_cli("verify --config cfg3.json", dir).exit_code == 2);

  CHECK(run_cli("verify --config does_not_exist.json", dir).exit_code == 2);
}

TEST_CASE("determinism: identical config and seed give byte-identical reports") {
  const auto dir = fresh_dir("determinism");
  write_file(dir / "cfg.json", kGoodConfig);
  REQUIRE(run_cli("verify --config cfg.json --out out1", dir).exit_code == 0);
  REQUIRE(run_cli("verify --config cfg.json --out out2", dir).exit_code == 0);
  const auto a = strip_timestamp(read_file(dir / "out1/job_0_verify_l2_identity.json"));
  const auto b = strip_timestamp(read_file(dir / "out2/job_0_verify_l2_identity.json"));
  CHECK(a == b);
  CHECK(read_file(dir / "out1/job_0_verify_l2_identity.csv") ==
        read_file(dir / "out2/job_0_verify_l2_identity.csv"));
}

TEST_CASE("sweep: inadmissible cells are marked, run continues") {
  const auto dir = fresh_dir("sweep");
  write_file(dir / "cfg.json", R"js({
    "schema": 1,
    "jobs": [
      {"kind": "sweep", "theorem_id": "unified_hardy",
       "model": {"abstract": {"Q": 4.0}},
       "params": {"p": 2, "a": 1, "b": 2, "c": 1},
       "grid": {"c": [0.5, 1.0, 2.0, 5.0]},
       "function": "mul(bump(0.2,0.8),powr(1))"}
    ],
    "output": {"dir": "out", "formats": ["csv", "gnuplot-dat"]}
  })js");
  const auto res = run_cli("sweep --config cfg.json", dir);
  CHECK(res.exit_code == 0);  // c=5 > (Q-a)/(b-1)=3 is marked, not fatal
  const std::string csv = read_file(dir / "out/job_0_sweep_unified_hardy.csv");
  CHECK(csv.find("Inadmissible") != std::string::npos);
  CHECK(csv.find("InequalityPass") != std::string::npos);
  CHECK(fs::exists(dir / "out/job_0_sweep_unified_hardy.dat"));
}

TEST_CASE("sharpness: scan emits csv rows and a json summary") {
  const auto dir = fresh_dir("sharp");
  write_file(dir / "cfg.json", R"js({
    "schema": 1,
    "jobs": [
      {"kind": "sharpness", "scan": "origin",
       "model": {"abstract": {"Q": 4.0}},
       "params": {"p": 2, "a": 1, "b": 1, "c": 1},
       "offsets": [0.08, 0.04, 0.02]}
    ],
    "output": {"dir": "out", "formats": ["json", "csv"]}
  })js");
  const auto res = run_cli("sharpness --config cfg.json", dir);
  CHECK(res.exit_code == 0);
  const std::string csv = read_file(dir / "out/job_0_sharpness_origin.csv");
  CHECK(csv.rfind("kappa,delta,ratio,err_est\n", 0) == 0);
  const std::string summary = read_file(dir / "out/job_0_sharpness_origin.json");
  CHECK(summary.find("\"target\": 2.25") != std::string::npos);
  CHECK(summary.find("relative_gap") != std::string::npos);
}

TEST_CASE("mc-check: euclidean moments within 3 sigma") {
  const auto dir = fresh_dir("mc");
  write_file(dir / "cfg.json", R"js({
    "schema": 1,
    "jobs": [
      {"kind": "mc-check",
       "model": {"group": {"kind": "euclidean", "n": 3}},
       "moments": [{"s": 0, "R": 1}, {"s": 1, "R": 1}],
       "samples": 100000, "seed": 5}
    ],
    "output": {"dir": "out"}
  })js");
  const auto res = run_cli("mc-check --config cfg.json", dir);
  CHECK(res.exit_code == 0);
  const std::string out = read_file(dir / "out/job_0_mc_check.json");
  CHECK(out.find("\"within_3_sigma\": true") != std::string::npos);
}

TEST_CASE("parallel jobs produce the same results as serial") {
  const auto dir = fresh_dir("parallel");
  write_file(dir / "cfg.json", R"js({
    "schema": 1,
    "jobs": [
      {"kind": "verify", "theorem_id": "l2_identity", "model": {"abstract": {"Q": 4.0}},
       "params": {"p": 2, "a": 1, "b": 2, "c": 1}, "function": "mul(bump(0.2,0.8),powr(1))"},
      {"kind": "verify", "theorem_id": "hardy_b_ineq7", "model": {"abstract": {"Q": 4.0}},
       "params": {"p": 2, "a": 1, "b": 2, "c": 1}, "function": "mul(bump(0.2,0.8),powr(1))"},
      {"kind": "verify", "theorem_id": "rellich_l2_expansion", "model": {"abstract": {"Q": 5.0}},
       "params": {"p": 2, "a": 3, "b": 2, "c": 1}, "function": "mul(bump(0.2,0.8),powr(2))"}
    ]
  })js");
  REQUIRE(run_cli("verify --config cfg.json --out serial --jobs 1", dir).exit_code == 0);
  REQUIRE(run_cli("verify --config cfg.json --out parallel --jobs 3", dir).exit_code == 0);
  for (const auto& name :
       {"job_0_verify_l2_identity.json", "job_1_verify_hardy_b_ineq7.json",
        "job_2_verify_rellich_l2_expansion.json"}) {
    CHECK(strip_timestamp(read_file(dir / "serial" / name)) ==
          strip_timestamp(read_file(dir / "parallel" / name)));
  }
}

TEST_CASE("the shipped acceptance config validates and its scans pass") {
  const auto dir = fresh_dir("shipped");
  const fs::path cfg = fs::path(UNIHARDY_CLI_PATH).parent_path().parent_path().parent_path() /
                       "configs/acceptance.json";
  REQUIRE(fs::exists(cfg));
  const auto res = run_cli("sharpness --config " + cfg.string(), dir);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("Pass") != std::string::npos);
}
