#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fournls/cli.hpp"
#include "fournls/parallel.hpp"
#include "fournls/state_io.hpp"

using namespace fournls;
namespace fs = std::filesystem;

namespace {
struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "4nls");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::optional<cli::RunConfig> parse(std::vector<std::string> args, std::string* err_text = nullptr) {
  args.insert(args.begin(), "4nls");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  auto r = cli::parse_config(static_cast<int>(argv.size()), argv.data(), out, err);
  if (err_text) *err_text = err.str();
  return r.config;
}

fs::path fresh_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / "fournls_cli_test" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("minimal config file fills defaults") {
  const auto dir = fresh_dir("defaults");
  std::ofstream(dir / "run.ini") << "[simulate]\nequation = wick\nn-max = 8\ndt = 0.002\nT = 0.1\nprofile = exp_decay\n";
  const auto cfg = parse({"--config", (dir / "run.ini").string(), "simulate"});
  REQUIRE(cfg);
  CHECK(cfg->subcommand == "simulate");
  CHECK(cfg->equation == "wick");
  CHECK(cfg->n_max == 8);
  CHECK(cfg->dt == 0.002);
  CHECK(cfg->scheme == "exp_rk4");
  CHECK(cfg->stride == 1);
}

TEST_CASE("flags override the config file") {
  const auto dir = fresh_dir("override");
  std::ofstream(dir / "run.ini") << "[simulate]\nseed = 3\ndt = 0.01\n";
  const auto cfg = parse({"simulate", "--config", (dir / "run.ini").string(), "--seed=7"});
  REQUIRE(cfg);
  CHECK(cfg->seed == 7);
  CHECK(cfg->dt == 0.01);
}

TEST_CASE("config errors name the key and exit 1") {
  auto r = run_cli({"simulate", "--dt", "-0.001"});
  CHECK(r.code == cli::kExitConfig);
  CHECK(r.err.find("dt") != std::string::npos);

  const auto dir = fresh_dir("unknown");
  std::ofstream(dir / "bad.ini") << "[simulate]\nfrobnicate = 2\n";
  r = run_cli({"--config", (dir / "bad.ini").string(), "simulate"});
  CHECK(r.code == cli::kExitConfig);
  CHECK(r.err.find("frobnicate") != std::string::npos);

  r = run_cli({"simulate", "--n-max", "abc"});
  CHECK(r.code == cli::kExitConfig);
  CHECK(r.err.find("n-max") != std::string::npos);

  r = run_cli({"simulate", "--n-max", "4", "--truncation", "6"});
  CHECK(r.code == cli::kExitConfig);
  CHECK(r.err.find("truncation") != std::string::npos);

  CHECK(run_cli({}).code == cli::kExitConfig);
}

TEST_CASE("numeric failure exits 2") {
  const auto dir = fresh_dir("nan");
  const auto r = run_cli({"simulate", "--profile", "single_mode", "--amplitude", "1e200", "--n-max", "2",
                          "--T", "0.01", "--out-dir", dir.string()});
  CHECK(r.code == cli::kExitNumeric);
  CHECK(r.err.find("step") != std::string::npos);
}

TEST_CASE("resonance table") {
  const auto dir = fresh_dir("table");
  const auto path = dir / "r.csv";
  const auto r = run_cli({"resonance", "table", "--max", "8", "--out", path.string()});
  REQUIRE(r.code == 0);
  std::ifstream is(path);
  std::string line;
  std::getline(is, line);
  CHECK(line == "n1,n2,n3,n,H,factored_H");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 6);
    CHECK(cells[4] == cells[5]);
  }
  CHECK(rows == 17 * 17 * 17);
}

TEST_CASE("simulate a plane wave") {
  const auto dir = fresh_dir("simulate");
  const auto r = run_cli({"simulate", "--profile", "single_mode", "--mode", "2", "--amplitude", "0.8", "--n-max",
                          "4", "--T", "1", "--dt", "0.001", "--stride", "100", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("simulate:") == 0);
  const auto traj = load_trajectory(dir / "trajectory.jsonl");
  CHECK(traj.size() == 11);
  const auto last = traj.states.back();
  const Complex c0 = traj.states.front()[2];
  CHECK(std::abs(c0) == doctest::Approx(0.8));
  CHECK(std::abs(last[2] - c0 * std::exp(Complex(0, 16.0 - 0.64))) < 1e-8);
  CHECK(load_state(dir / "final_state.json") == last);
  const auto report = nlohmann::json::parse(slurp(dir / "simulate_report.json"));
  CHECK(report["config"]["subcommand"] == "simulate");
  CHECK(report["config"]["n_max"] == 4);
}

TEST_CASE("squeeze with the linear test flag") {
  const auto dir = fresh_dir("squeeze");
  const auto r = run_cli({"squeeze", "--linear-only", "--samples", "16", "--out-dir", dir.string(), "--format",
                          "json"});
  REQUIRE(r.code == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "squeeze_report.json"));
  CHECK(report["summary"]["best_margin"].get<double>() == doctest::Approx(0.4).epsilon(1e-10));
  CHECK_FALSE(fs::exists(dir / "squeeze.csv"));
}

TEST_CASE("identical runs produce identical reports") {
  const auto a = fresh_dir("repro_a"), b = fresh_dir("repro_b");
  for (const auto& d : {a, b})
    REQUIRE(run_cli({"perturb", "--ladder", "8,16", "--T", "0.05", "--dt", "0.001", "--trials", "2", "--seed",
                     "11", "--deterministic", "--out-dir", d.string()})
                .code == 0);
  const auto ja = nlohmann::json::parse(slurp(a / "perturb_report.json"));
  auto jb = nlohmann::json::parse(slurp(b / "perturb_report.json"));
  CHECK(ja["timestamp"] == 0);
  CHECK(ja["config"]["seed"] == 11);
  jb["config"]["out_dir"] = ja["config"]["out_dir"];
  jb["params"] = ja["params"];
  jb["artifacts"] = ja["artifacts"];
  CHECK(ja.dump() == jb.dump());
}

TEST_CASE("gauge-check and norms outputs") {
  const auto dir = fresh_dir("outputs");
  auto r = run_cli({"gauge-check", "--n-max", "6", "--T", "0.1", "--stride", "10", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "gauge.csv"));
  r = run_cli({"simulate", "--n-max", "6", "--T", "0.1", "--stride", "5", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  r = run_cli({"norms", "--trajectory", (dir / "trajectory.jsonl").string(), "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(dir / "gap.csv").rfind("t,gap\n", 0) == 0);
  CHECK(slurp(dir / "dyadic.csv").rfind("block,t,value\n", 0) == 0);
  CHECK(fs::exists(dir / "norms_report.json"));
  r = run_cli({"approx", "--ladder", "4,8,16", "--T", "0.05", "--dt", "0.001", "--out-dir", dir.string()});
  CHECK(r.code == 0);
}

TEST_CASE("thread count from the environment") {
  setenv("FOURNLS_THREADS", "1", 1);
  CHECK(configure_threads_from_env() == 1);
  CHECK(worker_count() == 1);
  unsetenv("FOURNLS_THREADS");
}
