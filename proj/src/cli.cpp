#include "fournls/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "fournls/diagnostics.hpp"
#include "fournls/error.hpp"
#include "fournls/gauge.hpp"
#include "fournls/parallel.hpp"
#include "fournls/resonance.hpp"
#include "fournls/state_io.hpp"

namespace fournls::cli {
namespace fs = std::filesystem;

EquationKind RunConfig::equation_kind() const {
  EquationKind k;
  k.equation = equation == "wick" ? Equation::Wick4WNLS : Equation::Full4NLS;
  k.sign = sign;
  k.linear_only = linear_only;
  return k;
}

IntegratorSpec RunConfig::integrator() const {
  IntegratorSpec spec;
  spec.scheme = scheme == "strang" ? Scheme::Strang : Scheme::ExpRK4;
  spec.dt = dt;
  spec.truncation = truncation;
  return spec;
}

ProfileSpec RunConfig::profile_spec() const {
  ProfileSpec p;
  static const std::map<std::string, ProfileKind> kinds{{"exp_decay", ProfileKind::ExpDecay},
                                                        {"power_decay", ProfileKind::PowerDecay},
                                                        {"single_mode", ProfileKind::SingleMode},
                                                        {"explicit", ProfileKind::Explicit}};
  p.kind = kinds.at(profile);
  p.amplitude = amplitude;
  p.decay = decay;
  p.mode = mode;
  p.seed = seed;
  if (p.kind == ProfileKind::Explicit) p.explicit_state = load_state(input);
  return p;
}

Json RunConfig::to_json() const {
  Json j;
  j["subcommand"] = subcommand;
  j["equation"] = equation;
  j["mu"] = sign;
  j["linear_only"] = linear_only;
  j["n_max"] = n_max;
  j["scheme"] = scheme;
  j["dt"] = dt;
  j["T"] = T;
  j["truncation"] = truncation ? Json(*truncation) : Json(nullptr);
  j["stride"] = stride;
  j["profile"] = profile;
  j["amplitude"] = amplitude;
  j["decay"] = decay;
  j["mode"] = mode;
  j["input"] = input;
  j["trajectory_input"] = trajectory_input;
  j["ladder"] = ladder;
  j["ref_factor"] = ref_factor;
  j["perturbation_norm"] = perturbation_norm;
  j["trials"] = trials;
  j["R"] = R;
  j["r"] = r;
  j["epsilon"] = epsilon;
  j["n0"] = n0;
  j["z"] = {z_re, z_im};
  j["samples"] = samples;
  j["s"] = s;
  j["b"] = b;
  j["window"] = window;
  j["box"] = box;
  j["seed"] = seed;
  j["out_dir"] = out_dir;
  j["format"] = format == OutputFormat::Json ? "json" : format == OutputFormat::Csv ? "csv" : "both";
  j["deterministic"] = deterministic;
  return j;
}

namespace {

void add_dynamics_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--equation", c.equation, "full | wick")->check(CLI::IsMember({"full", "wick"}));
  sub->add_option("--mu", c.sign, "nonlinearity sign, +1 or -1")->check(CLI::IsMember({-1, 1}));
  sub->add_flag("--linear-only", c.linear_only, "drop the nonlinearity (test mode)");
  sub->add_option("--n-max", c.n_max, "truncation radius of the stored state")
      ->check(CLI::Range(0, 4096));
  sub->add_option("--scheme", c.scheme, "exp_rk4 | strang")->check(CLI::IsMember({"exp_rk4", "strang"}));
  sub->add_option("--dt", c.dt, "time step")->check(CLI::PositiveNumber);
  sub->add_option("--T", c.T, "final time")->check(CLI::NonNegativeNumber);
  sub->add_option("--truncation", c.truncation, "Galerkin truncation N")->check(CLI::NonNegativeNumber);
}

void add_profile_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--profile", c.profile, "exp_decay | power_decay | single_mode | explicit")
      ->check(CLI::IsMember({"exp_decay", "power_decay", "single_mode", "explicit"}));
  sub->add_option("--amplitude", c.amplitude, "l2 norm of the profile")->check(CLI::NonNegativeNumber);
  sub->add_option("--decay", c.decay, "decay parameter")->check(CLI::PositiveNumber);
  sub->add_option("--mode", c.mode, "mode of the single_mode profile");
  sub->add_option("--input", c.input, "state file")->check(CLI::ExistingFile);
}

void add_output_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--seed", c.seed, "root seed");
  sub->add_option("--out-dir", c.out_dir, "output directory");
  sub->add_option("--format", c.format, "json | csv | both")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"json", OutputFormat::Json},
                                              {"csv", OutputFormat::Csv},
                                              {"both", OutputFormat::Both}}));
  sub->add_flag("--deterministic", c.deterministic, "zero the report timestamp");
}

bool want_json(const RunConfig& c) { return c.format != OutputFormat::Csv; }
bool want_csv(const RunConfig& c) { return c.format != OutputFormat::Json; }

fs::path out_path(const RunConfig& c, const std::string& name) { return fs::path(c.out_dir) / name; }

void emit(ExperimentReport& report, const RunConfig& c, const std::string& stem) {
  if (want_csv(c)) {
    const auto path = out_path(c, stem + ".csv");
    report.artifacts.push_back(path.string());
    write_text(path, report.to_csv());
  }
  if (want_json(c)) {
    const auto path = out_path(c, stem + "_report.json");
    report.artifacts.push_back(path.string());
    Json j = report.to_json(c.deterministic);
    j["config"] = c.to_json();
    write_text(path, j.dump(2) + "\n");
  }
}

FourierState initial_state(const RunConfig& c) {
  return generate_profile(c.profile_spec(), c.n_max);
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const FourierState u0 = initial_state(c);
  const auto kind = c.equation_kind();
  const Trajectory traj = integrate(u0, c.T, c.integrator(), kind, c.stride);
  save_trajectory(traj, out_path(c, "trajectory.jsonl"));
  save_state(traj.states.back(), out_path(c, "final_state.json"));
  ExperimentReport report;
  report.kind = "simulate";
  report.params = c.to_json();
  report.columns = {"t", "mass", "hamiltonian"};
  for (std::size_t k = 0; k < traj.size(); ++k)
    report.table.push_back({traj.time(k), mass(traj.states[k]), hamiltonian(traj.states[k], c.sign)});
  const double m0 = mass(u0), mT = mass(traj.states.back());
  report.summary["mass_relative_drift"] = m0 > 0 ? std::abs(mT - m0) / m0 : 0.0;
  report.summary["samples"] = traj.size();
  report.artifacts = {out_path(c, "trajectory.jsonl").string(), out_path(c, "final_state.json").string()};
  emit(report, c, "simulate");
  out << "simulate: " << traj.size() << " samples to T=" << c.T << ", mass drift "
      << report.summary["mass_relative_drift"].get<double>() << "\n";
  return kExitOk;
}

int cmd_gauge(const RunConfig& c, std::ostream& out) {
  const FourierState u0 = initial_state(c);
  const GaugeReport g = gauge_equivalence_check(u0, c.T, c.integrator(), c.equation_kind(), c.stride);
  ExperimentReport report;
  report.kind = "gauge-check";
  report.params = c.to_json();
  report.columns = {"t", "gap"};
  for (std::size_t k = 0; k < g.times.size(); ++k) report.table.push_back({g.times[k], g.gaps[k]});
  report.summary["max_gap"] = g.max_gap;
  emit(report, c, "gauge");
  out << "gauge-check: sup gap " << g.max_gap << "\n";
  return kExitOk;
}

int cmd_resonance_table(const RunConfig& c, std::ostream& out) {
  const fs::path path = c.out_file.empty() ? out_path(c, "resonance_table.csv") : fs::path(c.out_file);
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write_resonance_table(os, c.box);
  const auto scan = scan_resonance_box(c.box);
  out << "resonance table: " << scan.triples << " rows to " << path.string()
      << ", factorization mismatches " << scan.factorization_mismatches << ", zero-set mismatches "
      << scan.zero_set_mismatches << "\n";
  return kExitOk;
}

int cmd_norms(const RunConfig& c, std::ostream& out) {
  Trajectory traj;
  if (!c.trajectory_input.empty())
    traj = load_trajectory(c.trajectory_input);
  else
    traj = integrate(initial_state(c), c.T, c.integrator(), c.equation_kind(), c.stride);
  const Window window = c.window == "rectangular" ? Window::Rectangular : Window::CosineTaper;

  ExperimentReport gap;
  gap.kind = "smoothing-gap";
  gap.params = c.to_json();
  gap.columns = {"t", "gap"};
  const auto g = smoothing_gap(traj);
  for (std::size_t k = 0; k < g.size(); ++k) gap.table.push_back({traj.time(k), g[k]});

  ExperimentReport dyadic;
  dyadic.kind = "dyadic-gap";
  dyadic.params = c.to_json();
  dyadic.columns = {"block", "t", "value"};
  const auto profile = dyadic_gap_profile(traj, c.s);
  for (std::size_t bidx = 0; bidx < profile.levels.size(); ++bidx)
    for (std::size_t k = 0; k < traj.size(); ++k)
      dyadic.table.push_back({double(profile.levels[bidx]), traj.time(k), profile.values[bidx][k]});

  const ModifiedPhase plain = ModifiedPhase::plain(traj.n_max());
  const ModifiedPhase modified(traj.states.front());
  const SpaceTimeField fx(traj, window, plain);
  const SpaceTimeField fy(traj, window, modified);
  ExperimentReport norms;
  norms.kind = "norms";
  norms.params = c.to_json();
  norms.columns = {"s", "b", "x_norm", "y_norm", "z_l2l1_plain", "z_l2l1_modified"};
  norms.table.push_back({c.s, c.b, ysb_norm(fx, c.s, c.b), ysb_norm(fy, c.s, c.b), z_component(fx, c.s),
                         z_component(fy, c.s)});
  norms.summary["window"] = c.window;
  norms.summary["time_parseval_sq"] = time_parseval_norm_sq(traj, c.s, window);
  norms.summary["max_gap"] = *std::max_element(g.begin(), g.end());

  if (want_csv(c)) {
    write_text(out_path(c, "gap.csv"), gap.to_csv());
    write_text(out_path(c, "dyadic.csv"), dyadic.to_csv());
    norms.artifacts = {out_path(c, "gap.csv").string(), out_path(c, "dyadic.csv").string()};
  }
  if (want_json(c)) {
    Json j = norms.to_json(c.deterministic);
    j["config"] = c.to_json();
    write_text(out_path(c, "norms_report.json"), j.dump(2) + "\n");
  }
  out << "norms: X^{s,b} " << norms.table[0][2] << ", Y^{s,b} " << norms.table[0][3] << ", max gap "
      << norms.summary["max_gap"].get<double>() << "\n";
  return kExitOk;
}

int cmd_approx(const RunConfig& c, std::ostream& out) {
  ApproximationConfig a;
  a.profile = c.profile_spec();
  a.ladder = c.ladder.empty() ? std::vector<int>{16, 32, 64, 128} : c.ladder;
  a.ref_factor = c.ref_factor;
  a.T = c.T;
  a.dt = c.dt;
  a.scheme = c.integrator().scheme;
  a.kind = c.equation_kind();
  ExperimentReport report = run_approximation_study(a);
  emit(report, c, "approx");
  out << "approx: " << report.table.size() << " rungs";
  if (report.fitted) out << ", fitted rate " << report.fitted->rate;
  out << "\n";
  return kExitOk;
}

int cmd_perturb(const RunConfig& c, std::ostream& out) {
  PerturbationConfig p;
  p.profile = c.profile_spec();
  p.ladder = c.ladder.empty() ? std::vector<int>{16, 32, 64} : c.ladder;
  p.perturbation_norm = c.perturbation_norm;
  p.T = c.T;
  p.dt = c.dt;
  p.scheme = c.integrator().scheme;
  p.kind = c.equation_kind();
  p.trials = c.trials;
  p.seed = c.seed;
  ExperimentReport report = run_perturbation_study(p);
  emit(report, c, "perturb");
  out << "perturb: " << report.table.size() << " rungs, non-increasing "
      << (report.summary["non_increasing"].get<bool>() ? "yes" : "no") << "\n";
  return kExitOk;
}

int cmd_squeeze(const RunConfig& c, std::ostream& out) {
  SqueezeConfig q;
  q.u_star = c.input.empty() ? FourierState(c.n_max) : load_state(c.input);
  q.R = c.R;
  q.r = c.r;
  q.epsilon = c.epsilon;
  q.n0 = c.n0;
  q.z = Complex{c.z_re, c.z_im};
  q.T = c.T;
  q.N = c.n_max;
  q.dt = c.dt;
  q.samples = c.samples;
  q.scheme = c.integrator().scheme;
  q.kind = c.equation_kind();
  q.seed = c.seed;
  ExperimentReport report = run_squeeze_probe(q);
  emit(report, c, "squeeze");
  out << "squeeze: best margin " << report.summary["best_margin"].get<double>() << " ("
      << report.summary["verdict"].get<std::string>() << ")\n";
  return kExitOk;
}

}  // namespace

ParseResult parse_config(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier-Galerkin toolkit for the fourth-order cubic NLS", "4nls"};
  app.set_config("--config", "", "INI config file; sections mirror subcommands");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  // each subcommand binds its own config and defaults
  std::map<std::string, std::unique_ptr<RunConfig>> configs;
  auto make = [&](const std::string& name, const std::string& help) {
    auto cfg = std::make_unique<RunConfig>();
    cfg->subcommand = name;
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    RunConfig& ref = *cfg;
    configs.emplace(name, std::move(cfg));
    return std::pair<CLI::App*, RunConfig*>{sub, &ref};
  };

  {
    auto [sub, c] = make("simulate", "integrate one trajectory");
    add_dynamics_options(sub, *c);
    add_profile_options(sub, *c);
    sub->add_option("--stride", c->stride, "sample every k steps")->check(CLI::PositiveNumber);
    add_output_options(sub, *c);
  }
  {
    auto [sub, c] = make("gauge-check", "compare the gauged full flow with the Wick flow");
    add_dynamics_options(sub, *c);
    add_profile_options(sub, *c);
    sub->add_option("--stride", c->stride, "sample every k steps")->check(CLI::PositiveNumber);
    add_output_options(sub, *c);
  }
  {
    auto [sub, c] = make("resonance", "integer resonance algebra");
    sub->require_subcommand(1);
    CLI::App* table = sub->add_subcommand("table", "CSV of H and its factored form on a box");
    table->add_option("--max", c->box, "box half-width")->check(CLI::Range(0, 1 << 15));
    table->add_option("--out", c->out_file, "CSV path");
    table->add_option("--out-dir", c->out_dir, "output directory");
    c->subcommand = "resonance table";
  }
  {
    auto [sub, c] = make("norms", "smoothing gap, dyadic profile and space-time norms");
    add_dynamics_options(sub, *c);
    add_profile_options(sub, *c);
    sub->add_option("--stride", c->stride, "sample every k steps")->check(CLI::PositiveNumber);
    sub->add_option("--trajectory", c->trajectory_input, "existing trajectory file")
        ->check(CLI::ExistingFile);
    sub->add_option("--s", c->s, "Sobolev index");
    sub->add_option("--b", c->b, "modulation index");
    sub->add_option("--window", c->window, "cosine | rectangular")
        ->check(CLI::IsMember({"cosine", "rectangular"}));
    add_output_options(sub, *c);
  }
  {
    auto [sub, c] = make("approx", "truncated-flow approximation study");
    c->T = 0.5;
    c->dt = 5e-4;
    add_dynamics_options(sub, *c);
    add_profile_options(sub, *c);
    sub->add_option("--ladder", c->ladder, "increasing truncations")->delimiter(',');
    sub->add_option("--ref-factor", c->ref_factor, "reference resolution factor")
        ->check(CLI::Range(2, 64));
    add_output_options(sub, *c);
  }
  {
    auto [sub, c] = make("perturb", "high-frequency perturbation study");
    c->T = 0.5;
    c->dt = 5e-4;
    add_dynamics_options(sub, *c);
    add_profile_options(sub, *c);
    sub->add_option("--ladder", c->ladder, "increasing N'")->delimiter(',');
    sub->add_option("--perturbation-norm", c->perturbation_norm, "l2 norm")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--trials", c->trials, "trials per rung")->check(CLI::PositiveNumber);
    add_output_options(sub, *c);
  }
  {
    auto [sub, c] = make("squeeze", "non-squeezing witness probe");
    c->T = 0.3;
    add_dynamics_options(sub, *c);
    sub->add_option("--input", c->input, "u_star state file (default zero)")->check(CLI::ExistingFile);
    sub->add_option("--R", c->R, "ball radius")->check(CLI::PositiveNumber);
    sub->add_option("--r", c->r, "cylinder radius")->check(CLI::PositiveNumber);
    sub->add_option("--epsilon", c->epsilon, "margin")->check(CLI::PositiveNumber);
    sub->add_option("--n0", c->n0, "cylinder mode");
    sub->add_option("--z-re", c->z_re, "cylinder center, real part");
    sub->add_option("--z-im", c->z_im, "cylinder center, imaginary part");
    sub->add_option("--samples", c->samples, "probe budget")->check(CLI::PositiveNumber);
    add_output_options(sub, *c);
  }

  ParseResult result;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return result;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << "\n";
    result.exit_code = kExitConfig;
    return result;
  }
  for (CLI::App* sub : app.get_subcommands()) {
    RunConfig c = *configs.at(sub->get_name());
    if (c.truncation && *c.truncation > c.n_max) {
      err << "config error: truncation exceeds n-max\n";
      result.exit_code = kExitConfig;
      return result;
    }
    if (c.profile == "explicit" && c.input.empty() && c.subcommand != "squeeze" &&
        c.subcommand != "resonance table") {
      err << "config error: input: explicit profile requires --input\n";
      result.exit_code = kExitConfig;
      return result;
    }
    result.config = std::move(c);
  }
  return result;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    fs::create_directories(c.out_dir);
    if (c.subcommand == "simulate") return cmd_simulate(c, out);
    if (c.subcommand == "gauge-check") return cmd_gauge(c, out);
    if (c.subcommand == "resonance table") return cmd_resonance_table(c, out);
    if (c.subcommand == "norms") return cmd_norms(c, out);
    if (c.subcommand == "approx") return cmd_approx(c, out);
    if (c.subcommand == "perturb") return cmd_perturb(c, out);
    if (c.subcommand == "squeeze") return cmd_squeeze(c, out);
    err << "config error: unknown subcommand " << c.subcommand << "\n";
    return kExitConfig;
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  configure_threads_from_env();
  ParseResult parsed = parse_config(argc, argv, out, err);
  if (!parsed.config) return parsed.exit_code;
  return dispatch(*parsed.config, out, err);
}

}  // namespace fournls::cli
