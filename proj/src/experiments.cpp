#include "fournls/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "fournls/error.hpp"
#include "fournls/parallel.hpp"

namespace fournls {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

double mode_phase(std::uint64_t seed, int n) {
  return kTwoPi * unit_interval(derive_seed(seed, {static_cast<std::uint64_t>(n + (1LL << 31))}));
}

double power_decay_mass(double p) {
  constexpr int kTerms = 100000;
  double acc = 1.0;
  for (int n = kTerms; n >= 1; --n) acc += 2.0 * std::pow(1.0 + double(n) * n, -p);
  acc += 2.0 * std::pow(static_cast<double>(kTerms), 1.0 - 2.0 * p) / (2.0 * p - 1.0);
  return acc;
}

const char* name(ProfileKind k) {
  switch (k) {
    case ProfileKind::ExpDecay: return "exp_decay";
    case ProfileKind::PowerDecay: return "power_decay";
    case ProfileKind::SingleMode: return "single_mode";
    case ProfileKind::Explicit: return "explicit";
  }
  return "?";
}

double low_error(const FourierState& a, const FourierState& b, int cutoff) {
  double acc = 0.0;
  for (int n = -cutoff; n <= cutoff; ++n) acc += std::norm(a.at(n) - b.at(n));
  return std::sqrt(acc);
}

int isqrt(int n) {
  int r = static_cast<int>(std::sqrt(static_cast<double>(n)));
  while ((r + 1) * (r + 1) <= n) ++r;
  while (r * r > n) --r;
  return r;
}

IntegratorSpec make_spec(Scheme scheme, double dt, std::optional<int> truncation = std::nullopt) {
  IntegratorSpec spec;
  spec.scheme = scheme;
  spec.dt = dt;
  spec.truncation = truncation;
  spec.validate();
  return spec;
}

// Runs body(i) for i in [0, count) across workers, rethrowing the first failure
// in index order so error reporting does not depend on scheduling.
template <class Body>
void parallel_tasks(std::size_t count, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Co-evolves a and b with their own steppers and tracks the sup over steps of
// the low-frequency distance.
double sup_low_distance(FourierState a, FourierState b, const IntegratorSpec& spec_a,
                        const IntegratorSpec& spec_b, const EquationKind& kind, double T,
                        int cutoff) {
  const std::size_t steps = step_count(T, spec_a.dt);
  Stepper sa(a.n_max(), spec_a, kind);
  Stepper sb(b.n_max(), spec_b, kind);
  double worst = low_error(a, b, cutoff);
  for (std::size_t k = 1; k <= steps; ++k) {
    sa.advance(a, spec_a.dt);
    sb.advance(b, spec_b.dt);
    if (!a.all_finite() || !b.all_finite()) throw NumericFailure(k, "non-finite amplitude");
    worst = std::max(worst, low_error(a, b, cutoff));
  }
  return worst;
}

void check_ladder(const std::vector<int>& ladder) {
  if (ladder.empty()) throw RangeError("ladder must be nonempty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] < 1) throw RangeError("ladder values must be positive");
    if (i > 0 && ladder[i] <= ladder[i - 1]) throw RangeError("ladder must be strictly increasing");
  }
}

}  // namespace

void ProfileSpec::validate() const {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw RangeError("profile amplitude must be >= 0");
  switch (kind) {
    case ProfileKind::ExpDecay:
      if (!(decay > 0.0)) throw RangeError("exp_decay profile needs decay > 0");
      break;
    case ProfileKind::PowerDecay:
      if (!(decay > 0.5)) throw RangeError("power_decay profile needs decay > 1/2 for finite mass");
      break;
    case ProfileKind::SingleMode:
      break;
    case ProfileKind::Explicit:
      if (!explicit_state) throw RangeError("explicit profile needs a state");
      break;
  }
}

FourierState generate_profile(const ProfileSpec& p, int n_max) {
  p.validate();
  FourierState out(n_max);
  switch (p.kind) {
    case ProfileKind::ExpDecay: {
      const double norm = p.amplitude / std::sqrt(1.0 / std::tanh(p.decay));
      for (int n = -n_max; n <= n_max; ++n)
        out[n] = std::polar(norm * std::exp(-p.decay * std::abs(n)), mode_phase(p.seed, n));
      break;
    }
    case ProfileKind::PowerDecay: {
      const double norm = p.amplitude / std::sqrt(power_decay_mass(p.decay));
      for (int n = -n_max; n <= n_max; ++n)
        out[n] = std::polar(norm * std::pow(1.0 + double(n) * n, -0.5 * p.decay), mode_phase(p.seed, n));
      break;
    }
    case ProfileKind::SingleMode:
      if (out.contains(p.mode)) out[p.mode] = p.amplitude;
      break;
    case ProfileKind::Explicit:
      out = p.explicit_state->resized(n_max);
      break;
  }
  return out;
}

Json to_json(const ProfileSpec& p) {
  Json j;
  j["kind"] = name(p.kind);
  j["amplitude"] = p.amplitude;
  j["decay"] = p.decay;
  j["mode"] = p.mode;
  j["seed"] = p.seed;
  if (p.explicit_state) j["explicit_n_max"] = p.explicit_state->n_max();
  return j;
}

Json to_json(const IntegratorSpec& s) {
  Json j;
  j["scheme"] = s.scheme == Scheme::ExpRK4 ? "exp_rk4" : "strang";
  j["dt"] = s.dt;
  j["truncation"] = s.truncation ? Json(*s.truncation) : Json(nullptr);
  return j;
}

Json to_json(const EquationKind& k) {
  Json j;
  j["equation"] = k.equation == Equation::Full4NLS ? "full" : "wick";
  j["sign"] = k.sign;
  j["linear_only"] = k.linear_only;
  return j;
}

ExperimentReport run_approximation_study(const ApproximationConfig& cfg) {
  check_ladder(cfg.ladder);
  if (cfg.ref_factor < 2) throw RangeError("ref_factor must be >= 2");
  cfg.kind.validate();
  cfg.profile.validate();
  const IntegratorSpec base = make_spec(cfg.scheme, cfg.dt);
  step_count(cfg.T, cfg.dt);

  struct Task {
    int N;
    int factor;
  };
  std::vector<Task> tasks;
  for (int N : cfg.ladder) tasks.push_back({N, cfg.ref_factor});
  if (cfg.richardson_check) tasks.push_back({cfg.ladder.front(), 2 * cfg.ref_factor});

  std::vector<double> errors(tasks.size());
  parallel_tasks(tasks.size(), [&](std::size_t i) {
    const int N = tasks[i].N;
    const int n_ref = N * tasks[i].factor;
    const FourierState datum = generate_profile(cfg.profile, N);
    IntegratorSpec approx = base, ref = base;
    approx.truncation = N;
    ref.truncation = n_ref;
    errors[i] = sup_low_distance(datum.resized(n_ref), datum, ref, approx, cfg.kind, cfg.T, isqrt(N));
  });

  ExperimentReport report;
  report.kind = "approx";
  report.params["profile"] = to_json(cfg.profile);
  report.params["ladder"] = cfg.ladder;
  report.params["ref_factor"] = cfg.ref_factor;
  report.params["T"] = cfg.T;
  report.params["integrator"] = to_json(base);
  report.params["equation"] = to_json(cfg.kind);
  report.params["richardson_check"] = cfg.richardson_check;
  report.columns = {"N", "low_cutoff", "N_ref", "error"};
  for (std::size_t i = 0; i < cfg.ladder.size(); ++i) {
    const int N = cfg.ladder[i];
    report.table.push_back({double(N), double(isqrt(N)), double(N * cfg.ref_factor), errors[i]});
  }
  // errors at this level are transform round-off, not truncation error
  const double floor = 1e-14 * std::max(1.0, cfg.profile.amplitude);
  std::vector<double> xs, ys;
  bool decreasing = true;
  for (std::size_t i = 0; i < cfg.ladder.size(); ++i) {
    if (i > 0 && !(errors[i] < errors[i - 1])) decreasing = false;
    if (errors[i] > floor) xs.push_back(cfg.ladder[i]), ys.push_back(errors[i]);
  }
  report.summary["roundoff_floor"] = floor;
  if (xs.size() >= 3 && xs.size() == cfg.ladder.size()) report.fitted = fit_decay_rate(xs, ys);
  report.summary["strictly_decreasing"] = decreasing;
  if (errors.front() > 0.0) report.summary["last_over_first"] = errors[cfg.ladder.size() - 1] / errors.front();
  if (cfg.richardson_check) {
    const double e1 = errors.front(), e2 = errors.back();
    const double rel = e1 == 0.0 && e2 == 0.0 ? 0.0 : std::abs(e2 - e1) / std::max(e1, e2);
    report.summary["richardson"] = {{"N", cfg.ladder.front()},
                                    {"ref_factor", 2 * cfg.ref_factor},
                                    {"error", e2},
                                    {"relative_difference", rel},
                                    {"within_10_percent", rel < 0.1}};
  }
  return report;
}

FourierState high_frequency_perturbation(int cutoff, int n_max, double norm, std::uint64_t seed) {
  if (cutoff < 0 || cutoff >= n_max) throw RangeError("perturbation band cutoff < |n| <= n_max is empty");
  FourierState p(n_max);
  if (norm == 0.0) return p;
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int n = -n_max; n <= n_max; ++n) {
    if (std::abs(n) <= cutoff) continue;
    const double re = gauss(rng);
    const double im = gauss(rng);
    p[n] = Complex{re, im};
  }
  const double scale = norm / l2_norm(p);
  for (Complex& c : p.coeffs()) c *= scale;
  return p;
}

void check_high_frequency(const FourierState& p, int cutoff) {
  for (int n = -std::min(cutoff, p.n_max()); n <= std::min(cutoff, p.n_max()); ++n)
    if (p[n] != Complex{})
      throw PreconditionError("perturbation leaks into |n| <= " + std::to_string(cutoff) +
                              " at n=" + std::to_string(n));
}

ExperimentReport run_perturbation_study(const PerturbationConfig& cfg) {
  check_ladder(cfg.ladder);
  if (cfg.trials < 1) throw RangeError("trials must be >= 1");
  if (!(cfg.perturbation_norm >= 0.0)) throw RangeError("perturbation norm must be >= 0");
  cfg.kind.validate();
  cfg.profile.validate();
  const IntegratorSpec spec = make_spec(cfg.scheme, cfg.dt);
  step_count(cfg.T, cfg.dt);

  const std::size_t rungs = cfg.ladder.size();
  std::vector<double> divergence(rungs * cfg.trials);
  parallel_tasks(divergence.size(), [&](std::size_t task) {
    const std::size_t rung = task / cfg.trials, trial = task % cfg.trials;
    const int np = cfg.ladder[rung];
    const int resolution = 2 * np;
    const FourierState u0 = generate_profile(cfg.profile, resolution);
    const FourierState p = high_frequency_perturbation(
        np, resolution, cfg.perturbation_norm,
        derive_seed(cfg.seed, {static_cast<std::uint64_t>(np), trial}));
    check_high_frequency(p, np);
    FourierState v0 = u0;
    for (std::size_t i = 0; i < v0.size(); ++i) v0.coeffs()[i] += p.coeffs()[i];
    const int cutoff = static_cast<int>(std::floor(np - std::sqrt(static_cast<double>(np))));
    divergence[task] = sup_low_distance(u0, v0, spec, spec, cfg.kind, cfg.T, cutoff);
  });

  ExperimentReport report;
  report.kind = "perturb";
  report.params["profile"] = to_json(cfg.profile);
  report.params["ladder"] = cfg.ladder;
  report.params["perturbation_norm"] = cfg.perturbation_norm;
  report.params["T"] = cfg.T;
  report.params["integrator"] = to_json(spec);
  report.params["equation"] = to_json(cfg.kind);
  report.params["trials"] = cfg.trials;
  report.params["seed"] = cfg.seed;
  report.columns = {"N_prime", "low_cutoff", "resolution", "max_divergence", "mean_divergence"};
  bool non_increasing = true;
  double previous = 0.0;
  for (std::size_t rung = 0; rung < rungs; ++rung) {
    const int np = cfg.ladder[rung];
    double worst = 0.0, mean = 0.0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const double d = divergence[rung * cfg.trials + t];
      worst = std::max(worst, d);
      mean += d;
    }
    mean /= static_cast<double>(cfg.trials);
    if (rung > 0 && worst > previous) non_increasing = false;
    previous = worst;
    report.table.push_back({double(np), std::floor(np - std::sqrt(double(np))), double(2 * np), worst, mean});
  }
  report.summary["non_increasing"] = non_increasing;
  return report;
}

void SqueezeConfig::validate() const {
  if (!(r > 0.0) || !(r < R)) throw RangeError("squeeze probe needs 0 < r < R");
  if (!(epsilon > 0.0) || !(epsilon < 0.5 * (R - r))) throw RangeError("squeeze probe needs 0 < epsilon < (R-r)/2");
  if (N < 0 || std::abs(n0) > N) throw RangeError("squeeze probe needs |n0| <= N");
  if (samples < 1) throw RangeError("squeeze probe needs at least one sample");
  if (!(T >= 0.0)) throw RangeError("squeeze probe needs T >= 0");
  kind.validate();
}

ExperimentReport run_squeeze_probe(const SqueezeConfig& cfg) {
  cfg.validate();
  const IntegratorSpec spec = make_spec(cfg.scheme, cfg.dt, cfg.N);
  const std::size_t steps = step_count(cfg.T, cfg.dt);
  (void)steps;
  const FourierState center = cfg.u_star.resized(cfg.N);
  const double radius = cfg.R - cfg.epsilon;

  const std::size_t sweep = std::max<std::size_t>(1, cfg.samples / 8);
  const std::size_t interior = cfg.samples > sweep ? std::min(cfg.samples - sweep, cfg.samples / 10) : 0;
  const std::size_t total = std::max(cfg.samples, sweep);
  const std::size_t dims = 2 * center.size();

  struct Row {
    ProbeFamily family;
    double rho;
    double distance;
  };
  std::vector<Row> rows(total);
  parallel_tasks(total, [&](std::size_t k) {
    FourierState d(cfg.N);
    ProbeFamily family;
    double rho = radius;
    if (k < sweep) {
      family = ProbeFamily::PhaseSweep;
      d[cfg.n0] = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(sweep));
    } else {
      Rng rng(derive_seed(cfg.seed, {static_cast<std::uint64_t>(k)}));
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (Complex& c : d.coeffs()) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        c = Complex{re, im};
      }
      const double len = l2_norm(d);
      for (Complex& c : d.coeffs()) c /= len;
      family = ProbeFamily::RandomSphere;
      if (k >= total - interior) {
        family = ProbeFamily::Interior;
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        rho = radius * std::pow(uni(rng), 1.0 / static_cast<double>(dims));
      }
    }
    FourierState u0 = center;
    for (std::size_t i = 0; i < u0.size(); ++i) u0.coeffs()[i] += rho * d.coeffs()[i];
    const FourierState uT = evolve(u0, cfg.T, spec, cfg.kind);
    rows[k] = {family, rho, std::abs(uT[cfg.n0] - cfg.z)};
  });

  ExperimentReport report;
  report.kind = "squeeze";
  report.params["u_star_n_max"] = cfg.u_star.n_max();
  report.params["u_star_l2"] = l2_norm(cfg.u_star);
  report.params["R"] = cfg.R;
  report.params["r"] = cfg.r;
  report.params["epsilon"] = cfg.epsilon;
  report.params["n0"] = cfg.n0;
  report.params["z"] = {cfg.z.real(), cfg.z.imag()};
  report.params["T"] = cfg.T;
  report.params["N"] = cfg.N;
  report.params["samples"] = cfg.samples;
  report.params["integrator"] = to_json(spec);
  report.params["equation"] = to_json(cfg.kind);
  report.params["seed"] = cfg.seed;
  report.columns = {"sample", "family", "radius", "distance", "margin"};
  std::size_t best = 0;
  for (std::size_t k = 0; k < total; ++k) {
    const double margin = rows[k].distance - cfg.r;
    report.table.push_back({double(k), double(static_cast<int>(rows[k].family)), rows[k].rho,
                            rows[k].distance, margin});
    if (margin > report.table[best][4]) best = k;
  }
  const double best_margin = report.table[best][4];
  report.summary["best_sample"] = best;
  report.summary["best_margin"] = best_margin;
  report.summary["best_family"] = static_cast<int>(rows[best].family);
  report.summary["witness_found"] = best_margin > 0.0;
  report.summary["verdict"] = best_margin > 0.0 ? "witness found for this (N, T)"
                                                : "no witness found among samples";
  return report;
}

}  // namespace fournls
