// Copyright 2026 The mpemba-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpemba/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "mpemba/parallel.hpp"
#include "mpemba/ruc.hpp"
#include "mpemba/thermo.hpp"

namespace mpemba {

namespace {

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += format_real(xs[i]);
  }
  return out;
}

std::vector<double> uniform_times(double t_max, int points) {
  if (!(t_max > 0.0) || points < 2) throw ConfigError("time grid needs t_max > 0 and t_points >= 2");
  std::vector<double> ts(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) ts[static_cast<std::size_t>(k)] = t_max * k / (points - 1);
  return ts;
}

void require_non_empty(const std::vector<double>& xs, const std::string& key) {
  if (xs.empty()) throw ConfigError(key + ": grid must not be empty");
}

void require_non_negative(const std::vector<double>& xs, const std::string& key) {
  for (const double x : xs) {
    if (x < 0.0) throw ConfigError(key + ": values must be non-negative");
  }
}

std::uint64_t base_seed(const Config& cfg, const RunOptions& opts) {
  return opts.seed ? *opts.seed : cfg.unsigned_integer("seed", 1);
}

// Parameter validation failures are configuration errors, not numerical ones.
template <class Params>
void checked(const Params& p) {
  try {
    p.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

DickeParams dicke_params(const Config& cfg, int spins) {
  DickeParams p;
  p.spins = spins;
  p.field = cfg.number("field", 1.0);
  p.boson = cfg.number("boson", 1.0);
  p.coupling = cfg.number("coupling", 1.0);
  p.loss = cfg.number("loss", 1.0);
  checked(p);
  return p;
}

OscillatorParams oscillator_params(const Config& cfg) {
  OscillatorParams p;
  p.frequency = cfg.number("frequency", 1.0);
  p.gamma = cfg.number("gamma", 1.0);
  if (cfg.has("inverse_temperature")) {
    p.inverse_temperature = cfg.number("inverse_temperature", 0.0);
  } else {
    p.mean_occupation = cfg.number("occupation", 1.0);
  }
  checked(p);
  return p;
}

void record_dicke(std::map<std::string, std::string>& out, const DickeParams& p) {
  out["field"] = format_real(p.field);
  out["boson"] = format_real(p.boson);
  out["coupling"] = format_real(p.coupling);
  out["loss"] = format_real(p.loss);
}

void record_oscillator(std::map<std::string, std::string>& out, const OscillatorParams& p) {
  out["frequency"] = format_real(p.frequency);
  out["gamma"] = format_real(p.gamma);
  out["occupation"] = format_real(p.occupation());
}

void append_curve(std::string& csv, const ThermalizationCurve& c) {
  for (std::size_t k = 0; k < c.times.size(); ++k) {
    csv += c.label + "," + format_real(c.times[k]) + "," + format_real(c.distances[k]) + "\n";
  }
}

ExperimentOutput thermalization(const std::string& id, const Config& cfg, const RunOptions& opts) {
  const bool dicke = id == "dicke-therm";
  if (dicke) {
    cfg.require_known({"spins", "field", "boson", "coupling", "loss", "seed", "epsilons", "t_max",
                       "t_points"});
  } else {
    cfg.require_known({"max_level", "frequency", "gamma", "occupation", "inverse_temperature",
                       "seed", "epsilons", "t_max", "t_points"});
  }
  ExperimentOutput out;
  out.experiment = id;
  const std::uint64_t seed = base_seed(cfg, opts);
  const auto epsilons = cfg.list("epsilons", dicke ? std::vector<double>{0.0, 1e-3, 1e-2, 1e-1}
                                                   : std::vector<double>{0.0});
  require_non_empty(epsilons, "epsilons");
  require_non_negative(epsilons, "epsilons");
  const double t_max = cfg.number("t_max", dicke ? 400.0 : 40.0);
  const int t_points = cfg.integer("t_points", 401);
  const auto times = uniform_times(t_max, t_points);

  auto& params = out.parameters;
  std::optional<OpenSystem> sys;
  if (dicke) {
    const auto p = dicke_params(cfg, cfg.integer("spins", 40));
    record_dicke(params, p);
    params["spins"] = std::to_string(p.spins);
    sys.emplace(OpenSystem::dicke(p));
  } else {
    const auto p = oscillator_params(cfg);
    const int max_level = cfg.integer("max_level", 20);
    record_oscillator(params, p);
    params["max_level"] = std::to_string(max_level);
    sys.emplace(OpenSystem::oscillator(p, max_level));
  }
  params["epsilons"] = join(epsilons);
  params["t_max"] = format_real(t_max);
  params["t_points"] = std::to_string(t_points);
  params["seed"] = std::to_string(seed);
  out.seeds = {seed};

  const auto& dec = sys->spectrum();
  const DirectPropagator direct(sys->model());
  const std::string prepared = dicke ? "orthogonalized" : "diagonalized";

  std::vector<ThermalizationCurve> curves(epsilons.size() + 1);
  parallel_for(curves.size(), opts.threads, [&](std::size_t k) {
    if (k == 0) {
      curves[k] = thermalization_curve(dec, direct, sys->original_state(seed), times, "original");
      return;
    }
    const double eps = epsilons[k - 1];
    curves[k] = thermalization_curve(dec, direct,
                                     sys->prepared_state(seed, eps, derive_seed(seed, 0)),
                                     times, prepared + " eps=" + format_real(eps));
  });

  out.csv = "label,t,delta\n";
  for (const auto& c : curves) append_curve(out.csv, c);
  return out;
}

ExperimentOutput speedup_sweep(const Config& cfg, const RunOptions& opts) {
  cfg.require_known({"model", "sizes", "field", "boson", "coupling", "loss", "frequency", "gamma",
                     "occupation", "inverse_temperature", "epsilons", "etas", "seed",
                     "seed_count"});
  ExperimentOutput out;
  out.experiment = "speedup-sweep";
  const std::string model = cfg.text("model", "dicke");
  if (model != "dicke" && model != "sho") {
    throw ConfigError("model: expected 'dicke' or 'sho', got '" + model + "'");
  }
  const bool dicke = model == "dicke";
  const auto sizes = cfg.int_list("sizes", {dicke ? 40 : 20});
  const auto epsilons = cfg.list("epsilons", log_grid(1e-4, 1.0, 25));
  const auto etas = cfg.list("etas", {1e-4});
  require_non_empty(epsilons, "epsilons");
  require_non_negative(epsilons, "epsilons");
  require_non_empty(etas, "etas");
  for (const double eta : etas) {
    if (!(eta > 0.0)) throw ConfigError("etas: thresholds must be positive");
  }
  if (sizes.empty()) throw ConfigError("sizes: list must not be empty");
  const std::uint64_t seed = base_seed(cfg, opts);
  const int seed_count = cfg.integer("seed_count", 10);
  if (seed_count < 1) throw ConfigError("seed_count: must be at least 1");
  for (int k = 0; k < seed_count; ++k) out.seeds.push_back(seed + static_cast<std::uint64_t>(k));

  auto& params = out.parameters;
  params["model"] = model;
  params["epsilons"] = join(epsilons);
  params["etas"] = join(etas);
  params["seed"] = std::to_string(seed);
  params["seed_count"] = std::to_string(seed_count);
  std::string size_list;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    size_list += (i ? "," : "") + std::to_string(sizes[i]);
  }
  params["sizes"] = size_list;

  SweepOptions sweep_opts;
  sweep_opts.threads = opts.threads;
  out.csv = "model,N,seed,eta,epsilon,t_eq,speedup_pct\n";
  for (const int n : sizes) {
    std::optional<OpenSystem> sys;
    if (dicke) {
      const auto p = dicke_params(cfg, n);
      record_dicke(params, p);
      sys.emplace(OpenSystem::dicke(p));
    } else {
      const auto p = oscillator_params(cfg);
      record_oscillator(params, p);
      sys.emplace(OpenSystem::oscillator(p, n));
    }
    const auto result = run_epsilon_sweep(*sys, epsilons, etas, out.seeds, sweep_opts);
    for (const auto& row : result.rows) {
      out.csv += result.model + "," + std::to_string(result.size) + "," + std::to_string(row.seed) +
                 "," + format_real(row.eta) + "," + format_real(row.epsilon) + "," +
                 format_real(row.t_eq) + "," + format_real(row.speedup_pct) + "\n";
    }
  }
  return out;
}

ExperimentOutput ruc_ea(const Config& cfg, const RunOptions& opts) {
  cfg.require_known({"sites", "subsystem", "thetas", "epsilons", "depth", "realizations", "seed"});
  ExperimentOutput out;
  out.experiment = "ruc-ea";
  RucSpec base;
  base.sites = cfg.integer("sites", 16);
  base.subsystem = cfg.integer("subsystem", 4);
  base.depth = cfg.integer("depth", 20);
  base.realizations = cfg.integer("realizations", 100);
  base.seed = base_seed(cfg, opts);
  base.threads = opts.threads;
  const auto thetas = cfg.list("thetas", {0.2 * std::numbers::pi, 0.5 * std::numbers::pi});
  const auto epsilons = cfg.list("epsilons", {0.0, 1e-2, 1e-1, 1.0});
  require_non_empty(thetas, "thetas");
  require_non_empty(epsilons, "epsilons");
  require_non_negative(epsilons, "epsilons");

  auto& params = out.parameters;
  params["sites"] = std::to_string(base.sites);
  params["subsystem"] = std::to_string(base.subsystem);
  params["depth"] = std::to_string(base.depth);
  params["realizations"] = std::to_string(base.realizations);
  params["thetas"] = join(thetas);
  params["epsilons"] = join(epsilons);
  params["seed"] = std::to_string(base.seed);
  out.seeds = {base.seed};

  out.csv = "theta,epsilon,depth,ea_mean,ea_stderr,realizations\n";
  for (const double theta : thetas) {
    for (const double eps : epsilons) {
      RucSpec spec = base;
      spec.theta = theta;
      spec.epsilon = eps;
      const auto traj = run_ruc_experiment(spec);
      for (int t = 0; t <= spec.depth; ++t) {
        const auto k = static_cast<std::size_t>(t);
        out.csv += format_real(theta) + "," + format_real(eps) + "," + std::to_string(t) + "," +
                   format_real(traj.ea_mean[k]) + "," + format_real(traj.ea_stderr[k]) + "," +
                   std::to_string(spec.realizations) + "\n";
      }
    }
  }
  return out;
}

ExperimentOutput ruc_dimension(const Config& cfg, const RunOptions& opts) {
  cfg.require_known({"thetas", "epsilons", "subsystem", "preparations", "seed"});
  ExperimentOutput out;
  out.experiment = "ruc-dimension";
  const auto thetas = cfg.list("thetas", {0.1 * std::numbers::pi, 0.2 * std::numbers::pi,
                                          0.3 * std::numbers::pi, 0.4 * std::numbers::pi,
                                          0.5 * std::numbers::pi});
  const auto epsilons = cfg.list("epsilons", log_grid(1e-4, 10.0, 26));
  require_non_empty(thetas, "thetas");
  require_non_empty(epsilons, "epsilons");
  require_non_negative(epsilons, "epsilons");
  const int subsystem = cfg.integer("subsystem", 4);
  const int preparations = cfg.integer("preparations", 1000);
  const std::uint64_t seed = base_seed(cfg, opts);

  auto& params = out.parameters;
  params["thetas"] = join(thetas);
  params["epsilons"] = join(epsilons);
  params["subsystem"] = std::to_string(subsystem);
  params["preparations"] = std::to_string(preparations);
  params["seed"] = std::to_string(seed);
  out.seeds = {seed};

  out.csv = "theta,epsilon,ed_mean,ed_stderr\n";
  for (const auto& row : dimension_sweep(thetas, epsilons, subsystem, preparations, seed, opts.threads)) {
    out.csv += format_real(row.theta) + "," + format_real(row.epsilon) + "," +
               format_real(row.ed_mean) + "," + format_real(row.ed_stderr) + "\n";
  }
  return out;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ExperimentOutput run_experiment(const std::string& id, const Config& cfg, const RunOptions& opts) {
  if (opts.threads < 1) throw ConfigError("threads: must be at least 1");
  if (id == "dicke-therm" || id == "sho-therm") return thermalization(id, cfg, opts);
  if (id == "speedup-sweep") return speedup_sweep(cfg, opts);
  if (id == "ruc-ea") return ruc_ea(cfg, opts);
  if (id == "ruc-dimension") return ruc_dimension(cfg, opts);
  throw ConfigError("unknown experiment '" + id + "'");
}

RunArtifacts run_and_write(const std::string& id, const Config& cfg, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentOutput result = run_experiment(id, cfg, opts);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::filesystem::create_directories(opts.out_dir);
  RunArtifacts paths{opts.out_dir / (id + ".csv"), opts.out_dir / (id + ".manifest.json")};
  {
    std::ofstream csv(paths.csv, std::ios::binary);
    csv << result.csv;
    if (!csv) throw Error("cannot write " + paths.csv.string());
  }
  nlohmann::ordered_json manifest;
  manifest["experiment"] = id;
  manifest["version"] = MPEMBA_VERSION;
  manifest["csv"] = paths.csv.filename().string();
  manifest["parameters"] = result.parameters;
  manifest["seeds"] = result.seeds;
  manifest["threads"] = opts.threads;
  manifest["wall_time_s"] = wall;
  std::ofstream out(paths.manifest);
  out << manifest.dump(2) << "\n";
  if (!out) throw Error("cannot write " + paths.manifest.string());
  return paths;
}

}  // namespace mpemba
