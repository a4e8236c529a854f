#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qglab/profile.hpp"

namespace qglab {

// Least-squares power-law fit on (log x, log y).
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Requires >= 3 strictly positive points.
RateFit fit_rate(const std::vector<double>& xs, const std::vector<double>& ys);

// Plain linear least squares on raw (x, y) pairs.
RateFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys);

// -------------------------------------------------------------------------

struct CheckSpec {
  std::string observable;
  std::string type;  // slope-range | monotone-decreasing | max-below | slope-at-least
  double lo = 0.0, hi = 0.0;
  double min_r2 = 0.0;
  double threshold = 0.0;
};

// Validated experiment description. Fields not used by a given experiment
// keep their defaults.
struct ExperimentConfig {
  int schema_version = 1;
  std::string experiment;

  // geometry
  std::string graph_kind = "v";  // v | line | file | curve
  std::string graph_file;
  double opening_angle = M_PI / 2;
  double theta = M_PI / 2;
  double bend_delta = 0.4;
  double plateau = 0.82;

  // sweep
  std::vector<double> epsilons;
  std::vector<double> deltas;
  std::optional<double> beta;

  // numerics
  double box = 3.2;
  std::vector<int> points;
  double dt_over_epsilon = 0.02;
  double T = 0.5;
  int band = 0;
  std::vector<int> other_bands;
  std::string stepper = "spectral-split";
  int snapshots = 16;
  double tube_s0 = -3.5, tube_s1 = 2.5;
  int tube_ns = 600;
  std::vector<int> tube_nu;
  int memory_budget_mb = 2048;

  Profile profile = Profile::make_gaussian(0.0, 0.3);
  bool has_profile = false;

  double chi_lo = 0.0, chi_hi = 0.0;

  // observables
  double delta0 = 0.3;
  std::vector<std::pair<double, double>> z_points;  // resolvent spectral params

  std::string out_dir = "out";
  bool dump_traces = false;

  std::vector<CheckSpec> checks;
  std::vector<std::string> warnings;

  nlohmann::json echo;
  std::string hash;

  int grid_points(std::size_t sweep_index) const;
  int tube_points(std::size_t sweep_index) const;
};

// Parses and validates. Collects every violation and throws config_error
// with the full list if any.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig load_config_text(const std::string& text);

const std::vector<std::string>& known_experiments();

// -------------------------------------------------------------------------

struct SweepRow {
  std::string param_name;
  double param_value = 0.0;
  std::string observable;
  double value = 0.0;
  double runtime_s = 0.0;
};

struct SweepResult {
  std::string experiment;
  std::vector<SweepRow> rows;
  std::map<std::string, RateFit> fits;
  std::string config_hash;
  nlohmann::json config_echo;

  // Values of one observable ordered along the sweep.
  std::vector<double> series(const std::string& observable) const;
  std::vector<double> params(const std::string& observable) const;
};

// Executes the configured experiment. Sweep points run with per-point
// failure isolation; `threads` > 1 runs independent points concurrently
// under the config's memory budget.
SweepResult run_experiment(const ExperimentConfig& cfg, int threads = 1);

// sweep.csv + summary.json (+ optional trace files) under dir.
void emit_outputs(const SweepResult& result, const std::string& dir);

struct CheckOutcome {
  std::string description;
  bool passed = false;
};

// Evaluates the config's checks against a finished sweep.
std::vector<CheckOutcome> evaluate_checks(const ExperimentConfig& cfg, const SweepResult& result);

std::string fnv1a_hash(const std::string& text);

}  // namespace qglab
