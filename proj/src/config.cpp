#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "qglab/errors.hpp"
#include "qglab/harness.hpp"

namespace qglab {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where, std::vector<std::string>& errs) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) errs.push_back("unknown key \"" + it.key() + "\" in " + where);
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

const std::vector<std::string>& known_experiments() {
  static const std::vector<std::string> ids = {
      "adiabatic-separation", "edge-free-dynamics",     "confinement-tail",
      "coupling-residual",    "bent-tube-vs-effective", "plane-vs-tube",
      "resolvent-convergence",
      // Direct verification experiments so that every acceptance criterion
      // is reproducible from one config file.
      "mode-correctness",     "bent-consistency",       "derivative-lemma"};
  return ids;
}

int ExperimentConfig::grid_points(std::size_t i) const {
  if (points.empty()) return 512;
  return points[std::min(i, points.size() - 1)];
}

int ExperimentConfig::tube_points(std::size_t i) const {
  if (tube_nu.empty()) return 96;
  return tube_nu[std::min(i, tube_nu.size() - 1)];
}

ExperimentConfig load_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw config_error(std::string("config: invalid json: ") + e.what());
  }

  std::vector<std::string> errs;
  ExperimentConfig cfg;
  cfg.echo = j;
  cfg.hash = fnv1a_hash(j.dump());

  reject_unknown(j,
                 {"schema_version", "experiment", "geometry", "sweep", "numerics", "profile",
                  "chi", "observables", "output", "checks"},
                 "config", errs);

  cfg.schema_version = j.value("schema_version", 0);
  if (cfg.schema_version != 1) errs.push_back("schema_version must be 1");

  cfg.experiment = j.value("experiment", "");
  const auto& ids = known_experiments();
  if (std::find(ids.begin(), ids.end(), cfg.experiment) == ids.end())
    errs.push_back("unknown experiment id \"" + cfg.experiment + "\"");

  if (j.contains("geometry")) {
    const json& g = j["geometry"];
    reject_unknown(g, {"graph", "graph_file", "opening_angle", "theta", "delta", "plateau"},
                   "geometry", errs);
    cfg.graph_kind = g.value("graph", "v");
    if (cfg.graph_kind != "v" && cfg.graph_kind != "line" && cfg.graph_kind != "file" &&
        cfg.graph_kind != "curve")
      errs.push_back("geometry.graph must be one of v|line|file|curve");
    cfg.graph_file = g.value("graph_file", "");
    if (cfg.graph_kind == "file") {
      if (cfg.graph_file.empty())
        errs.push_back("geometry.graph_file required for graph=file");
      else if (!std::filesystem::exists(cfg.graph_file))
        errs.push_back("geometry.graph_file does not exist: " + cfg.graph_file);
    }
    cfg.opening_angle = g.value("opening_angle", M_PI / 2);
    cfg.theta = g.value("theta", M_PI / 2);
    cfg.bend_delta = g.value("delta", 0.4);
    cfg.plateau = g.value("plateau", 0.82);
    if (!(cfg.opening_angle > 0.0 && cfg.opening_angle < M_PI))
      errs.push_back("geometry.opening_angle must lie in (0, pi)");
    if (!(cfg.theta >= 0.0 && cfg.theta < M_PI)) errs.push_back("geometry.theta must lie in [0, pi)");
    if (!(cfg.bend_delta > 0.0)) errs.push_back("geometry.delta must be > 0");
    if (!(cfg.plateau > 0.0 && cfg.plateau < 1.0)) errs.push_back("geometry.plateau must lie in (0,1)");
  }

  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    reject_unknown(s, {"epsilon", "delta", "beta"}, "sweep", errs);
    if (s.contains("epsilon")) cfg.epsilons = s["epsilon"].get<std::vector<double>>();
    if (s.contains("delta")) cfg.deltas = s["delta"].get<std::vector<double>>();
    if (s.contains("beta")) cfg.beta = s["beta"].get<double>();
    if (!cfg.epsilons.empty() && !strictly_decreasing(cfg.epsilons))
      errs.push_back("sweep.epsilon must be strictly decreasing");
    if (!cfg.deltas.empty() && !strictly_decreasing(cfg.deltas))
      errs.push_back("sweep.delta must be strictly decreasing");
    for (double e : cfg.epsilons)
      if (!(e > 0.0)) errs.push_back("sweep.epsilon values must be > 0");
    for (double d : cfg.deltas)
      if (!(d > 0.0)) errs.push_back("sweep.delta values must be > 0");
  }

  if (j.contains("numerics")) {
    const json& n = j["numerics"];
    reject_unknown(n,
                   {"box", "points", "dt_over_epsilon", "T", "band", "other_bands", "stepper",
                    "snapshots", "tube_s0", "tube_s1", "tube_ns", "tube_nu", "memory_budget_mb"},
                   "numerics", errs);
    cfg.box = n.value("box", 3.2);
    if (n.contains("points")) {
      if (n["points"].is_number())
        cfg.points = {n["points"].get<int>()};
      else
        cfg.points = n["points"].get<std::vector<int>>();
    }
    cfg.dt_over_epsilon = n.value("dt_over_epsilon", 0.02);
    cfg.T = n.value("T", 0.5);
    cfg.band = n.value("band", 0);
    if (n.contains("other_bands")) cfg.other_bands = n["other_bands"].get<std::vector<int>>();
    cfg.stepper = n.value("stepper", "spectral-split");
    cfg.snapshots = n.value("snapshots", 16);
    cfg.tube_s0 = n.value("tube_s0", -3.5);
    cfg.tube_s1 = n.value("tube_s1", 2.5);
    cfg.tube_ns = n.value("tube_ns", 600);
    if (n.contains("tube_nu")) {
      if (n["tube_nu"].is_number())
        cfg.tube_nu = {n["tube_nu"].get<int>()};
      else
        cfg.tube_nu = n["tube_nu"].get<std::vector<int>>();
    }
    cfg.memory_budget_mb = n.value("memory_budget_mb", 2048);

    if (cfg.stepper != "spectral-split" && cfg.stepper != "implicit")
      errs.push_back("numerics.stepper must be spectral-split or implicit");
    if (!(cfg.dt_over_epsilon > 0.0 && cfg.dt_over_epsilon <= 0.5))
      errs.push_back("numerics.dt_over_epsilon violates the stability rule dt <= eps/2");
    if (!(cfg.T > 0.0)) errs.push_back("numerics.T must be > 0");
    if (cfg.band < 0 || cfg.band > kMaxBand) errs.push_back("numerics.band out of range");
    if (cfg.stepper == "spectral-split")
      for (int p : cfg.points)
        if (!power_of_two(p)) errs.push_back("numerics.points must be powers of two for spectral-split");
    // Transverse resolution: >= 10 points per sqrt(eps) on each sweep point.
    for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
      if (cfg.points.empty()) break;
      const double h = 2.0 * cfg.box / cfg.grid_points(i);
      if (cfg.experiment == "coupling-residual" || cfg.experiment == "mode-correctness") break;
      if (h > std::sqrt(cfg.epsilons[i]) / 10.0 + 1e-12) {
        std::ostringstream os;
        os << "numerics: grid spacing " << h << " cannot resolve sqrt(eps)/10 at eps="
           << cfg.epsilons[i];
        errs.push_back(os.str());
        break;
      }
    }
  }

  if (j.contains("profile")) {
    const json& p = j["profile"];
    reject_unknown(p, {"kind", "center", "sigma", "width", "momentum"}, "profile", errs);
    const std::string kind = p.value("kind", "gaussian");
    try {
      if (kind == "gaussian")
        cfg.profile = Profile::make_gaussian(p.value("center", 0.0), p.value("sigma", 0.3),
                                             p.value("momentum", 0.0));
      else if (kind == "bump")
        cfg.profile = Profile::make_bump(p.value("center", 0.0), p.value("width", 0.5),
                                         p.value("momentum", 0.0));
      else
        errs.push_back("profile.kind must be gaussian or bump");
      cfg.has_profile = true;
    } catch (const std::exception& e) {
      errs.push_back(std::string("profile: ") + e.what());
    }
  }

  if (j.contains("chi")) {
    const json& c = j["chi"];
    reject_unknown(c, {"lo", "hi"}, "chi", errs);
    cfg.chi_lo = c.value("lo", 0.0);
    cfg.chi_hi = c.value("hi", 0.0);
    if (!(cfg.chi_lo < cfg.chi_hi)) errs.push_back("chi: need lo < hi");
  }

  if (j.contains("observables")) {
    const json& o = j["observables"];
    reject_unknown(o, {"delta0", "z"}, "observables", errs);
    cfg.delta0 = o.value("delta0", 0.3);
    if (o.contains("z"))
      for (const auto& zz : o["z"]) {
        const double re = zz.at(0).get<double>(), im = zz.at(1).get<double>();
        if (!(im > 0.0)) errs.push_back("observables.z must have positive imaginary part");
        cfg.z_points.emplace_back(re, im);
      }
  }

  if (j.contains("output")) {
    const json& o = j["output"];
    reject_unknown(o, {"dir", "traces"}, "output", errs);
    cfg.out_dir = o.value("dir", "out");
    cfg.dump_traces = o.value("traces", false);
  }

  if (j.contains("checks")) {
    for (const auto& c : j["checks"]) {
      reject_unknown(c, {"observable", "type", "lo", "hi", "min_r2", "threshold"}, "checks", errs);
      CheckSpec spec;
      spec.observable = c.value("observable", "");
      spec.type = c.value("type", "");
      spec.lo = c.value("lo", 0.0);
      spec.hi = c.value("hi", 0.0);
      spec.min_r2 = c.value("min_r2", 0.0);
      spec.threshold = c.value("threshold", 0.0);
      cfg.checks.push_back(spec);
    }
  }

  // delta(eps) schedule admissibility warnings.
  if (cfg.beta) {
    const double b = *cfg.beta;
    if (b >= 0.5)
      cfg.warnings.push_back("beta >= 1/2: schedule inadmissible for both estimates");
    else if (b >= 0.1 &&
             (cfg.experiment == "plane-vs-tube" || cfg.experiment == "bent-tube-vs-effective"))
      cfg.warnings.push_back("beta in [1/10, 1/2): admissible for tail only");
  }

  if (!errs.empty()) {
    std::string msg = "config invalid:";
    for (const std::string& e : errs) msg += "\n  - " + e;
    throw config_error(msg);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_config_text(ss.str());
}

}  // namespace qglab
