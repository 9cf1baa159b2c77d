// Copyright 2026 The spinsqz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spinsqz/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "spinsqz/bayes.hpp"
#include "spinsqz/metrology.hpp"
#include "spinsqz/propagator.hpp"
#include "spinsqz/rng.hpp"

#ifndef SPINSQZ_VERSION
#define SPINSQZ_VERSION "unknown"
#endif

namespace spinsqz {

namespace fs = std::filesystem;

namespace {

using Keys = std::vector<std::string_view>;

const Keys kModelKeys = {"family", "N",  "delta",         "chi",         "omega",
                             "gamma0", "initial", "initial_theta", "initial_phi", "dt"};
const Keys kLabKeys = {"Lambda", "gamma", "Delta_a", "Delta_c", "eta0",
                           "omega_r", "N",    "tau",     "k",       "g",    "kgtau"};

struct ScenarioKeys {
  std::string_view name;
  std::vector<std::string_view> required;
  std::vector<std::string_view> allowed;  // in addition to required, scenario and output_dir
};

std::vector<std::string_view> join(std::initializer_list<Keys> lists) {
  std::vector<std::string_view> out;
  for (const Keys& l : lists) out.insert(out.end(), l.begin(), l.end());
  return out;
}

const std::vector<ScenarioKeys>& scenarios() {
  static const std::vector<ScenarioKeys> all = {
      {"qfi_dynamics", {"family", "N", "chi", "t_end"}, join({kModelKeys, {"record_every"}})},
      {"qfi_peak_scan",
       {"family", "N_values", "chi"},
       join({{"delta", "omega", "gamma0", "initial", "initial_theta", "initial_phi", "dt",
              "search_factor"}})},
      {"bayes",
       {"family", "N", "chi", "t_state", "M_max"},
       join({kModelKeys, {"phi_true", "seed", "n_seeds", "window", "grid_points"}})},
      {"dissipative_scan",
       {"Lambda", "gamma", "Delta_a", "Delta_c", "eta0", "omega_r", "N", "kappa_ratios", "t_end"},
       join({kLabKeys, {"drives", "dt", "record_every"}})},
      {"vc_params",
       {"Lambda", "gamma", "kappa", "Delta_a", "Delta_c", "eta0", "omega_r", "N"},
       join({kLabKeys})},
      {"qfunction", {"N"}, join({kModelKeys, {"t_state", "n_theta", "n_phi"}})},
      {"drive_profile", {"beta0", "omega", "Delta_c_prime", "kappa", "t_end"}, {"n_samples"}},
  };
  return all;
}

const ScenarioKeys& scenario_keys(const Config& cfg) {
  cfg.require("scenario", "every config");
  const std::string name = cfg.text("scenario");
  for (const ScenarioKeys& s : scenarios()) {
    if (s.name == name) return s;
  }
  throw ConfigError("unknown scenario '" + name + "'", cfg.line_of("scenario"));
}

void check_keys(const Config& cfg, const ScenarioKeys& s) {
  for (std::string_view key : s.required) cfg.require(key, "scenario " + std::string(s.name));
  for (const auto& [key, entry] : cfg.entries()) {
    if (key == "scenario" || key == "output_dir") continue;
    const bool known = std::find(s.required.begin(), s.required.end(), key) != s.required.end() ||
                       std::find(s.allowed.begin(), s.allowed.end(), key) != s.allowed.end();
    if (!known) {
      throw ConfigError("key '" + key + "' is not used by scenario " + std::string(s.name),
                        entry.line);
    }
  }
}

[[noreturn]] void bad_value(const Config& cfg, std::string_view key, const std::string& what) {
  throw ConfigError(std::string(key) + ": " + what, cfg.line_of(key));
}

int atom_number(const Config& cfg, std::string_view key = "N") {
  const long long n = cfg.integer(key);
  if (n < 1 || n > 4096) bad_value(cfg, key, "atom number must be in [1, 4096]");
  return static_cast<int>(n);
}

double positive(const Config& cfg, std::string_view key) {
  const double v = cfg.number(key);
  if (!(v > 0.0)) bad_value(cfg, key, "must be > 0");
  return v;
}

long long positive_integer(const Config& cfg, std::string_view key) {
  const long long v = cfg.integer(key);
  if (v < 1) bad_value(cfg, key, "must be >= 1");
  return v;
}

void set_default(Config& cfg, std::string_view key, double value) {
  if (!cfg.has(key)) cfg.set(key, format_number(value));
}

void set_default(Config& cfg, std::string_view key, long long value) {
  if (!cfg.has(key)) cfg.set(key, std::to_string(value));
}

void set_default(Config& cfg, std::string_view key, std::string value) {
  if (!cfg.has(key)) cfg.set(key, std::move(value));
}

ModelFamily family_of(const Config& cfg) {
  try {
    return parse_model_family(cfg.text("family"));
  } catch (const InvalidArgument& e) {
    bad_value(cfg, "family", e.what());
  }
}

ModelSpec model_from(const Config& cfg, int n_atoms) {
  try {
    return ModelSpec(family_of(cfg), n_atoms, cfg.number("delta"), cfg.number("chi"),
                     cfg.number("omega"), cfg.number("gamma0"));
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("model: ") + e.what(), cfg.line_of("family"));
  }
}

// Fills delta, omega, gamma0 and the initial-state keys.
void resolve_model(Config& cfg) {
  const ModelFamily family = family_of(cfg);
  set_default(cfg, "delta", 0.0);
  set_default(cfg, "omega", family == ModelFamily::Pdd ? 2.0 * cfg.number("delta") : 0.0);
  set_default(cfg, "gamma0", 0.0);
  set_default(cfg, "initial", std::string("down"));
  if (cfg.text("initial") == "coherent") {
    set_default(cfg, "initial_theta", 0.5 * kPi);
    set_default(cfg, "initial_phi", kPi);
  } else if (cfg.has("initial_theta") || cfg.has("initial_phi")) {
    const std::string_view key = cfg.has("initial_theta") ? "initial_theta" : "initial_phi";
    bad_value(cfg, key, "only valid with initial = coherent");
  }
}

DickeState initial_from(const Config& cfg, int n_atoms) {
  const std::string kind = cfg.text("initial");
  if (kind == "down") return basis_state(n_atoms, 0);
  if (kind == "up") return basis_state(n_atoms, n_atoms);
  if (kind == "coherent") {
    return coherent_state(n_atoms, cfg.number("initial_theta"), cfg.number("initial_phi"));
  }
  if (kind == "bw") return bw_state(n_atoms);
  if (kind == "mixed") return maximally_mixed(n_atoms);
  bad_value(cfg, "initial", "expected down, up, coherent, bw or mixed");
}

StepControl step_from(const Config& cfg, const ModelSpec& spec) {
  StepControl ctl;
  ctl.dt = cfg.has("dt") ? cfg.number("dt") : default_step_control(spec).dt;
  ctl.record_every = static_cast<int>(cfg.integer_or("record_every", 1));
  try {
    check_step_control(ctl, spec);
  } catch (const StepSizeError& e) {
    bad_value(cfg, "dt", e.what());
  } catch (const InvalidArgument& e) {
    bad_value(cfg, cfg.has("record_every") ? "record_every" : "dt", e.what());
  }
  return ctl;
}

long long step_count(const StepControl& ctl, const ModelSpec& spec, double span) {
  return static_cast<long long>(std::ceil(span / effective_step(ctl, spec) - 1e-9));
}

// Drives of a dissipative scan, in config order.
std::vector<std::string> drives_of(const Config& cfg) {
  std::vector<std::string> out;
  std::string_view rest = cfg.text("drives");
  while (true) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item != "pdd" && item != "oat") bad_value(cfg, "drives", "expected pdd and/or oat");
    out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

struct DissipativeRun {
  std::string drive;
  double kappa_ratio;
  ModelSpec spec;
  DickeState initial;
};

std::vector<DissipativeRun> dissipative_runs(const Config& cfg) {
  LabInputs lab = lab_inputs_from(cfg);
  lab.kappa = 1.0;  // placeholder; Delta_c' does not depend on kappa
  const double dcp = std::abs(derive(lab).Delta_c_prime);
  std::vector<DissipativeRun> runs;
  for (const std::string& drive : drives_of(cfg)) {
    for (double ratio : cfg.number_list("kappa_ratios")) {
      if (!(ratio > 0.0)) bad_value(cfg, "kappa_ratios", "ratios must be > 0");
      lab.kappa = ratio * dcp;
      const CavityParams p = derive(lab);
      const bool pdd = drive == "pdd";
      ModelSpec spec(ModelFamily::Vc, lab.N, p.omega_g, p.chi0, pdd ? 2.0 * std::abs(p.omega_g) : 0.0,
                     p.Gamma0);
      DickeState init = pdd ? basis_state(lab.N, 0) : coherent_state(lab.N, 0.5 * kPi, kPi);
      runs.push_back({drive, ratio, spec, std::move(init)});
    }
  }
  return runs;
}

Config resolve_impl(const Config& input) {
  Config cfg = input;
  const ScenarioKeys& keys = scenario_keys(cfg);
  check_keys(cfg, keys);
  const std::string& name = std::string(keys.name);
  set_default(cfg, "output_dir", std::string("."));

  if (name == "qfi_dynamics") {
    resolve_model(cfg);
    const ModelSpec spec = model_from(cfg, atom_number(cfg));
    if (spec.chi() == 0.0) bad_value(cfg, "chi", "must be nonzero for a t N |chi| axis");
    const double t_end = positive(cfg, "t_end");
    set_default(cfg, "dt", default_step_control(spec).dt);
    const StepControl ctl = step_from(cfg, spec);
    set_default(cfg, "record_every", std::max(1LL, step_count(ctl, spec, t_end) / 500));
    step_from(cfg, spec);
  } else if (name == "qfi_peak_scan") {
    set_default(cfg, "search_factor", 1.5);
    resolve_model(cfg);
    if (positive(cfg, "search_factor") < 1.0) bad_value(cfg, "search_factor", "must be >= 1");
    if (cfg.number("chi") == 0.0) bad_value(cfg, "chi", "must be nonzero");
    for (long long n : cfg.integer_list("N_values")) {
      if (n < 1 || n > 4096) bad_value(cfg, "N_values", "atom numbers must be in [1, 4096]");
      step_from(cfg, model_from(cfg, static_cast<int>(n)));
    }
  } else if (name == "bayes") {
    resolve_model(cfg);
    const ModelSpec spec = model_from(cfg, atom_number(cfg));
    if (cfg.number("t_state") < 0.0) bad_value(cfg, "t_state", "must be >= 0");
    positive_integer(cfg, "M_max");
    set_default(cfg, "dt", default_step_control(spec).dt);
    step_from(cfg, spec);
    set_default(cfg, "phi_true", 0.0);
    set_default(cfg, "seed", 1LL);
    set_default(cfg, "n_seeds", 1LL);
    set_default(cfg, "window", 0.5 * kPi);
    set_default(cfg, "grid_points", 4096LL);
    cfg.unsigned_integer_or("seed", 1);
    positive_integer(cfg, "n_seeds");
    if (!(positive(cfg, "window") <= kPi)) bad_value(cfg, "window", "must be in (0, pi]");
    if (cfg.integer("grid_points") < 1024) bad_value(cfg, "grid_points", "must be >= 1024");
  } else if (name == "dissipative_scan") {
    set_default(cfg, "drives", std::string("pdd, oat"));
    const double t_end = positive(cfg, "t_end");
    const std::vector<DissipativeRun> runs = dissipative_runs(cfg);
    if (!cfg.has("dt")) {
      double dt = std::numeric_limits<double>::infinity();
      for (const auto& r : runs) dt = std::min(dt, default_step_control(r.spec).dt);
      cfg.set("dt", format_number(dt));
    }
    for (const auto& r : runs) step_from(cfg, r.spec);
    set_default(cfg, "record_every",
                std::max(1LL, step_count(step_from(cfg, runs.front().spec), runs.front().spec,
                                         t_end) / 400));
  } else if (name == "vc_params") {
    lab_inputs_from(cfg);
  } else if (name == "qfunction") {
    atom_number(cfg);
    set_default(cfg, "t_state", 0.0);
    set_default(cfg, "n_theta", 61LL);
    set_default(cfg, "n_phi", 121LL);
    if (cfg.integer("n_theta") < 2) bad_value(cfg, "n_theta", "must be >= 2");
    if (cfg.integer("n_phi") < 2) bad_value(cfg, "n_phi", "must be >= 2");
    const double t_state = cfg.number("t_state");
    if (t_state < 0.0) bad_value(cfg, "t_state", "must be >= 0");
    if (t_state > 0.0) {
      cfg.require("family", "qfunction with t_state > 0");
      cfg.require("chi", "qfunction with t_state > 0");
      resolve_model(cfg);
      const ModelSpec spec = model_from(cfg, atom_number(cfg));
      set_default(cfg, "dt", default_step_control(spec).dt);
      step_from(cfg, spec);
    } else {
      set_default(cfg, "initial", std::string("down"));
      if (cfg.text("initial") == "coherent") {
        set_default(cfg, "initial_theta", 0.5 * kPi);
        set_default(cfg, "initial_phi", kPi);
      }
    }
  } else if (name == "drive_profile") {
    positive(cfg, "omega");
    positive(cfg, "kappa");
    positive(cfg, "t_end");
    cfg.number("beta0");
    cfg.number("Delta_c_prime");
    set_default(cfg, "n_samples", 401LL);
    if (cfg.integer("n_samples") < 2) bad_value(cfg, "n_samples", "must be >= 2");
  }
  return cfg;
}

// Rectangular CSV output with a fixed header.
class CsvWriter {
 public:
  CsvWriter(const fs::path& path, std::vector<std::string> header)
      : path_(path), out_(path), columns_(header.size()) {
    if (!out_) throw IoError("cannot write '" + path.string() + "'");
    write(header);
  }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw Error("CSV row width mismatch in " + path_.string());
    write(cells);
  }

  void finish() {
    out_.flush();
    if (!out_) throw IoError("write failed for '" + path_.string() + "'");
  }

 private:
  void write(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

  fs::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

std::string num(double v) { return format_number(v); }

std::vector<std::string> qfim_cells(const QfimResult& q, int n) {
  const double n2 = static_cast<double>(n) * n;
  const Vec3 g = q.optimal_generator();
  const double lam = q.lambda_max();
  return {num(lam / n2),  num(q.eigenvalues[1] / n2), num(q.eigenvalues[2] / n2),
          num(g(0)),      num(g(1)),                  num(g(2)),
          num(lam > 0.0 ? db_gain(lam, n) : -std::numeric_limits<double>::infinity())};
}

DickeState evolve_to(const DickeState& init, const ModelSpec& spec, const StepControl& ctl,
                     double t) {
  if (t == 0.0) return init;
  StepControl last_only = ctl;
  last_only.record_every = std::numeric_limits<int>::max();
  std::optional<DickeState> out;
  evolve_observed(init, spec, 0.0, t, last_only,
                  [&out](double, const DickeState& s) { out = s; });
  return *out;
}

void run_qfi_dynamics(const Config& cfg, const fs::path& dir, ScenarioResult& res) {
  const int n = atom_number(cfg);
  const ModelSpec spec = model_from(cfg, n);
  const StepControl ctl = step_from(cfg, spec);
  const double scale = n * std::abs(spec.chi());
  res.files.push_back(dir / "qfi_dynamics.csv");
  CsvWriter csv(res.files.back(), {"t", "t_nchi", "lambda_max_n2", "lambda_2_n2", "lambda_3_n2",
                                   "g_x", "g_y", "g_z", "gain_db"});
  evolve_observed(initial_from(cfg, n), spec, 0.0, cfg.number("t_end"), ctl,
                  [&](double t, const DickeState& s) {
                    std::vector<std::string> row{num(t), num(t * scale)};
                    const auto q = qfim_cells(qfim(s), n);
                    row.insert(row.end(), q.begin(), q.end());
                    csv.row(row);
                  });
  csv.finish();
}

void run_qfi_peak_scan(const Config& cfg, const fs::path& dir, ScenarioResult& res) {
  res.files.push_back(dir / "qfi_peak_scan.csv");
  CsvWriter csv(res.files.back(), {"N", "t_peak", "t_peak_nchi", "t_peak_estimate_nchi",
                                   "lambda_peak_n2", "g_x", "g_y", "g_z", "gain_db"});
  for (long long n64 : cfg.integer_list("N_values")) {
    const int n = static_cast<int>(n64);
    const ModelSpec spec = model_from(cfg, n);
    const StepControl ctl = step_from(cfg, spec);
    const double estimate = t_peak_estimate(n, spec.chi());
    double best_t = 0.0;
    QfimResult best;
    evolve_observed(initial_from(cfg, n), spec, 0.0, cfg.number("search_factor") * estimate, ctl,
                    [&](double t, const DickeState& s) {
                      QfimResult q = qfim(s);
                      if (q.lambda_max() > best.lambda_max()) {
                        best = q;
                        best_t = t;
                      }
                    });
    const double scale = n * std::abs(spec.chi());
    std::vector<std::string> row{std::to_string(n), num(best_t), num(best_t * scale),
                                 num(estimate * scale)};
    const auto q = qfim_cells(best, n);
    row.push_back(q[0]);
    row.insert(row.end(), q.begin() + 3, q.end());
    csv.row(row);
  }
  csv.finish();
}

void run_bayes(const Config& cfg, const fs::path& dir, ScenarioResult& res) {
  const int n = atom_number(cfg);
  const ModelSpec spec = model_from(cfg, n);
  const DickeState probe =
      evolve_to(initial_from(cfg, n), spec, step_from(cfg, spec), cfg.number("t_state"));
  ProtocolOptions opt;
  opt.grid_points = static_cast<std::size_t>(cfg.integer("grid_points"));
  opt.window_lo = -cfg.number("window");
  opt.window_hi = cfg.number("window");
  const std::uint64_t seed0 = cfg.unsigned_integer_or("seed", 1);
  const long long seeds = cfg.integer("n_seeds");

  res.files.push_back(dir / "bayes.csv");
  CsvWriter csv(res.files.back(), {"seed", "M", "sigma", "qcrb", "sigma_over_qcrb", "mean"});
  std::vector<std::vector<double>> ratios;
  std::vector<ProtocolPoint> reference;
  for (long long s = 0; s < seeds; ++s) {
    const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(s);
    const ProtocolResult r =
        run_protocol(probe, cfg.integer("M_max"), cfg.number("phi_true"), seed, opt);
    std::vector<double> col;
    for (const ProtocolPoint& p : r.points) {
      csv.row({std::to_string(seed), std::to_string(p.measurements), num(p.sigma), num(p.qcrb),
               num(p.sigma / p.qcrb), num(p.mean)});
      col.push_back(p.sigma / p.qcrb);
    }
    ratios.push_back(std::move(col));
    if (s == 0) reference = r.points;
  }
  csv.finish();

  res.files.push_back(dir / "bayes_summary.csv");
  CsvWriter summary(res.files.back(), {"M", "qcrb", "median_sigma_over_qcrb", "n_seeds"});
  for (std::size_t i = 0; i < reference.size(); ++i) {
    std::vector<double> v;
    for (const auto& col : ratios) v.push_back(col[i]);
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    const double median = v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
    summary.row({std::to_string(reference[i].measurements), num(reference[i].qcrb), num(median),
                 std::to_string(seeds)});
  }
  summary.finish();
}

void run_dissipative_scan(const Config& cfg, const fs::path& dir, ScenarioResult& res) {
  res.files.push_back(dir / "dissipative_scan.csv");
  CsvWriter csv(res.files.back(), {"drive", "kappa_ratio", "t", "lambda_max_n2", "lambda_2_n2",
                                   "lambda_3_n2", "g_x", "g_y", "g_z", "gain_db"});
  for (const DissipativeRun& run : dissipative_runs(cfg)) {
    const StepControl ctl = step_from(cfg, run.spec);
    const int n = run.spec.n_atoms();
    evolve_observed(run.initial, run.spec, 0.0, cfg.number("t_end"), ctl,
                    [&](double t, const DickeState& s) {
                      std::vector<std::string> row{run.drive, num(run.kappa_ratio), num(t)};
                      const auto q = qfim_cells(qfim(s), n);
                      row.insert(row.end(), q.begin(), q.end());
                      csv.row(row);
                    });
  }
  csv.finish();
}

void run_vc_params(const Config& cfg, const fs::path& dir, ScenarioResult& res) {
  const LabInputs lab = lab_inputs_from(cfg);
  const CavityParams p = derive(lab);
  res.files.push_back(dir / "vc_params.csv");
  CsvWriter params(res.files.back(), {"quantity", "value", "unit"});
  params.row({"U0", num(p.U0), "rad/s"});
  params.row({"Delta_c_prime", num(p.Delta_c_prime), "rad/s"});
  params.row({"beta0", num(p.beta0), "1"});
  params.row({"chi0", num(p.chi0), "rad/s"});
  params.row({"Gamma0", num(p.Gamma0), "rad/s"});
  params.row({"omega_g", num(p.omega_g), "rad/s"});
  params.row({"epsilon", num(p.epsilon), "1"});
  params.row({"kgtau", num(lab.kgtau_value()), "rad/s"});
  params.finish();

  res.files.push_back(dir / "ledger.csv");
  CsvWriter ledger(res.files.back(), {"approximation", "ratio", "threshold", "pass", "marginal"});
  for (const LedgerEntry& e : approximation_ledger(p, lab)) {
    ledger.row({e.name, num(e.ratio), num(kLedgerPassThreshold), e.pass ? "1" : "0",
                e.marginal ? "1" : "0"});
  }
  ledger.finish();
}

void run_qfunction(const Config& cfg, const fs::path& dir, ScenarioResult& res) {
  const int n = atom_number(cfg);
  DickeState state = initial_from(cfg, n);
  if (cfg.number("t_state") > 0.0) {
    const ModelSpec spec = model_from(cfg, n);
    state = evolve_to(state, spec, step_from(cfg, spec), cfg.number("t_state"));
  }
  const auto n_theta = static_cast<std::size_t>(cfg.integer("n_theta"));
  const auto n_phi = static_cast<std::size_t>(cfg.integer("n_phi"));
  std::vector<double> theta(n_theta), phi(n_phi);
  for (std::size_t i = 0; i < n_theta; ++i) theta[i] = kPi * i / (n_theta - 1);
  for (std::size_t k = 0; k < n_phi; ++k) phi[k] = kTwoPi * k / (n_phi - 1);
  const Eigen::MatrixXd q = husimi_q(state, theta, phi);

  res.files.push_back(dir / "qfunction.csv");
  CsvWriter csv(res.files.back(), {"theta", "phi", "q"});
  for (std::size_t i = 0; i < n_theta; ++i) {
    for (std::size_t k = 0; k < n_phi; ++k) {
      csv.row({num(theta[i]), num(phi[k]), num(q(static_cast<Eigen::Index>(i),
                                                 static_cast<Eigen::Index>(k)))});
    }
  }
  csv.finish();
}

void run_drive_profile(const Config& cfg, const fs::path& dir, ScenarioResult& res) {
  const long long samples = cfg.integer("n_samples");
  const double t_end = cfg.number("t_end");
  res.files.push_back(dir / "drive_profile.csv");
  CsvWriter csv(res.files.back(), {"t", "beta_re", "beta_im", "delta_c_prime", "eta_re",
                                   "eta_im", "eta_divergent"});
  for (long long i = 0; i < samples; ++i) {
    const double t = t_end * static_cast<double>(i) / static_cast<double>(samples - 1);
    const DriveSample d = drive_profile(Complex(cfg.number("beta0"), 0.0), cfg.number("omega"),
                                        cfg.number("Delta_c_prime"), cfg.number("kappa"), t);
    csv.row({num(t), num(d.beta.real()), num(d.beta.imag()), num(d.delta_c_prime),
             num(d.eta.real()), num(d.eta.imag()), d.eta_divergent ? "1" : "0"});
  }
  csv.finish();
}

template <class F>
auto with_context(std::string_view scenario, F&& body) {
  const std::string prefix = "scenario " + std::string(scenario) + ": ";
  try {
    return body();
  } catch (const ConfigError&) {
    throw;
  } catch (const IoError&) {
    throw;
  } catch (const NumericalError& e) {
    throw NumericalError(prefix + e.what());
  } catch (const StepSizeError& e) {
    throw ConfigError(prefix + e.what());
  } catch (const DimensionMismatch& e) {
    throw ConfigError(prefix + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(prefix + e.what());
  }
}

}  // namespace

std::string_view version_string() { return SPINSQZ_VERSION; }

LabInputs lab_inputs_from(const Config& cfg) {
  LabInputs in;
  in.Lambda = cfg.number("Lambda");
  in.gamma = cfg.number("gamma");
  in.kappa = cfg.number_or("kappa", 0.0);
  in.Delta_a = cfg.number("Delta_a");
  in.Delta_c = cfg.number("Delta_c");
  in.eta0 = cfg.number("eta0");
  in.omega_r = cfg.number("omega_r");
  in.N = atom_number(cfg);
  if (cfg.has("kgtau")) {
    in.kgtau = cfg.number("kgtau");
    if (cfg.has("tau") || cfg.has("k") || cfg.has("g")) {
      bad_value(cfg, "kgtau", "give either kgtau or (tau, k, g), not both");
    }
  } else {
    for (std::string_view key : {"tau", "k", "g"}) cfg.require(key, "lab inputs without kgtau");
    in.tau = cfg.number("tau");
    in.k = cfg.number("k");
    in.g = cfg.number("g");
  }
  if (!cfg.has("kappa")) in.kappa = 1.0;  // validated separately by callers that need it
  try {
    in.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("lab inputs: ") + e.what());
  }
  if (!cfg.has("kappa")) in.kappa = 0.0;
  return in;
}

Config resolve_config(const Config& config) {
  const std::string name = config.has("scenario") ? config.text("scenario") : "";
  return with_context(name, [&] { return resolve_impl(config); });
}

void validate_config(const Config& config) { resolve_config(config); }

std::string metadata_text(const Config& resolved) {
  std::ostringstream out;
  out << "# spinsqz " << version_string() << "\n";
  out << "# rng = " << SplitMix64::kName << "\n";
  for (const KeySchema& s : config_schema()) {
    if (!resolved.has(s.key)) continue;
    out << s.key << " = ";
    switch (s.type) {
      case ValueType::Number: out << format_number(resolved.number(s.key)); break;
      case ValueType::NumberList: {
        const auto v = resolved.number_list(s.key);
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << format_number(v[i]);
        break;
      }
      case ValueType::Integer:
        if (s.key == "seed") {
          out << resolved.unsigned_integer_or(s.key, 0);
        } else {
          out << resolved.integer(s.key);
        }
        break;
      case ValueType::IntegerList: {
        const auto v = resolved.integer_list(s.key);
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
        break;
      }
      case ValueType::Text: out << resolved.text(s.key); break;
    }
    out << "\n";
  }
  return out.str();
}

ScenarioResult run_scenario(const Config& config, const std::optional<fs::path>& output_dir) {
  const Config cfg = resolve_config(config);
  ScenarioResult res;
  res.scenario = cfg.text("scenario");
  res.output_dir = output_dir ? *output_dir : fs::path(cfg.text("output_dir"));
  std::error_code ec;
  fs::create_directories(res.output_dir, ec);
  if (ec) throw IoError("cannot create '" + res.output_dir.string() + "': " + ec.message());

  with_context(res.scenario, [&] {
    const fs::path& dir = res.output_dir;
    if (res.scenario == "qfi_dynamics") run_qfi_dynamics(cfg, dir, res);
    else if (res.scenario == "qfi_peak_scan") run_qfi_peak_scan(cfg, dir, res);
    else if (res.scenario == "bayes") run_bayes(cfg, dir, res);
    else if (res.scenario == "dissipative_scan") run_dissipative_scan(cfg, dir, res);
    else if (res.scenario == "vc_params") run_vc_params(cfg, dir, res);
    else if (res.scenario == "qfunction") run_qfunction(cfg, dir, res);
    else if (res.scenario == "drive_profile") run_drive_profile(cfg, dir, res);
  });

  res.files.push_back(res.output_dir / kMetadataFile);
  std::ofstream meta(res.files.back());
  meta << metadata_text(cfg);
  if (!meta) throw IoError("cannot write '" + res.files.back().string() + "'");
  return res;
}

std::string ledger_report(const Config& config) {
  return with_context("ledger", [&] {
    const LabInputs lab = lab_inputs_from(config);
    if (!config.has("kappa")) throw ConfigError("missing required key 'kappa' for ledger");
    const CavityParams p = derive(lab);
    std::ostringstream out;
    char line[128];
    auto row = [&](const char* name, double v, const char* unit) {
      std::snprintf(line, sizeof line, "%-16s %16.6g  %s\n", name, v, unit);
      out << line;
    };
    row("U0/2pi", p.U0 / kTwoPi, "Hz");
    row("Delta_c'/2pi", p.Delta_c_prime / kTwoPi, "Hz");
    row("|beta0|", p.beta0, "");
    row("chi0/2pi", p.chi0 / kTwoPi, "Hz");
    row("Gamma0/2pi", p.Gamma0 / kTwoPi, "Hz");
    row("omega_g/2pi", p.omega_g / kTwoPi, "Hz");
    row("epsilon", p.epsilon, "");
    out << "\n" << format_ledger(approximation_ledger(p, lab));
    return out.str();
  });
}

}  // namespace spinsqz
