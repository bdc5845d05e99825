// Copyright 2026 The lyjump Authors
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

#include "lyjump/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "lyjump/jumps.hpp"
#include "lyjump/kato.hpp"
#include "lyjump/lambshift.hpp"
#include "lyjump/nophoton.hpp"

namespace lyjump::cli {
namespace {

using nlohmann::json;

constexpr double kTwoPi = 2 * std::numbers::pi;

// Atom keys that take a _rad_s or _hz suffix.
constexpr std::string_view kFreqKeys[] = {"gamma", "delta2", "delta3", "delta4", "omega", "omega_l"};

const std::set<std::string>& plain_keys() {
  static const std::set<std::string> keys = {
      "mode",   "seed",    "n_intervals",     "t0_s",      "out_dir",  "td_s",    "r_b_per_s",
      "r_r_per_s", "t_end_s", "dt_s",         "t_min_s",   "t_max_s",  "points",  "field_v_m",
      "laser_field_v_m"};
  return keys;
}

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); }

double get_number(const json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) config_error("'" + key + "' must be a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) config_error("'" + key + "' is not finite");
  return x;
}

std::optional<double> opt_number(const json& doc, const std::string& key) {
  if (!doc.contains(key)) return std::nullopt;
  return get_number(doc, key);
}

std::optional<std::uint64_t> opt_unsigned(const json& doc, const std::string& key) {
  if (!doc.contains(key)) return std::nullopt;
  const auto& v = doc.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  config_error("'" + key + "' must be a non-negative integer");
}

// Angular frequency from <base>_rad_s or <base>_hz.
std::optional<double> opt_frequency(const json& doc, std::string_view base) {
  std::string rad = std::string(base) + "_rad_s";
  std::string hz = std::string(base) + "_hz";
  bool has_rad = doc.contains(rad), has_hz = doc.contains(hz);
  if (has_rad && has_hz) config_error("both '" + rad + "' and '" + hz + "' given");
  if (has_rad) return get_number(doc, rad);
  if (has_hz) return kTwoPi * get_number(doc, hz);
  return std::nullopt;
}

bool is_known_key(const std::string& key) {
  if (plain_keys().count(key)) return true;
  for (auto base : kFreqKeys) {
    if (key == std::string(base) + "_rad_s" || key == std::string(base) + "_hz") return true;
  }
  return false;
}

json cplx_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json params_json(const AtomParams& p) {
  return json{{"gamma_rad_s", p.gamma},     {"delta2_rad_s", p.delta2}, {"delta3_rad_s", p.delta3},
              {"delta4_rad_s", p.delta4},   {"omega_rad_s", p.omega},   {"omega_l_rad_s", p.omega_l}};
}

std::string sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f) config_error("cannot open '" + path.string() + "' for writing");
  f << content;
  if (!f) config_error("write to '" + path.string() + "' failed");
}

// Common head of every JSON artifact.
json envelope(const RunConfig& cfg) {
  json j;
  j["tool"] = "lyjump";
  j["version"] = std::string(kVersion);
  j["mode"] = std::string(mode_name(cfg.mode));
  j["seed"] = cfg.seed;
  j["params"] = params_json(cfg.params);
  if (cfg.physical) {
    j["physical"] = {{"field_v_m", cfg.physical->field},
                     {"laser_field_v_m", cfg.physical->laser_field},
                     {"delta2_rad_s", cfg.physical->delta2}};
  }
  j["warnings"] = json::array();
  return j;
}

void add_warning(json& env, const std::string& code, const std::string& message) {
  env["warnings"].push_back({{"code", code}, {"message", message}});
}

void add_warnings(json& env, const std::vector<Warning>& ws) {
  for (const auto& w : ws) add_warning(env, w.code, w.message);
}

// CSV preamble: '#' lines carrying everything needed to re-run.
std::string csv_header(const RunConfig& cfg) {
  std::ostringstream s;
  s << "# tool=lyjump version=" << kVersion << " mode=" << mode_name(cfg.mode) << '\n';
  s << "# seed=" << cfg.seed << '\n';
  const AtomParams& p = cfg.params;
  s << "# gamma_rad_s=" << sci(p.gamma) << " delta2_rad_s=" << sci(p.delta2)
    << " delta3_rad_s=" << sci(p.delta3) << " delta4_rad_s=" << sci(p.delta4)
    << " omega_rad_s=" << sci(p.omega) << " omega_l_rad_s=" << sci(p.omega_l) << '\n';
  return s.str();
}

json predictions_json(const ClosedFormPredictions& pr) {
  return json{{"alpha", cplx_json(pr.alpha)},
              {"re_lambda2_per_s", pr.re_lambda2},
              {"lambda3_zeroth_per_s", cplx_json(pr.lambda3_zeroth)},
              {"tau_l_s", pr.tau_l},
              {"t_dark_s", pr.t_dark},
              {"t_light_s", pr.t_light},
              {"p_dark", pr.p_dark},
              {"inverse_p_dark", pr.p_dark > 0 ? json(1 / pr.p_dark) : json(nullptr)},
              {"t0_s", pr.t0}};
}

json opt_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

json stats_json(const PeriodStats& st) {
  return json{{"t0_s", st.t0},
              {"n_intervals", st.n_intervals},
              {"n_dark", st.n_dark},
              {"n_light", st.n_light},
              {"p_hat", st.p_hat},
              {"se_p_hat", st.se_p_hat},
              {"mean_dark_s", opt_json(st.mean_dark)},
              {"se_mean_dark_s", opt_json(st.se_mean_dark)},
              {"mean_light_s", opt_json(st.mean_light)},
              {"se_mean_light_s", opt_json(st.se_mean_light)},
              {"tail_rate_per_s", opt_json(st.tail_rate)},
              {"se_tail_rate_per_s", opt_json(st.se_tail_rate)}};
}

json report_json(const ComparisonReport& r) {
  json items = json::array();
  for (const auto& d : r.items) {
    items.push_back({{"quantity", d.quantity},
                     {"empirical", opt_json(d.empirical)},
                     {"predicted", d.predicted},
                     {"relative", opt_json(d.relative)},
                     {"z", opt_json(d.z)},
                     {"upper_bound", opt_json(d.upper_bound)},
                     {"flagged", d.flagged}});
  }
  return json{{"consistent", r.consistent}, {"items", items}};
}

// Emits a finished JSON artifact to the stream and, if requested, to disk.
void emit_json(const RunConfig& cfg, const json& j, std::ostream& out) {
  std::string text = j.dump(2) + "\n";
  if (cfg.out_dir) write_file(std::filesystem::path(*cfg.out_dir) / (std::string(mode_name(cfg.mode)) + ".json"), text);
  out << text;
}

// CSV goes to <out_dir>/<name>; without an out dir it is the stdout payload.
void emit_csv(const RunConfig& cfg, const std::string& name, const std::string& csv, json env,
              std::ostream& out) {
  if (!cfg.out_dir) {
    out << csv;
    return;
  }
  auto path = std::filesystem::path(*cfg.out_dir) / name;
  write_file(path, csv);
  env["artifacts"] = json::array({path.string()});
  emit_json(cfg, env, out);
}

void run_predict(const RunConfig& cfg, std::ostream& out) {
  json env = envelope(cfg);
  auto pr = predictions(cfg.params, cfg.t0);
  add_warnings(env, pr.warnings);
  env["result"] = predictions_json(pr);
  emit_json(cfg, env, out);
}

void run_exact(const RunConfig& cfg, std::ostream& out) {
  json env = envelope(cfg);
  add_warnings(env, regime_warnings(cfg.params));
  auto cache = SpectralCache::build(cfg.params);
  json res;
  json ev = json::array();
  for (cplx z : cache.eigenvalues()) ev.push_back(cplx_json(z));
  res["eigenvalues_per_s"] = ev;
  res["eigenvector_condition"] = cache.eigenvector_condition();
  res["spectral"] = cache.spectral();
  cplx l2 = lambda2_exact(cache);
  res["lambda2_exact_per_s"] = cplx_json(l2);
  res["t_dark_exact_s"] = l2.real() > 0 ? json(1 / (2 * l2.real())) : json(nullptr);

  double re2 = re_lambda2(cfg.params);
  cplx l3 = lambda3_zeroth(cfg.params);
  cplx l3_exact = *std::min_element(cache.eigenvalues().begin(), cache.eigenvalues().end(),
                                    [&](cplx a, cplx b) { return std::abs(a - l3) < std::abs(b - l3); });
  json d;
  d["re_lambda2_closed_per_s"] = re2;
  d["re_lambda2_relative"] = l2.real() != 0 ? json((re2 - l2.real()) / l2.real()) : json(nullptr);
  d["lambda3_zeroth_per_s"] = cplx_json(l3);
  d["lambda3_exact_per_s"] = cplx_json(l3_exact);
  d["lambda3_relative"] = std::abs(l3_exact - l3) / std::abs(l3_exact);
  try {
    auto pr = predictions(cfg.params, cfg.t0);
    double p0 = cache.p0(pr.t0);
    d["t0_s"] = pr.t0;
    d["p0_exact_at_t0"] = p0;
    d["p_dark_closed"] = pr.p_dark;
    d["p_dark_relative"] = (pr.p_dark - p0) / p0;
    add_warnings(env, pr.warnings);
  } catch (const Error& e) {
    add_warning(env, "closed_forms_unavailable", e.what());
  }
  res["deltas"] = d;
  env["result"] = res;
  emit_json(cfg, env, out);
}

void run_simulate(const RunConfig& cfg, std::ostream& out) {
  json env = envelope(cfg);
  env["n_intervals"] = cfg.n_intervals;
  add_warnings(env, regime_warnings(cfg.params));
  auto cache = SpectralCache::build(cfg.params);

  std::optional<ClosedFormPredictions> pred;
  try {
    pred = predictions(cfg.params, cfg.t0);
    add_warnings(env, pred->warnings);
  } catch (const Error& e) {
    if (!cfg.t0) throw;
    add_warning(env, "closed_forms_unavailable", e.what());
  }
  double t0 = cfg.t0 ? *cfg.t0 : pred->t0;

  Trajectory traj = simulate(cache, cfg.n_intervals, cfg.seed);
  PeriodStats st = classify(traj, t0);
  json res;
  res["stats"] = stats_json(st);
  if (pred) {
    res["predictions"] = predictions_json(*pred);
    res["comparison"] = report_json(compare(st, *pred));
  }
  res["duration_s"] = traj.duration;
  env["result"] = res;

  if (cfg.out_dir) {
    std::string csv = csv_header(cfg);
    csv += "# n_intervals=" + std::to_string(cfg.n_intervals) + '\n';
    csv += "interval_s\n";
    csv.reserve(csv.size() + traj.intervals.size() * 24);
    for (double x : traj.intervals) {
      csv += sci(x);
      csv += '\n';
    }
    auto path = std::filesystem::path(*cfg.out_dir) / "intervals.csv";
    write_file(path, csv);
    env["artifacts"] = json::array({path.string()});
  } else {
    add_warning(env, "no_out_dir", "intervals not written; pass --out to keep them");
  }
  emit_json(cfg, env, out);
}

void run_ratemodel(const RunConfig& cfg, std::ostream& out) {
  RateParams rp;
  rp.gamma = cfg.params.gamma;
  rp.r_b = cfg.r_b.value_or(5 * rp.gamma);
  rp.r_r = cfg.r_r.value_or(0.05 * rp.gamma);
  validate(rp);
  Mus mu = mus(rp);
  double t_end = cfg.t_end.value_or(20 / rp.gamma);
  double dt = cfg.dt.value_or(0.05 / mu.mu1);
  if (!(t_end > 0)) throw Error(ErrorKind::InvalidArgument, "t_end must be positive");
  auto traj = integrate(rp, t_end, dt);
  bool closed = closed_form_valid(rp);

  json env = envelope(cfg);
  env["rates"] = {{"gamma_per_s", rp.gamma}, {"r_b_per_s", rp.r_b}, {"r_r_per_s", rp.r_r},
                  {"mu1_per_s", mu.mu1},     {"mu2_per_s", mu.mu2}, {"mu3_per_s", mu.mu3}};
  if (!closed) add_warning(env, "closed_form_invalid", "r_r is not small against r_b and gamma");

  std::string csv = csv_header(cfg);
  csv += "# gamma_per_s=" + sci(rp.gamma) + " r_b_per_s=" + sci(rp.r_b) + " r_r_per_s=" + sci(rp.r_r) + '\n';
  csv += "t_s,p1,p2,p3,sum,p1_closed,p2_closed,p3_closed\n";
  for (const auto& s : traj) {
    csv += sci(s.t) + ',' + sci(s.state.p1) + ',' + sci(s.state.p2) + ',' + sci(s.state.p3) + ',' +
           sci(s.state.total());
    RateState c = closed_form(rp, s.t);
    csv += ',' + sci(c.p1) + ',' + sci(c.p2) + ',' + sci(c.p3) + '\n';
  }
  if (auto td = dominance_time(traj)) env["dominance_time_s"] = *td;
  emit_csv(cfg, "ratemodel.csv", csv, env, out);
}

void run_invert(const RunConfig& cfg, std::ostream& out) {
  json env = envelope(cfg);
  double td = cfg.td ? *cfg.td : td_forward(cfg.params);
  if (!cfg.td) add_warning(env, "td_from_params", "no td given; inverting the forward value of the configured delta3");
  auto inv = invert_td(td, cfg.params);
  json cands = json::array();
  for (const auto& c : inv.candidates) {
    double lamb_hz = (cfg.params.delta2 - c.delta3) / kTwoPi;
    cands.push_back({{"delta3_rad_s", c.delta3},
                     {"lamb_shift_hz", lamb_hz},
                     {"residual", c.residual},
                     {"admissible", c.admissible}});
  }
  env["result"] = {{"td_s", inv.td}, {"candidates", cands}};
  emit_json(cfg, env, out);
}

void run_p0(const RunConfig& cfg, std::ostream& out) {
  auto cache = SpectralCache::build(cfg.params);
  double g = cfg.params.gamma;
  double t_min = cfg.t_min.value_or(0.01 / g);
  double t_max = cfg.t_max.value_or(0);
  if (!cfg.t_max) {
    double slow = lambda2_exact(cache).real();
    t_max = slow > 1e-12 * g ? 5 / slow : 100 / g;
  }
  if (!(t_min > 0) || !(t_max > t_min)) throw Error(ErrorKind::InvalidArgument, "need 0 < t_min < t_max");
  if (cfg.points < 2) throw Error(ErrorKind::InvalidArgument, "points must be at least 2");
  auto grid = log_grid(t_min, t_max, cfg.points);
  auto curve = p0_curve(cache, grid);

  json env = envelope(cfg);
  add_warnings(env, regime_warnings(cfg.params));
  std::string csv = csv_header(cfg);
  csv += "t_s,p0,w_per_s\n";
  for (const auto& c : curve) csv += sci(c.t) + ',' + sci(c.p0) + ',' + sci(c.density) + '\n';
  emit_csv(cfg, "p0.csv", csv, env, out);
}

}  // namespace

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "predict") return Mode::Predict;
  if (name == "exact") return Mode::Exact;
  if (name == "simulate") return Mode::Simulate;
  if (name == "ratemodel") return Mode::RateModel;
  if (name == "invert-lamb") return Mode::InvertLamb;
  if (name == "p0") return Mode::P0;
  return std::nullopt;
}

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::Predict: return "predict";
    case Mode::Exact: return "exact";
    case Mode::Simulate: return "simulate";
    case Mode::RateModel: return "ratemodel";
    case Mode::InvertLamb: return "invert-lamb";
    case Mode::P0: return "p0";
  }
  return "unknown";
}

RunConfig resolve_config(const json& doc, const Overrides& ov) {
  if (!doc.is_object()) config_error("configuration must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!is_known_key(key)) config_error("unknown key '" + key + "'");
  }

  RunConfig cfg;
  std::optional<std::string> mode = ov.mode;
  if (!mode && doc.contains("mode")) {
    if (!doc["mode"].is_string()) config_error("'mode' must be a string");
    mode = doc["mode"].get<std::string>();
  }
  if (!mode) config_error("no mode given");
  auto m = parse_mode(*mode);
  if (!m) config_error("unknown mode '" + *mode + "'");
  cfg.mode = *m;

  std::optional<double> freq[6];
  bool any_direct = false;
  for (std::size_t i = 0; i < 6; ++i) {
    freq[i] = opt_frequency(doc, kFreqKeys[i]);
    // delta2 is shared by both input styles
    if (freq[i] && i != 1) any_direct = true;
  }
  bool any_field = doc.contains("field_v_m") || doc.contains("laser_field_v_m");
  if (any_direct && any_field) config_error("field strengths and direct atom parameters are mutually exclusive");

  double delta2 = freq[1].value_or(0);
  if (cfg.mode == Mode::RateModel && !any_field) {
    // only gamma matters; default to the He+ value
    cfg.params.gamma = freq[0].value_or(He4Preset{}.gamma);
    cfg.params.delta2 = delta2;
    cfg.params.delta3 = freq[2].value_or(0);
    cfg.params.delta4 = freq[3].value_or(0);
    cfg.params.omega = freq[4].value_or(0);
    cfg.params.omega_l = freq[5].value_or(0);
  } else if (any_direct) {
    for (std::size_t i : {0, 2, 3, 5}) {
      if (!freq[i]) config_error(std::string("missing '") + std::string(kFreqKeys[i]) + "_rad_s' (or _hz)");
    }
    cfg.params = AtomParams{*freq[0], delta2, *freq[2], *freq[3], freq[4].value_or(0), *freq[5]};
  } else {
    PhysicalInput phys;
    if (any_field) {
      if (!doc.contains("field_v_m") || !doc.contains("laser_field_v_m")) {
        config_error("both 'field_v_m' and 'laser_field_v_m' are required");
      }
      phys.field = get_number(doc, "field_v_m");
      phys.laser_field = get_number(doc, "laser_field_v_m");
    } else {
      // default: the He+ example (static 3.6 kV/m, laser 2.9 MV/m)
      phys.field = 3.6e3;
      phys.laser_field = 2.9e6;
    }
    phys.delta2 = delta2;
    cfg.params = from_physical(He4Preset{}, phys.field, phys.laser_field, phys.delta2);
    cfg.physical = phys;
  }
  if (cfg.mode != Mode::RateModel) validate(cfg.params);

  if (auto s = opt_unsigned(doc, "seed")) cfg.seed = *s;
  if (auto n = opt_unsigned(doc, "n_intervals")) cfg.n_intervals = *n;
  if (auto n = opt_unsigned(doc, "points")) cfg.points = *n;
  cfg.t0 = opt_number(doc, "t0_s");
  cfg.td = opt_number(doc, "td_s");
  cfg.r_b = opt_number(doc, "r_b_per_s");
  cfg.r_r = opt_number(doc, "r_r_per_s");
  cfg.t_end = opt_number(doc, "t_end_s");
  cfg.dt = opt_number(doc, "dt_s");
  cfg.t_min = opt_number(doc, "t_min_s");
  cfg.t_max = opt_number(doc, "t_max_s");
  if (doc.contains("out_dir")) {
    if (!doc["out_dir"].is_string()) config_error("'out_dir' must be a string");
    cfg.out_dir = doc["out_dir"].get<std::string>();
  }

  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.n_intervals) cfg.n_intervals = *ov.n_intervals;
  if (ov.t0) cfg.t0 = *ov.t0;
  if (ov.out_dir) cfg.out_dir = *ov.out_dir;
  if (ov.td) cfg.td = *ov.td;

  if (cfg.n_intervals == 0) config_error("n_intervals must be positive");
  if (cfg.t0 && !(*cfg.t0 > 0)) config_error("t0 must be positive");
  return cfg;
}

void run(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.mode) {
    case Mode::Predict: return run_predict(cfg, out);
    case Mode::Exact: return run_exact(cfg, out);
    case Mode::Simulate: return run_simulate(cfg, out);
    case Mode::RateModel: return run_ratemodel(cfg, out);
    case Mode::InvertLamb: return run_invert(cfg, out);
    case Mode::P0: return run_p0(cfg, out);
  }
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum-jump light/dark period analysis for Lyman-alpha driven He+"};
  app.set_version_flag("--version", std::string(kVersion));
  std::string mode;
  std::string config_path;
  Overrides ov;
  app.add_option("mode", mode, "predict | exact | simulate | ratemodel | invert-lamb | p0")->required();
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--seed", ov.seed, "random seed (u64)");
  app.add_option("--n", ov.n_intervals, "number of emission intervals");
  app.add_option("--t0", ov.t0, "dark-period threshold in s");
  app.add_option("--out", ov.out_dir, "output directory");
  app.add_option("--td", ov.td, "mean dark-period duration in s (invert-lamb)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  ov.mode = mode;

  try {
    json doc = json::object();
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) config_error("cannot read '" + config_path + "'");
      try {
        doc = json::parse(f);
      } catch (const json::exception& e) {
        config_error(std::string("malformed JSON: ") + e.what());
      }
    }
    run(resolve_config(doc, ov), out);
    return 0;
  } catch (const Error& e) {
    err << "lyjump: " << e.what() << '\n';
    return is_validation_error(e.kind()) ? 2 : 3;
  } catch (const std::exception& e) {
    err << "lyjump: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace lyjump::cli
