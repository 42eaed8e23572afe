#include "qframe/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#ifndef QFRAME_VERSION
#define QFRAME_VERSION "0.0.0"
#endif

namespace qframe {
namespace fs = std::filesystem;

std::string_view version_string() { return "qframe " QFRAME_VERSION; }

namespace {

// Field-by-field reader that reports the dotted path of whatever is wrong and
// rejects keys it does not know.
class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("", "expected an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    if (!has(key)) return require(key, fallback);
    const Json& v = j_.at(key);
    if (!v.is_number()) fail(key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(key, "must be finite");
    return x;
  }

  long integer(const std::string& key, std::optional<long> fallback = std::nullopt) {
    if (!has(key)) return require(key, fallback);
    const Json& v = j_.at(key);
    if (!v.is_number_integer()) fail(key, "expected an integer");
    return v.get<long>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_boolean()) fail(key, "expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
    if (!has(key)) return require(key, fallback);
    const Json& v = j_.at(key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }

  Reader object(const std::string& key) {
    if (!has(key)) fail(key, "missing");
    return Reader(j_.at(key), field(key));
  }

  const Json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!seen_.count(key)) fail(key, "unknown field");
  }

  [[noreturn]] void fail(const std::string& key, const std::string& why) const {
    const std::string f = field(key);
    throw ConfigError((f.empty() ? std::string("config") : f) + ": " + why);
  }

  std::string field(const std::string& key) const {
    if (key.empty()) return path_;
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  template <class T>
  T require(const std::string& key, const std::optional<T>& fallback) const {
    if (!fallback) fail(key, "missing");
    return *fallback;
  }

  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

// Runs module validation and re-labels its complaint with the config field.
template <class F>
void check(const std::string& field, F&& f) {
  try {
    f();
  } catch (const InvalidArgument& e) {
    // "TypeName: key must ..." becomes "field.key: must ..." when key is a plain identifier.
    const std::string msg = e.what();
    const auto colon = msg.find(": ");
    if (colon != std::string::npos) {
      const std::string rest = msg.substr(colon + 2);
      const auto space = rest.find(' ');
      const std::string key = rest.substr(0, space);
      const bool ident = space != std::string::npos && !key.empty() &&
                         std::all_of(key.begin(), key.end(), [](char ch) {
                           return std::islower(static_cast<unsigned char>(ch)) || ch == '_';
                         });
      if (ident && rest.compare(space + 1, 5, "must ") == 0)
        throw ConfigError(field + "." + key + ": " + rest.substr(space + 1));
    }
    throw ConfigError(field + ": " + msg);
  }
}

std::string branch_name(int p) {
  static const char* names[] = {"g", "e", "f"};
  return p < 3 ? names[p] : "p" + std::to_string(p);
}

int branch_from_name(const std::string& s) {
  if (s == "g") return 0;
  if (s == "e") return 1;
  throw ConfigError("initial_branch: expected \"g\" or \"e\", got \"" + s + "\"");
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

Json diagnostics_json(const TrajectoryDiagnostics& d) {
  Json j;
  j["accepted_steps"] = d.accepted;
  j["rejected_steps"] = d.rejected;
  j["rhs_evaluations"] = d.rhs_evals;
  j["max_abs_c_u"] = d.max_abs_c_u;
  j["max_trace_drift"] = d.max_trace_drift;
  j["max_hermiticity_defect"] = d.max_hermiticity_defect;
  j["min_eigenvalue_sampled"] = d.min_eigenvalue_sampled;
  j["min_eigenvalue_final"] = d.min_eigenvalue_final;
  j["final_time"] = d.final_time;
  j["aborted"] = d.aborted;
  if (!d.message.empty()) j["message"] = d.message;
  return j;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Fixed pool over independent jobs; results keep job order.
std::vector<RunRecord> run_jobs(const std::vector<std::function<RunRecord()>>& jobs, int workers) {
  std::vector<RunRecord> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) out[k] = jobs[k]();
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
  if (n == 1) {
    worker();
    return out;
  }
  std::vector<std::jthread> pool;
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  pool.clear();
  return out;
}

// Child runs never throw: failures land in the record.
RunRecord guarded(const ScenarioConfig& config, const fs::path& dir, bool spectrum) {
  try {
    return spectrum ? run_spectrum(config, dir) : run(config, dir);
  } catch (const std::exception& e) {
    RunRecord r;
    r.kind = spectrum ? "spectrum" : "dynamics";
    r.config = config;
    r.directory = dir;
    r.error = e.what();
    return r;
  }
}

std::string status_of(const RunRecord& r) {
  if (!r.error.empty()) return "failed";
  return r.aborted ? "aborted" : "ok";
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char ch : s)
    out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-' || ch == '+' || ch == '=' ||
            ch == '_')
               ? ch
               : '_';
  return out;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (name.empty()) throw ConfigError("name: must not be empty");
  if (device == DeviceKind::tls) {
    check("device", [&] { tls.validate(); });
    if (qubit_levels != 0 && qubit_levels != 2)
      throw ConfigError("device.qubit_levels: a two-level system has 2 levels");
  } else {
    check("device", [&] { transmon.validate(); });
    const int full = 2 * transmon.charge_cutoff + 1;
    if (qubit_levels != 0 && (qubit_levels < 2 || qubit_levels > full))
      throw ConfigError("device.qubit_levels: must be 0 or in [2, " + std::to_string(full) + "]");
  }
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ConfigError("kappa: must be > 0");
  check("drive", [&] { drive.validate(); });
  if (n_max < 1) throw ConfigError("n_max: must be >= 1");
  if (initial_branch != 0 && initial_branch != 1)
    throw ConfigError("initial_branch: must be g or e");
  check("integrator", [&] { integrator.validate(); });
  if (outputs.empty()) throw ConfigError("outputs: must not be empty");
}

Json to_json(const ScenarioConfig& c) {
  Json j;
  j["name"] = c.name;
  Json dev;
  if (c.device == DeviceKind::tls) {
    dev["kind"] = "tls";
    dev["omega_q"] = c.tls.omega_q;
    dev["g"] = c.tls.g;
  } else {
    dev["kind"] = "transmon";
    dev["e_c"] = c.transmon.e_c;
    dev["e_j"] = c.transmon.e_j;
    dev["g"] = c.transmon.g;
    dev["n_g"] = c.transmon.n_g;
    dev["charge_cutoff"] = c.transmon.charge_cutoff;
    if (c.transmon.omega_q_ref) dev["omega_q_ref"] = *c.transmon.omega_q_ref;
    dev["qubit_levels"] = c.qubit_levels;
  }
  j["device"] = dev;
  j["kappa"] = c.kappa;
  j["drive"] = {{"kind", "monochromatic"},
                {"amplitude", c.drive.amplitude},
                {"omega_d", c.drive.omega_d},
                {"phase", c.drive.phase}};
  j["frame"] = std::string(to_string(c.frame));
  j["n_max"] = c.n_max;
  j["initial_branch"] = branch_name(c.initial_branch);
  const auto& in = c.integrator;
  j["integrator"] = {{"rtol", in.rtol},
                     {"atol", in.atol},
                     {"h_init", in.h_init},
                     {"h_min", in.h_min},
                     {"h_max", in.h_max},
                     {"t_end", in.t_end},
                     {"sample_dt", in.sample_dt},
                     {"max_steps", in.max_steps},
                     {"rotating_frame", in.rotating_frame},
                     {"positivity_stride", in.positivity_stride}};
  j["outputs"] = c.outputs;
  j["long"] = c.long_run;
  j["metadata"] = c.metadata;
  return j;
}

ScenarioConfig config_from_json(const Json& j) {
  ScenarioConfig c;
  Reader top(j, "");
  c.name = top.string("name", c.name);

  Reader dev = top.object("device");
  const std::string kind = dev.string("kind");
  if (kind == "tls") {
    c.device = DeviceKind::tls;
    c.tls.omega_q = dev.number("omega_q", c.tls.omega_q);
    c.tls.g = dev.number("g", c.tls.g);
    c.qubit_levels = static_cast<int>(dev.integer("qubit_levels", 0));
  } else if (kind == "transmon") {
    c.device = DeviceKind::transmon;
    c.transmon.e_c = dev.number("e_c", c.transmon.e_c);
    c.transmon.e_j = dev.number("e_j", c.transmon.e_j);
    c.transmon.g = dev.number("g", c.transmon.g);
    c.transmon.n_g = dev.number("n_g", c.transmon.n_g);
    c.transmon.charge_cutoff = static_cast<int>(dev.integer("charge_cutoff", c.transmon.charge_cutoff));
    if (dev.has("omega_q_ref")) c.transmon.omega_q_ref = dev.number("omega_q_ref");
    c.qubit_levels = static_cast<int>(dev.integer("qubit_levels", 0));
  } else {
    dev.fail("kind", "expected \"tls\" or \"transmon\", got \"" + kind + "\"");
  }
  dev.finish();

  c.kappa = top.number("kappa");

  if (top.has("drive")) {
    Reader dr = top.object("drive");
    const std::string dk = dr.string("kind", "monochromatic");
    if (dk != "monochromatic") dr.fail("kind", "only \"monochromatic\" is supported");
    c.drive.amplitude = dr.number("amplitude", c.drive.amplitude);
    c.drive.omega_d = dr.number("omega_d", c.drive.omega_d);
    c.drive.phase = dr.number("phase", c.drive.phase);
    dr.finish();
  }

  if (top.has("frame")) {
    const std::string f = top.string("frame");
    try {
      c.frame = frame_mode_from_string(f);
    } catch (const InvalidArgument&) {
      top.fail("frame", "expected lab, p_frame or q_frame, got \"" + f + "\"");
    }
  }
  c.n_max = static_cast<int>(top.integer("n_max"));
  c.initial_branch = branch_from_name(top.string("initial_branch", "g"));

  if (top.has("integrator")) {
    Reader in = top.object("integrator");
    auto& ic = c.integrator;
    ic.rtol = in.number("rtol", ic.rtol);
    ic.atol = in.number("atol", ic.atol);
    ic.h_init = in.number("h_init", ic.h_init);
    ic.h_min = in.number("h_min", ic.h_min);
    ic.h_max = in.number("h_max", ic.h_max);
    ic.t_end = in.number("t_end", ic.t_end);
    ic.sample_dt = in.number("sample_dt", ic.sample_dt);
    ic.max_steps = in.integer("max_steps", ic.max_steps);
    ic.rotating_frame = in.boolean("rotating_frame", ic.rotating_frame);
    ic.positivity_stride = static_cast<int>(in.integer("positivity_stride", ic.positivity_stride));
    in.finish();
  }
  c.outputs = top.string("outputs", c.outputs);
  c.long_run = top.boolean("long", false);
  if (top.has("metadata")) {
    const Json& m = top.raw("metadata");
    if (!m.is_object()) top.fail("metadata", "expected an object");
    c.metadata = m;
  }
  top.finish();
  c.validate();
  return c;
}

ScenarioConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

void save_config(const ScenarioConfig& config, const fs::path& path) {
  write_file(path, to_json(config).dump(2) + "\n");
}

SystemModel build_model(const ScenarioConfig& config) {
  config.validate();
  TruncationSpec trunc{config.n_max, 2, {}};
  if (config.device == DeviceKind::tls) return build_tls(config.tls, trunc, config.kappa);
  SystemModel m = build_transmon(config.transmon, trunc, config.kappa);
  if (config.qubit_levels > 0) m = project_qubit(m, config.qubit_levels);
  return m;
}

LabeledSpectrum scenario_spectrum(const ScenarioConfig& config, const LabelOptions& options) {
  return labeled_spectrum(build_model(config), options);
}

namespace {

struct Computed {
  LabeledSpectrum spec;
  Trajectory traj;
};

Computed compute(const ScenarioConfig& config) {
  const SystemModel model = build_model(config);
  Computed out;
  out.spec = labeled_spectrum(model);
  const FrameState initial = prepare_initial(out.spec, config.initial_branch, model, config.frame);
  out.traj = integrate(initial, model, config.drive, config.frame, config.integrator);
  return out;
}

}  // namespace

Trajectory simulate(const ScenarioConfig& config) { return compute(config).traj; }

std::string trajectory_csv(const Trajectory& traj, bool transmon) {
  std::string s = std::string(kTrajectoryHeader) + "\n";
  for (const auto& r : traj.samples) {
    s += num(r.t) + ',' + num(r.kappa_t) + ',' + num(r.alpha.real()) + ',' + num(r.alpha.imag()) +
         ',' + num(r.photon_number) + ',' + num(r.real_quadrature) + ',' + num(r.abs_c_u) + ',';
    if (transmon && r.transmon_occupation) s += num(*r.transmon_occupation);
    s += ',' + num(r.trace_error) + '\n';
  }
  return s;
}

std::string spectrum_csv(const LabeledSpectrum& spec) {
  std::string s = std::string(kSpectrumHeader) + "\n";
  for (const auto& b : spec.branches) {
    for (int k = 0; k < b.size(); ++k) {
      s += branch_name(b.p) + ',' + std::to_string(k) + ',' + num(b.energy[k]) + ',';
      if (k < b.n_reliable) s += num(b.energy[k + 1] - b.energy[k]);
      s += ',' + num(b.overlap[k]) + ',';
      if (spec.transmon) s += num(b.transmon_occupation[k]);
      s += ',' + num(b.photon_number[k]) + '\n';
    }
  }
  return s;
}

Json dispersive_summary_json(const ScenarioConfig& config, const LabeledSpectrum& spec) {
  const SystemModel model = build_model(config);
  Json j;
  j["device"] = config.device == DeviceKind::tls ? "tls" : "transmon";
  j["n_max"] = config.n_max;
  j["dimension"] = model.trunc.dim();
  try {
    const auto dq = dispersive_quantities(spec);
    j["omega_c_ren"] = dq.omega_c_ren;
    j["chi"] = dq.chi;
  } catch (const std::exception& e) {
    j["omega_c_ren"] = nullptr;
    j["chi"] = nullptr;
    j["numeric_error"] = e.what();
  }
  try {
    const auto pe = perturbative_estimates(model);
    j["omega_q_pert"] = pe.omega_q;
    j["omega_c_ren_pert"] = pe.omega_c_ren_pert;
    j["chi_pert"] = pe.chi_pert;
    if (pe.n_crit_unbounded())
      j["n_crit"] = "unbounded";
    else
      j["n_crit"] = pe.n_crit;
  } catch (const std::exception& e) {
    j["omega_c_ren_pert"] = nullptr;
    j["chi_pert"] = nullptr;
    j["n_crit"] = nullptr;
    j["perturbative_error"] = e.what();
  }
  const RealVector levels = qubit_eigenbasis(model).energies;
  Json q;
  q["e_ge"] = levels(1) - levels(0);
  if (levels.size() > 2) {
    q["e_ef"] = levels(2) - levels(1);
    q["anharmonicity"] = (levels(2) - levels(1)) - (levels(1) - levels(0));
  }
  j["qubit"] = q;
  Json branches = Json::array();
  for (const auto& b : spec.branches)
    branches.push_back({{"branch", branch_name(b.p)}, {"labeled", b.size()}, {"n_reliable", b.n_reliable}});
  j["branches"] = branches;
  return j;
}

Json RunRecord::to_json() const {
  Json j;
  j["tool"] = std::string(version_string());
  j["kind"] = kind;
  j["status"] = status_of(*this);
  j["config"] = qframe::to_json(config);
  j["directory"] = directory.string();
  j["artifacts"] = artifacts;
  j["wall_time_s"] = wall_time_s;
  j["diagnostics"] = diagnostics ? diagnostics_json(*diagnostics) : Json(nullptr);
  j["warnings"] = warnings;
  if (!error.empty()) j["error"] = error;
  return j;
}

RunRecord run(const ScenarioConfig& config, fs::path out_dir) {
  config.validate();
  if (out_dir.empty()) out_dir = config.outputs;
  make_dir(out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.kind = "dynamics";
  rec.config = config;
  rec.directory = out_dir;
  WarningCapture capture;
  const Computed c = compute(config);
  rec.wall_time_s = seconds_since(t0);
  rec.diagnostics = c.traj.diagnostics;
  rec.aborted = c.traj.diagnostics.aborted;
  rec.warnings = capture.messages();
  write_file(out_dir / "trajectory.csv", trajectory_csv(c.traj, config.device == DeviceKind::transmon));
  write_file(out_dir / "spectrum.csv", spectrum_csv(c.spec));
  rec.artifacts = {"trajectory.csv", "spectrum.csv", "run_record.json"};
  write_file(out_dir / "run_record.json", rec.to_json().dump(2) + "\n");
  return rec;
}

RunRecord run_spectrum(const ScenarioConfig& config, fs::path out_dir) {
  config.validate();
  if (out_dir.empty()) out_dir = config.outputs;
  make_dir(out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.kind = "spectrum";
  rec.config = config;
  rec.directory = out_dir;
  WarningCapture capture;
  LabelOptions options;
  options.keep_states = 0;
  const LabeledSpectrum spec = scenario_spectrum(config, options);
  const Json summary = dispersive_summary_json(config, spec);
  rec.wall_time_s = seconds_since(t0);
  rec.warnings = capture.messages();
  write_file(out_dir / "spectrum.csv", spectrum_csv(spec));
  write_file(out_dir / "dispersive_summary.json", summary.dump(2) + "\n");
  rec.artifacts = {"spectrum.csv", "dispersive_summary.json", "run_record.json"};
  write_file(out_dir / "run_record.json", rec.to_json().dump(2) + "\n");
  return rec;
}

ScenarioConfig with_param(const ScenarioConfig& base, const std::string& param, const Json& value) {
  Json j = to_json(base);
  Json* node = &j;
  std::stringstream ss(param);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  if (parts.empty()) throw ConfigError("sweep: empty parameter name");
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (!node->is_object() || !node->contains(parts[k]))
      throw ConfigError("sweep: unknown parameter \"" + param + "\"");
    node = &(*node)[parts[k]];
  }
  if (node->is_object()) throw ConfigError("sweep: \"" + param + "\" is a group, not a field");
  *node = value;
  return config_from_json(j);
}

std::vector<RunRecord> sweep(const ScenarioConfig& base, const std::string& param,
                             const std::vector<Json>& values, const fs::path& out_dir, int workers) {
  base.validate();
  make_dir(out_dir);
  std::vector<std::function<RunRecord()>> jobs;
  std::vector<std::string> dirs;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const std::string dir = std::to_string(k) + "_" + sanitize(param + "=" + values[k].dump());
    dirs.push_back(dir);
    jobs.push_back([&, k, dir] {
      ScenarioConfig child;
      try {
        child = with_param(base, param, values[k]);
      } catch (const std::exception& e) {
        RunRecord r;
        r.kind = "dynamics";
        r.config = base;
        r.directory = out_dir / dir;
        r.error = e.what();
        return r;
      }
      child.name = base.name + "[" + param + "=" + values[k].dump() + "]";
      child.outputs = (out_dir / dir).string();
      return guarded(child, out_dir / dir, false);
    });
  }
  auto records = run_jobs(jobs, workers);

  Json index;
  index["tool"] = std::string(version_string());
  index["base"] = to_json(base);
  index["param"] = param;
  index["values"] = values;
  Json runs = Json::array();
  for (std::size_t k = 0; k < records.size(); ++k) {
    Json r{{"value", values[k]}, {"directory", dirs[k]}, {"status", status_of(records[k])}};
    if (!records[k].error.empty()) r["error"] = records[k].error;
    if (records[k].diagnostics && !records[k].diagnostics->message.empty())
      r["message"] = records[k].diagnostics->message;
    runs.push_back(r);
  }
  index["runs"] = runs;
  write_file(out_dir / "sweep_index.json", index.dump(2) + "\n");
  return records;
}

Json Preset::to_json() const {
  Json j;
  j["name"] = name;
  j["description"] = description;
  j["notes"] = notes;
  Json e = Json::array();
  for (const auto& entry : entries)
    e.push_back({{"label", entry.label},
                 {"kind", entry.spectrum ? "spectrum" : "dynamics"},
                 {"config", qframe::to_json(entry.config)}});
  j["entries"] = e;
  return j;
}

std::vector<RunRecord> run_preset(const Preset& preset, const fs::path& out_dir, bool include_long,
                                  int workers) {
  make_dir(out_dir);
  std::vector<std::function<RunRecord()>> jobs;
  std::vector<const PresetEntry*> picked;
  for (const auto& e : preset.entries) {
    if (e.config.long_run && !include_long) continue;
    picked.push_back(&e);
    jobs.push_back([&out_dir, &e] { return guarded(e.config, out_dir / e.label, e.spectrum); });
  }
  auto records = run_jobs(jobs, workers);

  Json index;
  index["tool"] = std::string(version_string());
  index["preset"] = preset.name;
  index["description"] = preset.description;
  index["notes"] = preset.notes;
  index["include_long"] = include_long;
  Json runs = Json::array();
  std::size_t k = 0;
  for (const auto& e : preset.entries) {
    Json r{{"label", e.label}, {"kind", e.spectrum ? "spectrum" : "dynamics"}, {"long", e.config.long_run}};
    if (k < picked.size() && picked[k] == &e) {
      r["status"] = status_of(records[k]);
      r["wall_time_s"] = records[k].wall_time_s;
      if (!records[k].error.empty()) r["error"] = records[k].error;
      ++k;
    } else {
      r["status"] = "skipped";
    }
    runs.push_back(r);
  }
  index["runs"] = runs;
  write_file(out_dir / "preset_index.json", index.dump(2) + "\n");
  return records;
}

}  // namespace qframe
