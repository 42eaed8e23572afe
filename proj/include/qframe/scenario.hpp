#pragma once
// Scenario layer: JSON configs, run/spectrum/sweep drivers that write CSV and
// JSON artifacts, and the built-in figure presets.
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qframe/dynamics_engine.hpp"

namespace qframe {

using Json = nlohmann::ordered_json;

std::string_view version_string();

/// Bad config: field path plus reason, e.g. "drive.amplitude: must be >= 0".
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Filesystem failure while reading configs or writing artifacts.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DeviceKind { tls, transmon };

struct ScenarioConfig {
  std::string name = "run";
  DeviceKind device = DeviceKind::tls;
  TlsParams tls;
  TransmonParams transmon;  ///< charge_cutoff lives here
  /// Keep only this many transmon eigenlevels for dynamics (0 keeps the full
  /// charge basis).
  int qubit_levels = 0;
  double kappa = 7.2e-3;
  DriveSpec drive;
  FrameMode frame = FrameMode::q_frame;
  int n_max = 5;
  int initial_branch = 0;  ///< 0 = g, 1 = e
  IntegratorConfig integrator;
  std::string outputs = "out";
  bool long_run = false;
  Json metadata = Json::object();

  void validate() const;
};

Json to_json(const ScenarioConfig& config);
ScenarioConfig config_from_json(const Json& j);
ScenarioConfig load_config(const std::filesystem::path& path);
void save_config(const ScenarioConfig& config, const std::filesystem::path& path);

/// Model used for dynamics (projected when qubit_levels > 0).
SystemModel build_model(const ScenarioConfig& config);

/// In-process pieces of `run`, no files touched.
LabeledSpectrum scenario_spectrum(const ScenarioConfig& config, const LabelOptions& options = {});
Trajectory simulate(const ScenarioConfig& config);

struct RunRecord {
  std::string kind;  ///< "dynamics" or "spectrum"
  ScenarioConfig config;
  std::filesystem::path directory;
  std::vector<std::string> artifacts;  ///< file names inside `directory`
  double wall_time_s = 0.0;
  std::optional<TrajectoryDiagnostics> diagnostics;
  std::vector<std::string> warnings;
  bool aborted = false;  ///< integrator stopped early; trajectory is partial
  std::string error;     ///< non-empty when the run failed outright

  bool ok() const { return !aborted && error.empty(); }
  Json to_json() const;
};

inline constexpr const char* kTrajectoryHeader =
    "t,kappa_t,alpha_re,alpha_im,photon_number,real_quadrature,abs_c_u,transmon_occupation,"
    "trace_error";
inline constexpr const char* kSpectrumHeader =
    "branch,n,energy,gap_to_next,label_overlap,transmon_occupation,photon_number";

std::string trajectory_csv(const Trajectory& traj, bool transmon);
std::string spectrum_csv(const LabeledSpectrum& spec);
Json dispersive_summary_json(const ScenarioConfig& config, const LabeledSpectrum& spec);

/// Dynamics run: trajectory.csv, spectrum.csv, run_record.json in `out_dir`
/// (config.outputs when empty). Integrator aborts come back flagged, other
/// failures throw.
RunRecord run(const ScenarioConfig& config, std::filesystem::path out_dir = {});
/// Spectrum run: spectrum.csv, dispersive_summary.json, run_record.json.
RunRecord run_spectrum(const ScenarioConfig& config, std::filesystem::path out_dir = {});

/// Copy of `base` with the dotted field `param` (e.g. "drive.amplitude") set.
ScenarioConfig with_param(const ScenarioConfig& base, const std::string& param, const Json& value);

/// Independent runs over `values`, up to `workers` at a time, each in its own
/// subdirectory. A failing child is recorded and does not stop siblings.
/// Writes sweep_index.json in `out_dir`.
std::vector<RunRecord> sweep(const ScenarioConfig& base, const std::string& param,
                             const std::vector<Json>& values, const std::filesystem::path& out_dir,
                             int workers = 1);

struct PresetEntry {
  std::string label;
  bool spectrum = false;  ///< run_spectrum instead of run
  ScenarioConfig config;
};

struct Preset {
  std::string name;
  std::string description;
  Json notes = Json::object();
  std::vector<PresetEntry> entries;

  Json to_json() const;
};

std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown name.
Preset make_preset(const std::string& name);
/// Runs the entries (long ones only with include_long) under out_dir/<label>/
/// and writes preset_index.json.
std::vector<RunRecord> run_preset(const Preset& preset, const std::filesystem::path& out_dir,
                                  bool include_long, int workers = 1);

}  // namespace qframe
