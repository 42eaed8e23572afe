// qframe: run scenarios, spectra, sweeps and figure presets from the shell.
//
// Exit codes: 0 ok, 2 config error, 3 integrator abort (or failed child run),
// 4 I/O error.
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qframe/scenario.hpp"

namespace fs = std::filesystem;
using namespace qframe;

namespace {

constexpr int kOk = 0;
constexpr int kConfig = 2;
constexpr int kAbort = 3;
constexpr int kIo = 4;

std::vector<Json> parse_values(const std::string& list) {
  std::vector<Json> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok.empty()) continue;
    Json v = Json::parse(tok, nullptr, false);
    out.push_back(v.is_discarded() ? Json(tok) : v);
  }
  return out;
}

void report(const RunRecord& r) {
  std::cout << r.kind << ' ' << r.config.name << ": ";
  if (!r.error.empty())
    std::cout << "FAILED (" << r.error << ")";
  else if (r.aborted)
    std::cout << "ABORTED (" << r.diagnostics->message << ")";
  else
    std::cout << "ok";
  std::cout << "  [" << r.directory.string() << ", " << r.wall_time_s << " s]\n";
  for (const auto& w : r.warnings) std::cout << "  warning: " << w << '\n';
}

int batch_code(const std::vector<RunRecord>& records) {
  for (const auto& r : records)
    if (!r.ok()) return kAbort;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Displaced-frame cavity readout simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version_string()));

  std::string out_dir;
  int workers = 1;
  app.add_option("--out", out_dir, "Output directory (defaults to the config's outputs field)");
  app.add_option("--workers", workers, "Concurrent runs for sweep and preset")
      ->check(CLI::PositiveNumber);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Integrate one scenario");
  run_cmd->add_option("config", config_path, "Scenario JSON")->required();
  run_cmd->fallthrough();

  auto* spec_cmd = app.add_subcommand("spectrum", "Labeled spectrum and dispersive summary");
  spec_cmd->add_option("config", config_path, "Scenario JSON")->required();
  spec_cmd->fallthrough();

  std::string param, values;
  auto* sweep_cmd = app.add_subcommand("sweep", "Repeat a scenario over values of one field");
  sweep_cmd->add_option("config", config_path, "Scenario JSON")->required();
  sweep_cmd->add_option("--param", param, "Dotted field name, e.g. drive.amplitude")->required();
  sweep_cmd->add_option("--values", values, "Comma-separated values")->required();
  sweep_cmd->fallthrough();

  std::string preset_name, dump_path;
  bool include_long = false, list = false;
  auto* preset_cmd = app.add_subcommand("preset", "Run a figure preset (fig2 .. fig10)");
  preset_cmd->add_option("name", preset_name, "Preset name");
  preset_cmd->add_flag("--long", include_long, "Include runs marked long");
  preset_cmd->add_option("--dump", dump_path, "Write the preset definition as JSON and exit");
  preset_cmd->add_flag("--list", list, "List preset names");
  preset_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*run_cmd) {
      const ScenarioConfig c = load_config(config_path);
      const RunRecord r = run(c, out_dir);
      report(r);
      return r.aborted ? kAbort : kOk;
    }
    if (*spec_cmd) {
      const ScenarioConfig c = load_config(config_path);
      report(run_spectrum(c, out_dir));
      return kOk;
    }
    if (*sweep_cmd) {
      const ScenarioConfig c = load_config(config_path);
      const auto records =
          sweep(c, param, parse_values(values), out_dir.empty() ? fs::path(c.outputs) : fs::path(out_dir), workers);
      for (const auto& r : records) report(r);
      return batch_code(records);
    }
    if (*preset_cmd) {
      if (list) {
        for (const auto& n : preset_names()) std::cout << n << '\n';
        return kOk;
      }
      if (preset_name.empty()) throw ConfigError("preset: name required (fig2 .. fig10)");
      const Preset p = make_preset(preset_name);
      if (!dump_path.empty()) {
        std::ofstream f(dump_path);
        if (!f) throw IoError("cannot open " + dump_path);
        f << p.to_json().dump(2) << '\n';
        if (!f) throw IoError("failed writing " + dump_path);
        return kOk;
      }
      const fs::path dir = out_dir.empty() ? fs::path("runs") / p.name : fs::path(out_dir);
      const auto records = run_preset(p, dir, include_long, workers);
      for (const auto& r : records) report(r);
      return batch_code(records);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kAbort;
  }
  return kOk;
}
