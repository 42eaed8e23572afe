// Thin bridge: configs and records cross as JSON text, the Python side turns
// them into dicts.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qframe/scenario.hpp"

namespace py = pybind11;
using namespace qframe;

namespace {

ScenarioConfig parse(const std::string& text) {
  const Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config: not valid JSON");
  return config_from_json(j);
}

std::string records_json(const std::vector<RunRecord>& records) {
  Json out = Json::array();
  for (const auto& r : records) out.push_back(r.to_json());
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "qframe core bindings";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  m.def("version", [] { return std::string(version_string()); });

  m.def("normalize_config", [](const std::string& text) { return to_json(parse(text)).dump(); },
        "Validate a config and return it with every default filled in.");

  m.def(
      "run",
      [](const std::string& text, const std::string& out) {
        const ScenarioConfig c = parse(text);
        py::gil_scoped_release release;
        return run(c, out).to_json().dump();
      },
      py::arg("config"), py::arg("out_dir") = "");

  m.def(
      "run_spectrum",
      [](const std::string& text, const std::string& out) {
        const ScenarioConfig c = parse(text);
        py::gil_scoped_release release;
        return run_spectrum(c, out).to_json().dump();
      },
      py::arg("config"), py::arg("out_dir") = "");

  m.def(
      "sweep",
      [](const std::string& text, const std::string& param, const std::string& values,
         const std::string& out, int workers) {
        const ScenarioConfig c = parse(text);
        const Json v = Json::parse(values);
        std::vector<Json> list(v.begin(), v.end());
        py::gil_scoped_release release;
        return records_json(sweep(c, param, list, out, workers));
      },
      py::arg("config"), py::arg("param"), py::arg("values"), py::arg("out_dir"),
      py::arg("workers") = 1);

  m.def("preset_names", &preset_names);
  m.def("preset", [](const std::string& name) { return make_preset(name).to_json().dump(); });

  m.def("simulate_csv", [](const std::string& text) {
    const ScenarioConfig c = parse(text);
    py::gil_scoped_release release;
    return trajectory_csv(simulate(c), c.device == DeviceKind::transmon);
  });

  m.def("dispersive_summary", [](const std::string& text) {
    const ScenarioConfig c = parse(text);
    py::gil_scoped_release release;
    LabelOptions options;
    options.keep_states = 0;
    return dispersive_summary_json(c, scenario_spectrum(c, options)).dump();
  });

  m.def(
      "p_displacement",
      [](double amplitude, double omega_d, double kappa, double t, double omega_c) {
        DriveSpec d;
        d.amplitude = amplitude;
        d.omega_d = omega_d;
        return p_displacement(d, omega_c, kappa, t);
      },
      py::arg("amplitude"), py::arg("omega_d"), py::arg("kappa"), py::arg("t"),
      py::arg("omega_c") = 1.0);
}
