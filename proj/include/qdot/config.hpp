#pragma once

#include <json.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qdot/cnot.hpp"
#include "qdot/csv.hpp"
#include "qdot/molecule.hpp"
#include "qdot/phonon.hpp"
#include "qdot/pulse.hpp"
#include "qdot/simulate.hpp"

namespace qdot {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepConfig {
  std::string variable;  // dotted config path, e.g. "pulse.delta"
  double min = 0.0;
  double max = 0.0;
  int steps = 1;
};

struct IntegratorConfig {
  double samples_per_period = 96.0;  // single-bit simulation step control
  double cnot_dt = 5.0e-4;           // CNOT branch RK4 step [ps]
  int sample_stride = 64;            // trajectory decimation
};

struct PrepareConfig {
  double theta = 0.0;
  double varphi = 0.0;
  int n_phase = 3;
};

struct GateInitialConfig {
  double theta = 0.0;
  double varphi = 0.0;
};

struct CnotDriveConfig {
  double E0 = 0.0;  // [V/cm]
  int N = 1;
};

struct CnotInputConfig {
  double theta = 0.0;
  double varphi = 0.0;
  double theta_c = 0.0;
  double varphi_c = 0.0;
};

struct PhononSweepConfig {
  double e_min = 0.5;  // [meV]
  double e_max = 3.0;
  int steps = 50;
  RateMode gamma2_mode = RateMode::corrected;
};

struct FeasibilityConfig {
  double gamma_per_s = 1e11;
  int N = 1;
  double margin = 10.0;
};

struct RunConfig {
  std::optional<MoleculeSpec> molecule;
  std::optional<PulseSpec> pulse;
  std::optional<CnotSpec> cnot;
  std::optional<CnotDriveConfig> cnot_pulse;
  CnotInputConfig cnot_input;
  PhononParams phonon;  // GaAs defaults when the section is omitted
  PhononSweepConfig phonon_sweep;
  FeasibilityConfig feasibility;
  std::optional<SweepConfig> sweep;
  std::optional<PrepareConfig> prepare;
  GateInitialConfig gate_initial;
  IntegratorConfig integrator;
  std::string output;

  std::string canonical_json;  // effective config, sorted keys
  std::uint64_t digest = 0;
};

namespace detail {

using nlohmann::json;

inline void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                                const std::string& section) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("config: unknown key '" + section + it.key() + "'");
}

inline double require_number(const json& j, const std::string& key,
                             const std::string& section) {
  if (!j.contains(key))
    throw ConfigError("config: missing required key '" + section + key + "'");
  if (!j[key].is_number())
    throw ConfigError("config: key '" + section + key + "' must be numeric");
  return j[key].get<double>();
}

inline double number_or(const json& j, const std::string& key, double fallback,
                        const std::string& section) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw ConfigError("config: key '" + section + key + "' must be numeric");
  return j[key].get<double>();
}

inline int int_or(const json& j, const std::string& key, int fallback,
                  const std::string& section) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer())
    throw ConfigError("config: key '" + section + key + "' must be an integer");
  return j[key].get<int>();
}

inline void wrap_invalid(const std::string& section, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("config [" + section + "]: " + e.what());
  }
}

inline RunConfig parse_config_json(const json& root) {
  static const std::set<std::string> top_keys{
      "molecule", "pulse", "cnot", "cnot_pulse", "cnot_input", "phonon",
      "phonon_sweep", "feasibility", "sweep", "prepare", "gate_initial",
      "integrator", "output"};
  reject_unknown_keys(root, top_keys, "");

  RunConfig cfg;

  if (root.contains("molecule")) {
    const json& m = root["molecule"];
    reject_unknown_keys(m, {"eps_s", "eps_p", "V", "phi_B", "xi"}, "molecule.");
    MoleculeSpec spec{};
    spec.eps_s = require_number(m, "eps_s", "molecule.");
    spec.eps_p = require_number(m, "eps_p", "molecule.");
    spec.V = require_number(m, "V", "molecule.");
    spec.phi_B = require_number(m, "phi_B", "molecule.");
    spec.xi = require_number(m, "xi", "molecule.");
    wrap_invalid("molecule", [&] { spec.validate(); });
    cfg.molecule = spec;
  }

  if (root.contains("pulse")) {
    const json& p = root["pulse"];
    reject_unknown_keys(p, {"E0", "phi", "delta", "N"}, "pulse.");
    PulseSpec pulse{};
    pulse.E0 = require_number(p, "E0", "pulse.");
    pulse.phi = number_or(p, "phi", 0.0, "pulse.");
    pulse.delta = number_or(p, "delta", 0.0, "pulse.");
    pulse.N = int_or(p, "N", 1, "pulse.");
    wrap_invalid("pulse", [&] { pulse.validate(); });
    cfg.pulse = pulse;
  }

  if (root.contains("cnot")) {
    const json& c = root["cnot"];
    reject_unknown_keys(
        c, {"eps_s", "eps_p", "V", "V_prime", "phi_G", "phi_K", "xi", "U_c"},
        "cnot.");
    CnotSpec spec{};
    spec.eps_s = require_number(c, "eps_s", "cnot.");
    spec.eps_p = require_number(c, "eps_p", "cnot.");
    spec.V = require_number(c, "V", "cnot.");
    spec.V_prime = require_number(c, "V_prime", "cnot.");
    spec.phi_G = require_number(c, "phi_G", "cnot.");
    spec.phi_K = number_or(c, "phi_K", spec.phi_G, "cnot.");
    spec.xi = require_number(c, "xi", "cnot.");
    spec.U_c = number_or(c, "U_c", 0.0, "cnot.");
    wrap_invalid("cnot", [&] { spec.validate(); });
    cfg.cnot = spec;
  }

  if (root.contains("cnot_pulse")) {
    const json& c = root["cnot_pulse"];
    reject_unknown_keys(c, {"E0", "N"}, "cnot_pulse.");
    CnotDriveConfig d;
    d.E0 = require_number(c, "E0", "cnot_pulse.");
    d.N = int_or(c, "N", 1, "cnot_pulse.");
    if (d.N < 1 || d.N % 2 == 0)
      throw ConfigError("config: cnot_pulse.N must be a positive odd integer");
    cfg.cnot_pulse = d;
  }

  if (root.contains("cnot_input")) {
    const json& c = root["cnot_input"];
    reject_unknown_keys(c, {"theta", "varphi", "theta_c", "varphi_c"}, "cnot_input.");
    cfg.cnot_input.theta = number_or(c, "theta", 0.0, "cnot_input.");
    cfg.cnot_input.varphi = number_or(c, "varphi", 0.0, "cnot_input.");
    cfg.cnot_input.theta_c = number_or(c, "theta_c", 0.0, "cnot_input.");
    cfg.cnot_input.varphi_c = number_or(c, "varphi_c", 0.0, "cnot_input.");
  }

  {
    json ph = root.contains("phonon") ? root["phonon"] : json::object();
    reject_unknown_keys(ph, {"Xi", "rho", "c_s", "lambda_p", "lambda_z", "T"},
                        "phonon.");
    PhononParams par;  // GaAs defaults
    par.Xi = number_or(ph, "Xi", par.Xi, "phonon.");
    par.rho = number_or(ph, "rho", par.rho, "phonon.");
    par.c_s = number_or(ph, "c_s", par.c_s, "phonon.");
    par.lambda_p = number_or(ph, "lambda_p", par.lambda_p, "phonon.");
    par.lambda_z = number_or(ph, "lambda_z", par.lambda_z, "phonon.");
    par.T = number_or(ph, "T", par.T, "phonon.");
    wrap_invalid("phonon", [&] { par.validate(); });
    cfg.phonon = par;
  }

  if (root.contains("phonon_sweep")) {
    const json& p = root["phonon_sweep"];
    reject_unknown_keys(p, {"E_min", "E_max", "steps", "gamma2_mode"}, "phonon_sweep.");
    cfg.phonon_sweep.e_min = number_or(p, "E_min", cfg.phonon_sweep.e_min, "phonon_sweep.");
    cfg.phonon_sweep.e_max = number_or(p, "E_max", cfg.phonon_sweep.e_max, "phonon_sweep.");
    cfg.phonon_sweep.steps = int_or(p, "steps", cfg.phonon_sweep.steps, "phonon_sweep.");
    if (p.contains("gamma2_mode")) {
      const std::string mode = p["gamma2_mode"].get<std::string>();
      if (mode == "corrected")
        cfg.phonon_sweep.gamma2_mode = RateMode::corrected;
      else if (mode == "literal")
        cfg.phonon_sweep.gamma2_mode = RateMode::literal;
      else
        throw ConfigError("config: phonon_sweep.gamma2_mode must be 'corrected' or 'literal'");
    }
    if (cfg.phonon_sweep.steps < 1 || !(cfg.phonon_sweep.e_min > 0.0) ||
        cfg.phonon_sweep.e_max < cfg.phonon_sweep.e_min)
      throw ConfigError("config: phonon_sweep range invalid");
  }

  if (root.contains("feasibility")) {
    const json& f = root["feasibility"];
    reject_unknown_keys(f, {"gamma_per_s", "N", "margin"}, "feasibility.");
    cfg.feasibility.gamma_per_s =
        number_or(f, "gamma_per_s", cfg.feasibility.gamma_per_s, "feasibility.");
    cfg.feasibility.N = int_or(f, "N", cfg.feasibility.N, "feasibility.");
    cfg.feasibility.margin = number_or(f, "margin", cfg.feasibility.margin, "feasibility.");
    if (cfg.feasibility.gamma_per_s < 0.0 || cfg.feasibility.N < 1 ||
        !(cfg.feasibility.margin > 0.0))
      throw ConfigError("config: feasibility parameters invalid");
  }

  if (root.contains("sweep")) {
    const json& s = root["sweep"];
    reject_unknown_keys(s, {"variable", "min", "max", "steps"}, "sweep.");
    SweepConfig sw;
    if (!s.contains("variable") || !s["variable"].is_string())
      throw ConfigError("config: sweep.variable must name a config field");
    sw.variable = s["variable"].get<std::string>();
    sw.min = require_number(s, "min", "sweep.");
    sw.max = require_number(s, "max", "sweep.");
    sw.steps = int_or(s, "steps", 1, "sweep.");
    if (sw.steps < 1) throw ConfigError("config: sweep.steps must be >= 1");
    if (sw.steps == 1 && sw.min != sw.max)
      throw ConfigError("config: single-point sweep requires min == max");
    cfg.sweep = sw;
  }

  if (root.contains("prepare")) {
    const json& p = root["prepare"];
    reject_unknown_keys(p, {"theta", "varphi", "n_phase"}, "prepare.");
    PrepareConfig pr;
    pr.theta = require_number(p, "theta", "prepare.");
    pr.varphi = number_or(p, "varphi", 0.0, "prepare.");
    pr.n_phase = int_or(p, "n_phase", 3, "prepare.");
    cfg.prepare = pr;
  }

  if (root.contains("gate_initial")) {
    const json& g = root["gate_initial"];
    reject_unknown_keys(g, {"theta", "varphi"}, "gate_initial.");
    cfg.gate_initial.theta = number_or(g, "theta", 0.0, "gate_initial.");
    cfg.gate_initial.varphi = number_or(g, "varphi", 0.0, "gate_initial.");
  }

  if (root.contains("integrator")) {
    const json& i = root["integrator"];
    reject_unknown_keys(i, {"samples_per_period", "cnot_dt", "sample_stride"},
                        "integrator.");
    cfg.integrator.samples_per_period =
        number_or(i, "samples_per_period", cfg.integrator.samples_per_period, "integrator.");
    cfg.integrator.cnot_dt = number_or(i, "cnot_dt", cfg.integrator.cnot_dt, "integrator.");
    cfg.integrator.sample_stride =
        int_or(i, "sample_stride", cfg.integrator.sample_stride, "integrator.");
    if (!(cfg.integrator.samples_per_period >= 4.0) || !(cfg.integrator.cnot_dt > 0.0) ||
        cfg.integrator.sample_stride < 1)
      throw ConfigError("config: integrator settings invalid");
  }

  if (root.contains("output")) {
    if (!root["output"].is_string())
      throw ConfigError("config: output must be a file path string");
    cfg.output = root["output"].get<std::string>();
  }

  cfg.canonical_json = root.dump();
  cfg.digest = fnv1a64(cfg.canonical_json);
  return cfg;
}

/// Applies one "dotted.path=value" override onto the raw JSON document.
inline void apply_override(json& root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must look like section.key=value: " + assignment);
  const std::string path = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    if (dot == std::string::npos) {
      parts.push_back(path.substr(start));
      break;
    }
    parts.push_back(path.substr(start, dot - start));
    start = dot + 1;
  }
  if (parts.empty() || parts.front().empty())
    throw ConfigError("override has an empty path: " + assignment);

  json* node = &root;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) node = &((*node)[parts[i]]);
  json parsed = json::parse(value, nullptr, false);
  if (parsed.is_discarded()) parsed = value;  // plain string value
  (*node)[parts.back()] = parsed;
}

}  // namespace detail

inline RunConfig parse_config(const nlohmann::json& root) {
  return detail::parse_config_json(root);
}

inline nlohmann::json read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot open " + path);
  nlohmann::json root = nlohmann::json::parse(f, nullptr, false);
  if (root.is_discarded())
    throw ConfigError("config: " + path + " is not well-formed JSON");
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  return root;
}

inline RunConfig load_config(const std::string& path) {
  return parse_config(read_config_file(path));
}

}  // namespace qdot
