#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "qdot/config.hpp"
#include "qdot/gate.hpp"

namespace qdot {

inline constexpr const char* tool_version = "qdot 1.0.0";

// Exit codes of the command layer (also used by the CLI):
// 0 success, 2 config error, 3 leakage flag, 4 feasibility fail/marginal,
// 5 numerical non-convergence.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_leakage = 3;
inline constexpr int exit_feasibility = 4;
inline constexpr int exit_numerics = 5;

struct CommandOutcome {
  CsvTable table;
  int exit_code = exit_ok;
  std::string flag_reason;  // machine-readable, e.g. "leakage_flag"
};

namespace detail {

inline std::string hex_digest(std::uint64_t d) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(d));
  return buf;
}

inline void stamp(CsvTable& t, const RunConfig& cfg, const std::string& command) {
  t.comments.push_back(std::string("tool=") + tool_version);
  t.comments.push_back("command=" + command);
  t.comments.push_back("config_digest=" + hex_digest(cfg.digest));
}

inline const MoleculeSpec& need_molecule(const RunConfig& cfg) {
  if (!cfg.molecule) throw ConfigError("config: this command needs a [molecule] section");
  return *cfg.molecule;
}

inline const PulseSpec& need_pulse(const RunConfig& cfg) {
  if (!cfg.pulse) throw ConfigError("config: this command needs a [pulse] section");
  return *cfg.pulse;
}

inline const CnotSpec& need_cnot(const RunConfig& cfg) {
  if (!cfg.cnot) throw ConfigError("config: this command needs a [cnot] section");
  return *cfg.cnot;
}

inline CnotPulse need_cnot_pulse(const RunConfig& cfg) {
  if (!cfg.cnot_pulse)
    throw ConfigError("config: this command needs a [cnot_pulse] section");
  return cnot_parameters(need_cnot(cfg), cfg.cnot_pulse->E0, cfg.cnot_pulse->N);
}

inline SimOptions sim_options(const RunConfig& cfg) {
  SimOptions o;
  o.samples_per_period = cfg.integrator.samples_per_period;
  o.sample_stride = static_cast<std::size_t>(cfg.integrator.sample_stride);
  return o;
}

inline CnotSimOptions cnot_options(const RunConfig& cfg) {
  CnotSimOptions o;
  o.dt = cfg.integrator.cnot_dt;
  o.sample_stride = static_cast<std::size_t>(cfg.integrator.sample_stride);
  return o;
}

inline PulseSimResult run_gate_sim(const RunConfig& cfg) {
  const auto& mol = need_molecule(cfg);
  const auto& pulse = need_pulse(cfg);
  const QubitState init =
      QubitState::from_angles(cfg.gate_initial.theta, cfg.gate_initial.varphi);
  StateVector psi0 = StateVector::Zero(7);
  psi0[0] = init.s0;
  psi0[1] = init.s1;
  return simulate_pulse(mol, pulse, psi0, sim_options(cfg));
}

inline double relative_phase_change(const QubitState& before, const QubitState& after) {
  if (std::abs(before.s0) < 1e-12 || before.s1.real() < 1e-12 ||
      std::abs(after.s0) < 1e-12 || after.s1.real() < 1e-12)
    return 0.0;
  double d = after.varphi - before.varphi;
  const double two_pi = 2.0 * std::numbers::pi;
  while (d < 0.0) d += two_pi;
  while (d >= two_pi) d -= two_pi;
  return d;
}

}  // namespace detail

inline CommandOutcome run_spectrum(const RunConfig& cfg) {
  const Spectrum7 s = molecular_spectrum(detail::need_molecule(cfg));
  CommandOutcome out;
  out.table.columns = {"k", "energy_meV"};
  for (int k = 0; k < 7; ++k)
    out.table.add_row({static_cast<double>(k), s.energies[k]});
  detail::stamp(out.table, cfg, "spectrum");
  return out;
}

inline CommandOutcome run_gate(const RunConfig& cfg) {
  const PulseSimResult res = detail::run_gate_sim(cfg);
  CommandOutcome out;
  out.table.columns = {"t_ps", "p0", "p1", "p2", "leakage", "norm"};
  for (const auto& s : res.trajectory)
    out.table.add_row({s.t, s.populations[0], s.populations[1], s.populations[2],
                       s.leakage, s.norm});
  detail::stamp(out.table, cfg, "gate");
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "final: theta=%.12g varphi=%.12g end_leakage=%.12g "
                "fidelity_vs_gate=%.12g norm_drift=%.3g",
                res.final_qubit.theta, res.final_qubit.varphi, res.end_leakage,
                res.fidelity_vs_prediction, res.max_norm_drift);
  out.table.comments.push_back(buf);
  if (res.leakage_flagged) {
    out.exit_code = exit_leakage;
    out.flag_reason = "leakage_flag";
  }
  return out;
}

inline CommandOutcome run_prepare(const RunConfig& cfg) {
  if (!cfg.prepare) throw ConfigError("config: prepare needs a [prepare] section");
  const auto& mol = detail::need_molecule(cfg);
  const auto& pulse = detail::need_pulse(cfg);
  const PreparationSequence seq = prepare_qubit(mol, cfg.prepare->theta,
                                                cfg.prepare->varphi, pulse.E0,
                                                cfg.prepare->n_phase);

  // verify by analytic composition
  const Eigen::Matrix2cd r_amp = gate_matrix(mol, seq.amplitude_pulse);
  const Eigen::Matrix2cd r_phase = gate_matrix(mol, seq.phase_pulse);
  Eigen::Vector2cd v;
  v << Complex(1.0, 0.0), Complex(0.0, 0.0);
  v = r_phase * (r_amp * v);
  const QubitState achieved = QubitState::from_amplitudes(v[0], v[1]);

  CommandOutcome out;
  out.table.columns = {"pulse_index", "E0_V_cm", "phi_rad", "delta_per_ps", "N", "tau_ps"};
  const auto add = [&](int idx, const PulseSpec& p) {
    out.table.add_row({static_cast<double>(idx), p.E0, p.phi, p.delta,
                       static_cast<double>(p.N), pulse_derived(mol, p).tau});
  };
  add(0, seq.amplitude_pulse);
  add(1, seq.phase_pulse);
  detail::stamp(out.table, cfg, "prepare");
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "achieved: theta=%.12g varphi=%.12g (target theta=%.12g varphi=%.12g)",
                achieved.theta, achieved.varphi, cfg.prepare->theta, cfg.prepare->varphi);
  out.table.comments.push_back(buf);
  return out;
}

inline CommandOutcome run_cnot(const RunConfig& cfg) {
  const auto& spec = detail::need_cnot(cfg);
  const CnotPulse pulse = detail::need_cnot_pulse(cfg);
  const TwoQubitState input = TwoQubitState::from_angles(
      cfg.cnot_input.theta, cfg.cnot_input.varphi, cfg.cnot_input.theta_c,
      cfg.cnot_input.varphi_c);
  const CnotSimResult res = simulate_cnot(spec, pulse, input, detail::cnot_options(cfg));

  CommandOutcome out;
  out.table.columns = {"t_ps", "p_FJ", "p_GJ", "p_FK", "p_GK",
                       "leak_J", "leak_K", "norm"};
  for (const auto& s : res.trajectory)
    out.table.add_row({s.t, s.p_fj, s.p_gj, s.p_fk, s.p_gk, s.leak_j, s.leak_k, s.norm});
  detail::stamp(out.table, cfg, "cnot");
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "final: fidelity_vs_analytic=%.12g end_leakage=%.12g tau_C=%.12g "
                "norm_drift=%.3g resonant_approx_degraded=%d",
                res.fidelity_vs_analytic, res.end_leakage, res.tau_C,
                res.max_norm_drift, pulse.resonant_approx_degraded ? 1 : 0);
  out.table.comments.push_back(buf);
  if (res.leakage_flagged) {
    out.exit_code = exit_leakage;
    out.flag_reason = "leakage_flag";
  }
  return out;
}

inline CommandOutcome run_truth_table(const RunConfig& cfg) {
  const auto& spec = detail::need_cnot(cfg);
  const CnotPulse pulse = detail::need_cnot_pulse(cfg);
  const TruthTable t = truth_table_fidelity(spec, pulse, detail::cnot_options(cfg));

  CommandOutcome out;
  out.table.columns = {"input", "p_FJ", "p_GJ", "p_FK", "p_GK", "fidelity"};
  for (int in = 0; in < 4; ++in)
    out.table.add_row({static_cast<double>(in), t.probabilities(in, 0),
                       t.probabilities(in, 1), t.probabilities(in, 2),
                       t.probabilities(in, 3), t.row_fidelity[in]});
  detail::stamp(out.table, cfg, "truth-table");
  char buf[120];
  std::snprintf(buf, sizeof(buf), "min_row_fidelity=%.12g hbar_Omega_C_meV=%.12g gap_meV=%.12g",
                t.min_row_fidelity, pulse.Omega_C * constants::hbar, pulse.gap_mev);
  out.table.comments.push_back(buf);
  return out;
}

inline CommandOutcome run_phonon_sweep(const RunConfig& cfg) {
  const auto& sw = cfg.phonon_sweep;
  CommandOutcome out;
  out.table.columns = {"E_meV", "gamma0_per_s", "gamma2_per_s"};
  for (int i = 0; i < sw.steps; ++i) {
    const double e = sw.steps == 1
                         ? sw.e_min
                         : sw.e_min + (sw.e_max - sw.e_min) * i / (sw.steps - 1);
    out.table.add_row({e, gamma0(e, cfg.phonon).rate,
                       gamma2(e, cfg.phonon, sw.gamma2_mode).rate});
  }
  detail::stamp(out.table, cfg, "phonon-sweep");
  return out;
}

inline CommandOutcome run_feasibility(const RunConfig& cfg) {
  const auto& mol = detail::need_molecule(cfg);
  const auto& f = cfg.feasibility;

  double omega = 0.0;
  if (cfg.pulse) omega = rabi_energy_mev(mol, cfg.pulse->E0) / constants::hbar;
  const double min_rabi = min_rabi_for_margin(f.gamma_per_s, f.N, f.margin);
  const double min_field = field_for_rabi(mol, min_rabi);

  CommandOutcome out;
  out.table.columns = {"Omega_per_ps",        "margin",          "verdict",
                       "min_hbar_omega_meV",  "min_E0_V_cm"};
  double margin = std::numeric_limits<double>::infinity();
  FeasibilityVerdict verdict = FeasibilityVerdict::pass;
  if (omega > 0.0) {
    const FeasibilityResult r = pulse_feasibility(omega, f.N, f.gamma_per_s);
    margin = r.margin;
    verdict = r.verdict;
  }
  out.table.add_row({omega, margin, static_cast<double>(verdict), min_rabi, min_field});
  detail::stamp(out.table, cfg, "feasibility");
  if (omega > 0.0 && verdict != FeasibilityVerdict::pass) {
    out.exit_code = exit_feasibility;
    out.flag_reason = verdict == FeasibilityVerdict::fail ? "feasibility_fail"
                                                          : "feasibility_marginal";
  }
  return out;
}

// ---------------------------------------------------------------------------
// parameter sweeps

inline std::vector<std::string> summary_columns(const std::string& command) {
  if (command == "spectrum")
    return {"eps_0", "eps_1", "eps_2", "eps_3", "eps_4", "eps_5", "eps_6"};
  if (command == "gate")
    return {"tau_ps", "p0_final", "p1_final", "end_leakage", "max_leakage",
            "fidelity_vs_gate", "relative_phase_rad"};
  if (command == "cnot") return {"tau_C_ps", "fidelity_vs_analytic", "end_leakage"};
  if (command == "truth-table")
    return {"min_row_fidelity", "f_00", "f_10", "f_01", "f_11", "infidelity"};
  if (command == "feasibility")
    return {"margin", "verdict", "min_hbar_omega_meV", "min_E0_V_cm"};
  throw ConfigError("sweep: command '" + command + "' has no sweep summary");
}

inline std::vector<double> summary_row(const std::string& command, const RunConfig& cfg,
                                       int* flag_exit = nullptr) {
  if (command == "spectrum") {
    const Spectrum7 s = molecular_spectrum(detail::need_molecule(cfg));
    return {s.energies[0], s.energies[1], s.energies[2], s.energies[3],
            s.energies[4], s.energies[5], s.energies[6]};
  }
  if (command == "gate") {
    const QubitState before =
        QubitState::from_angles(cfg.gate_initial.theta, cfg.gate_initial.varphi);
    const PulseSimResult r = detail::run_gate_sim(cfg);
    if (r.leakage_flagged && flag_exit) *flag_exit = exit_leakage;
    return {r.tau,
            r.trajectory.back().populations[0],
            r.trajectory.back().populations[1],
            r.end_leakage,
            r.max_leakage,
            r.fidelity_vs_prediction,
            detail::relative_phase_change(before, r.final_qubit)};
  }
  if (command == "cnot") {
    const auto& spec = detail::need_cnot(cfg);
    const CnotPulse pulse = detail::need_cnot_pulse(cfg);
    const TwoQubitState input = TwoQubitState::from_angles(
        cfg.cnot_input.theta, cfg.cnot_input.varphi, cfg.cnot_input.theta_c,
        cfg.cnot_input.varphi_c);
    const CnotSimResult r = simulate_cnot(spec, pulse, input, detail::cnot_options(cfg));
    if (r.leakage_flagged && flag_exit) *flag_exit = exit_leakage;
    return {r.tau_C, r.fidelity_vs_analytic, r.end_leakage};
  }
  if (command == "truth-table") {
    const auto& spec = detail::need_cnot(cfg);
    const CnotPulse pulse = detail::need_cnot_pulse(cfg);
    const TruthTable t = truth_table_fidelity(spec, pulse, detail::cnot_options(cfg));
    return {t.min_row_fidelity, t.row_fidelity[0], t.row_fidelity[1],
            t.row_fidelity[2], t.row_fidelity[3], 1.0 - t.min_row_fidelity};
  }
  if (command == "feasibility") {
    const auto& mol = detail::need_molecule(cfg);
    const auto& f = cfg.feasibility;
    const double omega = rabi_energy_mev(mol, detail::need_pulse(cfg).E0) / constants::hbar;
    const FeasibilityResult r = pulse_feasibility(omega, f.N, f.gamma_per_s);
    if (r.verdict != FeasibilityVerdict::pass && flag_exit) *flag_exit = exit_feasibility;
    return {r.margin, static_cast<double>(r.verdict),
            min_rabi_for_margin(f.gamma_per_s, f.N, f.margin),
            field_for_rabi(mol, min_rabi_for_margin(f.gamma_per_s, f.N, f.margin))};
  }
  throw ConfigError("sweep: command '" + command + "' has no sweep summary");
}

/// Checks that the sweep target exists and is numeric in the document.
inline void check_sweep_target(const nlohmann::json& effective, const std::string& path) {
  const nlohmann::json* node = &effective;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key =
        dot == std::string::npos ? path.substr(start) : path.substr(start, dot - start);
    if (!node->is_object() || !node->contains(key))
      throw ConfigError("sweep: variable '" + path + "' is not present in the config");
    node = &(*node)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (!node->is_number())
    throw ConfigError("sweep: variable '" + path + "' is not numeric");
}

/// Evaluates the sweep points of `cfg.sweep` for one command. Points are
/// independent; the output is ordered by point index regardless of
/// evaluation order.
inline CommandOutcome run_sweep(const std::string& command,
                                const nlohmann::json& effective, const RunConfig& cfg) {
  if (!cfg.sweep) throw ConfigError("sweep: config has no [sweep] section");
  const SweepConfig& sw = *cfg.sweep;
  check_sweep_target(effective, sw.variable);

  CommandOutcome out;
  out.table.columns = {sw.variable};
  for (const auto& c : summary_columns(command)) out.table.columns.push_back(c);

  int flag_exit = 0;
  for (int i = 0; i < sw.steps; ++i) {
    const double value =
        sw.steps == 1 ? sw.min : sw.min + (sw.max - sw.min) * i / (sw.steps - 1);
    nlohmann::json point = effective;
    detail::apply_override(point, sw.variable + "=" + nlohmann::json(value).dump());
    point.erase("sweep");
    const RunConfig point_cfg = parse_config(point);
    std::vector<double> row{value};
    for (double x : summary_row(command, point_cfg, &flag_exit)) row.push_back(x);
    out.table.add_row(std::move(row));
  }
  detail::stamp(out.table, cfg, command + " (sweep over " + sw.variable + ")");
  if (flag_exit != 0) {
    out.exit_code = flag_exit;
    out.flag_reason = flag_exit == exit_leakage ? "leakage_flag" : "feasibility_flag";
  }
  return out;
}

/// Dispatch: runs `command` directly, or as a sweep when the config carries
/// a [sweep] section (phonon-sweep has its own native grid).
inline CommandOutcome run_command(const std::string& command,
                                  const nlohmann::json& effective, const RunConfig& cfg) {
  if (cfg.sweep && command != "phonon-sweep" && command != "prepare")
    return run_sweep(command, effective, cfg);
  if (command == "spectrum") return run_spectrum(cfg);
  if (command == "gate") return run_gate(cfg);
  if (command == "prepare") return run_prepare(cfg);
  if (command == "cnot") return run_cnot(cfg);
  if (command == "truth-table") return run_truth_table(cfg);
  if (command == "phonon-sweep") return run_phonon_sweep(cfg);
  if (command == "feasibility") return run_feasibility(cfg);
  throw ConfigError("unknown command: " + command);
}

}  // namespace qdot
