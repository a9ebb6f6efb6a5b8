#pragma once

#include <cmath>
#include <numbers>

#include "qdot/constants.hpp"
#include "qdot/molecule.hpp"

namespace qdot {

/// Rectangular monochromatic light pulse. The drive frequency is fixed by
/// the detuning: omega = (eps_2 - eps_0)/hbar - delta.
struct PulseSpec {
  double E0;     // field strength [V/cm]
  double phi;    // polarization angle from the x axis [rad]
  double delta;  // detuning from the |0> -> |2> transition [1/ps]
  int N;         // number of Rabi cycles (pulse length tau = 2 N pi / Omega_t)

  void validate() const {
    if (E0 < 0.0) throw std::invalid_argument("pulse: E0 must be >= 0");
    if (N < 1) throw std::invalid_argument("pulse: N must be >= 1");
  }
};

inline double field_times_dipole_mev(const MoleculeSpec& spec, double E0_V_cm) {
  return E0_V_cm * spec.xi * constants::field_times_dipole_to_mev;
}

/// Energy of the |0> -> |2> transition [meV].
inline double qubit_transition_energy(const MoleculeSpec& spec) {
  return spec.eps_p - std::numbers::sqrt2 * spec.V - spec.eps_s;
}

/// hbar * Omega = sqrt(2) E0 xi (eps_p - eps_s) / (eps_2 - eps_0)  [meV]
inline double rabi_energy_mev(const MoleculeSpec& spec, double E0_V_cm) {
  return std::numbers::sqrt2 * field_times_dipole_mev(spec, E0_V_cm) *
         (spec.eps_p - spec.eps_s) / qubit_transition_energy(spec);
}

/// Field strength producing a requested Rabi energy [V/cm].
inline double field_for_rabi(const MoleculeSpec& spec, double hbar_omega_mev) {
  return hbar_omega_mev * qubit_transition_energy(spec) /
         (std::numbers::sqrt2 * spec.xi * constants::field_times_dipole_to_mev *
          (spec.eps_p - spec.eps_s));
}

/// Drive angular frequency [1/ps]; rejects detunings beyond the transition.
inline double drive_frequency(const MoleculeSpec& spec, const PulseSpec& pulse) {
  const double omega = qubit_transition_energy(spec) / constants::hbar - pulse.delta;
  if (!(omega > 0.0))
    throw std::invalid_argument("pulse: drive frequency must be positive");
  return omega;
}

/// Quantities the gate formulas work with, all derived from one pulse.
struct PulseDerived {
  double u;            // cos(phi_B + phi)
  double v;            // cos(phi_B - phi)
  double Omega;        // Rabi frequency [1/ps]
  double Omega_t;      // sqrt(delta^2 + Omega^2 (u^2+v^2)/4) [1/ps]
  double delta_theta;  // rotation half-angle, tan = v/u
  double tau;          // pulse duration 2 N pi / Omega_t [ps]
};

inline PulseDerived pulse_derived(const MoleculeSpec& spec, const PulseSpec& pulse) {
  spec.validate();
  pulse.validate();
  PulseDerived d;
  d.u = std::cos(spec.phi_B + pulse.phi);
  d.v = std::cos(spec.phi_B - pulse.phi);
  d.Omega = rabi_energy_mev(spec, pulse.E0) / constants::hbar;
  const double s2 = d.u * d.u + d.v * d.v;
  if (s2 * d.Omega * d.Omega < 1e-30 && pulse.delta == 0.0)
    throw std::invalid_argument("pulse drives nothing: u = v = 0 with delta = 0");
  d.Omega_t = std::sqrt(pulse.delta * pulse.delta + d.Omega * d.Omega * s2 / 4.0);
  d.delta_theta = std::atan2(d.v, d.u);
  d.tau = 2.0 * pulse.N * std::numbers::pi / d.Omega_t;
  return d;
}

/// Light-coupling Hamiltonian at time t in the molecular basis |0>..|6>.
/// Only ground <-> excited transitions enter; the cos(omega t) factor keeps
/// the counter-rotating terms, so this is the full (non-RWA) drive.
inline ComplexMatrix build_h_light(const MoleculeSpec& spec, const PulseSpec& pulse,
                                   double t_ps) {
  spec.validate();
  pulse.validate();
  const double omega = drive_frequency(spec, pulse);
  const double g = (spec.eps_p - spec.eps_s) * field_times_dipole_mev(spec, pulse.E0) /
                   (std::numbers::sqrt2 * constants::hbar * omega);
  const double u = std::cos(spec.phi_B + pulse.phi);
  const double v = std::cos(spec.phi_B - pulse.phi);
  const double su = std::sin(spec.phi_B + pulse.phi);
  const double sv = std::sin(spec.phi_B - pulse.phi);
  const Complex ig(0.0, g * std::cos(omega * t_ps));

  ComplexMatrix h = ComplexMatrix::Zero(7, 7);
  h(0, 2) = ig * u;
  h(1, 2) = -ig * v;
  h(0, 3) = ig * std::numbers::sqrt2 * u;
  h(1, 3) = ig * std::numbers::sqrt2 * v;
  h(0, 4) = -2.0 * ig * su;
  h(1, 5) = -2.0 * ig * sv;
  h(0, 6) = -ig * u;
  h(1, 6) = ig * v;
  ComplexMatrix full = h + h.adjoint().eval();
  return full;
}

}  // namespace qdot
