#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "qdot/gate.hpp"
#include "qdot/propagate.hpp"

namespace qdot {

struct SimOptions {
  // RK4 steps per period of the fastest phase in the integrated frame.
  double samples_per_period = 96.0;
  // trajectory decimation (steps between stored samples); 0 = endpoints only
  std::size_t sample_stride = 64;
};

/// One stored trajectory sample of the 7-level simulation.
struct PulseSample {
  double t;
  std::array<double, 7> populations;
  double leakage;  // populations of |2>..|6>
  double norm;
};

struct PulseSimResult {
  std::vector<PulseSample> trajectory;
  StateVector final_amplitudes;  // interaction-picture S_0..S_6 at t = tau
  QubitState final_qubit;        // renormalized qubit part of the final state
  double tau = 0.0;
  double end_leakage = 0.0;
  double max_leakage = 0.0;        // includes |2>, which the gate transits
  double max_upper_leakage = 0.0;  // states |3>..|6> only
  double fidelity_vs_prediction = 0.0;  // against the reduced-model propagator
  double max_norm_drift = 0.0;
  bool leakage_flagged = false;  // end leakage above 0.05: outside the
                                 // resonant-approximation window
  PulseDerived derived{};
};

/// Full seven-level propagation of one light pulse with no rotating-wave
/// approximation: the interaction-picture amplitudes S_k of the molecular
/// states are integrated under the complete drive, counter-rotating terms
/// and all non-resonant transitions included.
inline PulseSimResult simulate_pulse(const MoleculeSpec& spec, const PulseSpec& pulse,
                                     const StateVector& psi0,
                                     const SimOptions& opts = {}) {
  if (psi0.size() != 7)
    throw std::invalid_argument("simulate_pulse: state must be 7-dimensional");
  for (int k = 2; k < 7; ++k)
    if (std::norm(psi0[k]) > 1e-18)
      throw std::invalid_argument(
          "simulate_pulse: initial state must be a qubit (supported on |0>, |1>)");

  const Spectrum7 spectrum = molecular_spectrum(spec);
  const PulseDerived derived = pulse_derived(spec, pulse);
  const double omega = drive_frequency(spec, pulse);

  // Sparse structure of the drive in the molecular basis: pure imaginary
  // couplings from the two qubit states into the excited manifold.
  const double g = (spec.eps_p - spec.eps_s) *
                   field_times_dipole_mev(spec, pulse.E0) /
                   (std::numbers::sqrt2 * constants::hbar * omega);
  const double u = derived.u, v = derived.v;
  const double su = std::sin(spec.phi_B + pulse.phi);
  const double sv = std::sin(spec.phi_B - pulse.phi);
  struct Link {
    int from, to;
    double coeff;
  };
  const std::array<Link, 8> links{{{0, 2, u},
                                   {1, 2, -v},
                                   {0, 3, std::numbers::sqrt2 * u},
                                   {1, 3, std::numbers::sqrt2 * v},
                                   {0, 4, -2.0 * su},
                                   {1, 5, -2.0 * sv},
                                   {0, 6, -u},
                                   {1, 6, v}}};

  const auto& eps = spectrum.energies;
  std::array<double, 8> gap{};
  for (std::size_t i = 0; i < links.size(); ++i)
    gap[i] = (eps[links[i].from] - eps[links[i].to]) / constants::hbar;

  auto fill_h = [&](double t, ComplexMatrix& h) {
    const double drive = g * std::cos(omega * t);
    for (std::size_t i = 0; i < links.size(); ++i) {
      const Complex z = Complex(0.0, drive * links[i].coeff) *
                        std::polar(1.0, gap[i] * t);
      h(links[i].from, links[i].to) = z;
      h(links[i].to, links[i].from) = std::conj(z);
    }
  };

  const double fastest = (eps[6] - eps[0]) / constants::hbar + omega;
  const double dt = 2.0 * std::numbers::pi / fastest / opts.samples_per_period;

  const auto prop = evolve_timedep(fill_h, psi0, 0.0, derived.tau, dt,
                                   opts.sample_stride == 0 ? 1ull << 62 : opts.sample_stride);

  PulseSimResult out;
  out.derived = derived;
  out.tau = derived.tau;
  out.max_norm_drift = prop.max_norm_drift;
  out.final_amplitudes = prop.final_state;

  for (std::size_t i = 0; i < prop.trajectory.times.size(); ++i) {
    PulseSample s;
    s.t = prop.trajectory.times[i];
    const StateVector& st = prop.trajectory.states[i];
    double leak = 0.0;
    for (int k = 0; k < 7; ++k) {
      s.populations[k] = std::norm(st[k]);
      if (k >= 2) leak += s.populations[k];
    }
    s.leakage = leak;
    s.norm = st.norm();
    out.trajectory.push_back(s);
    if (leak > out.max_leakage) out.max_leakage = leak;
    const double upper = leak - s.populations[2];
    if (upper > out.max_upper_leakage) out.max_upper_leakage = upper;
  }

  const double qubit_weight =
      std::norm(prop.final_state[0]) + std::norm(prop.final_state[1]);
  out.end_leakage = 1.0 - qubit_weight;
  out.leakage_flagged = out.end_leakage > 0.05;
  out.final_qubit =
      QubitState::from_amplitudes(prop.final_state[0], prop.final_state[1]);

  // reduced-model prediction for the final qubit
  const Eigen::Matrix3cd p = analytic_reduced_propagator(derived, pulse.delta, derived.tau);
  Eigen::Vector3cd s_in;
  s_in << psi0[0], psi0[1], Complex(0.0, 0.0);
  const Eigen::Vector3cd s_out = p * s_in;
  StateVector predicted(2), achieved(2);
  predicted << s_out[0], s_out[1];
  const double pw = predicted.norm();
  achieved << prop.final_state[0] / std::sqrt(qubit_weight),
      prop.final_state[1] / std::sqrt(qubit_weight);
  out.fidelity_vs_prediction = pw > 0 ? fidelity(achieved, predicted / pw) : 0.0;
  return out;
}

}  // namespace qdot
