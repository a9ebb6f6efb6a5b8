#pragma once

#include <cmath>
#include <numbers>

#include "qdot/pulse.hpp"

namespace qdot {

/// Charge qubit over the localized ground states |0;A>, |0;B> in canonical
/// form: global phase fixed so s1 is real and non-negative,
/// s0 = cos(theta) e^{i varphi}, s1 = sin(theta), theta in [0, pi/2].
struct QubitState {
  Complex s0{1.0, 0.0};
  Complex s1{0.0, 0.0};
  double theta = 0.0;
  double varphi = 0.0;

  static QubitState from_amplitudes(Complex a0, Complex a1) {
    const double norm = std::sqrt(std::norm(a0) + std::norm(a1));
    if (!(norm > 0.0))
      throw std::invalid_argument("qubit: zero amplitude vector");
    a0 /= norm;
    a1 /= norm;
    // rotate the global phase onto s1 (or s0 when the qubit is |0>-like)
    const double phase = std::abs(a1) > 1e-14 ? std::arg(a1) : std::arg(a0);
    a0 *= std::polar(1.0, -phase);
    a1 *= std::polar(1.0, -phase);
    QubitState q;
    q.s0 = a0;
    q.s1 = Complex(std::abs(a1), 0.0);
    q.theta = std::atan2(q.s1.real(), std::abs(a0));
    q.varphi = std::abs(a0) > 1e-14 ? std::arg(a0) : 0.0;
    if (q.varphi < 0.0) q.varphi += 2.0 * std::numbers::pi;
    if (q.varphi >= 2.0 * std::numbers::pi) q.varphi -= 2.0 * std::numbers::pi;
    return q;
  }

  static QubitState from_angles(double theta, double varphi) {
    return from_amplitudes(std::polar(std::cos(theta), varphi),
                           Complex(std::sin(theta), 0.0));
  }

  StateVector amplitudes() const {
    StateVector a(2);
    a << s0, s1;
    return a;
  }
};

/// Propagator for the interaction-picture amplitudes (S0, S1, S2) of the
/// resonantly reduced three-level problem, evaluated in closed form: the
/// dark-state projector carrying the e^{i delta t/2} phase, the bright
/// cos(Omega_t t/2) block, and the sin(Omega_t t/2) transfer block, dressed
/// with the rotating-frame phases. Exactly unitary for all arguments.
inline Eigen::Matrix3cd analytic_reduced_propagator(const PulseDerived& d,
                                                    double delta, double t_ps) {
  const double u = d.u, v = d.v;
  const double s2 = u * u + v * v;
  if (s2 < 1e-28) {
    // no drive: only the frame phases remain, which cancel pairwise
    return Eigen::Matrix3cd::Identity();
  }
  const double omega_t = std::sqrt(delta * delta + d.Omega * d.Omega * s2 / 4.0);
  const Complex i(0.0, 1.0);

  Eigen::Matrix3cd dark = Eigen::Matrix3cd::Zero();
  dark(0, 0) = v * v;
  dark(0, 1) = u * v;
  dark(1, 0) = u * v;
  dark(1, 1) = u * u;

  Eigen::Matrix3cd bright = Eigen::Matrix3cd::Zero();
  bright(0, 0) = u * u;
  bright(0, 1) = -u * v;
  bright(1, 0) = -u * v;
  bright(1, 1) = v * v;
  bright(2, 2) = s2;

  Eigen::Matrix3cd transfer = Eigen::Matrix3cd::Zero();
  transfer(0, 0) = 2.0 * i * delta * u * u;
  transfer(0, 1) = -2.0 * i * delta * u * v;
  transfer(1, 0) = -2.0 * i * delta * u * v;
  transfer(1, 1) = 2.0 * i * delta * v * v;
  transfer(0, 2) = d.Omega * u * s2;
  transfer(1, 2) = -d.Omega * v * s2;
  transfer(2, 0) = -d.Omega * u * s2;
  transfer(2, 1) = d.Omega * v * s2;
  transfer(2, 2) = -2.0 * i * delta * s2;

  const Eigen::Matrix3cd w =
      (std::polar(1.0, 0.5 * delta * t_ps) / s2) * dark +
      (std::cos(0.5 * omega_t * t_ps) / s2) * bright +
      (std::sin(0.5 * omega_t * t_ps) / (2.0 * omega_t * s2)) * transfer;

  Eigen::Vector3cd frame;
  frame << std::polar(1.0, -0.5 * delta * t_ps), std::polar(1.0, -0.5 * delta * t_ps),
      std::polar(1.0, 0.5 * delta * t_ps);
  return frame.asDiagonal() * w;
}

/// Interaction-picture Hamiltonian of the reduced three-level drive,
/// i hbar dS/dt = H(t) S. Used as the numerical route against which the
/// closed-form propagator is checked.
inline Eigen::Matrix3cd reduced_interaction_hamiltonian(const PulseDerived& d,
                                                        double delta, double t_ps) {
  const Complex coupling =
      Complex(0.0, constants::hbar * d.Omega / 4.0) * std::polar(1.0, -delta * t_ps);
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  h(0, 2) = coupling * d.u;
  h(1, 2) = -coupling * d.v;
  h(2, 0) = std::conj(h(0, 2));
  h(2, 1) = std::conj(h(1, 2));
  return h;
}

/// Single-bit gate matrix R(phi, delta) on (S0, S1) after a completed pulse
/// of N cycles. Derived for odd N; even N is rejected.
inline Eigen::Matrix2cd gate_matrix(const MoleculeSpec& spec, const PulseSpec& pulse) {
  if (pulse.N % 2 == 0)
    throw std::invalid_argument("gate_matrix: N must be odd");
  const PulseDerived d = pulse_derived(spec, pulse);
  const double c2 = std::cos(2.0 * d.delta_theta);
  const double s2 = std::sin(2.0 * d.delta_theta);
  const double x = 0.25 * pulse.delta * d.tau;
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd r;
  r(0, 0) = -c2 * std::cos(x) + i * std::sin(x);
  r(0, 1) = s2 * std::cos(x);
  r(1, 0) = s2 * std::cos(x);
  r(1, 1) = c2 * std::cos(x) + i * std::sin(x);
  return std::polar(1.0, -x) * r;
}

/// Exact half-width of the detuning window over which a phase pulse
/// (v = 0 polarization, N odd >= 3) spans relative phases (0, 2pi). The
/// inversion of delta*tau/2 = +-pi gives Omega |sin 2phi_B| / (2 sqrt(N^2-1));
/// twice this value is used as the bisection bracket seed.
inline double phase_detuning_bound(const MoleculeSpec& spec, double E0_V_cm, int N) {
  if (N < 3 || N % 2 == 0)
    throw std::invalid_argument("phase gate: N must be odd and >= 3");
  const double omega_rabi = rabi_energy_mev(spec, E0_V_cm) / constants::hbar;
  return omega_rabi * std::abs(std::sin(2.0 * spec.phi_B)) /
         (2.0 * std::sqrt(static_cast<double>(N) * N - 1.0));
}

/// Solves pi - delta*tau(delta)/2 = target for the detuning of a phase
/// pulse with polarization phi = phi_B + pi/2 (v = 0). target must lie in
/// [0, 2pi]; the solution is refined by bisection until the reproduced
/// phase is within 1e-10 rad.
inline double detuning_for_phase(const MoleculeSpec& spec, const PulseSpec& pulse_template,
                                 double target_phase) {
  const int n_cycles = pulse_template.N;
  const double bound = phase_detuning_bound(spec, pulse_template.E0, n_cycles);
  if (!(target_phase >= 0.0 && target_phase <= 2.0 * std::numbers::pi)) {
    throw std::invalid_argument(
        "detuning_for_phase: target phase must lie in [0, 2pi]; the admissible "
        "detuning range is +-" + std::to_string(bound) + " 1/ps");
  }
  const double phi_pol = spec.phi_B + std::numbers::pi / 2.0;
  auto phase_of = [&](double delta) {
    PulseSpec p{pulse_template.E0, phi_pol, delta, n_cycles};
    const PulseDerived d = pulse_derived(spec, p);
    return std::numbers::pi - 0.5 * delta * d.tau;
  };

  // seeded bracket: twice the exact bound (monotone decreasing phase)
  double lo = -2.0 * bound, hi = 2.0 * bound;
  if (phase_of(lo) < target_phase || phase_of(hi) > target_phase)
    throw std::invalid_argument("detuning_for_phase: target outside admissible range");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (phase_of(mid) > target_phase)
      lo = mid;
    else
      hi = mid;
    if (std::abs(phase_of(0.5 * (lo + hi)) - target_phase) < 1e-11) break;
  }
  const double delta = 0.5 * (lo + hi);
  if (std::abs(phase_of(delta) - target_phase) > 1e-10)
    throw NumericsError("detuning_for_phase: bisection failed to reach 1e-10 rad");
  return delta;
}

/// Polarization angle realizing a requested rotation half-angle
/// delta_theta, i.e. (u, v) proportional to (cos dt, sin dt).
inline double polarization_for_delta_theta(const MoleculeSpec& spec, double dtheta) {
  const double c = std::cos(dtheta), s = std::sin(dtheta);
  const double a = (c + s) / (2.0 * std::cos(spec.phi_B));
  const double b = (s - c) / (2.0 * std::sin(spec.phi_B));
  const double r = 1.0 / std::sqrt(a * a + b * b);
  if (!std::isfinite(r) || r <= 0.0)
    throw std::invalid_argument("polarization: requested delta_theta not achievable");
  return std::atan2(r * b, r * a);
}

/// Two-pulse preparation of an arbitrary qubit from |0>: an amplitude pulse
/// R(phi, 0) with delta_theta = (theta - pi)/2 followed by a phase pulse
/// R(phi_B + pi/2, delta). The first pulse leaves the state at angle theta
/// with relative phase pi, the second contributes pi - delta*tau/2, so the
/// solver target is varphi + pi (mod 2pi) and the final phase is -delta*tau/2.
struct PreparationSequence {
  PulseSpec amplitude_pulse;
  PulseSpec phase_pulse;
};

inline PreparationSequence prepare_qubit(const MoleculeSpec& spec, double theta,
                                         double varphi, double E0_V_cm,
                                         int n_phase_cycles = 3) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0 + 1e-12))
    throw std::invalid_argument("prepare_qubit: theta must lie in [0, pi/2]");
  const double dtheta = 0.5 * (theta - std::numbers::pi);
  const double phi_amp = polarization_for_delta_theta(spec, dtheta);

  double target = varphi + std::numbers::pi;
  const double two_pi = 2.0 * std::numbers::pi;
  while (target >= two_pi) target -= two_pi;
  while (target < 0.0) target += two_pi;

  PulseSpec amplitude{E0_V_cm, phi_amp, 0.0, 1};
  PulseSpec phase_template{E0_V_cm, spec.phi_B + std::numbers::pi / 2.0, 0.0,
                           n_phase_cycles};
  phase_template.delta = detuning_for_phase(spec, phase_template, target);
  return {amplitude, phase_template};
}

}  // namespace qdot
