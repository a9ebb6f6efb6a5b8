#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "qdot/constants.hpp"
#include "qdot/molecule.hpp"
#include "qdot/quadrature.hpp"

namespace qdot {

/// Material and dot-shape parameters for the golden-rule LA-phonon rates.
/// Defaults are the GaAs values with a 10 nm x 2 nm disk-like dot.
struct PhononParams {
  double Xi = 6.8;        // deformation potential [eV]
  double rho = 5.36;      // mass density [g/cm^3]
  double c_s = 5150.0;    // longitudinal sound velocity [m/s]
  double lambda_p = 10.0; // in-plane Gaussian radius [nm]
  double lambda_z = 2.0;  // growth-direction radius [nm]
  double T = 300.0;       // lattice temperature [K]

  void validate() const {
    if (!(Xi > 0.0 && rho > 0.0 && c_s > 0.0 && lambda_p > 0.0 && lambda_z > 0.0))
      throw std::invalid_argument("phonon: material parameters must be positive");
    if (T < 0.0) throw std::invalid_argument("phonon: temperature must be >= 0");
    if (!(lambda_p > lambda_z))
      throw std::invalid_argument("phonon: disk-like dot requires lambda_p > lambda_z");
  }

  double c_s_internal() const { return c_s * constants::m_per_s_to_nm_per_ps; }
  double rho_internal() const { return rho * constants::g_per_cm3_to_internal; }
  double Xi_mev() const { return Xi * constants::ev_to_mev; }
};

enum class RateMode { corrected, literal };
enum class FeasibilityVerdict { pass, marginal, fail };

struct RateResult {
  double rate;            // [1/s] in corrected mode; the raw printed-formula
                          // number in literal mode (dimensionally broken)
  double q;               // phonon wavevector [1/nm]
  double n_bose;          // thermal occupation at the transition energy
  double integral_value;  // angular shape integral
  RateMode mode;
};

/// Bose occupation 1/(e^{E/kT} - 1); a frozen bath (T = 0) gives exactly 0.
inline double bose_occupation(double energy_mev, double temperature_K) {
  if (!(energy_mev > 0.0))
    throw std::invalid_argument("bose_occupation: energy must be > 0");
  if (temperature_K < 0.0)
    throw std::invalid_argument("bose_occupation: temperature must be >= 0");
  if (temperature_K == 0.0) return 0.0;
  const double x = energy_mev / (constants::k_boltzmann * temperature_K);
  const double e = std::expm1(x);
  return std::isinf(e) ? 0.0 : 1.0 / e;
}

/// q = E / (hbar c_s) [1/nm].
inline double phonon_wavevector(double energy_mev, const PhononParams& p) {
  if (!(energy_mev > 0.0))
    throw std::invalid_argument("phonon_wavevector: energy must be > 0");
  return energy_mev / (constants::hbar * p.c_s_internal());
}

namespace detail {

/// integral over u in [-1,1] of e^{-q^2 lp^2 (1-u^2) - q^2 lz^2 u^2} (1-u^2)^p.
/// For q lambda_p >> 1 the integrand collapses into narrow lobes just
/// inside u = +-1; the domain is split at the analytic lobe maxima so the
/// adaptive rule sees them.
inline double angular_shape_integral(double q, double lambda_p, double lambda_z,
                                     int power) {
  const double qlp2 = q * q * lambda_p * lambda_p;
  const double qlz2 = q * q * lambda_z * lambda_z;
  auto f = [&](double u) {
    const double w = 1.0 - u * u;
    double shape = w;
    for (int k = 1; k < power; ++k) shape *= w;
    return std::exp(-qlp2 * w - qlz2 * u * u) * shape;
  };
  const double a = qlp2 - qlz2;  // lobe maxima at 1 - u^2 = power / a
  if (a > 2.0 * power) {
    const double u_peak = std::sqrt(1.0 - power / a);
    return adaptive_simpson(f, -1.0, -u_peak, 1e-10) +
           adaptive_simpson(f, -u_peak, u_peak, 1e-10) +
           adaptive_simpson(f, u_peak, 1.0, 1e-10);
  }
  return adaptive_simpson(f, -1.0, 1.0, 1e-10);
}

}  // namespace detail

/// Absorption rate out of a localized ground state into an excited
/// molecular state a phonon energy E away.
inline RateResult gamma0(double energy_mev, const PhononParams& par) {
  par.validate();
  const double q = phonon_wavevector(energy_mev, par);
  const double nb = bose_occupation(energy_mev, par.T);
  const double integral = detail::angular_shape_integral(q, par.lambda_p, par.lambda_z, 1);
  const double xi2 = par.Xi_mev() * par.Xi_mev();
  const double cs = par.c_s_internal();
  const double rate_per_ps = xi2 * q * q * q * nb * integral /
                             (8.0 * std::numbers::pi * constants::hbar *
                              par.rho_internal() * cs * cs);
  return {rate_per_ps * constants::per_ps_to_per_s, q, nb, integral,
          RateMode::corrected};
}

/// Absorption rate out of the first excited state into the adjacent one.
/// The printed prefactor 1/(8 pi hbar) is dimensionally inconsistent; the
/// default corrected mode uses 1/(8 pi hbar^2 c_s), which restores 1/s.
/// Literal mode evaluates the printed formula in SI units and returns the
/// raw number, flagged through `mode`.
inline RateResult gamma2(double energy_mev, const PhononParams& par,
                         RateMode mode = RateMode::corrected) {
  par.validate();
  const double q = phonon_wavevector(energy_mev, par);
  const double nb = bose_occupation(energy_mev, par.T);
  const double integral = detail::angular_shape_integral(q, par.lambda_p, par.lambda_z, 2);

  if (mode == RateMode::corrected) {
    const double xi2 = par.Xi_mev() * par.Xi_mev();
    const double cs = par.c_s_internal();
    const double lp = par.lambda_p;
    const double q3 = q * q * q;
    const double rate_per_ps = xi2 * q3 * q3 * q * lp * lp * lp * lp * nb * integral /
                               (16.0 * std::numbers::pi * constants::hbar *
                                par.rho_internal() * cs * cs);
    return {rate_per_ps * constants::per_ps_to_per_s, q, nb, integral, mode};
  }

  // literal printed formula, SI evaluation: Xi^2 q^7 lp^4 n_B I / (16 pi rho c_s)
  const double xi_J = par.Xi * 1.602176634e-19;
  const double q_m = q * 1e9;
  const double lp_m = par.lambda_p * 1e-9;
  const double rho_SI = par.rho * 1000.0;
  const double q7 = std::pow(q_m, 7);
  const double value = xi_J * xi_J * q7 * lp_m * lp_m * lp_m * lp_m * nb * integral /
                       (16.0 * std::numbers::pi * rho_SI * par.c_s);
  return {value, q, nb, integral, mode};
}

struct RateChannel {
  int level;      // molecular state index 2..6
  double energy;  // transition energy eps_n - eps_0 [meV]
  double q;       // [1/nm]
  double weight;  // probability of sigma/pi at the electron's dot in |n>
  double rate;    // contribution P_n Gamma_0(q_n) [1/s]
};

struct GroundRateResult {
  double total;  // [1/s]
  std::vector<RateChannel> channels;
};

/// Total golden-rule absorption rate out of a qubit ground state,
/// sum over excited molecular states of P_n Gamma_0(q_n). The weights are
/// computed from the matched molecular orbitals for the dot hosting the
/// electron (dot A; dot B gives the same total by mirror symmetry).
inline GroundRateResult ground_total_rate(const MoleculeSpec& mol,
                                          const PhononParams& par) {
  const Spectrum7 spectrum = molecular_spectrum(mol);
  GroundRateResult out{0.0, {}};
  for (int n = 2; n < 7; ++n) {
    RateChannel ch;
    ch.level = n;
    ch.energy = spectrum.energies[n] - spectrum.energies[0];
    ch.weight = std::norm(spectrum.orbitals(site7::sigma_A, n)) +
                std::norm(spectrum.orbitals(site7::pi_A, n));
    const RateResult g = gamma0(ch.energy, par);
    ch.q = g.q;
    ch.rate = ch.weight * g.rate;
    out.total += ch.rate;
    out.channels.push_back(ch);
  }
  return out;
}

struct FeasibilityResult {
  double margin;  // Omega / (N Gamma)
  FeasibilityVerdict verdict;
};

/// Coherence margin of a pulse of N cycles against a scattering rate:
/// the pulse outruns decoherence when Omega >> N Gamma.
inline FeasibilityResult pulse_feasibility(double omega_per_ps, int n_cycles,
                                           double gamma_per_s) {
  if (!(omega_per_ps > 0.0) || n_cycles < 1 || gamma_per_s < 0.0)
    throw std::invalid_argument("pulse_feasibility: arguments must be positive");
  if (gamma_per_s == 0.0)
    return {std::numeric_limits<double>::infinity(), FeasibilityVerdict::pass};
  const double margin =
      omega_per_ps * constants::per_ps_to_per_s / (n_cycles * gamma_per_s);
  FeasibilityVerdict v = FeasibilityVerdict::fail;
  if (margin >= 10.0)
    v = FeasibilityVerdict::pass;
  else if (margin > 1.0)
    v = FeasibilityVerdict::marginal;
  return {margin, v};
}

/// Smallest Rabi energy [meV] with the requested margin over N Gamma.
inline double min_rabi_for_margin(double gamma_per_s, int n_cycles,
                                  double margin = 10.0) {
  return margin * n_cycles * gamma_per_s / constants::per_ps_to_per_s *
         constants::hbar;
}

/// Dipole moment of the Gaussian disk dot: <0|ex|+-1> = e lambda_p / 2.
inline double dipole_from_radius(double lambda_p_nm) {
  if (!(lambda_p_nm > 0.0))
    throw std::invalid_argument("dipole_from_radius: lambda_p must be > 0");
  return 0.5 * lambda_p_nm;
}

}  // namespace qdot
