#pragma once

// Internal unit system: energies in meV, times in ps, lengths in nm.
// With hbar = 0.6582119 meV ps every quantity handled by the library is
// order unity, which keeps the propagators well conditioned.

namespace qdot::constants {

inline constexpr double hbar = 0.6582119;              // meV ps
inline constexpr double k_boltzmann = 0.08617333262;   // meV / K

// Conversion factors into the internal system.
inline constexpr double ev_to_mev = 1.0e3;
inline constexpr double per_ps_to_per_s = 1.0e12;
inline constexpr double m_per_s_to_nm_per_ps = 1.0e-3;

// 1 (V/cm) * 1 (e nm) = 1e-4 eV nm / (1e7 nm) * ... = 1e-4 meV
inline constexpr double field_times_dipole_to_mev = 1.0e-4;

// 1 g/cm^3 expressed in meV ps^2 / nm^5 (mass density for phonon rates).
inline constexpr double g_per_cm3_to_internal = 6241.509074;

}  // namespace qdot::constants
