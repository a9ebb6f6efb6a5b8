#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "qdot/linalg.hpp"

namespace qdot {

/// Three-dot single-bit molecule: two large dots A and B carrying the
/// qubit ground states, one small central dot C whose s level mediates
/// the coupling between the excited orbitals. Dot B sits at angle phi_B
/// above the x axis, dot A mirrored at -phi_B (bent "V" arrangement; the
/// light-coupling coefficients assume this symmetric geometry).
struct MoleculeSpec {
  double eps_s;   // ground-level energy of dots A, B [meV]
  double eps_p;   // excited-level energy; also the dot-C level [meV]
  double V;       // excited-state coupling to the central dot [meV]
  double phi_B;   // angle of dot B from the x axis [rad]
  double xi;      // dipole moment <0;a|ex|1;a> [e nm]

  void validate() const {
    if (!(eps_p > eps_s))
      throw std::invalid_argument("molecule: eps_p must exceed eps_s");
    if (!(V > 0.0)) throw std::invalid_argument("molecule: V must be > 0");
    if (!(phi_B > 0.0 && phi_B < std::numbers::pi / 2))
      throw std::invalid_argument("molecule: phi_B must lie in (0, pi/2)");
    if (!(xi > 0.0)) throw std::invalid_argument("molecule: xi must be > 0");
  }
};

// Site-basis ordering used throughout the single-bit module.
namespace site7 {
inline constexpr int g_A = 0;      // |0;A>
inline constexpr int g_B = 1;      // |0;B>
inline constexpr int sigma_A = 2;  // |sigma;A>
inline constexpr int sigma_B = 3;  // |sigma;B>
inline constexpr int pi_A = 4;     // |pi;A>
inline constexpr int pi_B = 5;     // |pi;B>
inline constexpr int g_C = 6;      // |0;C>
}  // namespace site7

/// Static molecule Hamiltonian in the site basis
/// {0A, 0B, sigmaA, sigmaB, piA, piB, 0C}. Only the sigma orbitals couple
/// to the central dot; the pi orbitals are dark by symmetry.
inline ComplexMatrix build_h0(const MoleculeSpec& spec) {
  spec.validate();
  ComplexMatrix h = ComplexMatrix::Zero(7, 7);
  h(site7::g_A, site7::g_A) = spec.eps_s;
  h(site7::g_B, site7::g_B) = spec.eps_s;
  for (int k : {site7::sigma_A, site7::sigma_B, site7::pi_A, site7::pi_B, site7::g_C})
    h(k, k) = spec.eps_p;
  h(site7::g_C, site7::sigma_A) = spec.V;
  h(site7::sigma_A, site7::g_C) = spec.V;
  h(site7::g_C, site7::sigma_B) = spec.V;
  h(site7::sigma_B, site7::g_C) = spec.V;
  return h;
}

/// Molecular orbitals |0>..|6> of the three-dot molecule with their
/// energies. Columns of `orbitals` are the states over the site basis.
struct Spectrum7 {
  std::array<double, 7> energies;
  ComplexMatrix orbitals;  // 7 x 7
};

namespace detail {

inline ComplexMatrix closed_form_orbitals7() {
  using namespace site7;
  ComplexMatrix q = ComplexMatrix::Zero(7, 7);
  const double r2 = std::numbers::sqrt2;
  q(g_A, 0) = 1.0;
  q(g_B, 1) = 1.0;
  q(g_C, 2) = r2 / 2.0;
  q(sigma_B, 2) = -0.5;
  q(sigma_A, 2) = -0.5;
  q(sigma_B, 3) = 1.0 / r2;
  q(sigma_A, 3) = -1.0 / r2;
  q(pi_A, 4) = 1.0;
  q(pi_B, 5) = 1.0;
  q(g_C, 6) = r2 / 2.0;
  q(sigma_B, 6) = 0.5;
  q(sigma_A, 6) = 0.5;
  return q;
}

inline std::array<double, 7> closed_form_energies7(const MoleculeSpec& s) {
  const double r2v = std::numbers::sqrt2 * s.V;
  return {s.eps_s, s.eps_s, s.eps_p - r2v, s.eps_p, s.eps_p, s.eps_p, s.eps_p + r2v};
}

}  // namespace detail

/// Diagonalizes build_h0 and matches the eigenpairs onto the analytic
/// molecular-orbital labels by projecting each closed-form vector onto the
/// computed (possibly degenerate) eigen-subspace. An overlap below 0.99
/// means the labelling is ambiguous and raises an error.
inline Spectrum7 molecular_spectrum(const MoleculeSpec& spec) {
  const auto sd = hermitian_eigendecompose(build_h0(spec), "molecule H0");
  const auto energies = detail::closed_form_energies7(spec);
  const ComplexMatrix orb = detail::closed_form_orbitals7();

  const double scale = std::max({std::abs(spec.eps_s), std::abs(spec.eps_p), spec.V, 1.0});
  const double degeneracy_tol = 1e-8 * scale;

  Spectrum7 out;
  out.orbitals = orb;
  for (int k = 0; k < 7; ++k) {
    // subspace of computed eigenvalues matching the analytic energy
    double e_sum = 0.0;
    int n_sub = 0;
    double overlap = 0.0;
    for (int j = 0; j < 7; ++j) {
      if (std::abs(sd.eigenvalues[j] - energies[k]) <= degeneracy_tol) {
        overlap += std::norm(sd.eigenvectors.col(j).dot(orb.col(k)));
        e_sum += sd.eigenvalues[j];
        ++n_sub;
      }
    }
    if (n_sub == 0 || overlap < 0.99)
      throw NumericsError(
          "molecular_spectrum: eigenvalue labelling ambiguous (subspace overlap < 0.99)");
    out.energies[k] = e_sum / n_sub;
  }
  return out;
}

}  // namespace qdot
