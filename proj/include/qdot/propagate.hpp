#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "qdot/constants.hpp"
#include "qdot/linalg.hpp"

namespace qdot {

/// exp(-i H t / hbar) psi0 computed through a spectral decomposition.
inline StateVector evolve_static(const SpectralDecomposition& sd,
                                 const StateVector& psi0, double t_ps) {
  if (sd.eigenvectors.rows() != psi0.size())
    throw std::invalid_argument("evolve_static: dimension mismatch");
  StateVector z = sd.eigenvectors.adjoint() * psi0;
  for (Eigen::Index k = 0; k < z.size(); ++k)
    z[k] *= std::polar(1.0, -sd.eigenvalues[k] * t_ps / constants::hbar);
  return sd.eigenvectors * z;
}

inline StateVector evolve_static(const ComplexMatrix& h,
                                 const StateVector& psi0, double t_ps) {
  if (h.rows() != psi0.size())
    throw std::invalid_argument("evolve_static: dimension mismatch");
  return evolve_static(hermitian_eigendecompose(h, "evolve_static"), psi0, t_ps);
}

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
};

struct PropagationResult {
  StateVector final_state;
  Trajectory trajectory;
  double max_norm_drift = 0.0;  // max |  ||psi(t)|| - ||psi(0)||  |
};

/// Fixed-step RK4 integration of i hbar dpsi/dt = H(t) psi.
///
/// `h_of_t` is invoked as h_of_t(t, H) and must fill H with a Hermitian
/// matrix of the same dimension as psi0. The number of steps is
/// round((t1-t0)/dt) with the step width adjusted to land exactly on t1,
/// so trajectories are reproducible for identical inputs. The result is
/// deliberately not renormalized; drift is a diagnostic and exceeding
/// 1e-6 raises NumericsError.
///
/// sample_stride > 0 stores every sample_stride-th step (plus both
/// endpoints) in the returned trajectory.
template <typename HamiltonianFn>
PropagationResult evolve_timedep(HamiltonianFn&& h_of_t, const StateVector& psi0,
                                 double t0, double t1, double dt,
                                 std::size_t sample_stride = 0) {
  if (!(dt > 0.0)) throw std::invalid_argument("evolve_timedep: dt must be > 0");
  if (psi0.size() < 1) throw std::invalid_argument("evolve_timedep: empty state");

  const auto dim = psi0.size();
  const double span = t1 - t0;
  if (span < 0.0) throw std::invalid_argument("evolve_timedep: t1 < t0");

  const std::size_t n_steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(span / dt)));
  const double h = span / static_cast<double>(n_steps);
  const Complex minus_i_over_hbar(0.0, -1.0 / constants::hbar);

  PropagationResult out;
  StateVector psi = psi0;
  const double norm0 = psi.norm();

  ComplexMatrix H(dim, dim);
  H.setZero();
  StateVector k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

  if (sample_stride > 0) {
    out.trajectory.times.push_back(t0);
    out.trajectory.states.push_back(psi);
  }
  if (span == 0.0) {
    out.final_state = psi;
    return out;
  }

  for (std::size_t step = 0; step < n_steps; ++step) {
    const double t = t0 + static_cast<double>(step) * h;

    h_of_t(t, H);
    k1 = minus_i_over_hbar * (H * psi);
    tmp = psi + (0.5 * h) * k1;
    h_of_t(t + 0.5 * h, H);
    k2 = minus_i_over_hbar * (H * tmp);
    tmp = psi + (0.5 * h) * k2;
    k3 = minus_i_over_hbar * (H * tmp);
    tmp = psi + h * k3;
    h_of_t(t + h, H);
    k4 = minus_i_over_hbar * (H * tmp);

    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double drift = std::abs(psi.norm() - norm0);
    if (drift > out.max_norm_drift) out.max_norm_drift = drift;
    if (out.max_norm_drift > 1e-6)
      throw NumericsError(
          "evolve_timedep: norm drift exceeded 1e-6; use a smaller dt");

    if (sample_stride > 0 &&
        ((step + 1) % sample_stride == 0 || step + 1 == n_steps)) {
      out.trajectory.times.push_back(t0 + static_cast<double>(step + 1) * h);
      out.trajectory.states.push_back(psi);
    }
  }

  out.final_state = std::move(psi);
  return out;
}

}  // namespace qdot
