#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace qdot {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Thrown when an iterative or adaptive numerical procedure fails to reach
// its tolerance (eigensolver breakdown, quadrature, norm drift).
struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_hermitian(const ComplexMatrix& m, double rel_tol = 1e-12) {
  if (m.rows() != m.cols() || m.rows() < 1) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

/// Result of diagonalizing a Hermitian matrix: H = Q diag(w) Q^dagger,
/// eigenvalues ascending, eigenvector columns orthonormal.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() *
           eigenvectors.adjoint();
  }
};

inline SpectralDecomposition hermitian_eigendecompose(
    const ComplexMatrix& h, const std::string& label = "matrix") {
  if (h.rows() != h.cols() || h.rows() < 1)
    throw std::invalid_argument(label + ": eigendecomposition needs a square matrix");
  if (!is_hermitian(h))
    throw std::invalid_argument(label + ": matrix is not Hermitian to 1e-12");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw NumericsError(label + ": Hermitian eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// |<phi|psi>|^2, insensitive to the global phase of either state.
inline double fidelity(const StateVector& psi, const StateVector& phi) {
  if (psi.size() != phi.size())
    throw std::invalid_argument("fidelity: dimension mismatch");
  return std::norm(phi.dot(psi));
}

}  // namespace qdot
