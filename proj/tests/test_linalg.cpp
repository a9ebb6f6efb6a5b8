#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qdot/linalg.hpp"
#include "qdot/propagate.hpp"

using namespace qdot;

namespace {

ComplexMatrix random_hermitian(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(dist(rng), dist(rng));
  return 0.5 * (a + a.adjoint().eval());
}

StateVector random_state(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  StateVector v(n);
  for (int i = 0; i < n; ++i) v[i] = Complex(dist(rng), dist(rng));
  v.normalize();
  return v;
}

}  // namespace

TEST_CASE("hermitian_eigendecompose: diagonal matrix") {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(0, 0) = 1.0;
  h(1, 1) = 2.0;
  h(2, 2) = 3.0;
  const auto sd = hermitian_eigendecompose(h);
  CHECK(sd.eigenvalues[0] == Catch::Approx(1.0));
  CHECK(sd.eigenvalues[1] == Catch::Approx(2.0));
  CHECK(sd.eigenvalues[2] == Catch::Approx(3.0));
  for (int k = 0; k < 3; ++k)
    CHECK(std::abs(sd.eigenvectors.col(k).cwiseAbs().maxCoeff() - 1.0) < 1e-12);
}

TEST_CASE("hermitian_eigendecompose: symmetric 2x2 closed form") {
  const double a = 0.7, b = -1.3;
  ComplexMatrix h(2, 2);
  h << a, b, b, a;
  const auto sd = hermitian_eigendecompose(h);
  CHECK(sd.eigenvalues[0] == Catch::Approx(a - std::abs(b)).epsilon(1e-12));
  CHECK(sd.eigenvalues[1] == Catch::Approx(a + std::abs(b)).epsilon(1e-12));
}

TEST_CASE("hermitian_eigendecompose: rejects non-Hermitian input") {
  ComplexMatrix h(2, 2);
  h << Complex(0, 0), Complex(1, 0), Complex(0.5, 0), Complex(0, 0);
  CHECK_THROWS_AS(hermitian_eigendecompose(h, "test matrix"), std::invalid_argument);
  CHECK_THROWS_WITH(hermitian_eigendecompose(h, "test matrix"),
                    Catch::Matchers::ContainsSubstring("test matrix"));
}

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const ComplexMatrix h = random_hermitian(n, rng);
    const auto sd = hermitian_eigendecompose(h);

    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    CHECK((sd.reconstruct() - h).cwiseAbs().maxCoeff() <= 1e-10 * scale);
    CHECK((sd.eigenvectors.adjoint() * sd.eigenvectors - ComplexMatrix::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
    for (int k = 1; k < n; ++k) CHECK(sd.eigenvalues[k] >= sd.eigenvalues[k - 1]);
  }
}

TEST_CASE("fidelity basics") {
  StateVector e0(2), e1(2), plus(2);
  e0 << 1.0, 0.0;
  e1 << 0.0, 1.0;
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK(fidelity(e0, e0) == Catch::Approx(1.0));
  CHECK(fidelity(e0, e1) == Catch::Approx(0.0).margin(1e-15));
  CHECK(fidelity(plus, e0) == Catch::Approx(0.5));

  StateVector bad(3);
  CHECK_THROWS_AS(fidelity(e0, bad), std::invalid_argument);

  // global phase insensitivity
  std::mt19937 rng(99);
  const StateVector psi = random_state(4, rng);
  const StateVector rotated = std::polar(1.0, 1.234) * psi;
  CHECK(fidelity(psi, rotated) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("evolve_static: stationary state picks up a pure phase") {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 0) = 1.5;
  h(1, 1) = -0.25;
  StateVector psi(2);
  psi << 1.0, 0.0;
  const StateVector out = evolve_static(h, psi, 2.0);
  const Complex expected = std::polar(1.0, -1.5 * 2.0 / constants::hbar);
  CHECK(std::abs(out[0] - expected) < 1e-12);
  CHECK(std::abs(out[1]) < 1e-15);
}

TEST_CASE("evolve_static: two-level coupling gives cos/sin Rabi amplitudes") {
  const double b = 0.37;
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 1) = b;
  h(1, 0) = b;
  StateVector psi(2);
  psi << 1.0, 0.0;
  const double t = 3.1;
  const StateVector out = evolve_static(h, psi, t);
  const double arg = b * t / constants::hbar;
  CHECK(std::abs(out[0] - Complex(std::cos(arg), 0.0)) < 1e-12);
  CHECK(std::abs(out[1] - Complex(0.0, -std::sin(arg))) < 1e-12);
}

TEST_CASE("evolve_static: unitary and group properties") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const ComplexMatrix h = random_hermitian(n, rng);
    const auto sd = hermitian_eigendecompose(h);
    const StateVector psi = random_state(n, rng);
    std::uniform_real_distribution<double> tdist(0.1, 20.0);
    const double t1 = tdist(rng), t2 = tdist(rng);

    CHECK(std::abs(evolve_static(sd, psi, t1).norm() - 1.0) < 1e-12);
    const StateVector once = evolve_static(sd, psi, t1 + t2);
    const StateVector twice = evolve_static(sd, evolve_static(sd, psi, t1), t2);
    CHECK((once - twice).cwiseAbs().maxCoeff() < 1e-10);
  }
}
