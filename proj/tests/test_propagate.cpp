#include <catch2/catch_amalgamated.hpp>

#include <random>

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

TEST_CASE("evolve_timedep: zero Hamiltonian leaves the state untouched") {
  StateVector psi(3);
  psi << 0.6, Complex(0.0, 0.8), 0.0;
  auto h = [](double, ComplexMatrix& m) { m.setZero(); };
  const auto res = evolve_timedep(h, psi, 0.0, 5.0, 0.01);
  CHECK((res.final_state - psi).cwiseAbs().maxCoeff() == 0.0);
  CHECK(res.max_norm_drift == 0.0);
}

TEST_CASE("evolve_timedep: constant H matches the spectral propagator") {
  std::mt19937 rng(555);
  const ComplexMatrix h = random_hermitian(5, rng);
  const StateVector psi = random_state(5, rng);
  const double t = 1.0;
  auto cb = [&](double, ComplexMatrix& m) { m = h; };
  const auto res = evolve_timedep(cb, psi, 0.0, t, t / 1.0e4);
  const StateVector ref = evolve_static(h, psi, t);
  CHECK((res.final_state - ref).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(res.max_norm_drift < 1e-9);
}

TEST_CASE("evolve_timedep: fourth-order convergence on constant H") {
  std::mt19937 rng(808);
  const ComplexMatrix h = random_hermitian(4, rng);
  const StateVector psi = random_state(4, rng);
  const double t = 2.0;
  const StateVector ref = evolve_static(h, psi, t);
  auto cb = [&](double, ComplexMatrix& m) { m = h; };

  const double err_coarse =
      (evolve_timedep(cb, psi, 0.0, t, t / 400).final_state - ref).cwiseAbs().maxCoeff();
  const double err_fine =
      (evolve_timedep(cb, psi, 0.0, t, t / 800).final_state - ref).cwiseAbs().maxCoeff();
  const double ratio = err_coarse / err_fine;
  CHECK(ratio > 10.0);
  CHECK(ratio < 26.0);
}

TEST_CASE("evolve_timedep: validates arguments and reports drift") {
  StateVector psi(2);
  psi << 1.0, 0.0;
  auto h = [](double, ComplexMatrix& m) { m.setZero(); };
  CHECK_THROWS_AS(evolve_timedep(h, psi, 0.0, 1.0, -0.1), std::invalid_argument);

  // a grossly under-resolved fast oscillation must trip the drift guard
  ComplexMatrix strong(2, 2);
  strong << 0.0, 40.0, 40.0, 0.0;
  auto cb = [&](double, ComplexMatrix& m) { m = strong; };
  CHECK_THROWS_AS(evolve_timedep(cb, psi, 0.0, 50.0, 0.05), NumericsError);
}

TEST_CASE("evolve_timedep: trajectory sampling includes both endpoints") {
  StateVector psi(2);
  psi << 1.0, 0.0;
  ComplexMatrix h0(2, 2);
  h0 << 0.0, 0.1, 0.1, 0.0;
  auto cb = [&](double, ComplexMatrix& m) { m = h0; };
  const auto res = evolve_timedep(cb, psi, 0.0, 1.0, 0.001, 100);
  REQUIRE(res.trajectory.times.size() >= 3);
  CHECK(res.trajectory.times.front() == 0.0);
  CHECK(res.trajectory.times.back() == Catch::Approx(1.0));
  CHECK(res.trajectory.states.size() == res.trajectory.times.size());
}
