// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, not tuned at run time.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "qdot/qdot.hpp"

using namespace qdot;

namespace {

int g_failures = 0;

struct Criterion {
  int index;
  const char* name;
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& why) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += why;
    }
  }
  void note(const std::string& text) {
    if (!detail.empty()) detail += "; ";
    detail += text;
  }
};

void report(Criterion& c, double seconds) {
  std::printf("[%s] %2d. %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", c.index, c.name,
              seconds, c.detail.empty() ? "" : " -- ", c.detail.c_str());
  if (!c.ok) ++g_failures;
}

template <typename Fn>
void run_criterion(int index, const char* name, Fn&& fn) {
  Criterion c{index, name};
  const auto start = std::chrono::steady_clock::now();
  try {
    fn(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(c, seconds);
}

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

const MoleculeSpec kMol{0.0, 10.0, 1.0, std::numbers::pi / 6.0, 5.0};
const CnotSpec kCnot{0.0, 10.0, 1.0, 1.0, std::numbers::pi / 6.0,
                     std::numbers::pi / 6.0, 5.0, 1000.0};

double wrap_2pi(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  while (x < 0.0) x += two_pi;
  while (x >= two_pi) x -= two_pi;
  return x;
}

double phase_distance(double a, double b) {
  double d = std::abs(wrap_2pi(a) - wrap_2pi(b));
  return std::min(d, 2.0 * std::numbers::pi - d);
}

// shared between criteria 3/5 and 10
double g_not_drift = -1.0;
double g_cnot_drift = -1.0;

}  // namespace

int main() {
  std::printf("acceptance suite: optically driven charge-qubit gates\n");

  // 1 ----------------------------------------------------------------------
  run_criterion(1, "spectrum closed forms (100 random draws)", [](Criterion& c) {
    std::mt19937 rng(20240801);
    std::uniform_real_distribution<double> es(-5.0, 5.0), gap(5.0, 15.0), v(0.1, 2.0),
        ang(0.1, 1.4), etad(0.0, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      MoleculeSpec m{es(rng), 0.0, v(rng), ang(rng), 5.0};
      m.eps_p = m.eps_s + gap(rng);
      const auto sd = hermitian_eigendecompose(build_h0(m));
      const double r2v = std::numbers::sqrt2 * m.V;
      const std::array<double, 7> want{m.eps_s,  m.eps_s, m.eps_p - r2v, m.eps_p,
                                       m.eps_p, m.eps_p, m.eps_p + r2v};
      const double scale = std::abs(m.eps_p) + r2v + 1.0;
      for (int k = 0; k < 7; ++k)
        worst = std::max(worst, std::abs(sd.eigenvalues[k] - want[k]) / scale);

      CnotSpec cs = kCnot;
      cs.eps_s = m.eps_s;
      cs.eps_p = m.eps_p;
      cs.V = m.V;
      cs.V_prime = etad(rng) * m.V;
      const BarredStates b = barred_states(cs);
      const double eta = cs.eta();
      const std::array<double, 4> bw{
          cs.eps_p - std::sqrt(1 + eta * eta) * cs.V,
          cs.eps_p - std::sqrt(1 + eta * eta) * cs.V,
          cs.eps_p - std::numbers::sqrt2 * cs.V,
          cs.eps_p - std::sqrt(2 + eta * eta) * cs.V};
      for (int a = 0; a < 4; ++a)
        worst = std::max(worst, std::abs(b.energies[a] - bw[a]) / scale);
    }
    c.require(worst <= 1e-10, fmt("worst relative error %.2e > 1e-10", worst));
    c.note(fmt("max rel err %.2e", worst));
  });

  // 2 ----------------------------------------------------------------------
  run_criterion(2, "analytic vs RK4 reduced propagator (125-point grid)",
                [](Criterion& c) {
    const double phi = 0.3;
    double worst = 0.0;
    for (double hbar_omega : {0.03, 0.08, 0.15, 0.3, 0.5}) {
      for (double delta : {-0.3, -0.1, 0.0, 0.1, 0.3}) {
        const PulseSpec p{field_for_rabi(kMol, hbar_omega), phi, delta, 1};
        const PulseDerived d = pulse_derived(kMol, p);
        for (double t : {2.0, 5.0, 12.0, 25.0, 40.0}) {
          const Eigen::Matrix3cd analytic = analytic_reduced_propagator(d, delta, t);
          Eigen::Matrix3cd numeric;
          for (int col = 0; col < 3; ++col) {
            StateVector s0 = StateVector::Zero(3);
            s0[col] = 1.0;
            auto cb = [&](double tt, ComplexMatrix& h) {
              h = reduced_interaction_hamiltonian(d, delta, tt);
            };
            numeric.col(col) =
                evolve_timedep(cb, s0, 0.0, t, t / 20000.0).final_state;
          }
          worst = std::max(worst, (analytic - numeric).cwiseAbs().maxCoeff());
        }
      }
    }
    c.require(worst <= 1e-8, fmt("sup-norm %.2e > 1e-8", worst));
    c.note(fmt("sup-norm %.2e", worst));
  });

  // 3 ----------------------------------------------------------------------
  run_criterion(3, "NOT gate: full 7-level simulation of R(0,0)", [](Criterion& c) {
    const PulseSpec pulse{field_for_rabi(kMol, 0.05), 0.0, 0.0, 1};
    StateVector psi0 = StateVector::Zero(7);
    psi0[0] = 1.0;
    const auto r = simulate_pulse(kMol, pulse, psi0);
    StateVector target(2);
    target << 0.0, 1.0;
    const double fid = fidelity(r.final_qubit.amplitudes(), target);
    g_not_drift = r.max_norm_drift;
    c.require(fid >= 0.99, fmt("fidelity %.6f < 0.99", fid));
    c.require(r.end_leakage <= 1e-3, fmt("end leakage %.2e > 1e-3", r.end_leakage));
    c.note(fmt("fidelity %.6f, end leakage %.2e", fid, r.end_leakage));
  });

  // 4 ----------------------------------------------------------------------
  run_criterion(4, "phase gate: relative phase pi - delta*tau/2", [](Criterion& c) {
    // reduced model across the detuning bracket
    const double e0 = field_for_rabi(kMol, 0.05);
    const int n_cycles = 3;
    const double bound = phase_detuning_bound(kMol, e0, n_cycles);
    const double pol = kMol.phi_B + std::numbers::pi / 2.0;
    double worst_analytic = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double delta = -bound + 2.0 * bound * i / 20.0;
      const PulseSpec p{e0, pol, delta, n_cycles};
      const PulseDerived d = pulse_derived(kMol, p);
      const Eigen::Matrix2cd r = gate_matrix(kMol, p);
      const double got = std::arg(r(0, 0) / r(1, 1));
      const double want = std::numbers::pi - 0.5 * delta * d.tau;
      worst_analytic = std::max(worst_analytic, phase_distance(got, want));
    }
    c.require(worst_analytic <= 1e-8,
              fmt("analytic phase error %.2e > 1e-8", worst_analytic));

    // numerical reduced propagation at five bracket points
    double worst_numeric = 0.0;
    for (int i = 0; i < 5; ++i) {
      const double delta = -bound + 2.0 * bound * i / 4.0 * 0.999;
      const PulseSpec p{e0, pol, delta, n_cycles};
      const PulseDerived d = pulse_derived(kMol, p);
      StateVector s0(3);
      s0 << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2, 0.0;
      auto cb = [&](double tt, ComplexMatrix& h) {
        h = reduced_interaction_hamiltonian(d, delta, tt);
      };
      const auto res = evolve_timedep(cb, s0, 0.0, d.tau, d.tau / 40000.0);
      const double got = std::arg(res.final_state[0] / res.final_state[1]);
      const double want = std::numbers::pi - 0.5 * delta * d.tau;
      worst_numeric = std::max(worst_numeric, phase_distance(got, want));
    }
    c.require(worst_numeric <= 1e-8,
              fmt("numeric reduced-model phase error %.2e > 1e-8", worst_numeric));

    // full seven-level model at a weak drive (choice recorded in the docs)
    const double e0_full = field_for_rabi(kMol, 0.002);
    const double bound_full = phase_detuning_bound(kMol, e0_full, n_cycles);
    double worst_full = 0.0;
    for (double frac : {0.0, 0.5}) {
      const double delta = frac * bound_full;
      const PulseSpec p{e0_full, pol, delta, n_cycles};
      const PulseDerived d = pulse_derived(kMol, p);
      StateVector psi0 = StateVector::Zero(7);
      psi0[0] = 1.0 / std::numbers::sqrt2;
      psi0[1] = 1.0 / std::numbers::sqrt2;
      SimOptions opts;
      opts.samples_per_period = 64.0;
      opts.sample_stride = 0;
      const auto r = simulate_pulse(kMol, p, psi0, opts);
      const double got =
          std::arg(r.final_amplitudes[0] / r.final_amplitudes[1]);
      const double want = std::numbers::pi - 0.5 * delta * d.tau;
      worst_full = std::max(worst_full, phase_distance(got, want));
    }
    c.require(worst_full <= 1e-2, fmt("full-model phase error %.2e > 1e-2", worst_full));
    c.note(fmt("analytic %.1e, reduced-numeric %.1e, full-model %.1e rad",
               worst_analytic, worst_numeric, worst_full));
  });

  // 5 ----------------------------------------------------------------------
  run_criterion(5, "CNOT truth table at hbar Omega_C ~ 0.086 meV", [](Criterion& c) {
    const CnotPulse pulse = cnot_parameters(kCnot, 200.0, 1);  // E0 xi = 0.1 meV
    c.note(fmt("hbar Omega_C %.4f meV, gap %.4f meV",
               pulse.Omega_C * constants::hbar, pulse.gap_mev));
    const TruthTable t = truth_table_fidelity(kCnot, pulse);
    const char* rows[4] = {"0t0c", "1t0c", "0t1c", "1t1c"};
    for (int i = 0; i < 4; ++i) {
      c.require(t.row_fidelity[i] >= 0.99,
                fmt("row %s fidelity %.4f < 0.99", rows[i], t.row_fidelity[i]));
    }
    const TwoQubitState in =
        TwoQubitState::from_angles(0.0, 0.0, std::numbers::pi / 4.0, 0.0);
    const auto r = simulate_cnot(kCnot, pulse, in);
    g_cnot_drift = r.max_norm_drift;
    Eigen::Vector4cd ideal;
    ideal << 1.0 / std::numbers::sqrt2, 0.0, 0.0, 1.0 / std::numbers::sqrt2;
    const double fid_ent = std::norm(ideal.dot(r.final_state.qubit_amplitudes()));
    c.require(fid_ent >= 0.99, fmt("entangling fidelity %.4f < 0.99", fid_ent));
    c.note(fmt("measured fidelities: %.4f %.4f %.4f %.4f, entangling %.4f",
               t.row_fidelity[0], t.row_fidelity[1], t.row_fidelity[2],
               t.row_fidelity[3], fid_ent));
  });

  // 6 ----------------------------------------------------------------------
  run_criterion(6, "two-particle blockade limit (169-state diagonalization)",
                [](Criterion& c) {
    for (double uc : {0.0, 1.0, 1000.0 * kCnot.V}) {
      const TwoParticleSpectrum sp = two_particle_spectrum(kCnot, uc);
      c.require(sp.ground_indices.size() >= 12,
                fmt("U_c=%g: only %zu ground states", uc, sp.ground_indices.size()));
      for (int idx : sp.ground_indices)
        c.require(std::abs(sp.energies[idx] - 2.0 * kCnot.eps_s) <= 1e-9,
                  fmt("U_c=%g: ground energy off by %.1e", uc,
                      std::abs(sp.energies[idx] - 2.0 * kCnot.eps_s)));
    }
    const TwoParticleSpectrum sp = two_particle_spectrum(kCnot, 1000.0 * kCnot.V);
    const BarredStates b = barred_states(kCnot);
    std::vector<double> want;
    for (int a = 0; a < 4; ++a) {
      want.push_back(kCnot.eps_s + b.energies[a]);
      want.push_back(kCnot.eps_s + b.energies[a]);
    }
    std::sort(want.begin(), want.end());
    double worst = 0.0;
    for (int i = 0; i < 8; ++i)
      worst = std::max(worst,
                       std::abs(sp.low_excited[i] - want[i]) / std::abs(want[i]));
    c.require(worst <= 0.01, fmt("excited manifold off by %.2e > 1%%", worst));
    c.note(fmt("blockade manifold max rel dev %.2e", worst));
  });

  // 7 ----------------------------------------------------------------------
  run_criterion(7, "Gamma_2 magnitude at E = sqrt(2) meV, 300 K", [](Criterion& c) {
    PhononParams gaas;
    const double rate = gamma2(std::numbers::sqrt2, gaas).rate;
    c.require(rate >= 3.0e10 && rate <= 3.0e11,
              fmt("Gamma_2 %.3e outside [3e10, 3e11]", rate));
    c.note(fmt("Gamma_2 = %.3e 1/s", rate));
  });

  // 8 ----------------------------------------------------------------------
  run_criterion(8, "feasibility thresholds (0.4 meV, 400 V/cm within x2)",
                [](Criterion& c) {
    const double min_rabi = min_rabi_for_margin(1e11, 1, 10.0);
    c.require(min_rabi >= 0.2 && min_rabi <= 0.8,
              fmt("min hbar Omega %.3f outside [0.2, 0.8] meV", min_rabi));
    const double e0 = field_for_rabi(kMol, 0.4);  // xi = e * 5 nm = e lambda_p / 2
    c.require(e0 >= 200.0 && e0 <= 800.0,
              fmt("E0 %.1f outside [200, 800] V/cm", e0));
    c.note(fmt("min hbar Omega %.3f meV, E0 %.1f V/cm", min_rabi, e0));
  });

  // 9 ----------------------------------------------------------------------
  run_criterion(9, "phonon rate trends over E", [](Criterion& c) {
    PhononParams gaas;
    double prev = 0.0;
    bool first = true;
    bool monotone = true, above = true;
    for (int i = 0; i <= 25; ++i) {
      const double e = 0.5 + 2.5 * i / 25.0;
      const double r0 = gamma0(e, gaas).rate;
      const double r2 = gamma2(e, gaas).rate;
      if (!first && e <= 2.0 + 1e-9 && r0 >= prev) monotone = false;
      if (r2 <= r0) above = false;
      prev = r0;
      first = false;
    }
    const double ratio = gamma0(2.0, gaas).rate / gamma0(0.5, gaas).rate;
    c.require(monotone, "Gamma_0 not decreasing on [0.5, 2] meV");
    c.require(ratio < 1.0, fmt("Gamma_0(2)/Gamma_0(0.5) = %.3f >= 1", ratio));
    c.require(above, "Gamma_2 <= Gamma_0 somewhere on [0.5, 3] meV");
    c.note(fmt("Gamma_0(2)/Gamma_0(0.5) = %.3e", ratio));
  });

  // 10 ---------------------------------------------------------------------
  run_criterion(10, "unitarity and determinism of shipped simulations",
                [](Criterion& c) {
    c.require(g_not_drift >= 0.0 && g_not_drift <= 1e-9,
              fmt("NOT-gate norm drift %.2e > 1e-9", g_not_drift));
    c.require(g_cnot_drift >= 0.0 && g_cnot_drift <= 1e-9,
              fmt("CNOT norm drift %.2e > 1e-9", g_cnot_drift));

    // bitwise reproducibility of a full simulation
    const PulseSpec pulse{field_for_rabi(kMol, 0.2), 0.3, 0.05, 1};
    StateVector psi0 = StateVector::Zero(7);
    psi0[0] = 1.0;
    const auto a = simulate_pulse(kMol, pulse, psi0);
    const auto b = simulate_pulse(kMol, pulse, psi0);
    bool identical =
        std::memcmp(a.final_amplitudes.data(), b.final_amplitudes.data(),
                    sizeof(Complex) * 7) == 0;
    // and of a CSV emission
    nlohmann::json j;
    j["molecule"] = {{"eps_s", 0.0}, {"eps_p", 10.0}, {"V", 1.0},
                     {"phi_B", kMol.phi_B}, {"xi", 5.0}};
    const RunConfig cfg = parse_config(j);
    std::ostringstream s1, s2;
    run_spectrum(cfg).table.write(s1);
    run_spectrum(cfg).table.write(s2);
    identical = identical && (s1.str() == s2.str());
    c.require(identical, "repeated runs are not byte-identical");
    c.note(fmt("drift: NOT %.1e, CNOT %.1e", g_not_drift, g_cnot_drift));
  });

  std::printf("%d of 10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
