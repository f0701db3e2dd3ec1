#include <doctest.h>

#include <cmath>
#include <vector>

#include "cavicool/hamiltonian.hpp"
#include "cavicool/indices.hpp"
#include "cavicool/lindblad.hpp"
#include "cavicool/observables.hpp"
#include "cavicool/operators.hpp"
#include "cavicool/state.hpp"

using namespace cavicool;

namespace {

ModelParams generic_params() {
  ModelParams p;
  p.N = 2;
  p.eta = 0.05;
  p.g = 4.0;
  p.Omega = 0.7;
  p.Gamma = 0.6;
  p.nu = 1.2;
  p.kappa = 0.9;
  p.delta = 0.8;
  p.mu = 0.02;
  return p;
}

// Correlated (non-product) but exchange-symmetric state: a mixture of two
// distinct displaced products.
QuantumState correlated_state(const SpaceLayout& layout) {
  const MatrixXcd a = displaced_thermal_state(layout.phonon_cutoff(), 0.2, complexd(0.3, 0.1));
  const MatrixXcd b = displaced_thermal_state(layout.phonon_cutoff(), 0.1, complexd(-0.2, 0.2));
  MatrixXcd rho = 0.6 * product_initial_state(layout, a).rho +
                  0.4 * product_initial_state(layout, b).rho;
  rho /= rho.trace().real();
  return QuantumState::validated(rho, layout);
}

}  // namespace

TEST_SUITE("observables") {

TEST_CASE("local expectation equals the dense embedded product") {
  const SpaceLayout layout = build_space(2, 3, 2);
  const QuantumState st = correlated_state(layout);
  const std::vector<std::vector<LocalFactor>> probes = {
      {{layout.phonon_subsystem(0), basis_op(3, 1)}},
      {{layout.phonon_subsystem(0), basis_op(3, 2)}, {layout.cavity_subsystem(), basis_op(2, 3)}},
      {{layout.atom_subsystem(0), basis_op(2, 2)},
       {layout.phonon_subsystem(1), basis_op(3, 3)},
       {layout.cavity_subsystem(), basis_op(2, 2)}},
  };
  for (const auto& factors : probes) {
    const complexd direct = expectation(st, embed_product(factors, layout));
    CHECK(std::abs(expect_local(st, layout, factors) - direct) < 1e-13);
  }
}

TEST_CASE("mean phonon number and coherence for displaced products") {
  const SpaceLayout layout = build_space(2, 4, 2);
  const complexd alpha(0.3, -0.2);
  const QuantumState st = initial_state(layout, 0.0, alpha);
  const MatrixXcd mode = displaced_thermal_state(4, 0.0, alpha);
  const MatrixXcd a4 = annihilation_truncated(4);
  const complexd b_mean = (a4 * mode).trace();
  const double n_mean = ((a4.adjoint() * a4) * mode).trace().real();
  CHECK(mean_phonon(st, layout) == doctest::Approx(n_mean).epsilon(1e-12));
  // Identically displaced uncorrelated modes: zeta = |<b>|^2.
  double imag = 1.0;
  CHECK(phonon_coherence(st, layout, &imag) == doctest::Approx(std::norm(b_mean)).epsilon(1e-12));
  CHECK(std::abs(imag) < 1e-13);
  // A single mode has no pair correlation by definition.
  const SpaceLayout solo = build_space(1, 4, 2);
  CHECK(phonon_coherence(initial_state(solo, 0.3, alpha), solo) == 0.0);
}

TEST_CASE("position-coherence diagnostic agrees for displaced products") {
  ModelParams p = generic_params();
  const SpaceLayout layout = build_space(2, 5, 2);
  // Real displacement, <p> = 0: the two estimates coincide up to truncation.
  const QuantumState st = initial_state(layout, 0.0, 0.35);
  const CoherenceCheck cc = position_coherence_check(st, layout, p);
  CHECK(cc.zeta == doctest::Approx(cc.position_estimate).epsilon(1e-3));
  // Complex displacement puts weight on <p>, and the estimates part ways.
  const QuantumState rot = initial_state(layout, 0.0, complexd(0.0, 0.35));
  const CoherenceCheck cc2 = position_coherence_check(rot, layout, p);
  CHECK(std::abs(cc2.zeta - cc2.position_estimate) > 0.05);
}

TEST_CASE("bundle columns align with serialized rows") {
  const SpaceLayout layout = build_space(2, 3, 2);
  const ExpectationBundle b = extract_bundle(correlated_state(layout), layout);
  const auto names = bundle_column_names(false);
  const auto row = bundle_row(b);
  REQUIRE(names.size() == row.size());
  CHECK(names.front() == "m");
  CHECK(names[1] == "zeta");
  CHECK(names.back() == "imag_residue");
  CHECK(row[0] == b.m);
  CHECK(row[1] == b.zeta);

  const SpaceLayout wide = build_space(3, 2, 2);
  const ExpectationBundle bw = extract_bundle(initial_state(wide, 0.0, 0.2), wide);
  REQUIRE(bw.z_hat.has_value());
  CHECK(bundle_column_names(true).size() == bundle_row(bw).size());
  CHECK(bundle_column_names(true).size() == names.size() + 64);
  CHECK_FALSE(b.z_hat.has_value());
}

TEST_CASE("bundle entries match direct traces") {
  const SpaceLayout layout = build_space(2, 3, 2);
  const QuantumState st = correlated_state(layout);
  const ExpectationBundle b = extract_bundle(st, layout);
  CHECK(b.m == doctest::Approx(mean_phonon(st, layout)).epsilon(1e-13));
  CHECK(b.zeta == doctest::Approx(phonon_coherence(st, layout)).epsilon(1e-13));
  CHECK(b.max_imag_residue < 1e-12);

  // One same-particle and one cross-particle coherence, against expect_local.
  const MatrixXcd phonon_b3 = basis_op(3, 3);
  const MatrixXcd atom_s2 = basis_op(2, 2);
  const MatrixXcd cavity_c2 = basis_op(2, 2);
  double x322 = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    x322 += expect_local(st, layout,
                         {{layout.phonon_subsystem(i), phonon_b3},
                          {layout.atom_subsystem(i), atom_s2},
                          {layout.cavity_subsystem(), cavity_c2}})
                .real();
  }
  CHECK(std::abs(b.x[x_index(3, 2, 2)] - x322 / 2.0) < 1e-12);

  double xt322 = 0.0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (i != j)
        xt322 += expect_local(st, layout,
                              {{layout.phonon_subsystem(i), phonon_b3},
                               {layout.atom_subsystem(j), atom_s2},
                               {layout.cavity_subsystem(), cavity_c2}})
                     .real();
  CHECK(std::abs(b.x_tilde[x_index(3, 2, 2)] - xt322 / 2.0) < 1e-12);
}

TEST_CASE("generator expectation rate matches a finite difference") {
  ModelParams p = generic_params();
  const SpaceLayout layout = build_space(1, 3, 2);
  const QuantumState st = initial_state(layout, 0.2, complexd(0.25, 0.1));
  const MatrixXcd op = embed(basis_op(3, 1), layout.phonon_subsystem(0), layout);

  EvolveOptions opt;
  opt.dt = 0.001;
  opt.t_final = 0.002;
  const Trajectory traj = evolve(st, p, layout, opt);
  REQUIRE(traj.samples.size() >= 3);
  const double fwd = expectation(traj.samples[2].state, op).real();
  const double bak = expectation(traj.samples[0].state, op).real();
  const double fd = (fwd - bak) / 0.002;
  const double exact = ehrenfest_rate(traj.samples[1].state, op, p, layout);
  CHECK(std::abs(exact - fd) < 1e-6);

  // The overload with a prebuilt Hamiltonian is the same computation.
  const MatrixXcd h = build_h_interaction(p, layout);
  CHECK(ehrenfest_rate(st, op, p, layout) ==
        doctest::Approx(ehrenfest_rate(st, op, p, layout, h)).epsilon(1e-14));
}

}  // TEST_SUITE
