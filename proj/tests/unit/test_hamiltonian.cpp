#include <doctest.h>

#include <cmath>

#include "cavicool/hamiltonian.hpp"
#include "cavicool/space.hpp"

using namespace cavicool;

namespace {

ModelParams coupling_only(double eta, double g) {
  ModelParams p;
  p.N = 1;
  p.eta = eta;
  p.g = g;
  p.Omega = 0.0;
  p.nu = 0.0;
  p.mu = 0.0;
  p.delta = 0.0;
  p.kappa = 0.0;
  p.Gamma = 0.0;
  return p;
}

}  // namespace

TEST_SUITE("hamiltonian") {

TEST_CASE("interaction Hamiltonian is Hermitian") {
  ModelParams p;
  p.N = 2;
  p.eta = 0.05;
  p.g = 3.0;
  p.Omega = 0.8;
  p.nu = 1.1;
  p.mu = 0.04;
  p.delta = 0.7;
  const SpaceLayout layout = build_space(2, 3, 2);
  const MatrixXcd h = build_h_interaction(p, layout);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  const MatrixXcd hx = build_h_interaction_exact(p, layout);
  CHECK((hx - hx.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("matrix elements on a single-atom space") {
  // Basis digits (atom, phonon, cavity) with strides (6, 2, 1).
  ModelParams p;
  p.N = 1;
  p.eta = 0.05;
  p.g = 3.0;
  p.Omega = 0.8;
  p.nu = 1.1;
  p.mu = 0.0;
  p.delta = 0.7;
  const SpaceLayout layout = build_space(1, 3, 2);
  const MatrixXcd h = build_h_interaction(p, layout);

  // |g, n_b=1, n_c=1> -> |e, n_b=2, n_c=0>: the coupling raises the phonon
  // while the cavity photon converts to an atomic excitation.
  CHECK(h(10, 3).real() == doctest::Approx(0.21213203435596431).epsilon(1e-15));
  // Same source, phonon lowered instead: eta g sqrt(1).
  CHECK(h(6, 3).real() == doctest::Approx(0.15000000000000002).epsilon(1e-15));
  // Drive flips the atom and touches nothing else: Omega/2.
  CHECK(h(9, 3).real() == doctest::Approx(0.4).epsilon(1e-15));
  // Diagonal carries delta*n_c + nu*n_b.
  CHECK(h(3, 3).real() == doctest::Approx(p.delta + p.nu).epsilon(1e-15));
  CHECK(h(3, 3).imag() == 0.0);
}

TEST_CASE("vibrational part: harmonic diagonal plus cubic off-diagonal") {
  ModelParams p;
  p.nu = 1.1;
  p.mu = 0.05;
  const SpaceLayout layout = build_space(1, 3, 2);
  const MatrixXcd hv = build_h_vib(p, layout);
  CHECK((hv - hv.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  // (b + b^dag)^3 couples |0> and |1> with element 3 at this cutoff.
  CHECK(hv(0, 2).real() == doctest::Approx(3.0 * p.mu).epsilon(1e-14));
  // Cubic operator has odd parity, so the harmonic ladder is the whole diagonal.
  CHECK(hv(4, 4).real() == doctest::Approx(2.0 * p.nu).epsilon(1e-14));
  CHECK(hv(2, 2).real() == doctest::Approx(p.nu).epsilon(1e-14));
}

TEST_CASE("sine coupling reduces to the linear one at third order in eta") {
  const SpaceLayout layout = build_space(1, 3, 2);
  const auto gap = [&](double eta) {
    const ModelParams p = coupling_only(eta, 5.0);
    const MatrixXcd lin = build_h_interaction(p, layout);
    const MatrixXcd ex = build_h_interaction_exact(p, layout);
    return (ex - lin).cwiseAbs().maxCoeff();
  };
  const double g1 = gap(0.2);
  const double g2 = gap(0.1);
  CHECK(g1 > 1e-5);
  // sin(eta B) - eta B scales as eta^3; halving eta shrinks the gap 8x.
  CHECK(g1 / g2 == doctest::Approx(8.0).epsilon(0.05));
  CHECK(gap(1e-3) < 1e-8);
}

}  // TEST_SUITE
