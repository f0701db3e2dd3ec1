#include <doctest.h>

#include <cmath>
#include <limits>

#include "cavicool/displacement.hpp"
#include "cavicool/errors.hpp"
#include "cavicool/model_params.hpp"

using namespace cavicool;

namespace {

ModelParams trap(double mu) {
  ModelParams p;
  p.nu = 1.0;
  p.mu = mu;
  return p;
}

}  // namespace

TEST_SUITE("displacement") {

TEST_CASE("potential shape closed forms") {
  const ModelParams p = trap(0.01);
  const double eps = 0.01 * std::pow(2.0, 1.5);
  CHECK(cubic_coefficient(p) == doctest::Approx(eps).epsilon(1e-15));
  CHECK(potential_energy(2.0, p) ==
        doctest::Approx(0.5 * 4.0 + eps * 8.0).epsilon(1e-15));
  CHECK(barrier_position(p) == doctest::Approx(-1.0 / (3.0 * eps)).epsilon(1e-15));
  CHECK(barrier_height(p) == doctest::Approx(1.0 / (432.0 * 1e-4)).epsilon(1e-15));
  // The barrier sits at the computed position and height.
  CHECK(potential_energy(barrier_position(p), p) ==
        doctest::Approx(barrier_height(p)).epsilon(1e-12));
  ModelParams flat = trap(0.0);
  CHECK(barrier_height(flat) == std::numeric_limits<double>::infinity());
}

TEST_CASE("turning points of the confined orbit") {
  const TurningPoints a = turning_points(10.0, trap(0.01));
  CHECK(a.x_min == doctest::Approx(-5.3568219377900066).epsilon(1e-10));
  CHECK(a.x_max == doctest::Approx(4.035232534965111).epsilon(1e-10));
  CHECK(a.x_inner == doctest::Approx(-16.356080126838787).epsilon(1e-10));

  const TurningPoints b = turning_points(5.0, trap(0.02));
  CHECK(b.x_min == doctest::Approx(-4.528228410761499).epsilon(1e-10));
  CHECK(b.x_max == doctest::Approx(2.7604614577951292).epsilon(1e-10));
  CHECK(b.x_inner == doctest::Approx(-7.0710678118654711).epsilon(1e-10));

  // All three are genuine roots of V(x) = nu m0.
  for (double r : {a.x_min, a.x_max, a.x_inner}) {
    CHECK(std::abs(potential_energy(r, trap(0.01)) - 10.0) < 1e-9);
  }
  // Harmonic limit: symmetric pair, no third root.
  const TurningPoints h = turning_points(2.0, trap(0.0));
  CHECK(h.x_max == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(h.x_min == -h.x_max);
  CHECK(h.x_inner == -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(turning_points(-1.0, trap(0.01)), error);
}

TEST_CASE("energies at or above the barrier are rejected as escape") {
  // nu m0 = 10 exceeds the barrier height ~5.79 at mu = 0.02.
  const ModelParams p = trap(0.02);
  CHECK_THROWS_AS(turning_points(10.0, p), error);
  CHECK_THROWS_AS(orbital_period(10.0, p), error);
  CHECK_THROWS_AS(displacement_stage(10.0, p), error);
  CHECK_THROWS_AS(classical_trajectory(0.0, std::sqrt(20.0), p, 1.0, 1e-4), error);
}

TEST_CASE("mean displaced position estimates") {
  const ModelParams p = trap(0.01);
  CHECK(mean_position(10.0, p, MeanPositionOrder::first_order) ==
        doctest::Approx(-0.56568542494923812).epsilon(1e-14));
  CHECK(mean_position(10.0, p, MeanPositionOrder::midpoint) ==
        doctest::Approx(-0.66079470141244778).epsilon(1e-10));
  // The first-order estimate is -(4 mu / nu) sqrt(2 / nu) m0.
  CHECK(mean_position(3.0, p, MeanPositionOrder::first_order) ==
        -(4.0 * 0.01) * std::sqrt(2.0) * 3.0);
  CHECK(mean_position(0.0, p, MeanPositionOrder::midpoint) == 0.0);
}

TEST_CASE("seeded coherence after one displacement stage") {
  const ModelParams p = trap(0.01);
  const double lever = 4.0 * p.mu / p.nu;
  CHECK(coherence_after_displacement(10.0, p) == lever * lever * 100.0);
  CHECK(coherence_after_displacement(10.0, p) == doctest::Approx(0.16).epsilon(1e-14));
  CHECK(coherence_after_displacement(0.0, p) == 0.0);
}

TEST_CASE("velocity Verlet against the harmonic closed form") {
  ModelParams p;
  p.nu = 1.3;
  p.mu = 0.0;
  const double t_final = 2.456, dt = 2e-6;
  const auto path = classical_trajectory(0.7, -0.3, p, t_final, dt, 2000000);
  REQUIRE(path.x.size() >= 2);
  CHECK(std::abs(path.x.back() - (-0.68727051703994857)) < 1e-10);
  CHECK(std::abs(path.p.back() - 0.34618507987623393) < 1e-10);
  CHECK(path.energy_drift < 1e-11);
  CHECK(path.t.front() == 0.0);
  CHECK(path.t.back() == doctest::Approx(t_final).epsilon(1e-12));
  CHECK(path.steps == 1228000);
  CHECK_THROWS_AS(classical_trajectory(0.7, 0.0, p, 1.0, 0.0), error);
  CHECK_THROWS_AS(classical_trajectory(0.7, 0.0, p, 1.0, 1e-3, 0), error);
}

TEST_CASE("orbital period and orbit average against quadrature") {
  const ModelParams p = trap(0.01);
  const double period = orbital_period(10.0, p);
  CHECK(period == doctest::Approx(6.7859546817641192).epsilon(1e-10));
  CHECK(orbital_period(5.0, trap(0.02)) ==
        doctest::Approx(8.1213229516537542).epsilon(1e-10));
  // Zero anharmonicity or zero energy give the bare trap period.
  CHECK(orbital_period(0.0, p) == 2.0 * 3.14159265358979323846 / p.nu);

  // One full orbit released from the outer turning point must reproduce the
  // quadrature time average and graze both turning points.
  const TurningPoints tp = turning_points(10.0, p);
  const auto path = classical_trajectory(tp.x_max, 0.0, p, period, period / 200000.0,
                                         200000);
  CHECK(std::abs(path.time_average_x - orbit_time_average(10.0, p)) < 1e-7);
  CHECK(path.x_lowest == doctest::Approx(tp.x_min).epsilon(1e-6));
  CHECK(path.x_highest == doctest::Approx(tp.x_max).epsilon(1e-7));
  CHECK(orbit_time_average(0.0, p) == 0.0);
}

TEST_CASE("displacement stage report is consistent with its parts") {
  const ModelParams p = trap(0.01);
  const DisplacementResult r = displacement_stage(10.0, p);
  const TurningPoints tp = turning_points(10.0, p);
  CHECK(r.x_min == tp.x_min);
  CHECK(r.x_max == tp.x_max);
  CHECK(r.x_mean == 0.5 * (tp.x_min + tp.x_max));
  CHECK(r.zeta_end == coherence_after_displacement(10.0, p));
  CHECK(r.m_end == 10.0);
  CHECK(r.period == doctest::Approx(orbital_period(10.0, p)).epsilon(1e-13));
}

TEST_CASE("phase ensemble is seed-deterministic and consistent") {
  const ModelParams p = trap(0.01);
  const EnsembleReport a = displacement_ensemble(10.0, p, 200, 12345);
  const EnsembleReport b = displacement_ensemble(10.0, p, 200, 12345);
  CHECK(a.mean_x == b.mean_x);
  CHECK(a.std_error_x == b.std_error_x);
  CHECK(a.mean_x == doctest::Approx(-0.95143649760960369).epsilon(1e-12));
  CHECK(a.std_error_x == doctest::Approx(0.24740172957626824).epsilon(1e-12));
  CHECK(a.n_trajectories == 200);
  CHECK(a.midpoint == doctest::Approx(mean_position(10.0, p, MeanPositionOrder::midpoint))
                          .epsilon(1e-13));
  // The sampled mean sits within the quoted error of the orbit average.
  CHECK(std::abs(a.mean_x - orbit_time_average(10.0, p)) < 5.0 * a.std_error_x);
  const EnsembleReport c = displacement_ensemble(10.0, p, 200, 999);
  CHECK(c.mean_x != a.mean_x);
  CHECK_THROWS_AS(displacement_ensemble(10.0, p, 1, 7), error);
}

}  // TEST_SUITE
