#include <doctest.h>

#include <cmath>
#include <vector>

#include "cavicool/errors.hpp"
#include "cavicool/model_params.hpp"
#include "cavicool/protocol.hpp"
#include "cavicool/rate_model.hpp"

using namespace cavicool;

namespace {

ModelParams reference_params() {
  ModelParams p;
  p.N = 100;
  p.eta = 0.02;
  p.g = 5.0;
  p.Omega = 0.5;
  p.Gamma = 0.5;
  p.nu = 1.0;
  p.kappa = 1.0;
  p.delta = 1.0;
  p.mu = 0.01;
  return p;
}

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("cycle map and its envelope") {
  const ModelParams p = reference_params();
  double m = 10.0;
  m = cycle_map(m, p);
  CHECK(m == doctest::Approx(9.8399999999999999).epsilon(1e-14));
  for (int k = 2; k <= 5; ++k) m = cycle_map(m, p);
  CHECK(m == doctest::Approx(9.2484706406007504).epsilon(1e-13));
  for (int k = 6; k <= 10; ++k) m = cycle_map(m, p);
  CHECK(m == doctest::Approx(8.6026951754042305).epsilon(1e-13));

  // Continuous envelope m0 / (1 + (4 mu/nu)^2 m0 k) shadows the iterates.
  const double env = protocol_envelope(10.0, p, 10.0);
  CHECK(env == doctest::Approx(10.0 / 1.16).epsilon(1e-15));
  CHECK(std::abs(env - m) / m < 0.01);

  CHECK_THROWS_AS(cycle_map(-1.0, p), error);
  // Lever arm 0.4 at mu = 0.1 makes m = 10 a hot start.
  ModelParams hot = p;
  hot.mu = 0.1;
  CHECK_THROWS_AS(cycle_map(10.0, hot), error);
}

TEST_CASE("closed-form protocol runs to the requested tolerance") {
  ModelParams p = reference_params();
  p.mu = 0.1;  // strong lever so convergence happens in tens of cycles
  const double stop_tol = 1e-3;
  const ProtocolTrace trace = run_protocol(1.0, p, 200, stop_tol);
  CHECK(trace.converged);
  REQUIRE(!trace.stages.empty());
  // Final seeded coherence would fall below tolerance.
  const double lever = 4.0 * p.mu / p.nu;
  CHECK(lever * lever * trace.m_final_observed * trace.m_final_observed < stop_tol);

  double t_prev = 0.0;
  for (std::size_t i = 0; i < trace.stages.size(); ++i) {
    const StageRecord& s = trace.stages[i];
    CHECK(s.stage == (i % 2 == 0 ? "displacement" : "cooling"));
    CHECK(s.cycle == i / 2 + 1);
    CHECK(s.model_time > t_prev);
    t_prev = s.model_time;
    CHECK(s.zeta_seeded == lever * lever * s.m_before * s.m_before);
    if (s.stage == "displacement") {
      CHECK(s.m_after == s.m_before);
    } else {
      CHECK(s.m_after == cycle_map(s.m_before, p));
      CHECK(s.m_before == trace.stages[i - 1].m_after);
    }
  }
  CHECK(trace.m_final_observed == trace.stages.back().m_after);
}

TEST_CASE("cycle cap leaves the protocol unconverged") {
  const ModelParams p = reference_params();
  const ProtocolTrace trace = run_protocol(10.0, p, 5, 1e-12);
  CHECK(!trace.converged);
  CHECK(trace.stages.size() == 10);  // two stages per cycle
  CHECK(trace.m_final_observed == doctest::Approx(9.2484706406007504).epsilon(1e-13));
}

TEST_CASE("coupled cooling stages integrate the slow pair") {
  const ModelParams p = reference_params();
  const double stage_time = 3.0;
  const ProtocolTrace trace =
      run_protocol(2.0, p, 3, 1e-12, ProtocolMode::coupled, stage_time);
  REQUIRE(trace.stages.size() == 6);
  for (std::size_t i = 1; i < trace.stages.size(); i += 2) {
    const StageRecord& s = trace.stages[i];
    const auto [m_cf, zeta_cf] =
        cooling_ode(s.m_before, s.zeta_seeded, p, stage_time);
    CHECK(s.m_after == doctest::Approx(m_cf).epsilon(1e-14));
  }
  // A finite stage removes less than the closed-form full stage.
  CHECK(trace.stages[1].m_after > cycle_map(2.0, p));
  ModelParams hot = p;
  hot.mu = 0.1;
  CHECK_THROWS_AS(run_protocol(10.0, hot, 3, 1e-12, ProtocolMode::coupled), error);
}

TEST_CASE("protocol argument guards") {
  const ModelParams p = reference_params();
  CHECK_THROWS_AS(run_protocol(-1.0, p, 10, 1e-6), error);
  CHECK_THROWS_AS(run_protocol(1.0, p, 0, 1e-6), error);
  CHECK_THROWS_AS(run_protocol(1.0, p, 10, 0.0), error);
}

TEST_CASE("cooling floor closed forms") {
  ModelParams p = reference_params();
  p.c_floor = 1e-4;
  const FloorEstimate f0 = floor_estimate(p);
  CHECK(f0.m_final_closed == doctest::Approx(0.3865411524016556).epsilon(1e-13));
  CHECK(f0.m_final_approx == doctest::Approx(0.38654115240165565).epsilon(1e-13));
  // Without linear damping the two roots coincide.
  CHECK(f0.m_final_closed == doctest::Approx(f0.m_final_approx).epsilon(1e-13));
  CHECK(f0.c_used == 1e-4);
  CHECK(f0.special_valid);

  ModelParams damped = p;
  damped.gamma_c = 0.05;
  const FloorEstimate fd = floor_estimate(damped);
  CHECK(fd.m_final_closed == doctest::Approx(0.0019999464603829456).epsilon(1e-13));
  // Linear damping dominates: the floor approaches c / gamma_c from below.
  CHECK(fd.m_final_closed < 1e-4 / 0.05);
  CHECK(std::abs(fd.m_final_closed - 1e-4 / 0.05) < 1e-6);
}

TEST_CASE("implied residual heating reproduces the resonant floor") {
  ModelParams p = reference_params();
  const FloorEstimate f = floor_estimate(p, true);
  CHECK(f.c_used == doctest::Approx(0.00026143790849673205).epsilon(1e-14));
  CHECK(f.special_valid);
  CHECK(f.m_final_special == p.kappa / (16.0 * p.mu * std::sqrt(double(p.N))));
  CHECK(f.m_final_special == doctest::Approx(0.625).epsilon(1e-15));
  // The implied constant is exactly the one that makes the closed root land
  // on the special form.
  CHECK(f.m_final_closed == doctest::Approx(f.m_final_special).epsilon(1e-12));
  // Reference drive is not deep in the overdamped regime, so the form warns.
  CHECK(!f.warnings.empty());

  ModelParams deep = p;
  deep.kappa = 20.0;
  deep.Gamma = 20.0;
  const FloorEstimate fq = floor_estimate(deep, true);
  CHECK(fq.warnings.empty());
}

TEST_CASE("floor estimate guards") {
  ModelParams p = reference_params();
  CHECK_THROWS_AS(floor_estimate(p), error);  // c_floor defaults to zero
  ModelParams off = p;
  off.delta = 0.9;
  CHECK_THROWS_AS(floor_estimate(off, true), error);
  ModelParams frozen = p;
  frozen.c_floor = 1e-4;
  frozen.mu = 0.0;
  CHECK_THROWS_AS(floor_estimate(frozen), error);
}

TEST_CASE("floor scaling across particle number") {
  const ModelParams base = reference_params();
  const std::vector<long long> n_list{10, 100, 1000, 10000};
  const ScalingStudy study = scaling_study(base, n_list, true);
  REQUIRE(study.rows.size() == 4);
  // Rate grows linearly with N, the floor falls as 1/sqrt(N).
  CHECK(study.slope_a_n == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(study.slope_m_final == doctest::Approx(-0.5).epsilon(2e-3));
  for (const ScalingRow& row : study.rows) {
    ModelParams p = base;
    p.N = row.N;
    CHECK(row.a_n == doctest::Approx(collective_rate(p).A_N).epsilon(1e-14));
  }
  CHECK_THROWS_AS(scaling_study(base, {10, 100, 1000}, true), error);
  CHECK_THROWS_AS(scaling_study(base, {10, 20, 40, 80}, true), error);
}

}  // TEST_SUITE
