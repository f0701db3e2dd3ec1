#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <tuple>

#include "cavicool/displacement.hpp"
#include "cavicool/errors.hpp"
#include "cavicool/hamiltonian.hpp"
#include "cavicool/lindblad.hpp"
#include "cavicool/numerics.hpp"
#include "cavicool/protocol.hpp"
#include "cavicool/rate_model.hpp"
#include "cavicool/state.hpp"
#include "commands.hpp"

namespace cavicool::cli {

namespace {

bool close(double got, double want, double rel) {
  return std::abs(got - want) <= rel * std::max(std::abs(want), 1.0);
}

ModelParams reference_params() {
  ModelParams p;
  p.N = 100;
  p.eta = 0.02;
  p.g = 5;
  p.Omega = 0.5;
  p.Gamma = 0.5;
  p.nu = 1;
  p.kappa = 1;
  p.delta = 1;
  p.mu = 0.01;
  return p;
}

}  // namespace

// Quick self-contained consistency checks over the analytic layer plus one
// small master-equation run; each check prints one PASS/FAIL line. Pinned
// numbers are cross-implementations of the closed forms, not regression
// captures of this code.
void cmd_verify(const CommandContext& ctx) {
  struct Check {
    const char* name;
    std::function<bool(std::string&)> run;
  };

  const ModelParams ref = reference_params();

  const std::vector<Check> checks = {
      {"collective-rate-closed-form",
       [&](std::string& detail) {
         const double a = collective_rate(ref).A_N;
         detail = format_double(a);
         return close(a, 0.41830065359477131, 1e-13);
       }},
      {"collective-rate-resonant-form",
       [&](std::string& detail) {
         const double a = collective_rate(ref).A_N;
         const double r = resonant_rate(ref);
         detail = format_double(a) + " vs " + format_double(r);
         return close(a, r, 1e-13);
       }},
      {"stationary-coherences-match-rate",
       [&](std::string& detail) {
         // The stationary coherence vector reproduces the closed-form rate:
         // the cooling component equals -(2 / eta g) A_N zeta and the heating
         // component vanishes.
         const double zeta = 0.25;
         const Vec16 x = adiabatic_solve_x(ref, zeta);
         const double want =
             -(2.0 / (ref.eta * ref.g)) * collective_rate(ref).A_N * zeta;
         detail = format_double(x[x_index(3, 3, 3)]) + " vs " +
                  format_double(want);
         return close(x[x_index(3, 3, 3)], want, 1e-10) &&
                std::abs(x[x_index(3, 2, 2)]) <= 1e-12;
       }},
      {"atomic-steady-state",
       [&](std::string& detail) {
         const auto s = atomic_steady_state(0.7, 1.9);
         detail = format_double(s[0]) + ", " + format_double(s[2]);
         return close(s[0], 0.10675381263616557, 1e-13) &&
                std::abs(s[1]) == 0.0 &&
                close(s[2], 0.57952069716775589, 1e-13);
       }},
      {"atomic-steady-state-balanced-drive",
       [&](std::string& detail) {
         const auto s = atomic_steady_state(0.8, 0.8);
         detail = format_double(s[0]) + ", " + format_double(s[2]);
         return close(s[0], 1.0 / 3.0, 1e-14) && close(s[2], 2.0 / 3.0, 1e-14);
       }},
      {"turning-points-cubic",
       [&](std::string& detail) {
         const TurningPoints tp = turning_points(10.0, ref);
         detail = format_double(tp.x_inner) + ", " + format_double(tp.x_min) +
                  ", " + format_double(tp.x_max);
         return close(tp.x_inner, -16.356080126838787, 1e-12) &&
                close(tp.x_min, -5.3568219377900066, 1e-12) &&
                close(tp.x_max, 4.035232534965111, 1e-12);
       }},
      {"orbital-period-quadrature",
       [&](std::string& detail) {
         const double T = orbital_period(10.0, ref);
         detail = format_double(T);
         return close(T, 6.7859546817641192, 1e-11);
       }},
      {"cycle-map-iterates",
       [&](std::string& detail) {
         double m = 10.0;
         for (int k = 0; k < 10; ++k) m = cycle_map(m, ref);
         detail = format_double(m);
         return close(m, 8.6026951754042305, 1e-13);
       }},
      {"floor-closed-root-residual",
       [&](std::string& detail) {
         ModelParams p = ref;
         p.gamma_c = 0.05;
         p.c_floor = 1e-4;
         const FloorEstimate fe = floor_estimate(p);
         const double a = collective_rate(p).A_N;
         const double q = 4.0 * p.mu / p.nu;
         // Defining balance at the floor: A m^2 q^2 + gamma_c m = c.
         const double residual = a * q * q * fe.m_final_closed *
                                     fe.m_final_closed +
                                 p.gamma_c * fe.m_final_closed - p.c_floor;
         detail = "m = " + format_double(fe.m_final_closed) +
                  ", residual = " + format_double(residual);
         return close(fe.m_final_closed, 0.0019999464603829456, 1e-12) &&
                std::abs(residual) < 1e-12 * p.c_floor;
       }},
      {"pair-correlation-rotation-invariant",
       [&](std::string& detail) {
         double ym = 0.31, y23 = -0.12;
         const double quad0 = ym * ym + 4.0 * y23 * y23;
         for (int k = 0; k < 1000; ++k) {
           std::tie(ym, y23) = y_system_step(ym, y23, ref.nu, 0.013);
         }
         const double quad = ym * ym + 4.0 * y23 * y23;
         detail = "quad drift = " + format_double(quad - quad0);
         return close(quad, quad0, 1e-12);
       }},
      {"third-moment-stationary-values",
       [&](std::string& detail) {
         const UStationary u = u_system_stationary(ref, 5.0);
         detail = format_double(u.u_tilde[0]);
         const double want = -6.0 * (ref.mu / ref.nu) * 121.0;
         return close(u.u_tilde[0], want, 1e-12) &&
                std::abs(u.u_232) <= 1e-12 &&
                std::abs(u.u_tilde_223) <= 1e-12;
       }},
      {"generator-preserves-trace",
       [&](std::string& detail) {
         const SpaceLayout layout = build_space(1, 3, 2);
         std::mt19937_64 rng(ctx.seed);
         MatrixXcd a =
             MatrixXcd::NullaryExpr(layout.total_dim(), layout.total_dim(),
                                    [&](Eigen::Index, Eigen::Index) {
                                      return complexd(uniform_double(rng) - 0.5,
                                                      uniform_double(rng) - 0.5);
                                    });
         MatrixXcd rho = a * a.adjoint();
         rho /= rho.trace().real();
         const MatrixXcd h = build_h_interaction(ref, layout);
         const double drift =
             std::abs(lindblad_rhs(rho, h, ref, layout).trace());
         detail = "tr(rhs) = " + format_double(drift);
         return drift < 1e-12;
       }},
      {"small-oracle-run",
       [&](std::string& detail) {
         const SpaceLayout layout = build_space(1, 3, 2);
         const QuantumState initial = initial_state(layout, 0.1, 0.0);
         EvolveOptions opt;
         opt.dt = 0.01;
         opt.t_final = 2.0;
         opt.stride = 50;
         const TrajectoryStats stats =
             evolve_observed(initial, ref, layout, opt,
                             [](double, const QuantumState&) {});
         detail = "trace_drift = " + format_double(stats.trace_drift);
         return stats.trace_drift < 1e-10 && stats.max_asymmetry < 1e-12;
       }},
  };

  std::size_t failed = 0;
  for (const auto& check : checks) {
    std::string detail;
    bool ok = false;
    try {
      ok = check.run(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    if (!ok) ++failed;
    std::printf("[verify] %s %s%s%s\n", ok ? "PASS" : "FAIL", check.name,
                detail.empty() ? "" : ": ", detail.c_str());
  }
  std::printf("[verify] %zu/%zu checks passed\n", checks.size() - failed,
              checks.size());
  if (failed != 0) {
    throw numerical_error(std::to_string(failed) + " verify check(s) failed");
  }
}

}  // namespace cavicool::cli
