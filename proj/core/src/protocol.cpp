#include "cavicool/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cavicool/displacement.hpp"
#include "cavicool/errors.hpp"
#include "cavicool/numerics.hpp"
#include "cavicool/rate_model.hpp"

namespace cavicool {

namespace {

constexpr double kPi = 3.14159265358979323846;

double lever(const ModelParams& p) { return 4.0 * p.mu / p.nu; }

}  // namespace

double cycle_map(double m, const ModelParams& p) {
  if (!(m >= 0.0)) throw validation_error("cycle_map requires m >= 0");
  const double l2m = lever(p) * lever(p) * m;
  if (l2m >= 1.0) {
    std::ostringstream os;
    os << "hot start: (4 mu/nu)^2 m = " << l2m
       << " >= 1, the leading-order cycle map overshoots; pre-cool before "
          "running the protocol";
    throw validation_error(os.str());
  }
  return m - l2m * m;
}

double protocol_envelope(double m0, const ModelParams& p, double k) {
  return m0 / (1.0 + lever(p) * lever(p) * m0 * k);
}

ProtocolTrace run_protocol(double m0, const ModelParams& p, std::size_t max_cycles,
                           double stop_tol, ProtocolMode mode,
                           double cooling_stage_time) {
  if (!(m0 >= 0.0)) throw validation_error("run_protocol requires m0 >= 0");
  if (max_cycles < 1) throw validation_error("run_protocol requires max_cycles >= 1");
  if (!(stop_tol > 0.0)) throw validation_error("run_protocol requires stop_tol > 0");

  const double a_n = collective_rate(p).A_N;
  const double stage_time = cooling_stage_time > 0.0 ? cooling_stage_time
                            : (a_n > 0.0 ? 5.0 / a_n : 0.0);

  ProtocolTrace trace;
  double m = m0;
  double clock = 0.0;
  trace.converged = false;
  for (std::size_t cycle = 1; cycle <= max_cycles; ++cycle) {
    const double zeta = coherence_after_displacement(m, p);
    if (zeta < stop_tol) {
      trace.converged = true;
      break;
    }
    // Floor check: once the cooling term cannot beat the residual heating
    // terms the cycle no longer makes progress.
    if (a_n * zeta <= p.gamma_c * m + p.c_floor) {
      trace.converged = true;
      break;
    }
    clock += kPi / p.nu;  // nominal half oscillation to settle the displaced gas
    trace.stages.push_back({cycle, "displacement", m, m, zeta, a_n, clock});

    const double m_before = m;
    if (mode == ProtocolMode::closed_form) {
      m = cycle_map(m, p);
      clock += stage_time;
    } else {
      // Guard matches cycle_map so both modes refuse the same hot starts.
      (void)cycle_map(m, p);
      const auto [m_after, zeta_after] = cooling_ode(m, zeta, p, stage_time);
      m = m_after;
      (void)zeta_after;  // residual coherence is lost when the laser switches off
      clock += stage_time;
    }
    trace.stages.push_back({cycle, "cooling", m_before, m, zeta, a_n, clock});
  }
  trace.m_final_observed = m;
  return trace;
}

FloorEstimate floor_estimate(const ModelParams& p, bool implied_c) {
  const double a_n = collective_rate(p).A_N;
  const bool resonant = std::abs(p.delta - p.nu) <= 1e-12 * std::max(p.nu, 1.0);
  FloorEstimate out;

  double c = p.c_floor;
  if (implied_c) {
    if (!resonant) {
      throw validation_error(
          "implied residual heating requires delta = nu (the special floor form "
          "only applies there)");
    }
    c = a_n * p.kappa * p.kappa / (16.0 * p.nu * p.nu * double(p.N));
  }
  out.c_used = c;
  if (!(c > 0.0) || !(a_n > 0.0)) {
    throw validation_error(
        "no cooling floor: requires residual heating c > 0 and collective rate "
        "A_N > 0 (supply c_floor or use the implied-c mode)");
  }

  const double l = 4.0 * p.mu / p.nu;
  if (!(l > 0.0)) {
    throw validation_error("no cooling floor: mu = 0 never regenerates coherence");
  }
  const double quad = a_n * l * l;
  // Positive root of quad m^2 + gamma_c m - c = 0, written to avoid
  // cancellation for small quad.
  out.m_final_closed =
      2.0 * c / (p.gamma_c + std::sqrt(p.gamma_c * p.gamma_c + 4.0 * quad * c));
  out.m_final_approx = std::sqrt(c / a_n) / l;
  out.special_valid = resonant;
  if (resonant) {
    out.m_final_special = p.kappa / (16.0 * p.mu * std::sqrt(double(p.N)));
    const double fast = 0.1 * std::min(p.kappa, p.Gamma);
    if (p.Omega > fast || p.nu > fast) {
      std::ostringstream os;
      os << "special floor form assumes Omega, nu << kappa, Gamma; here Omega = "
         << p.Omega << ", nu = " << p.nu << ", 0.1*min(kappa, Gamma) = " << fast;
      out.warnings.push_back(os.str());
    }
  }
  return out;
}

ScalingStudy scaling_study(const ModelParams& base, const std::vector<long long>& n_list,
                           bool implied_c) {
  if (n_list.size() < 4) {
    throw validation_error("scaling_study needs at least 4 particle numbers");
  }
  const auto [lo, hi] = std::minmax_element(n_list.begin(), n_list.end());
  if (*lo < 1 || double(*hi) < 100.0 * double(*lo)) {
    throw validation_error("scaling_study needs N values spanning at least two decades");
  }
  ScalingStudy study;
  std::vector<double> log_n, log_m, log_a;
  for (long long n : n_list) {
    ModelParams p = base;
    p.N = n;
    const FloorEstimate floor = floor_estimate(p, implied_c);
    const double a_n = collective_rate(p).A_N;
    study.rows.push_back({n, a_n, floor.m_final_closed, floor.m_final_approx});
    log_n.push_back(std::log(double(n)));
    log_m.push_back(std::log(floor.m_final_closed));
    log_a.push_back(std::log(a_n));
  }
  study.slope_m_final = fit_slope(log_n, log_m).first;
  study.slope_a_n = fit_slope(log_n, log_a).first;
  return study;
}

}  // namespace cavicool
