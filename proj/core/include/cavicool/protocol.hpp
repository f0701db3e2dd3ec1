#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cavicool/model_params.hpp"

namespace cavicool {

// One cycle of the two-stage process at leading order: a displacement stage
// seeds zeta = (4 mu/nu)^2 m^2 without changing m, and a long cooling stage
// removes exactly that much: m' = m - (4 mu/nu)^2 m^2.
double cycle_map(double m, const ModelParams& p);

// Continuous-limit envelope of the iterated map after k cycles.
double protocol_envelope(double m0, const ModelParams& p, double k);

enum class ProtocolMode {
  closed_form,  // stages apply their closed-form outcomes
  coupled,      // cooling stages integrate the two slow equations for a
                // finite stage time instead of assuming full convergence
};

struct StageRecord {
  std::size_t cycle;
  std::string stage;  // "displacement" or "cooling"
  double m_before;
  double m_after;
  double zeta_seeded;
  double a_n;
  double model_time;  // accumulated bookkeeping time at stage end
};

struct ProtocolTrace {
  std::vector<StageRecord> stages;
  bool converged = false;
  double m_final_observed = 0.0;
};

// Iterate cycles until the seeded coherence falls below stop_tol, the
// cooling term can no longer beat the residual-heating terms, or max_cycles
// is reached. cooling_stage_time <= 0 selects the default of five rate
// e-folds per stage (only the coupled mode is sensitive to it).
ProtocolTrace run_protocol(double m0, const ModelParams& p, std::size_t max_cycles,
                           double stop_tol,
                           ProtocolMode mode = ProtocolMode::closed_form,
                           double cooling_stage_time = 0.0);

// Where the cooling ends: the balance -A_N (4 mu/nu)^2 m^2 - gamma_c m + c = 0.
// m_final_closed is the positive root, m_final_approx the square-root form
// (nu/4 mu) sqrt(c/A_N), and m_final_special the resonant strong-damping form
// kappa/(16 mu sqrt(N)), only meaningful at delta = nu. With implied_c the
// residual-heating constant is not taken from params but backed out of the
// special form (requires delta = nu); params must otherwise carry c_floor > 0.
struct FloorEstimate {
  double m_final_closed = 0.0;
  double m_final_approx = 0.0;
  double m_final_special = 0.0;
  bool special_valid = false;
  double c_used = 0.0;
  std::vector<std::string> warnings;
};
FloorEstimate floor_estimate(const ModelParams& p, bool implied_c = false);

// Floor scaling across particle numbers, with log-log slope fits of the
// closed-root floor and of the collective rate.
struct ScalingRow {
  long long N;
  double a_n;
  double m_final_closed;
  double m_final_approx;
};
struct ScalingStudy {
  std::vector<ScalingRow> rows;
  double slope_m_final = 0.0;
  double slope_a_n = 0.0;
};
ScalingStudy scaling_study(const ModelParams& base, const std::vector<long long>& n_list,
                           bool implied_c = false);

}  // namespace cavicool
