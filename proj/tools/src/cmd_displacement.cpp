#include "cavicool/displacement.hpp"

#include <algorithm>
#include <iostream>

#include "commands.hpp"

namespace cavicool::cli {

namespace {

// One-line summary of a displacement stage: cubic-root geometry, the seeded
// coherence, and the anharmonic period.
void run_summary(const CommandContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const DisplacementResult r = displacement_stage(cfg.displacement_m0, cfg.params);
  const TurningPoints tp = turning_points(cfg.displacement_m0, cfg.params);
  std::ofstream os = open_output(ctx, "displacement.csv");
  CsvWriter w(os);
  write_preamble(w, ctx);
  w.header({"m0", "x_min", "x_max", "x_inner", "x_mean", "zeta_end", "m_end",
            "period", "barrier_position", "barrier_height"});
  w.row({cfg.displacement_m0, r.x_min, r.x_max, tp.x_inner, r.x_mean,
         r.zeta_end, r.m_end, r.period, barrier_position(cfg.params),
         barrier_height(cfg.params)});
}

// Time series of one classical orbit from (x0, p0).
void run_trajectory(const CommandContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const double energy = 0.5 * cfg.displacement_p0 * cfg.displacement_p0 +
                        potential_energy(cfg.displacement_x0, cfg.params);
  // The orbit's energy maps onto an equivalent zero-momentum amplitude, which
  // fixes the default duration (one period) and step.
  const double m_equiv = energy / cfg.params.nu;
  double t_final = cfg.displacement_t_final;
  double dt = cfg.displacement_dt;
  if (t_final <= 0.0 || dt <= 0.0) {
    // A negative-energy start is outside the well; the harmonic period stands
    // in here and the integrator below rejects the orbit with the real error.
    const double period =
        orbital_period(std::max(m_equiv, 0.0), cfg.params);
    if (t_final <= 0.0) t_final = period;
    if (dt <= 0.0) dt = period / 20000.0;
  }
  const ClassicalPath path =
      classical_trajectory(cfg.displacement_x0, cfg.displacement_p0, cfg.params,
                           t_final, dt, cfg.displacement_stride);
  std::ofstream os = open_output(ctx, "displacement.csv");
  CsvWriter w(os);
  write_preamble(w, ctx);
  w.header({"t", "x", "p", "energy"});
  for (std::size_t i = 0; i < path.t.size(); ++i) {
    w.row({path.t[i], path.x[i], path.p[i], path.energy[i]});
  }
  w.comment("stat: steps = " + std::to_string(path.steps));
  w.comment("stat: energy_drift = " + format_double(path.energy_drift));
  w.comment("stat: x_lowest = " + format_double(path.x_lowest));
  w.comment("stat: x_highest = " + format_double(path.x_highest));
  w.comment("stat: time_average_x = " + format_double(path.time_average_x));
}

// Phase-averaged mean position across an orbit ensemble.
void run_ensemble(const CommandContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const EnsembleReport r = displacement_ensemble(
      cfg.displacement_m0, cfg.params, cfg.displacement_samples, ctx.seed);
  std::ofstream os = open_output(ctx, "displacement.csv");
  CsvWriter w(os);
  write_preamble(w, ctx);
  w.header({"m0", "mean_x", "std_error_x", "midpoint", "n_trajectories"});
  w.row({cfg.displacement_m0, r.mean_x, r.std_error_x, r.midpoint,
         static_cast<double>(r.n_trajectories)});
}

}  // namespace

void cmd_displacement(const CommandContext& ctx) {
  for (const auto& warning : ctx.cfg.params.validate()) {
    std::cerr << "warning: " << warning << "\n";
  }
  if (ctx.cfg.displacement_mode == "summary") {
    run_summary(ctx);
  } else if (ctx.cfg.displacement_mode == "trajectory") {
    run_trajectory(ctx);
  } else {
    run_ensemble(ctx);
  }
}

}  // namespace cavicool::cli
