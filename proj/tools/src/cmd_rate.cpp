#include <iostream>
#include <sstream>

#include "cavicool/rate_model.hpp"
#include "commands.hpp"

namespace cavicool::cli {

// Integrates the closed expectation-value model from (m0, zeta0) with the
// coherence block started at zero; the collective rate is attached as a
// comment for downstream comparison against the emitted decay.
void cmd_rate(const CommandContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  for (const auto& warning : cfg.params.validate()) {
    std::cerr << "warning: " << warning << "\n";
  }
  RateState initial;
  initial.m = cfg.rate_m0;
  initial.zeta = cfg.rate_zeta0;
  const RateTrajectory traj =
      integrate_rate_model(initial, cfg.params, cfg.rate_t_final, cfg.rate_dt,
                           cfg.rate_stride, cfg.rate_track_pairs);

  std::ofstream os = open_output(ctx, "rate.csv");
  CsvWriter w(os);
  write_preamble(w, ctx);
  w.comment("A_N = " + format_double(collective_rate(cfg.params).A_N));

  std::vector<std::string> names = {"t",      "m",      "zeta", "s_1",
                                    "s_2",    "s_3",    "y_plus", "y_minus",
                                    "y_23"};
  for (std::size_t i = 0; i < 16; ++i) {
    std::ostringstream name;
    name << "x_" << x_a(i) << x_b(i) << x_c(i);
    names.push_back(name.str());
  }
  for (const char* n : {"u_222", "u_232", "ut_222", "ut_223", "ut_232",
                        "ut_233", "ut_332", "ut_333"}) {
    names.emplace_back(n);
  }
  w.header(names);

  for (const RateSample& s : traj.samples) {
    std::vector<double> row = {s.t,          s.state.m,       s.state.zeta,
                               s.state.s[0], s.state.s[1],    s.state.s[2],
                               s.state.y_plus, s.state.y_minus, s.state.y_23};
    row.insert(row.end(), s.state.x.begin(), s.state.x.end());
    row.insert(row.end(), s.state.u.begin(), s.state.u.end());
    w.row(row);
  }
  w.comment("stat: steps = " + std::to_string(traj.steps));
}

}  // namespace cavicool::cli
