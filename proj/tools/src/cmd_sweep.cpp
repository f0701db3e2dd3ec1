#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <thread>

#include "cavicool/errors.hpp"
#include "cavicool/numerics.hpp"
#include "cavicool/protocol.hpp"
#include "cavicool/rate_model.hpp"
#include "commands.hpp"

namespace cavicool::cli {

namespace {

std::vector<double> axis_values(const SweepAxis& axis) {
  if (axis.points == 1) return {axis.from};
  if (axis.log_scale && (axis.from <= 0.0 || axis.to <= 0.0)) {
    throw config_error("sweep axis '" + axis.key +
                       "': log scale needs positive endpoints");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(axis.points));
  const double lo = axis.log_scale ? std::log(axis.from) : axis.from;
  const double hi = axis.log_scale ? std::log(axis.to) : axis.to;
  for (long long i = 0; i < axis.points; ++i) {
    const double f = lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(axis.points - 1);
    values.push_back(axis.log_scale ? std::exp(f) : f);
  }
  return values;
}

struct PointResult {
  double a_n = std::numeric_limits<double>::quiet_NaN();
  double m_final_closed = std::numeric_limits<double>::quiet_NaN();
  double m_final_approx = std::numeric_limits<double>::quiet_NaN();
  // Axis values as applied, post parsing/rounding; these are what the row
  // reports.
  std::string axis1_value;
  std::string axis2_value;
  std::vector<std::string> warnings;
  std::string error_message;
  error_kind kind = error_kind::numerical;
  bool failed = false;
};

// Evaluates one grid point: assign the axis values, validate, compute the
// collective rate and (when defined) the floor estimates.
PointResult evaluate_point(const RunConfig& base, const SweepAxis& a1, double v1,
                           const SweepAxis* a2, double v2, bool implied_c) {
  PointResult r;
  try {
    RunConfig local = base;
    apply_assignment(local, a1.key, format_double(v1), "sweep");
    r.axis1_value = get_value(local, a1.key);
    if (a2 != nullptr) {
      apply_assignment(local, a2->key, format_double(v2), "sweep");
      r.axis2_value = get_value(local, a2->key);
    }
    r.warnings = local.params.validate();
    r.a_n = collective_rate(local.params).A_N;
    try {
      const FloorEstimate fe = floor_estimate(local.params, implied_c);
      r.m_final_closed = fe.m_final_closed;
      r.m_final_approx = fe.m_final_approx;
    } catch (const error& e) {
      // A sweep may legitimately cross the no-floor region; record nan and
      // keep the rate column.
      if (e.kind() != error_kind::validation) throw;
    }
  } catch (const error& e) {
    r.failed = true;
    r.kind = e.kind();
    r.error_message = e.what();
  } catch (const std::exception& e) {
    r.failed = true;
    r.error_message = e.what();
  }
  return r;
}

}  // namespace

// Fans the grid out across a worker pool. Shard results land in an
// order-indexed table, so the merged output is identical for any worker
// count.
void cmd_sweep(const CommandContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  if (cfg.axis1.key.empty() || cfg.axis1.points < 1) {
    throw config_error(
        "sweep requires sweep.axis1.key and sweep.axis1.points >= 1");
  }
  const bool has_axis2 = !cfg.axis2.key.empty() || cfg.axis2.points > 0;
  if (has_axis2 && (cfg.axis2.key.empty() || cfg.axis2.points < 1)) {
    throw config_error(
        "sweep.axis2 needs both sweep.axis2.key and sweep.axis2.points >= 1");
  }

  const std::vector<double> v1 = axis_values(cfg.axis1);
  const std::vector<double> v2 =
      has_axis2 ? axis_values(cfg.axis2) : std::vector<double>{0.0};
  const std::size_t total = v1.size() * v2.size();
  std::vector<PointResult> results(total);

  const std::size_t n_workers = std::min(ctx.workers, total);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
      results[i] = evaluate_point(cfg, cfg.axis1, v1[i / v2.size()],
                                  has_axis2 ? &cfg.axis2 : nullptr,
                                  v2[i % v2.size()], cfg.sweep_implied_c);
    }
  };
  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t k = 0; k < n_workers; ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  std::vector<std::string> seen_warnings;
  for (std::size_t i = 0; i < total; ++i) {
    if (results[i].failed) {
      throw error(results[i].kind, "sweep point " + std::to_string(i) + " (" +
                                       cfg.axis1.key + " = " +
                                       format_double(v1[i / v2.size()]) +
                                       "): " + results[i].error_message);
    }
    for (const auto& warning : results[i].warnings) {
      if (std::find(seen_warnings.begin(), seen_warnings.end(), warning) ==
          seen_warnings.end()) {
        seen_warnings.push_back(warning);
        std::cerr << "warning: " << warning << "\n";
      }
    }
  }

  std::ofstream os = open_output(ctx, "sweep.csv");
  CsvWriter w(os);
  write_preamble(w, ctx);
  std::vector<std::string> names = {cfg.axis1.key};
  if (has_axis2) names.push_back(cfg.axis2.key);
  names.insert(names.end(), {"a_n", "m_final_closed", "m_final_approx"});
  w.header(names);
  for (std::size_t i = 0; i < total; ++i) {
    std::vector<std::string> row = {results[i].axis1_value};
    if (has_axis2) row.push_back(results[i].axis2_value);
    for (double v : {results[i].a_n, results[i].m_final_closed,
                     results[i].m_final_approx}) {
      row.push_back(format_double(v));
    }
    w.cells(row);
  }

  // Log-log slopes for a single positive-valued axis; the canonical use is
  // the particle-number study, whose floor falls on the -1/2 line.
  if (!has_axis2 && v1.size() >= 2) {
    std::vector<double> lx, ly_floor, ly_rate;
    for (std::size_t i = 0; i < total; ++i) {
      const double axis = std::strtod(results[i].axis1_value.c_str(), nullptr);
      if (axis > 0.0 && results[i].m_final_closed > 0.0 &&
          results[i].a_n > 0.0) {
        lx.push_back(std::log(axis));
        ly_floor.push_back(std::log(results[i].m_final_closed));
        ly_rate.push_back(std::log(results[i].a_n));
      }
    }
    if (lx.size() == total) {
      w.comment("fit: dlog(m_final_closed)/dlog(" + cfg.axis1.key + ") = " +
                format_double(fit_slope(lx, ly_floor).first));
      w.comment("fit: dlog(a_n)/dlog(" + cfg.axis1.key + ") = " +
                format_double(fit_slope(lx, ly_rate).first));
    }
  }
}

}  // namespace cavicool::cli
