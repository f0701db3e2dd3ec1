#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cavicool/model_params.hpp"
#include "cavicool/space.hpp"

namespace cavicool::cli {

// One sweep dimension: a registry key varied over [from, to] with `points`
// samples, spaced linearly or logarithmically. points == 0 means unused.
struct SweepAxis {
  std::string key;
  double from = 0.0;
  double to = 0.0;
  long long points = 0;
  bool log_scale = false;
};

// Every knob the executable accepts, with its default. Values arrive from a
// config file and/or repeated --set flags; flags win. The field comments
// double as the key documentation emitted into output-file preambles.
struct RunConfig {
  ModelParams params;

  // oracle state space
  std::size_t n_atoms = 2;
  std::size_t n_b = 4;
  std::size_t n_c = 3;
  std::size_t dim_cap = kDefaultDimCap;

  // oracle integration
  double oracle_t_final = 10.0;
  double oracle_dt = 0.02;
  std::size_t oracle_stride = 10;
  double oracle_m0 = 0.0;      // thermal occupancy of each phonon mode
  double oracle_alpha = 0.25;  // coherent displacement of each phonon mode
  bool oracle_exact_coupling = false;

  // effective-model integration
  double rate_t_final = 200.0;
  double rate_dt = 0.01;
  std::size_t rate_stride = 100;
  double rate_m0 = 1.0;
  double rate_zeta0 = 0.25;
  bool rate_track_pairs = false;

  // displacement stage
  std::string displacement_mode = "summary";  // summary | trajectory | ensemble
  double displacement_m0 = 1.0;
  double displacement_x0 = 1.0;
  double displacement_p0 = 0.0;
  double displacement_t_final = 0.0;  // 0: one orbital period
  double displacement_dt = 0.0;       // 0: period / 20000
  std::size_t displacement_stride = 20;
  std::size_t displacement_samples = 200;

  // cooling protocol
  double protocol_m0 = 10.0;
  std::size_t protocol_max_cycles = 100;
  double protocol_stop_tol = 1e-9;
  std::string protocol_mode = "closed_form";  // closed_form | coupled
  double protocol_cooling_time = 0.0;         // 0: 5 / A_N per stage
  bool protocol_implied_c = false;

  // sweep
  SweepAxis axis1;
  SweepAxis axis2;
  bool sweep_implied_c = false;
};

// True when `key` names a settable entry (dotted form, e.g. "params.nu").
bool known_key(const std::string& key);

// Assign one key. Throws config_error naming the key on unknown names or
// malformed values; `where` (file:line or "--set") prefixes the message.
void apply_assignment(RunConfig& cfg, const std::string& key,
                      const std::string& value, const std::string& where);

// Current value of one key, rendered the way dump_config would print it.
std::string get_value(const RunConfig& cfg, const std::string& key);

// Read a flat key = value file. '#' starts a comment, blank lines are
// skipped, unknown keys are errors with line context.
void load_config_file(RunConfig& cfg, const std::string& path);

// Every key with its current value, in registry order, as "key = value"
// strings. Doubles are printed with 17 significant digits so a dump re-read
// through apply_assignment reproduces the config bit-exactly.
std::vector<std::string> dump_config(const RunConfig& cfg);

}  // namespace cavicool::cli
