#include "run_config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <utility>

#include "cavicool/csv.hpp"
#include "cavicool/errors.hpp"

namespace cavicool::cli {

namespace {

double parse_f64(const std::string& key, const std::string& value,
                 const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
    throw config_error(where + ": non-numeric value for '" + key + "': '" +
                       value + "'");
  }
  return v;
}

long long parse_i64(const std::string& key, const std::string& value,
                    const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
    throw config_error(where + ": non-integer value for '" + key + "': '" +
                       value + "'");
  }
  return v;
}

std::size_t parse_index(const std::string& key, const std::string& value,
                        const std::string& where) {
  const long long v = parse_i64(key, value, where);
  if (v < 0) {
    throw config_error(where + ": '" + key + "' must be >= 0, got '" + value +
                       "'");
  }
  return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& key, const std::string& value,
                const std::string& where) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw config_error(where + ": '" + key + "' expects true/false, got '" +
                     value + "'");
}

std::string parse_choice(const std::string& key, const std::string& value,
                         const std::vector<std::string>& allowed,
                         const std::string& where) {
  for (const auto& a : allowed) {
    if (value == a) return value;
  }
  std::string msg = where + ": '" + key + "' expects one of {";
  for (std::size_t i = 0; i < allowed.size(); ++i) {
    msg += (i ? ", " : "") + allowed[i];
  }
  throw config_error(msg + "}, got '" + value + "'");
}

struct KeyEntry {
  const char* name;
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

// Shorthand builders so the registry below stays one line per key.
KeyEntry f64_key(const char* name, double RunConfig::* field) {
  return {name,
          [name, field](RunConfig& c, const std::string& v, const std::string& w) {
            c.*field = parse_f64(name, v, w);
          },
          [field](const RunConfig& c) { return format_double(c.*field); }};
}

KeyEntry f64_key(const char* name, double ModelParams::* field) {
  return {name,
          [name, field](RunConfig& c, const std::string& v, const std::string& w) {
            c.params.*field = parse_f64(name, v, w);
          },
          [field](const RunConfig& c) { return format_double(c.params.*field); }};
}

KeyEntry index_key(const char* name, std::size_t RunConfig::* field) {
  return {name,
          [name, field](RunConfig& c, const std::string& v, const std::string& w) {
            c.*field = parse_index(name, v, w);
          },
          [field](const RunConfig& c) { return std::to_string(c.*field); }};
}

KeyEntry bool_key(const char* name, bool RunConfig::* field) {
  return {name,
          [name, field](RunConfig& c, const std::string& v, const std::string& w) {
            c.*field = parse_bool(name, v, w);
          },
          [field](const RunConfig& c) {
            return std::string(c.*field ? "true" : "false");
          }};
}

KeyEntry choice_key(const char* name, std::string RunConfig::* field,
                    std::vector<std::string> allowed) {
  return {name,
          [name, field, allowed](RunConfig& c, const std::string& v,
                                 const std::string& w) {
            c.*field = parse_choice(name, v, allowed, w);
          },
          [field](const RunConfig& c) { return c.*field; }};
}

KeyEntry axis_key_name(const char* name, SweepAxis RunConfig::* axis) {
  return {name,
          [name, axis](RunConfig& c, const std::string& v, const std::string& w) {
            if (!known_key(v) || v.rfind("sweep.", 0) == 0) {
              throw config_error(w + ": '" + name +
                                 "' must name a sweepable config key, got '" +
                                 v + "'");
            }
            (c.*axis).key = v;
          },
          [axis](const RunConfig& c) { return (c.*axis).key; }};
}

KeyEntry axis_f64(const char* name, SweepAxis RunConfig::* axis,
                  double SweepAxis::* field) {
  return {name,
          [name, axis, field](RunConfig& c, const std::string& v,
                              const std::string& w) {
            c.*axis.*field = parse_f64(name, v, w);
          },
          [axis, field](const RunConfig& c) {
            return format_double(c.*axis.*field);
          }};
}

KeyEntry axis_points(const char* name, SweepAxis RunConfig::* axis) {
  return {name,
          [name, axis](RunConfig& c, const std::string& v, const std::string& w) {
            const long long n = parse_i64(name, v, w);
            if (n < 0) {
              throw config_error(w + ": '" + std::string(name) +
                                 "' must be >= 0, got '" + v + "'");
            }
            (c.*axis).points = n;
          },
          [axis](const RunConfig& c) { return std::to_string((c.*axis).points); }};
}

KeyEntry axis_scale(const char* name, SweepAxis RunConfig::* axis) {
  return {name,
          [name, axis](RunConfig& c, const std::string& v, const std::string& w) {
            parse_choice(name, v, {"linear", "log"}, w);
            (c.*axis).log_scale = (v == "log");
          },
          [axis](const RunConfig& c) {
            return std::string((c.*axis).log_scale ? "log" : "linear");
          }};
}

const std::vector<KeyEntry>& registry() {
  static const std::vector<KeyEntry> table = {
      // Accepts float-noise integral values so log-spaced sweep grids over N
      // round-trip through their decimal rendering.
      {"params.N",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         const double d = parse_f64("params.N", v, w);
         const long long r = std::llround(d);
         if (std::fabs(d - r) > 1e-9 * std::max(1.0, std::fabs(d))) {
           throw config_error(w + ": 'params.N' must be an integer, got '" + v +
                              "'");
         }
         c.params.N = r;
       },
       [](const RunConfig& c) { return std::to_string(c.params.N); }},
      f64_key("params.Omega", &ModelParams::Omega),
      f64_key("params.g", &ModelParams::g),
      f64_key("params.eta", &ModelParams::eta),
      f64_key("params.nu", &ModelParams::nu),
      f64_key("params.mu", &ModelParams::mu),
      f64_key("params.delta", &ModelParams::delta),
      f64_key("params.kappa", &ModelParams::kappa),
      f64_key("params.Gamma", &ModelParams::Gamma),
      f64_key("params.gamma_c", &ModelParams::gamma_c),
      f64_key("params.c_floor", &ModelParams::c_floor),

      index_key("space.n_atoms", &RunConfig::n_atoms),
      index_key("space.n_b", &RunConfig::n_b),
      index_key("space.n_c", &RunConfig::n_c),
      index_key("space.dim_cap", &RunConfig::dim_cap),

      f64_key("oracle.t_final", &RunConfig::oracle_t_final),
      f64_key("oracle.dt", &RunConfig::oracle_dt),
      index_key("oracle.stride", &RunConfig::oracle_stride),
      f64_key("oracle.m0", &RunConfig::oracle_m0),
      f64_key("oracle.alpha", &RunConfig::oracle_alpha),
      bool_key("oracle.exact_coupling", &RunConfig::oracle_exact_coupling),

      f64_key("rate.t_final", &RunConfig::rate_t_final),
      f64_key("rate.dt", &RunConfig::rate_dt),
      index_key("rate.stride", &RunConfig::rate_stride),
      f64_key("rate.m0", &RunConfig::rate_m0),
      f64_key("rate.zeta0", &RunConfig::rate_zeta0),
      bool_key("rate.track_pairs", &RunConfig::rate_track_pairs),

      choice_key("displacement.mode", &RunConfig::displacement_mode,
                 {"summary", "trajectory", "ensemble"}),
      f64_key("displacement.m0", &RunConfig::displacement_m0),
      f64_key("displacement.x0", &RunConfig::displacement_x0),
      f64_key("displacement.p0", &RunConfig::displacement_p0),
      f64_key("displacement.t_final", &RunConfig::displacement_t_final),
      f64_key("displacement.dt", &RunConfig::displacement_dt),
      index_key("displacement.stride", &RunConfig::displacement_stride),
      index_key("displacement.samples", &RunConfig::displacement_samples),

      f64_key("protocol.m0", &RunConfig::protocol_m0),
      index_key("protocol.max_cycles", &RunConfig::protocol_max_cycles),
      f64_key("protocol.stop_tol", &RunConfig::protocol_stop_tol),
      choice_key("protocol.mode", &RunConfig::protocol_mode,
                 {"closed_form", "coupled"}),
      f64_key("protocol.cooling_time", &RunConfig::protocol_cooling_time),
      bool_key("protocol.implied_c", &RunConfig::protocol_implied_c),

      axis_key_name("sweep.axis1.key", &RunConfig::axis1),
      axis_f64("sweep.axis1.from", &RunConfig::axis1, &SweepAxis::from),
      axis_f64("sweep.axis1.to", &RunConfig::axis1, &SweepAxis::to),
      axis_points("sweep.axis1.points", &RunConfig::axis1),
      axis_scale("sweep.axis1.scale", &RunConfig::axis1),
      axis_key_name("sweep.axis2.key", &RunConfig::axis2),
      axis_f64("sweep.axis2.from", &RunConfig::axis2, &SweepAxis::from),
      axis_f64("sweep.axis2.to", &RunConfig::axis2, &SweepAxis::to),
      axis_points("sweep.axis2.points", &RunConfig::axis2),
      axis_scale("sweep.axis2.scale", &RunConfig::axis2),
      bool_key("sweep.implied_c", &RunConfig::sweep_implied_c),
  };
  return table;
}

const KeyEntry* find_key(const std::string& key) {
  for (const auto& e : registry()) {
    if (key == e.name) return &e;
  }
  return nullptr;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

bool known_key(const std::string& key) { return find_key(key) != nullptr; }

void apply_assignment(RunConfig& cfg, const std::string& key,
                      const std::string& value, const std::string& where) {
  const KeyEntry* entry = find_key(key);
  if (entry == nullptr) {
    throw config_error(where + ": unknown key '" + key + "'");
  }
  entry->set(cfg, value, where);
}

std::string get_value(const RunConfig& cfg, const std::string& key) {
  const KeyEntry* entry = find_key(key);
  if (entry == nullptr) {
    throw config_error("unknown key '" + key + "'");
  }
  return entry->get(cfg);
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("cannot open config file '" + path + "'");
  }
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw config_error(where + ": expected 'key = value', got '" + stripped +
                         "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw config_error(where + ": empty key");
    }
    apply_assignment(cfg, key, value, where);
  }
}

std::vector<std::string> dump_config(const RunConfig& cfg) {
  std::vector<std::string> lines;
  lines.reserve(registry().size());
  for (const auto& e : registry()) {
    lines.push_back(std::string(e.name) + " = " + e.get(cfg));
  }
  return lines;
}

}  // namespace cavicool::cli
