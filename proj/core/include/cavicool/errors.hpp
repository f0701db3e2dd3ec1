#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cavicool {

// Failure classification; the CLI maps these onto process exit codes
// (config -> 2, validation -> 3, numerical -> 4).
enum class error_kind {
  config,      // malformed or contradictory run configuration
  validation,  // physically invalid request: dimensions, parameter ranges, escape orbits
  numerical,   // an integration or linear solve violated its accuracy contract
};

class error : public std::runtime_error {
 public:
  error(error_kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  error_kind kind() const noexcept { return kind_; }

 private:
  error_kind kind_;
};

inline error config_error(std::string msg) {
  return error(error_kind::config, std::move(msg));
}
inline error validation_error(std::string msg) {
  return error(error_kind::validation, std::move(msg));
}
inline error numerical_error(std::string msg) {
  return error(error_kind::numerical, std::move(msg));
}

}  // namespace cavicool
