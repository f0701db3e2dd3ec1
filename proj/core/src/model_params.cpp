#include "cavicool/model_params.hpp"

#include <cmath>
#include <sstream>

#include "cavicool/errors.hpp"

namespace cavicool {

std::vector<std::string> ModelParams::validate() const {
  auto bad = [](const char* name, double v) {
    std::ostringstream os;
    os << "parameter " << name << " = " << v << " must be finite and >= 0";
    return validation_error(os.str());
  };
  if (N < 1) throw validation_error("particle number N must be >= 1");
  const struct { const char* name; double v; } nonneg[] = {
      {"Omega", Omega}, {"g", g},         {"nu", nu},
      {"mu", mu},       {"kappa", kappa}, {"Gamma", Gamma},
      {"gamma_c", gamma_c}, {"c_floor", c_floor},
  };
  for (auto [name, v] : nonneg) {
    if (!std::isfinite(v) || v < 0.0) throw bad(name, v);
  }
  if (!std::isfinite(delta)) throw validation_error("delta must be finite");
  if (!std::isfinite(eta) || eta < 0.0 || eta >= 1.0) {
    throw validation_error("eta must lie in [0, 1)");
  }
  // Slight anharmonicity: the displacement closed forms are first order in
  // mu/nu and lose meaning well before mu ~ nu.
  if (mu > 0.2 * nu) {
    std::ostringstream os;
    os << "mu = " << mu << " violates the slight-anharmonicity constraint mu <= 0.2*nu (nu = "
       << nu << ")";
    throw validation_error(os.str());
  }

  std::vector<std::string> warnings;
  if (mu > 0.05 * nu) {
    std::ostringstream os;
    os << "mu/nu = " << mu / nu
       << " exceeds 0.05; first-order displacement formulas degrade";
    warnings.push_back(os.str());
  }
  return warnings;
}

}  // namespace cavicool
