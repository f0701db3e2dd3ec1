#pragma once

#include <string>
#include <vector>

namespace cavicool {

// Physical constants of the model, in units where hbar = M = 1 so every
// parameter except N and eta is an angular frequency. N is the physical
// particle number; it may far exceed the mode count of any oracle run.
struct ModelParams {
  long long N = 100;    // particle number entering collective rates
  double Omega = 0.5;   // laser Rabi frequency
  double g = 5.0;       // atom-cavity coupling
  double eta = 0.02;    // Lamb-Dicke parameter
  double nu = 1.0;      // trap frequency
  double mu = 0.01;     // cubic trap anharmonicity, mu << nu
  double delta = 1.0;   // cavity-atom detuning, may be negative
  double kappa = 1.0;   // cavity decay rate
  double Gamma = 0.5;   // atomic decay rate
  double gamma_c = 0.0; // residual per-particle heating rate; 0 disables the channel
  double c_floor = 0.0; // residual heating source; 0 disables the channel

  // Hard violations throw validation_error; soft ones come back as warnings.
  std::vector<std::string> validate() const;
};

}  // namespace cavicool
