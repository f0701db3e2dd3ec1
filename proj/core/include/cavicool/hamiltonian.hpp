#pragma once

#include "cavicool/model_params.hpp"
#include "cavicool/operators.hpp"
#include "cavicool/space.hpp"

namespace cavicool {

// Vibrational part: sum over modes of nu*b^dag b + mu*(b + b^dag)^3.
MatrixXcd build_h_vib(const ModelParams& p, const SpaceLayout& layout);

// Full interaction-picture Hamiltonian:
//   sum_i [ Omega/2 sigma_i^- + eta*g (b_i + b_i^dag) c sigma_i^+ ] + h.c.
//   + delta c^dag c + H_vib
MatrixXcd build_h_interaction(const ModelParams& p, const SpaceLayout& layout);

// Diagnostic variant: the coupling is g*sin(eta*(b_i + b_i^dag)) instead of
// its linearization, to bound the linearization error.
MatrixXcd build_h_interaction_exact(const ModelParams& p, const SpaceLayout& layout);

}  // namespace cavicool
