#pragma once

#include <complex>

#include <Eigen/Dense>

#include "cavicool/operators.hpp"
#include "cavicool/space.hpp"

namespace cavicool {

// Density matrix on the composite space. Use validated() when the matrix
// comes from anywhere other than the integrator, which maintains the
// invariants itself.
struct QuantumState {
  MatrixXcd rho;

  // Checks trace = 1 (1e-10), hermiticity (1e-12 max-norm) and eigenvalue
  // floor >= -1e-10; throws validation_error on violation.
  static QuantumState validated(MatrixXcd rho, const SpaceLayout& layout);
};

complexd expectation(const QuantumState& state, const MatrixXcd& op);

// Single-mode density matrices (dim x dim), used as product factors.
MatrixXcd fock_state(std::size_t dim, std::size_t n);
// Boltzmann-weighted diagonal, normalized over the truncated space.
MatrixXcd thermal_state(std::size_t dim, double nbar);
// Normalized truncated Fock expansion of |alpha>.
MatrixXcd coherent_state(std::size_t dim, complexd alpha);
// D(alpha) rho_thermal D(alpha)^dag with the displacement built by matrix
// exponential on the truncated space.
MatrixXcd displaced_thermal_state(std::size_t dim, double nbar, complexd alpha);

// Product state over the composite space: atoms in the ground state, cavity
// in vacuum, every phonon mode a copy of the given single-mode state.
QuantumState product_initial_state(const SpaceLayout& layout, const MatrixXcd& phonon_mode_state);

// Standard oracle seeding: per-mode thermal occupation m0 displaced by alpha.
// alpha != 0 is what makes the cross-mode coherence nonzero.
QuantumState initial_state(const SpaceLayout& layout, double m0, complexd alpha);

}  // namespace cavicool
