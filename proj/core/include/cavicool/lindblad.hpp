#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "cavicool/model_params.hpp"
#include "cavicool/space.hpp"
#include "cavicool/state.hpp"

namespace cavicool {

// Reference master-equation right-hand side built from generic dense
// products: -i[H, rho] plus the cavity and per-atom decay channels. Kept
// deliberately simple; the cached evaluator below must agree with it to
// rounding and is tested against it.
MatrixXcd lindblad_rhs(const MatrixXcd& rho, const MatrixXcd& h,
                       const ModelParams& p, const SpaceLayout& layout);

// Fast evaluator. The Hamiltonian commutator costs one dense product per call
// (M = H rho; -i[H,rho] = -i(M - M^dag), exact while rho is Hermitian, and
// every RK4 stage combination of Hermitian inputs is). The decay channels are
// index-structured O(dim^2) passes over the fixed basis ordering. Instances
// hold scratch storage and are not safe for concurrent calls; use one
// evaluator per trajectory.
class LindbladEvaluator {
 public:
  LindbladEvaluator(const ModelParams& p, const SpaceLayout& layout, MatrixXcd h);

  void rhs(const MatrixXcd& rho, MatrixXcd& out) const;
  MatrixXcd rhs(const MatrixXcd& rho) const;

  const MatrixXcd& hamiltonian() const { return h_; }

 private:
  SpaceLayout layout_;
  double kappa_, gamma_;
  MatrixXcd h_;
  Eigen::VectorXd decay_diag_;          // kappa*q + Gamma*(excited count) per basis state
  std::vector<double> cavity_amp_;      // sqrt(q+1) per cavity level
  std::vector<std::vector<unsigned char>> atom_ground_;  // [atom][index]: atom digit == 0
  mutable MatrixXcd scratch_;
};

struct EvolveOptions {
  double dt = 0.0;         // fixed step; must satisfy the fast-scale bound
  double t_final = 0.0;
  std::size_t stride = 1;  // observe every stride-th step; the endpoint is always observed
  bool exact_coupling = false;
};

struct TrajectoryStats {
  std::size_t steps = 0;
  double trace_drift = 0.0;            // max |tr rho - 1| over every step
  double max_asymmetry = 0.0;          // max hermiticity defect over observed states
  double top_phonon_population = 0.0;  // max population of the highest phonon level, any mode
  double top_cavity_population = 0.0;
  std::vector<std::string> warnings;
};

struct TrajectorySample {
  double t;
  QuantumState state;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  TrajectoryStats stats;
};

using SampleObserver = std::function<void(double t, const QuantumState& state)>;

// Fixed-step RK4 integration of the master equation.
//  - requires dt <= 0.05 / max(nu, |delta|, kappa, Gamma, Omega, n_atoms*eta*g),
//    resolving the fastest scale of the simulated system
//  - trace drift beyond 1e-8 or observed-state asymmetry beyond 1e-10 aborts
//    with a numerical error naming the step index; the diagonal of rho is
//    floored at -1e-8 at observation points, and the final state gets a full
//    eigenvalue check
//  - population above 1e-4 in the top Fock level of either bosonic sector
//    produces a truncation warning
// The observer form streams samples without storing them; evolve() collects
// full states and is meant for small runs (memory scales as samples * dim^2).
TrajectoryStats evolve_observed(const QuantumState& initial, const ModelParams& p,
                                const SpaceLayout& layout, const EvolveOptions& opt,
                                const SampleObserver& observer);
Trajectory evolve(const QuantumState& initial, const ModelParams& p,
                  const SpaceLayout& layout, const EvolveOptions& opt);

}  // namespace cavicool
