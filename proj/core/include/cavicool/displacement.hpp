#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cavicool/model_params.hpp"

namespace cavicool {

// Classical single-particle trap with the cubic correction, in units where
// the potential reads V(x) = nu^2 x^2 / 2 + eps x^3 with eps = mu (2 nu)^{3/2}.
double cubic_coefficient(const ModelParams& p);
double potential_energy(double x, const ModelParams& p);
// Local maximum of V on the negative side; -inf / +inf for mu = 0.
double barrier_position(const ModelParams& p);
double barrier_height(const ModelParams& p);

// Zero-momentum roots of nu*m0 = V(x). x_min and x_max bracket the well;
// x_inner is the third root behind the barrier (-inf when mu = 0). Roots are
// polished to |V(x) - nu*m0| < 1e-12 * nu * max(m0, 1).
struct TurningPoints {
  double x_min;
  double x_max;
  double x_inner;
};
TurningPoints turning_points(double m0, const ModelParams& p);

enum class MeanPositionOrder { midpoint, first_order };
// midpoint: (x_min + x_max)/2 from the cubic roots. first_order: the
// closed form -(4 mu/nu) sqrt(2/nu) m0. The midpoint branch cross-checks the
// two against a calibrated band (they agree to one more power of mu/nu).
double mean_position(double m0, const ModelParams& p, MeanPositionOrder order);

// Phonon correlation seeded by one displacement stage: (4 mu/nu)^2 m0^2.
double coherence_after_displacement(double m0, const ModelParams& p);

// Velocity-Verlet integration of the classical orbit. Samples land in the
// arrays every stride steps (endpoint always included); extrema, the energy
// drift, and the running time average are tracked at every step regardless.
struct ClassicalPath {
  std::vector<double> t, x, p, energy;
  double energy_drift = 0.0;  // max |E - E0| / max(|E0|, 1e-300)
  double x_lowest = 0.0;      // refined turning-point estimates seen en route
  double x_highest = 0.0;
  double time_average_x = 0.0;
  std::size_t steps = 0;
};
ClassicalPath classical_trajectory(double x0, double p0, const ModelParams& p,
                                   double t_final, double dt, std::size_t stride = 1);

// Exact orbit period and time-averaged position by quadrature over the
// turning-point parametrization (independent of the ODE path; serves as its
// oracle).
double orbital_period(double m0, const ModelParams& p);
double orbit_time_average(double m0, const ModelParams& p);

// One displacement stage at leading order: the stage leaves m unchanged and
// seeds the coherence from the closed form; positions come from the cubic
// roots and the period is attached as a diagnostic.
struct DisplacementResult {
  double x_min;
  double x_max;
  double x_mean;
  double zeta_end;
  double m_end;
  double period;
};
DisplacementResult displacement_stage(double m0, const ModelParams& p);

// Phase-averaged mean position over an ensemble of orbits with uniformly
// random phase, against the midpoint rule. Deterministic for a given seed.
struct EnsembleReport {
  double mean_x = 0.0;
  double std_error_x = 0.0;
  double midpoint = 0.0;
  std::size_t n_trajectories = 0;
};
EnsembleReport displacement_ensemble(double m0, const ModelParams& p,
                                     std::size_t n_trajectories, std::uint64_t seed);

}  // namespace cavicool
