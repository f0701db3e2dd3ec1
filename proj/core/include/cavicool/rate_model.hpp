#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cavicool/indices.hpp"
#include "cavicool/model_params.hpp"

namespace cavicool {

using Vec16 = Eigen::Matrix<double, 16, 1>;
using Mat16 = Eigen::Matrix<double, 16, 16>;

// Order of the eight third-moment phonon variables carried by the effective
// model: u_222, u_232, then the six cross-particle entries
// ut_222, ut_223, ut_232, ut_233, ut_332, ut_333.
enum u_slot : std::size_t {
  kU222 = 0,
  kU232,
  kUt222,
  kUt223,
  kUt232,
  kUt233,
  kUt332,
  kUt333,
};

struct RateState {
  double m = 0.0;
  double zeta = 0.0;
  std::array<double, 16> x{};  // x_index order
  std::array<double, 3> s{};
  double y_plus = 0.0;  // equals 4*zeta when initialized from a physical state
  double y_minus = 0.0;
  double y_23 = 0.0;
  std::array<double, 8> u{};
};

// Atomic Bloch sector.
void bloch_rhs(const std::array<double, 3>& s, double Omega, double Gamma,
               std::array<double, 3>& ds);
std::array<double, 3> atomic_steady_state(double Omega, double Gamma);

// The 16 coupled coherence equations, written as dx/dt = M x + S(zeta) with
// the atomic sector frozen at its steady state and the cross-particle phonon
// correlations replaced by their slow part (proportional to zeta).
Mat16 x_system_matrix(const ModelParams& p);
Vec16 x_system_source(const ModelParams& p, double zeta);
Vec16 x_system_rhs(const Vec16& x, const ModelParams& p, double zeta);

// Stationary solution M x + S = 0 for fixed zeta.
Vec16 adiabatic_solve_x(const ModelParams& p, double zeta);

// Closed form for the collective cooling rate, with the numerator and
// denominator kept for diagnostics. The sign follows delta; the value is 0
// whenever eta, g, Omega, Gamma, kappa, or N vanishes (off the degenerate
// points below). Throws only when the denominator itself vanishes, i.e.
// kappa = 0 exactly at the sideband resonance delta^2 = nu^2, or
// Gamma = Omega = 0.
struct CoolingRate {
  double A_N = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
};
CoolingRate collective_rate(const ModelParams& p);

// The rate at the optimum detuning delta = nu.
double resonant_rate(const ModelParams& p);

// Closed-form solution of the two slow equations mdot = zetadot = -A_N zeta:
// zeta(t) = zeta0 exp(-A_N t), m(t) = m0 - zeta0 (1 - exp(-A_N t)).
std::pair<double, double> cooling_ode(double m0, double zeta0, const ModelParams& p,
                                      double t);

// Exact rotation of the slow/fast split of the cross-particle phonon
// quadrature pair: the (y_minus, 2 y_23) plane turns at frequency 2 nu while
// y_plus stays constant. Returns the pair after time t.
std::pair<double, double> y_system_step(double y_minus, double y_23, double nu,
                                        double t);

// Right-hand side of the eight third-moment equations at mean phonon number
// m. The u_232 equation is not part of the coupled set (only its effect on
// u_222 is); its derivative is 0 here, which the stationary solve confirms.
std::array<double, 8> u_system_rhs(const std::array<double, 8>& u,
                                   const ModelParams& p, double m);

// Stationary point of the third-moment system. The two entries feeding the
// slow equations vanish identically; the full cross-particle vector is
// returned for inspection (ut_222 = ut_332 = -6 (mu/nu) (2m+1)^2, rest 0).
struct UStationary {
  double u_232 = 0.0;
  double u_tilde_223 = 0.0;
  std::array<double, 6> u_tilde{};  // ut_222, ut_223, ut_232, ut_233, ut_332, ut_333
};
UStationary u_system_stationary(const ModelParams& p, double m);

// Fixed-step RK4 integration of the coupled fast/slow system: the 16
// coherences with zeta-dependent sources, the slow pair (m, zeta) fed by
// them, the rotating phonon pair, and the third-moment sector. The atomic
// sector stays at steady state. verify_xtilde integrates a second copy of
// the coherence block seeded identically (the cross-particle block obeys the
// same equations under the correlation splitting) and checks it stays equal.
struct RateSample {
  double t;
  RateState state;
};
struct RateTrajectory {
  std::vector<RateSample> samples;
  std::size_t steps = 0;
};
RateTrajectory integrate_rate_model(const RateState& initial, const ModelParams& p,
                                    double t_final, double dt,
                                    std::size_t stride = 1,
                                    bool verify_xtilde = false);

}  // namespace cavicool
