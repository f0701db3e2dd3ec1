#include "cavicool/rate_model.hpp"

#include <cmath>
#include <sstream>

#include "cavicool/errors.hpp"
#include "cavicool/numerics.hpp"

namespace cavicool {

void bloch_rhs(const std::array<double, 3>& s, double Omega, double Gamma,
               std::array<double, 3>& ds) {
  ds[0] = 0.5 * Omega * s[2] - Gamma * s[0];
  ds[1] = -0.5 * Gamma * s[1];
  ds[2] = Omega * (1.0 - 2.0 * s[0]) - 0.5 * Gamma * s[2];
}

std::array<double, 3> atomic_steady_state(double Omega, double Gamma) {
  const double denom = Gamma * Gamma + 2.0 * Omega * Omega;
  if (denom == 0.0) {
    throw validation_error(
        "degenerate drive: Gamma = Omega = 0 leaves the atomic stationary state "
        "undetermined");
  }
  return {Omega * Omega / denom, 0.0, 2.0 * Gamma * Omega / denom};
}

Mat16 x_system_matrix(const ModelParams& p) {
  Mat16 mat = Mat16::Zero();
  for (std::size_t a = 2; a <= 3; ++a) {
    for (std::size_t b = 0; b <= 3; ++b) {
      for (std::size_t c = 2; c <= 3; ++c) {
        const std::size_t row = x_index(a, b, c);
        if (a == 2) {
          mat(row, x_index(3, b, c)) -= p.nu;
        } else {
          mat(row, x_index(2, b, c)) += p.nu;
        }
        if (c == 2) {
          mat(row, x_index(a, b, 3)) -= p.delta;
        } else {
          mat(row, x_index(a, b, 2)) += p.delta;
        }
        if (b == 1) {
          mat(row, x_index(a, 3, c)) += 0.5 * p.Omega;
        } else if (b == 3) {
          mat(row, x_index(a, 0, c)) += p.Omega;
          mat(row, x_index(a, 1, c)) -= 2.0 * p.Omega;
        }
        mat(row, row) -= 0.5 * x_decay(b, p.kappa, p.Gamma);
      }
    }
  }
  return mat;
}

Vec16 x_system_source(const ModelParams& p, double zeta) {
  const std::array<double, 3> s = atomic_steady_state(p.Omega, p.Gamma);
  // s indexed by the atomic operator label, with label 0 the identity.
  const std::array<double, 4> sv = {1.0, s[0], s[1], s[2]};
  const double prefactor = double(p.N) * p.eta * p.g * 2.0 * zeta;
  Vec16 src = Vec16::Zero();
  for (std::size_t a = 2; a <= 3; ++a) {
    for (std::size_t b = 0; b <= 3; ++b) {
      for (std::size_t c = 2; c <= 3; ++c) {
        // The correlation entering this row pairs phonon labels (a, 2); the
        // splitting keeps only the diagonal phonon pairs, so a = 3 rows get
        // nothing.
        if (a != 2) continue;
        const std::size_t row = x_index(a, b, c);
        if (c == 2) {
          src(row) -= prefactor * sv[b] * sv[3];
        } else {
          src(row) += prefactor * sv[b] * sv[2];
        }
      }
    }
  }
  return src;
}

Vec16 x_system_rhs(const Vec16& x, const ModelParams& p, double zeta) {
  return x_system_matrix(p) * x + x_system_source(p, zeta);
}

Vec16 adiabatic_solve_x(const ModelParams& p, double zeta) {
  const Mat16 mat = x_system_matrix(p);
  Eigen::FullPivLU<Mat16> lu(mat);
  if (!lu.isInvertible()) {
    throw validation_error(
        "stationary coherence system is singular for these parameters (no decay "
        "closes the loop: kappa and Gamma too small or exactly degenerate)");
  }
  return lu.solve(Vec16(-x_system_source(p, zeta)));
}

CoolingRate collective_rate(const ModelParams& p) {
  CoolingRate out;
  const double coupling = 8.0 * p.eta * p.g * p.Omega * p.Gamma;
  out.numerator = double(p.N) * coupling * coupling * p.nu * p.kappa * p.delta;
  const double d2 = p.delta * p.delta, n2 = p.nu * p.nu, k2 = p.kappa * p.kappa;
  const double bracket = k2 * k2 + 16.0 * (d2 - n2) * (d2 - n2) + 8.0 * k2 * (d2 + n2);
  const double sat = p.Gamma * p.Gamma + 2.0 * p.Omega * p.Omega;
  out.denominator = bracket * sat * sat;
  if (out.denominator == 0.0) {
    throw validation_error(
        "collective rate denominator vanishes: kappa = 0 exactly at the sideband "
        "resonance delta^2 = nu^2, or Gamma = Omega = 0");
  }
  out.A_N = out.numerator / out.denominator;
  return out;
}

double resonant_rate(const ModelParams& p) {
  const double sat = p.Gamma * p.Gamma + 2.0 * p.Omega * p.Omega;
  const double denom =
      p.kappa * (p.kappa * p.kappa + 16.0 * p.nu * p.nu) * sat * sat;
  if (denom == 0.0) {
    throw validation_error(
        "resonant rate denominator vanishes: kappa = 0 or Gamma = Omega = 0");
  }
  const double coupling = 8.0 * p.eta * p.g * p.Omega * p.Gamma * p.nu;
  return double(p.N) * coupling * coupling / denom;
}

std::pair<double, double> cooling_ode(double m0, double zeta0, const ModelParams& p,
                                      double t) {
  if (!(t >= 0.0)) throw validation_error("cooling_ode requires t >= 0");
  const double a = collective_rate(p).A_N;
  const double decay = std::exp(-a * t);
  return {m0 - zeta0 * (1.0 - decay), zeta0 * decay};
}

std::pair<double, double> y_system_step(double y_minus, double y_23, double nu,
                                        double t) {
  const double w = 2.0 * nu * t;
  const double c = std::cos(w), s = std::sin(w);
  return {y_minus * c - 2.0 * y_23 * s, 0.5 * y_minus * s + y_23 * c};
}

std::array<double, 8> u_system_rhs(const std::array<double, 8>& u,
                                   const ModelParams& p, double m) {
  const double src = 6.0 * p.mu * (2.0 * m + 1.0) * (2.0 * m + 1.0);
  std::array<double, 8> du{};
  du[kU222] = -3.0 * p.nu * u[kU232];
  du[kU232] = 0.0;
  du[kUt222] = -p.nu * (u[kUt223] + 2.0 * u[kUt232]);
  du[kUt223] = p.nu * (u[kUt222] - 2.0 * u[kUt233]) + src;
  du[kUt232] = p.nu * (u[kUt222] - u[kUt233] - u[kUt332]);
  du[kUt233] = p.nu * (u[kUt223] + u[kUt232] - u[kUt333]);
  du[kUt332] = p.nu * (2.0 * u[kUt232] - u[kUt333]);
  du[kUt333] = p.nu * (2.0 * u[kUt233] + u[kUt332]) + src;
  return du;
}

UStationary u_system_stationary(const ModelParams& p, double m) {
  if (!(p.nu > 0.0)) {
    throw validation_error("stationary third-moment system is singular at nu = 0");
  }
  const double src = 6.0 * (p.mu / p.nu) * (2.0 * m + 1.0) * (2.0 * m + 1.0);
  using Mat6 = Eigen::Matrix<double, 6, 6>;
  using Vec6 = Eigen::Matrix<double, 6, 1>;
  Mat6 mat;
  Vec6 b;
  // Rows are the six cross-particle derivatives divided by nu, unknowns in
  // the order ut_222, ut_223, ut_232, ut_233, ut_332, ut_333.
  mat << 0, -1, -2, 0, 0, 0,
         1, 0, 0, -2, 0, 0,
         1, 0, 0, -1, -1, 0,
         0, 1, 1, 0, 0, -1,
         0, 0, 2, 0, 0, -1,
         0, 0, 0, 2, 1, 0;
  b << 0, src, 0, 0, 0, src;
  Eigen::FullPivLU<Mat6> lu(mat);
  if (!lu.isInvertible()) {
    throw validation_error("stationary third-moment system is singular");
  }
  const Vec6 v = lu.solve(Vec6(-b));
  UStationary out;
  out.u_232 = 0.0;  // its only appearance is through the u_222 derivative
  out.u_tilde_223 = v(1);
  for (std::size_t i = 0; i < 6; ++i) out.u_tilde[i] = v(static_cast<Eigen::Index>(i));
  return out;
}

RateTrajectory integrate_rate_model(const RateState& initial, const ModelParams& p,
                                    double t_final, double dt, std::size_t stride,
                                    bool verify_xtilde) {
  if (!(dt > 0.0)) throw validation_error("integrate_rate_model requires dt > 0");
  if (!(t_final >= 0.0)) throw validation_error("integrate_rate_model requires t_final >= 0");
  if (stride == 0) throw validation_error("integrate_rate_model requires stride >= 1");
  const double fast =
      std::max({p.nu, std::abs(p.delta), p.Omega, p.kappa + 2.0 * p.Gamma});
  if (fast > 0.0 && dt > 0.05 / fast) {
    std::ostringstream os;
    os << "dt = " << dt << " exceeds the stability bound 0.05/" << fast;
    throw validation_error(os.str());
  }

  const Mat16 mat = x_system_matrix(p);
  const std::array<double, 3> s = atomic_steady_state(p.Omega, p.Gamma);
  const double half_coupling = 0.5 * p.eta * p.g;

  // Layout: x(16) [+ xt(16)] m zeta y_minus y_23 u(8).
  const std::size_t nx = verify_xtilde ? 32 : 16;
  const std::size_t n_total = nx + 4 + 8;
  Eigen::VectorXd v(n_total);
  for (std::size_t i = 0; i < 16; ++i) v[static_cast<Eigen::Index>(i)] = initial.x[i];
  if (verify_xtilde) {
    for (std::size_t i = 0; i < 16; ++i) {
      v[static_cast<Eigen::Index>(16 + i)] = initial.x[i];
    }
  }
  const Eigen::Index im = static_cast<Eigen::Index>(nx);
  v[im] = initial.m;
  v[im + 1] = initial.zeta;
  v[im + 2] = initial.y_minus;
  v[im + 3] = initial.y_23;
  for (std::size_t i = 0; i < 8; ++i) v[im + 4 + static_cast<Eigen::Index>(i)] = initial.u[i];

  const auto rhs = [&](double, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    Eigen::VectorXd dy(n_total);
    const double zeta = y[im + 1];
    const double m = y[im];
    const Vec16 src = x_system_source(p, zeta);
    dy.head<16>() = mat * y.head<16>() + src;
    if (verify_xtilde) dy.segment<16>(16) = mat * y.segment<16>(16) + src;
    std::array<double, 8> u{}, du{};
    for (std::size_t i = 0; i < 8; ++i) u[i] = y[im + 4 + static_cast<Eigen::Index>(i)];
    du = u_system_rhs(u, p, m);
    // Slow pair: the coherence drain plus the third-moment feed; the
    // coefficient of the anharmonic feed is 3 mu per docs/model-notes.md.
    dy[im] = half_coupling * (y[x_index(3, 2, 2)] + y[x_index(3, 3, 3)]) +
             3.0 * p.mu * u[kU232];
    const Eigen::Index xt0 = verify_xtilde ? 16 : 0;
    dy[im + 1] = half_coupling * (y[xt0 + static_cast<Eigen::Index>(x_index(3, 2, 2))] +
                                  y[xt0 + static_cast<Eigen::Index>(x_index(3, 3, 3))]) +
                 3.0 * p.mu * u[kUt223];
    dy[im + 2] = -4.0 * p.nu * y[im + 3];
    dy[im + 3] = p.nu * y[im + 2];
    for (std::size_t i = 0; i < 8; ++i) dy[im + 4 + static_cast<Eigen::Index>(i)] = du[i];
    return dy;
  };

  RateTrajectory traj;
  const auto record = [&](double t) {
    RateState st;
    for (std::size_t i = 0; i < 16; ++i) st.x[i] = v[static_cast<Eigen::Index>(i)];
    st.m = v[im];
    st.zeta = v[im + 1];
    st.s = s;
    st.y_plus = 4.0 * st.zeta;
    st.y_minus = v[im + 2];
    st.y_23 = v[im + 3];
    for (std::size_t i = 0; i < 8; ++i) st.u[i] = v[im + 4 + static_cast<Eigen::Index>(i)];
    if (verify_xtilde) {
      const double scale = std::max(1.0, v.head<16>().cwiseAbs().maxCoeff());
      const double gap = (v.head<16>() - v.segment<16>(16)).cwiseAbs().maxCoeff();
      if (gap > 1e-12 * scale) {
        std::ostringstream os;
        os << "cross-particle coherence copy diverged by " << gap << " at t = " << t;
        throw numerical_error(os.str());
      }
    }
    traj.samples.push_back({t, st});
  };

  record(0.0);
  if (t_final == 0.0) return traj;
  std::size_t n_full = static_cast<std::size_t>(std::floor(t_final / dt + 1e-9));
  double rem = t_final - double(n_full) * dt;
  if (rem < 1e-12 * std::max(1.0, t_final)) rem = 0.0;
  const std::size_t total_steps = n_full + (rem > 0.0 ? 1 : 0);
  for (std::size_t step = 1; step <= total_steps; ++step) {
    const double h = step <= n_full ? dt : rem;
    const double t0 = double(step - 1) * dt;
    v = rk4_step(rhs, v, t0, h);
    const double t = step <= n_full ? double(step) * dt : t_final;
    if (step % stride == 0 || step == total_steps) record(t);
  }
  traj.steps = total_steps;
  return traj;
}

}  // namespace cavicool
