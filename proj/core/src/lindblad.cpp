#include "cavicool/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "cavicool/errors.hpp"
#include "cavicool/hamiltonian.hpp"
#include "cavicool/operators.hpp"

namespace cavicool {

namespace {

MatrixXcd dissipator(const MatrixXcd& jump, const MatrixXcd& rho) {
  const MatrixXcd jd = jump.adjoint();
  const MatrixXcd number = jd * jump;
  return 2.0 * jump * rho * jd - number * rho - rho * number;
}

}  // namespace

MatrixXcd lindblad_rhs(const MatrixXcd& rho, const MatrixXcd& h,
                       const ModelParams& p, const SpaceLayout& layout) {
  MatrixXcd out = complexd(0.0, -1.0) * (h * rho - rho * h);
  const MatrixXcd c = embed(annihilation_truncated(layout.cavity_cutoff()),
                            layout.cavity_subsystem(), layout);
  out += 0.5 * p.kappa * dissipator(c, rho);
  for (std::size_t i = 0; i < layout.n_atoms(); ++i) {
    const MatrixXcd sm = embed(annihilation_truncated(2), layout.atom_subsystem(i), layout);
    out += 0.5 * p.Gamma * dissipator(sm, rho);
  }
  return out;
}

LindbladEvaluator::LindbladEvaluator(const ModelParams& p, const SpaceLayout& layout,
                                     MatrixXcd h)
    : layout_(layout), kappa_(p.kappa), gamma_(p.Gamma), h_(std::move(h)) {
  const std::size_t dim = layout_.total_dim();
  if (h_.rows() != static_cast<Eigen::Index>(dim) || h_.cols() != h_.rows()) {
    throw validation_error("hamiltonian dimension does not match the space layout");
  }
  const std::size_t n_c = layout_.cavity_cutoff();
  cavity_amp_.resize(n_c);
  for (std::size_t q = 0; q < n_c; ++q) cavity_amp_[q] = std::sqrt(double(q + 1));

  decay_diag_.resize(static_cast<Eigen::Index>(dim));
  atom_ground_.assign(layout_.n_atoms(), std::vector<unsigned char>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    double d = kappa_ * double(layout_.digit(r, layout_.cavity_subsystem()));
    for (std::size_t i = 0; i < layout_.n_atoms(); ++i) {
      const std::size_t bit = layout_.digit(r, layout_.atom_subsystem(i));
      atom_ground_[i][r] = bit == 0 ? 1 : 0;
      d += gamma_ * double(bit);
    }
    decay_diag_[static_cast<Eigen::Index>(r)] = d;
  }
}

void LindbladEvaluator::rhs(const MatrixXcd& rho, MatrixXcd& out) const {
  const Eigen::Index dim = rho.rows();
  scratch_.noalias() = h_ * rho;
  out.resize(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    for (Eigen::Index r = 0; r < s; ++r) {
      const complexd v =
          complexd(0.0, -1.0) * (scratch_(r, s) - std::conj(scratch_(s, r)));
      out(r, s) = v;
      out(s, r) = std::conj(v);
    }
    out(s, s) = complexd(2.0 * scratch_(s, s).imag(), 0.0);
  }

  const Eigen::Index n_c = static_cast<Eigen::Index>(layout_.cavity_cutoff());
  if (kappa_ > 0.0) {
    // (c rho c^dag)_{rs} couples to the next cavity level; stride is 1 in the
    // chosen ordering, so the shifted index is r+1 whenever the level is not
    // already the top one.
    for (Eigen::Index s = 0; s < dim; ++s) {
      const Eigen::Index qs = s % n_c;
      if (qs + 1 >= n_c) continue;
      const double as = cavity_amp_[static_cast<std::size_t>(qs)];
      for (Eigen::Index r = 0; r < dim; ++r) {
        const Eigen::Index qr = r % n_c;
        if (qr + 1 >= n_c) continue;
        out(r, s) += kappa_ * cavity_amp_[static_cast<std::size_t>(qr)] * as *
                     rho(r + 1, s + 1);
      }
    }
  }
  if (gamma_ > 0.0) {
    for (std::size_t i = 0; i < layout_.n_atoms(); ++i) {
      const Eigen::Index st =
          static_cast<Eigen::Index>(layout_.stride(layout_.atom_subsystem(i)));
      const std::vector<unsigned char>& ground = atom_ground_[i];
      for (Eigen::Index s = 0; s < dim; ++s) {
        if (!ground[static_cast<std::size_t>(s)]) continue;
        for (Eigen::Index r = 0; r < dim; ++r) {
          if (!ground[static_cast<std::size_t>(r)]) continue;
          out(r, s) += gamma_ * rho(r + st, s + st);
        }
      }
    }
  }
  for (Eigen::Index s = 0; s < dim; ++s) {
    const double ds = decay_diag_[s];
    for (Eigen::Index r = 0; r < dim; ++r) {
      out(r, s) -= 0.5 * (decay_diag_[r] + ds) * rho(r, s);
    }
  }
}

MatrixXcd LindbladEvaluator::rhs(const MatrixXcd& rho) const {
  MatrixXcd out;
  rhs(rho, out);
  return out;
}

namespace {

double hermiticity_defect(const MatrixXcd& rho) {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double top_level_population(const MatrixXcd& rho, const SpaceLayout& layout,
                            std::size_t subsystem) {
  const std::size_t top = layout.subsystem_dim(subsystem) - 1;
  double pop = 0.0;
  for (std::size_t r = 0; r < layout.total_dim(); ++r) {
    if (layout.digit(r, subsystem) == top) pop += rho(r, r).real();
  }
  return pop;
}

}  // namespace

TrajectoryStats evolve_observed(const QuantumState& initial, const ModelParams& p,
                                const SpaceLayout& layout, const EvolveOptions& opt,
                                const SampleObserver& observer) {
  const std::size_t dim = layout.total_dim();
  if (initial.rho.rows() != static_cast<Eigen::Index>(dim)) {
    throw validation_error("initial state dimension does not match the space layout");
  }
  if (!(opt.dt > 0.0)) throw validation_error("evolve requires dt > 0");
  if (!(opt.t_final >= 0.0)) throw validation_error("evolve requires t_final >= 0");
  if (opt.stride == 0) throw validation_error("evolve requires stride >= 1");
  const double fast =
      std::max({p.nu, std::abs(p.delta), p.kappa, p.Gamma, p.Omega,
                double(layout.n_atoms()) * p.eta * p.g});
  if (fast > 0.0 && opt.dt > 0.05 / fast) {
    std::ostringstream os;
    os << "dt = " << opt.dt << " exceeds the stability bound 0.05/" << fast
       << " set by the fastest system scale";
    throw validation_error(os.str());
  }

  TrajectoryStats stats;
  MatrixXcd rho = initial.rho;

  const auto observe = [&](double t, std::size_t step) {
    const double asym = hermiticity_defect(rho);
    stats.max_asymmetry = std::max(stats.max_asymmetry, asym);
    if (asym > 1e-10) {
      std::ostringstream os;
      os << "integration failure at step " << step << ": hermiticity defect " << asym;
      throw numerical_error(os.str());
    }
    for (Eigen::Index r = 0; r < rho.rows(); ++r) {
      if (rho(r, r).real() < -1e-8) {
        std::ostringstream os;
        os << "integration failure at step " << step
           << ": negative population " << rho(r, r).real();
        throw numerical_error(os.str());
      }
    }
    for (std::size_t i = 0; i < layout.n_atoms(); ++i) {
      stats.top_phonon_population =
          std::max(stats.top_phonon_population,
                   top_level_population(rho, layout, layout.phonon_subsystem(i)));
    }
    stats.top_cavity_population =
        std::max(stats.top_cavity_population,
                 top_level_population(rho, layout, layout.cavity_subsystem()));
    if (observer) observer(t, QuantumState{rho});
  };

  observe(0.0, 0);
  if (opt.t_final == 0.0) return stats;

  std::size_t n_full = static_cast<std::size_t>(std::floor(opt.t_final / opt.dt + 1e-9));
  double rem = opt.t_final - double(n_full) * opt.dt;
  if (rem < 1e-12 * std::max(1.0, opt.t_final)) rem = 0.0;

  MatrixXcd k1, k2, k3, k4, work(dim, dim);
  LindbladEvaluator ev(p, layout,
                       opt.exact_coupling ? build_h_interaction_exact(p, layout)
                                          : build_h_interaction(p, layout));

  const std::size_t total_steps = n_full + (rem > 0.0 ? 1 : 0);
  double t = 0.0;
  for (std::size_t step = 1; step <= total_steps; ++step) {
    const double h = step <= n_full ? opt.dt : rem;
    ev.rhs(rho, k1);
    work = rho + (0.5 * h) * k1;
    ev.rhs(work, k2);
    work = rho + (0.5 * h) * k2;
    ev.rhs(work, k3);
    work = rho + h * k3;
    ev.rhs(work, k4);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = step <= n_full ? double(step) * opt.dt : opt.t_final;

    const double drift = std::abs(rho.trace() - complexd(1.0, 0.0));
    stats.trace_drift = std::max(stats.trace_drift, drift);
    if (drift > 1e-8) {
      std::ostringstream os;
      os << "integration failure at step " << step << ": trace drift " << drift;
      throw numerical_error(os.str());
    }
    if (step % opt.stride == 0 || step == total_steps) observe(t, step);
  }
  stats.steps = total_steps;

  {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (rho + rho.adjoint()),
                                                Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin < -1e-8) {
      std::ostringstream os;
      os << "integration failure: final state eigenvalue " << lmin;
      throw numerical_error(os.str());
    }
  }
  if (stats.top_phonon_population > 1e-4) {
    std::ostringstream os;
    os << "phonon truncation suspect: top level population "
       << stats.top_phonon_population;
    stats.warnings.push_back(os.str());
  }
  if (stats.top_cavity_population > 1e-4) {
    std::ostringstream os;
    os << "cavity truncation suspect: top level population "
       << stats.top_cavity_population;
    stats.warnings.push_back(os.str());
  }
  return stats;
}

Trajectory evolve(const QuantumState& initial, const ModelParams& p,
                  const SpaceLayout& layout, const EvolveOptions& opt) {
  Trajectory traj;
  traj.stats = evolve_observed(initial, p, layout, opt,
                               [&](double t, const QuantumState& state) {
                                 traj.samples.push_back({t, state});
                               });
  return traj;
}

}  // namespace cavicool
