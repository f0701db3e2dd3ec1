#include "cavicool/state.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "cavicool/errors.hpp"

namespace cavicool {

QuantumState QuantumState::validated(MatrixXcd rho, const SpaceLayout& layout) {
  const auto dim = static_cast<Eigen::Index>(layout.total_dim());
  if (rho.rows() != dim || rho.cols() != dim) {
    throw validation_error("QuantumState: matrix dimension does not match layout");
  }
  const double trace_defect = std::abs(rho.trace() - complexd(1.0, 0.0));
  if (trace_defect > 1e-10) {
    std::ostringstream os;
    os << "QuantumState: trace deviates from 1 by " << trace_defect;
    throw validation_error(os.str());
  }
  const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) {
    std::ostringstream os;
    os << "QuantumState: hermiticity defect " << asym;
    throw validation_error(os.str());
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  const double lambda_min = es.eigenvalues().minCoeff();
  if (lambda_min < -1e-10) {
    std::ostringstream os;
    os << "QuantumState: negative eigenvalue " << lambda_min;
    throw validation_error(os.str());
  }
  return QuantumState{std::move(rho)};
}

complexd expectation(const QuantumState& state, const MatrixXcd& op) {
  if (state.rho.rows() != op.rows() || state.rho.cols() != op.cols()) {
    throw validation_error("expectation: operator and state dimensions differ");
  }
  // tr(rho op) without forming the product.
  return (state.rho.transpose().cwiseProduct(op)).sum();
}

MatrixXcd fock_state(std::size_t dim, std::size_t n) {
  if (n >= dim) throw validation_error("fock_state: level outside the truncated space");
  MatrixXcd rho = MatrixXcd::Zero(dim, dim);
  rho(n, n) = 1.0;
  return rho;
}

MatrixXcd thermal_state(std::size_t dim, double nbar) {
  if (nbar < 0.0) throw validation_error("thermal_state: nbar must be >= 0");
  MatrixXcd rho = MatrixXcd::Zero(dim, dim);
  if (nbar == 0.0) {
    rho(0, 0) = 1.0;
    return rho;
  }
  const double q = nbar / (1.0 + nbar);
  double w = 1.0, norm = 0.0;
  for (std::size_t n = 0; n < dim; ++n, w *= q) {
    rho(n, n) = w;
    norm += w;
  }
  rho /= norm;
  return rho;
}

MatrixXcd coherent_state(std::size_t dim, complexd alpha) {
  Eigen::VectorXcd psi(dim);
  complexd amp(1.0, 0.0);
  for (std::size_t n = 0; n < dim; ++n) {
    psi(n) = amp;
    amp *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  psi.normalize();
  return psi * psi.adjoint();
}

MatrixXcd displaced_thermal_state(std::size_t dim, double nbar, complexd alpha) {
  const MatrixXcd a = annihilation_truncated(dim);
  const MatrixXcd generator = alpha * a.adjoint() - std::conj(alpha) * a;
  const MatrixXcd d = generator.exp();
  return d * thermal_state(dim, nbar) * d.adjoint();
}

QuantumState product_initial_state(const SpaceLayout& layout, const MatrixXcd& phonon_mode_state) {
  std::vector<LocalFactor> factors;
  const MatrixXcd ground = fock_state(2, 0);
  for (std::size_t i = 0; i < layout.n_atoms(); ++i) {
    factors.push_back({layout.atom_subsystem(i), ground});
    factors.push_back({layout.phonon_subsystem(i), phonon_mode_state});
  }
  factors.push_back({layout.cavity_subsystem(), fock_state(layout.cavity_cutoff(), 0)});
  MatrixXcd rho = embed_product(factors, layout);
  // Renormalize away the truncation loss of the mode state, then validate.
  rho /= rho.trace().real();
  return QuantumState::validated(std::move(rho), layout);
}

QuantumState initial_state(const SpaceLayout& layout, double m0, complexd alpha) {
  MatrixXcd mode = (alpha == complexd(0.0, 0.0))
                       ? thermal_state(layout.phonon_cutoff(), m0)
                       : displaced_thermal_state(layout.phonon_cutoff(), m0, alpha);
  return product_initial_state(layout, mode);
}

}  // namespace cavicool
