#include "cavicool/hamiltonian.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace cavicool {

namespace {

// sin of a Hermitian matrix through its eigendecomposition.
MatrixXcd matrix_sine(const MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  Eigen::VectorXd s = es.eigenvalues().array().sin();
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

MatrixXcd interaction_common(const ModelParams& p, const SpaceLayout& layout,
                             bool exact_coupling) {
  const std::size_t dim = layout.total_dim();
  const std::size_t n_b = layout.phonon_cutoff();
  const std::size_t n_c = layout.cavity_cutoff();

  MatrixXcd h = MatrixXcd::Zero(dim, dim);

  const MatrixXcd sigma_minus = annihilation_truncated(2);
  const MatrixXcd sigma_plus = sigma_minus.adjoint();
  const MatrixXcd c = annihilation_truncated(n_c);
  const MatrixXcd b2 = basis_op(n_b, 2);
  // sin(eta x)/eta tends to x as eta -> 0, where the variants coincide.
  const MatrixXcd coupling_mode =
      (exact_coupling && p.eta > 0.0) ? MatrixXcd(matrix_sine(p.eta * b2) / p.eta) : b2;

  for (std::size_t i = 0; i < layout.n_atoms(); ++i) {
    h += 0.5 * p.Omega * embed(sigma_minus, layout.atom_subsystem(i), layout);
    // eta*g (b_i + b_i^dag) c sigma_i^+; the exact variant replaces the
    // linear mode factor by sin(eta x)/eta so the prefactor stays eta*g.
    h += p.eta * p.g *
         embed_product({{layout.phonon_subsystem(i), coupling_mode},
                        {layout.cavity_subsystem(), c},
                        {layout.atom_subsystem(i), sigma_plus}},
                       layout);
  }
  MatrixXcd h_full = h + h.adjoint();
  h_full += p.delta * embed(basis_op(n_c, 1), layout.cavity_subsystem(), layout);
  h_full += build_h_vib(p, layout);
  return h_full;
}

}  // namespace

MatrixXcd build_h_vib(const ModelParams& p, const SpaceLayout& layout) {
  const std::size_t dim = layout.total_dim();
  const std::size_t n_b = layout.phonon_cutoff();
  MatrixXcd h = MatrixXcd::Zero(dim, dim);
  const MatrixXcd number = basis_op(n_b, 1);
  const MatrixXcd b2 = basis_op(n_b, 2);
  const MatrixXcd mode_term = p.nu * number + p.mu * b2 * b2 * b2;
  for (std::size_t i = 0; i < layout.n_atoms(); ++i) {
    h += embed(mode_term, layout.phonon_subsystem(i), layout);
  }
  return h;
}

MatrixXcd build_h_interaction(const ModelParams& p, const SpaceLayout& layout) {
  return interaction_common(p, layout, false);
}

MatrixXcd build_h_interaction_exact(const ModelParams& p, const SpaceLayout& layout) {
  return interaction_common(p, layout, true);
}

}  // namespace cavicool
