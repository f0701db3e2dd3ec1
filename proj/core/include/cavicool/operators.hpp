#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "cavicool/space.hpp"

namespace cavicool {

using complexd = std::complex<double>;
using Eigen::MatrixXcd;

// Truncated single-mode ladder operator: entries a[n-1, n] = sqrt(n).
// Valid for any subsystem dimension >= 2; dim = 2 gives the qubit lowering
// operator, so the same builders below serve atoms, phonons and the cavity.
MatrixXcd annihilation_truncated(std::size_t dim);

// The Hermitian operator family used throughout:
//   index 0 -> identity
//   index 1 -> a^dag a            (occupation)
//   index 2 -> a + a^dag          (position-like quadrature)
//   index 3 -> i (a - a^dag)      (momentum-like quadrature)
MatrixXcd basis_op(std::size_t dim, int which);

// Tensor embedding: op acting on one subsystem, identity on the rest.
MatrixXcd embed(const MatrixXcd& op, std::size_t which, const SpaceLayout& layout);

// A single-subsystem factor of a product operator.
struct LocalFactor {
  std::size_t subsystem;
  MatrixXcd op;
};

// Embedded product of factors on pairwise distinct subsystems, built in one
// pass. Equals the product of the individual embeddings.
MatrixXcd embed_product(const std::vector<LocalFactor>& factors, const SpaceLayout& layout);

}  // namespace cavicool
