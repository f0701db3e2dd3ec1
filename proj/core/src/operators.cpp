#include "cavicool/operators.hpp"

#include <cmath>
#include <sstream>

#include "cavicool/errors.hpp"

namespace cavicool {

MatrixXcd annihilation_truncated(std::size_t dim) {
  if (dim < 2) throw validation_error("annihilation_truncated: invalid dimension < 2");
  MatrixXcd a = MatrixXcd::Zero(dim, dim);
  for (std::size_t n = 1; n < dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

MatrixXcd basis_op(std::size_t dim, int which) {
  switch (which) {
    case 0:
      return MatrixXcd::Identity(dim, dim);
    case 1: {
      MatrixXcd a = annihilation_truncated(dim);
      return a.adjoint() * a;
    }
    case 2: {
      MatrixXcd a = annihilation_truncated(dim);
      return a + a.adjoint();
    }
    case 3: {
      MatrixXcd a = annihilation_truncated(dim);
      return complexd(0.0, 1.0) * (a - a.adjoint());
    }
    default:
      throw validation_error("basis_op: index must be 0..3");
  }
}

MatrixXcd embed(const MatrixXcd& op, std::size_t which, const SpaceLayout& layout) {
  const std::size_t d = layout.subsystem_dim(which);
  if (static_cast<std::size_t>(op.rows()) != d ||
      static_cast<std::size_t>(op.cols()) != d) {
    std::ostringstream os;
    os << "embed: operator is " << op.rows() << "x" << op.cols()
       << " but subsystem " << which << " has dimension " << d;
    throw validation_error(os.str());
  }
  const std::size_t dim = layout.total_dim();
  const std::size_t stride = layout.stride(which);
  MatrixXcd out = MatrixXcd::Zero(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t dr = layout.digit(r, which);
    const std::size_t base = r - dr * stride;
    for (std::size_t j = 0; j < d; ++j) {
      const complexd v = op(dr, j);
      if (v != complexd(0.0, 0.0)) out(r, base + j * stride) = v;
    }
  }
  return out;
}

MatrixXcd embed_product(const std::vector<LocalFactor>& factors, const SpaceLayout& layout) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    const std::size_t d = layout.subsystem_dim(f.subsystem);
    if (static_cast<std::size_t>(f.op.rows()) != d ||
        static_cast<std::size_t>(f.op.cols()) != d) {
      throw validation_error("embed_product: factor dimension mismatch");
    }
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      if (factors[j].subsystem == f.subsystem) {
        throw validation_error("embed_product: duplicate subsystem in factor list");
      }
    }
  }

  const std::size_t dim = layout.total_dim();
  MatrixXcd out = MatrixXcd::Zero(dim, dim);
  const std::size_t k = factors.size();
  std::vector<std::size_t> col_digit(k);
  for (std::size_t r = 0; r < dim; ++r) {
    // Columns reachable from row r differ only in the touched digits.
    std::size_t base = r;
    for (const auto& f : factors) {
      base -= layout.digit(r, f.subsystem) * layout.stride(f.subsystem);
    }
    // Odometer over the touched digits.
    std::fill(col_digit.begin(), col_digit.end(), 0);
    while (true) {
      complexd v(1.0, 0.0);
      std::size_t s = base;
      for (std::size_t t = 0; t < k; ++t) {
        const auto& f = factors[t];
        v *= f.op(layout.digit(r, f.subsystem), col_digit[t]);
        s += col_digit[t] * layout.stride(f.subsystem);
      }
      if (v != complexd(0.0, 0.0)) out(r, s) = v;

      std::size_t t = 0;
      for (; t < k; ++t) {
        if (++col_digit[t] < layout.subsystem_dim(factors[t].subsystem)) break;
        col_digit[t] = 0;
      }
      if (t == k) break;
    }
  }
  return out;
}

}  // namespace cavicool
