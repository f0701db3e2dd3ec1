#include "cavicool/space.hpp"

#include <sstream>

#include "cavicool/errors.hpp"

namespace cavicool {

SpaceLayout::SpaceLayout(std::size_t n_atoms, std::size_t n_b, std::size_t n_c)
    : n_atoms_(n_atoms), n_b_(n_b), n_c_(n_c) {
  dims_.reserve(2 * n_atoms + 1);
  for (std::size_t i = 0; i < n_atoms; ++i) dims_.push_back(2);
  for (std::size_t i = 0; i < n_atoms; ++i) dims_.push_back(n_b);
  dims_.push_back(n_c);

  strides_.assign(dims_.size(), 1);
  for (std::size_t k = dims_.size(); k-- > 1;) {
    strides_[k - 1] = strides_[k] * dims_[k];
  }
  total_dim_ = strides_[0] * dims_[0];
}

SpaceLayout build_space(std::size_t n_atoms, std::size_t n_b, std::size_t n_c,
                        std::size_t dim_cap) {
  if (n_atoms < 1) throw validation_error("build_space: n_atoms must be >= 1");
  if (n_b < 2) {
    throw validation_error(
        "build_space: phonon cutoff must be >= 2 (ladder operators degenerate below)");
  }
  if (n_c < 2) {
    throw validation_error(
        "build_space: cavity cutoff must be >= 2 (ladder operators degenerate below)");
  }

  // Overflow-safe running product against the cap.
  std::size_t dim = n_c;
  auto mul_checked = [&](std::size_t factor) {
    if (factor != 0 && dim > dim_cap / factor + 1) {
      dim = dim_cap + 1;  // saturate; the exact value no longer matters
    } else {
      dim *= factor;
    }
  };
  for (std::size_t i = 0; i < n_atoms; ++i) mul_checked(2 * n_b);
  if (dim > dim_cap) {
    std::ostringstream os;
    os << "dimension-overflow: 2^" << n_atoms << " * " << n_b << "^" << n_atoms
       << " * " << n_c << " exceeds the cap " << dim_cap;
    throw validation_error(os.str());
  }
  return SpaceLayout(n_atoms, n_b, n_c);
}

}  // namespace cavicool
