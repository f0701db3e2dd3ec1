#pragma once

#include <cstddef>
#include <vector>

namespace cavicool {

// Dimension guard for the dense oracle; beyond this the matrices stop being
// desk-scale objects.
inline constexpr std::size_t kDefaultDimCap = 20000;

// Composite truncated space of n_atoms two-level atoms, n_atoms phonon modes
// and a single cavity mode.
//
// Basis ordering (fixed, asserted by tests): mixed-radix digits
//   [atom 1, ..., atom n, phonon 1, ..., phonon n, cavity]
// with atom 1 the most significant digit and the cavity the fastest (stride 1).
class SpaceLayout {
 public:
  SpaceLayout(std::size_t n_atoms, std::size_t n_b, std::size_t n_c);

  std::size_t n_atoms() const { return n_atoms_; }
  std::size_t phonon_cutoff() const { return n_b_; }
  std::size_t cavity_cutoff() const { return n_c_; }
  std::size_t total_dim() const { return total_dim_; }
  std::size_t n_subsystems() const { return dims_.size(); }

  // Subsystem numbering: 0..n_atoms-1 the atoms, n_atoms..2*n_atoms-1 the
  // phonon modes (same particle order), 2*n_atoms the cavity.
  std::size_t atom_subsystem(std::size_t i) const { return i; }
  std::size_t phonon_subsystem(std::size_t i) const { return n_atoms_ + i; }
  std::size_t cavity_subsystem() const { return 2 * n_atoms_; }

  std::size_t subsystem_dim(std::size_t which) const { return dims_[which]; }
  std::size_t stride(std::size_t which) const { return strides_[which]; }

  // Digit of the flattened basis index belonging to one subsystem.
  std::size_t digit(std::size_t index, std::size_t which) const {
    return (index / strides_[which]) % dims_[which];
  }

 private:
  std::size_t n_atoms_, n_b_, n_c_;
  std::size_t total_dim_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
};

// Validates cutoffs and the total-dimension cap. Throws validation_error with
// the offending product on overflow.
SpaceLayout build_space(std::size_t n_atoms, std::size_t n_b, std::size_t n_c,
                        std::size_t dim_cap = kDefaultDimCap);

}  // namespace cavicool
