#pragma once

#include <cstddef>

namespace cavicool {

// Flat storage order for the 16 coupled phonon/atom/cavity coherences
// x_{abc}: a in {2,3}, b in {0,1,2,3}, c in {2,3}, lexicographic in (a,b,c).
constexpr std::size_t x_index(std::size_t a, std::size_t b, std::size_t c) {
  return (a - 2) * 8 + b * 2 + (c - 2);
}
constexpr std::size_t x_a(std::size_t i) { return i / 8 + 2; }
constexpr std::size_t x_b(std::size_t i) { return (i % 8) / 2; }
constexpr std::size_t x_c(std::size_t i) { return i % 2 + 2; }

// Two-particle phonon coherences y_{ab}: a, b in {2,3}.
constexpr std::size_t y_index(std::size_t a, std::size_t b) {
  return (a - 2) * 2 + (b - 2);
}

// Four-index phonon/atom cross correlations z_{abcd}: a, b in {2,3} (phonon
// side), c, d in {0,1,2,3} (atom side).
constexpr std::size_t z_index(std::size_t a, std::size_t b, std::size_t c,
                              std::size_t d) {
  return ((a - 2) * 2 + (b - 2)) * 16 + c * 4 + d;
}

// Decay constant attached to the atom index b of x_{abc}; the pattern comes
// from which atomic operator sits in the product (kappa alone for the
// identity, kappa + 2 Gamma for the population, kappa + Gamma for the two
// coherences).
constexpr double x_decay(std::size_t b, double kappa, double Gamma) {
  return b == 0 ? kappa : (b == 1 ? kappa + 2.0 * Gamma : kappa + Gamma);
}

}  // namespace cavicool
