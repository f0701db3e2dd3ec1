#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cavicool/indices.hpp"
#include "cavicool/model_params.hpp"
#include "cavicool/operators.hpp"
#include "cavicool/space.hpp"
#include "cavicool/state.hpp"

namespace cavicool {

// tr(rho * O) for O a product of operators acting on distinct subsystems,
// evaluated without building the embedded matrix: O(dim * prod of touched
// dims) instead of O(dim^2).
complexd expect_local(const QuantumState& state, const SpaceLayout& layout,
                      const std::vector<LocalFactor>& factors);

// Mean phonon number per particle, (1/N) sum_i <b_i^dag b_i>.
double mean_phonon(const QuantumState& state, const SpaceLayout& layout);

// Mean phonon correlation, (1/N(N-1)) sum_{i != j} <b_i^dag b_j>. Exactly 0
// for a single mode. The real part is the value; the discarded imaginary
// part is reported through imag_residue when given (it vanishes for
// exchange-symmetric states).
double phonon_coherence(const QuantumState& state, const SpaceLayout& layout,
                        double* imag_residue = nullptr);

// Diagnostic for the displaced-product-state relation between the phonon
// correlation and the mean position: zeta vs (nu/2)<x>^2 with
// x_i = (b_i + b_i^dag)/sqrt(2 nu). The two agree for identically displaced
// uncorrelated modes with <p> = 0 and disagree otherwise; both numbers are
// returned so the caller can judge.
struct CoherenceCheck {
  double zeta;
  double position_estimate;
};
CoherenceCheck position_coherence_check(const QuantumState& state,
                                        const SpaceLayout& layout,
                                        const ModelParams& p);

// Every averaged expectation value the effective model evolves, extracted by
// direct trace. Cross-particle entries need n_atoms >= 2 and are 0 for a
// single mode; the three-particle z_hat block needs n_atoms >= 3 and is
// absent otherwise. All entries are real up to rounding because the
// underlying operator products are Hermitian after averaging; the largest
// discarded imaginary part is kept in max_imag_residue.
struct ExpectationBundle {
  double m = 0.0;
  double zeta = 0.0;
  std::array<double, 3> s{};        // atomic population + the two quadratures
  std::array<double, 16> x{};       // x_index order
  std::array<double, 16> x_tilde{}; // cross-particle variant, x_index order
  std::array<double, 4> y_tilde{};  // y_index order
  double u_232 = 0.0;
  double u_tilde_223 = 0.0;
  std::array<double, 64> z_tilde{}; // z_index order
  std::optional<std::array<double, 64>> z_hat;
  double max_imag_residue = 0.0;
};

ExpectationBundle extract_bundle(const QuantumState& state, const SpaceLayout& layout);

// Flat CSV serialization of a bundle; names and values stay aligned.
std::vector<std::string> bundle_column_names(bool with_z_hat);
std::vector<double> bundle_row(const ExpectationBundle& bundle);

// d<op>/dt under the full master equation, evaluated exactly as
// tr(L(rho) op). The overload taking a Hamiltonian avoids rebuilding it in
// sampling loops.
double ehrenfest_rate(const QuantumState& state, const MatrixXcd& op,
                      const ModelParams& p, const SpaceLayout& layout);
double ehrenfest_rate(const QuantumState& state, const MatrixXcd& op,
                      const ModelParams& p, const SpaceLayout& layout,
                      const MatrixXcd& h);

}  // namespace cavicool
