#include <doctest.h>

#include <cmath>

#include "cavicool/errors.hpp"
#include "cavicool/operators.hpp"
#include "cavicool/space.hpp"

using namespace cavicool;

namespace {

double max_abs(const MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("annihilation matrix elements") {
  const MatrixXcd a = annihilation_truncated(5);
  for (int n = 1; n < 5; ++n) {
    CHECK(a(n - 1, n).real() == doctest::Approx(std::sqrt(double(n))).epsilon(1e-15));
  }
  CHECK(max_abs(a - a.triangularView<Eigen::StrictlyUpper>().toDenseMatrix()) == 0.0);
}

TEST_CASE("commutator of truncated ladder pair") {
  // Identity on all levels except the top one, which absorbs the cutoff:
  // the diagonal reads (1, ..., 1, -(dim-1)).
  const MatrixXcd a = annihilation_truncated(4);
  const MatrixXcd comm = a * a.adjoint() - a.adjoint() * a;
  CHECK(comm(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(comm(1, 1).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(comm(2, 2).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(comm(3, 3).real() == doctest::Approx(-3.0).epsilon(1e-14));
}

TEST_CASE("basis operators are hermitian with the right algebra") {
  for (int which = 0; which <= 3; ++which) {
    const MatrixXcd op = basis_op(4, which);
    CHECK(max_abs(op - op.adjoint()) < 1e-15);
  }
  // 2: position-like b + b^dag; 3: momentum-like i(b - b^dag). On the levels
  // below the cutoff, [B2, B3] = 2i [b^dag, b] = -2i.
  const MatrixXcd b2 = basis_op(6, 2);
  const MatrixXcd b3 = basis_op(6, 3);
  const MatrixXcd comm = b2 * b3 - b3 * b2;
  CHECK(std::abs(comm(0, 0) - complexd(0, -2.0)) < 1e-14);
  CHECK(std::abs(comm(2, 2) - complexd(0, -2.0)) < 1e-14);
}

TEST_CASE("embed places a factor on the requested subsystem only") {
  const SpaceLayout layout = build_space(2, 3, 2);
  const MatrixXcd n_op =
      annihilation_truncated(3).adjoint() * annihilation_truncated(3);
  const MatrixXcd full = embed(n_op, layout.phonon_subsystem(1), layout);
  CHECK(full.rows() == 72);
  // Diagonal entry picks out the phonon-1 digit of the basis index.
  for (std::size_t idx : {0u, 17u, 41u, 71u}) {
    const double want = static_cast<double>(layout.digit(idx, layout.phonon_subsystem(1)));
    CHECK(full(idx, idx).real() == doctest::Approx(want).epsilon(1e-15));
  }
  CHECK(max_abs(full - full.adjoint()) == 0.0);
}

TEST_CASE("embed_product equals product of embeddings") {
  const SpaceLayout layout = build_space(2, 3, 2);
  const MatrixXcd b2 = basis_op(3, 2);
  const MatrixXcd sp = basis_op(2, 1);  // atom number operator slot
  const MatrixXcd via_product =
      embed(b2, layout.phonon_subsystem(0), layout) * embed(sp, layout.atom_subsystem(0), layout);
  const MatrixXcd direct = embed_product(
      {{layout.phonon_subsystem(0), b2}, {layout.atom_subsystem(0), sp}}, layout);
  CHECK(max_abs(via_product - direct) < 1e-14);
}

TEST_CASE("embed_product rejects duplicate subsystems") {
  const SpaceLayout layout = build_space(1, 3, 2);
  const MatrixXcd b2 = basis_op(3, 2);
  CHECK_THROWS_AS(embed_product({{layout.phonon_subsystem(0), b2},
                                 {layout.phonon_subsystem(0), b2}},
                                layout),
                  error);
}

}  // TEST_SUITE
