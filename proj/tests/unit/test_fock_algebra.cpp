#include "doctest.h"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "qframe/fock_algebra.hpp"

using namespace qframe;

TEST_CASE("lowering operator entries") {
  TruncationSpec t{3, 2, {}};
  const Matrix c = annihilation(t).matrix();
  REQUIRE(c.rows() == 8);
  CHECK(std::abs(c(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(c(2, 3) - std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(c(4, 5) - 1.0) < 1e-15);
  // no coupling across qubit blocks
  CHECK(std::abs(c(3, 4)) == 0.0);
  const Matrix n = number(t).matrix();
  CHECK((c.adjoint() * c - n).norm() < 1e-14);
}

TEST_CASE("truncated commutator deviates only at the top Fock state") {
  const Matrix c = cavity_lowering(6);
  const Matrix comm = c * c.adjoint() - c.adjoint() * c;
  for (int i = 0; i < 6; ++i) CHECK(std::abs(comm(i, i) - 1.0) < 1e-14);
  CHECK(std::abs(comm(6, 6) + 6.0) < 1e-14);
}

TEST_CASE("embed follows qubit-major order") {
  TruncationSpec t{1, 2, {}};
  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  const Matrix n = cavity_number(1);
  const Matrix e = embed(z, n, t).matrix();
  CHECK(std::abs(e(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(e(3, 3) + 1.0) < 1e-15);
  CHECK_THROWS_AS(embed(z, cavity_number(2), t), InvalidArgument);
}

TEST_CASE("displacement of vacuum is a coherent state") {
  const cplx amp{0.7, -0.4};
  TruncationSpec t{20, 1, {}};
  const Matrix d = displacement_matrix(amp, t).matrix();
  Vector vac = Vector::Zero(21);
  vac(0) = 1.0;
  const Vector psi = d * vac;
  double fact = 1.0;
  for (int k = 0; k <= 20; ++k) {
    if (k > 0) fact *= k;
    const cplx ref = std::exp(-0.5 * std::norm(amp)) * std::pow(amp, k) / std::sqrt(fact);
    CHECK(std::abs(psi(k) - ref) < 1e-12);
  }
  const Matrix rho = psi * psi.adjoint();
  CHECK(std::abs(expect(annihilation(t), rho) - amp) < 1e-12);
  CHECK(std::abs(expect(number(t), rho) - std::norm(amp)) < 1e-12);
}

TEST_CASE("displacement shifts the lowering operator away from the edge") {
  const cplx amp{0.3, 0.2};
  const int n_max = 30;
  const Matrix d = cavity_displacement(amp, n_max, 40);
  const Matrix c = cavity_lowering(n_max);
  const Matrix lhs = d.adjoint() * c * d;
  const Matrix rhs = c + amp * Matrix::Identity(n_max + 1, n_max + 1);
  CHECK((lhs - rhs).topLeftCorner(15, 15).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((d.adjoint() * d - Matrix::Identity(n_max + 1, n_max + 1))
            .topLeftCorner(15, 15)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("zero displacement is the identity") {
  TruncationSpec t{4, 2, {}};
  CHECK((displacement_matrix(0.0, t).matrix() - Matrix::Identity(10, 10)).norm() < 1e-15);
}

TEST_CASE("guard band warning and bad input") {
  std::string seen;
  auto prev = set_warning_handler([&](std::string_view m) { seen = m; });
  cavity_displacement(cplx{3.0, 0.0}, 5, 2);
  CHECK(!seen.empty());
  set_warning_handler(prev);
  CHECK_THROWS_AS(cavity_displacement(cplx{NAN, 0.0}, 5, 2), InvalidArgument);
}

TEST_CASE("expect and dimension checks") {
  TruncationSpec t{2, 2, {}};
  Matrix rho = Matrix::Zero(6, 6);
  rho(4, 4) = 1.0;  // |1>_q |1>_c
  CHECK(std::abs(expect(number(t), rho) - 1.0) < 1e-15);
  CHECK_THROWS_AS(expect(number(t), Matrix::Identity(4, 4)), InvalidArgument);
}

TEST_CASE("truncation validation") {
  TruncationSpec bad{-1, 2, {}};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  TruncationSpec padded{5, 2, 3};
  CHECK(padded.pad_for(10.0) == 3);
  TruncationSpec auto_pad{5, 2, {}};
  CHECK(auto_pad.pad_for(0.1) == 20);
  CHECK(auto_pad.pad_for(4.0) == 64);
}

TEST_CASE("hermitian flag is checked") {
  TruncationSpec t{1, 1, {}};
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(CompositeOperator(m, t, true), InvalidArgument);
  CHECK(hermiticity_defect(m) == doctest::Approx(1.0));
}
