#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <lmg/spin_algebra.hpp>

using namespace lmg;

namespace {

double comm_residual(const MatrixXcd& a, const MatrixXcd& b, const MatrixXcd& c) {
  // || [a,b] - i c ||_max
  return (a * b - b * a - Complex(0, 1) * c).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("spin-1/2 operators are the Pauli matrices over two") {
  const SpinOperators ops = spin_operators(0.5);
  MatrixXcd px(2, 2), py(2, 2), pz(2, 2);
  px << 0, 1, 1, 0;
  py << 0, Complex(0, -1), Complex(0, 1), 0;
  pz << 1, 0, 0, -1;
  CHECK((ops.sx - 0.5 * px).norm() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK((ops.sy - 0.5 * py).norm() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK((ops.sz - 0.5 * pz).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("commutation relations hold at every tested size") {
  for (double S : {0.5, 1.0, 1.5, 5.0, 20.0, 150.0, 200.0}) {
    const SpinOperators ops = spin_operators(S);
    const double tol = 1e-12 * std::max(1.0, S);
    CHECK(comm_residual(ops.sx, ops.sy, ops.sz) < tol);
    CHECK(comm_residual(ops.sy, ops.sz, ops.sx) < tol);
    CHECK(comm_residual(ops.sz, ops.sx, ops.sy) < tol);
    CHECK((ops.sx - ops.sx.adjoint()).norm() < tol);
    CHECK((ops.sy - ops.sy.adjoint()).norm() < tol);
  }
}

TEST_CASE("dimension bookkeeping and invalid spins") {
  CHECK(spin_dimension(150.0) == 301);
  CHECK(spin_dimension(0.5) == 2);
  CHECK_THROWS_AS(spin_operators(0.3), invalid_parameter_error);
  CHECK_THROWS_AS(spin_operators(-1.0), invalid_parameter_error);
  CHECK_THROWS_AS(spin_operators(std::nan("")), invalid_parameter_error);
}

TEST_CASE("banded and dense constructions agree") {
  const SpinBands b = spin_bands(7.5);
  const SpinOperators ops = spin_operators(7.5);
  CHECK((b.sx.dense() - ops.sx).norm() == doctest::Approx(0.0));
  CHECK((b.sy.dense() - ops.sy).norm() == doctest::Approx(0.0));
  CHECK((b.sz.dense() - ops.sz).norm() == doctest::Approx(0.0));
}

TEST_CASE("casimir is S(S+1) times the identity") {
  for (double S : {0.5, 1.0, 60.0}) {
    const int d = spin_dimension(S);
    const MatrixXcd c = casimir(S);
    const double expected = S * (S + 1.0);
    CHECK((c - expected * MatrixXcd::Identity(d, d)).norm() <
          1e-9 * expected * std::sqrt(double(d)));
  }
  CHECK(casimir(60.0)(0, 0).real() == doctest::Approx(3660.0).epsilon(1e-9));
}

TEST_CASE("parity operator conjugation and involution") {
  for (double S : {1.0, 2.0, 7.0}) {
    const int d = spin_dimension(S);
    const SpinOperators ops = spin_operators(S);
    const MatrixXcd p = parity_operator(S);
    CHECK((p.adjoint() * ops.sx * p + ops.sx).cwiseAbs().maxCoeff() < 1e-12 * S);
    CHECK((p.adjoint() * ops.sz * p - ops.sz).cwiseAbs().maxCoeff() < 1e-12 * S);
    CHECK((p.adjoint() * p - MatrixXcd::Identity(d, d)).norm() < 1e-12);
    // integer S: P^2 = exp(2 pi i S_z) = identity
    CHECK((p * p - MatrixXcd::Identity(d, d)).norm() < 1e-12);
  }
  const MatrixXcd p1 = parity_operator(1.0);
  CHECK(p1(0, 0) == Complex(-1.0, 0.0));
  CHECK(p1(1, 1) == Complex(1.0, 0.0));
  CHECK(p1(2, 2) == Complex(-1.0, 0.0));
}

TEST_CASE("rotation about y behaves like a rotation") {
  const double S = 2.0;
  const int d = spin_dimension(S);
  const SpinOperators ops = spin_operators(S);

  CHECK((rotation_y(S, 0.0) - MatrixXcd::Identity(d, d)).norm() < 1e-12);

  for (double theta : {0.3, 1.2}) {
    const MatrixXcd r = rotation_y(S, theta);
    CHECK((r.adjoint() * r - MatrixXcd::Identity(d, d)).norm() < 1e-12);
    // <S,S| R^dag Sz R |S,S> = S cos(theta)
    const MatrixXcd rotated = r.adjoint() * ops.sz * r;
    CHECK(rotated(0, 0).real() == doctest::Approx(S * std::cos(theta)).epsilon(1e-10));
  }

  // theta = pi maps |S,S> to |S,-S> up to phase
  const MatrixXcd r_pi = rotation_y(S, M_PI);
  VectorXcd top = VectorXcd::Zero(d);
  top[0] = 1.0;
  const VectorXcd flipped = r_pi * top;
  CHECK(std::abs(std::abs(flipped[d - 1]) - 1.0) < 1e-10);
  CHECK(flipped.head(d - 1).norm() < 1e-10);

  // group composition
  const MatrixXcd lhs = rotation_y(S, 0.7) * rotation_y(S, 0.4);
  CHECK((lhs - rotation_y(S, 1.1)).norm() < 1e-10);
}
