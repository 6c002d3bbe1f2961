#include <catch_amalgamated.hpp>

#include "ybe/tensor.hpp"

using namespace ybe;

TEST_CASE("kron and E") {
  CMatrix A = E(2, 1, 2), B = E(2, 2, 1);
  CMatrix K = kron(A, B);
  CHECK(K(1, 2) == cplx(1.0));
  CHECK(K.norm() == 1.0);
}

TEST_CASE("embed matches explicit kron placements") {
  CMatrix a = E(2, 1, 2) + 2.0 * E(2, 2, 2), b = E(2, 2, 1) + 3.0 * E(2, 1, 1);
  CMatrix op = kron(a, b), I = identity(2);
  CHECK(rel_residual(embed(op, 1, 2, 3, 2), kron(kron(a, b), I)) == 0.0);
  CHECK(rel_residual(embed(op, 2, 3, 3, 2), kron(I, kron(a, b))) == 0.0);
  CHECK(rel_residual(embed(op, 1, 3, 3, 2), on_leg(a, 1, 3) * on_leg(b, 3, 3)) == 0.0);
  CHECK(rel_residual(embed(op, 3, 1, 3, 2), on_leg(a, 3, 3) * on_leg(b, 1, 3)) == 0.0);
  CHECK_THROWS_AS(embed(op, 1, 1, 3, 2), BadLegs);
  CHECK_THROWS_AS(embed(op, 1, 4, 3, 2), BadLegs);
}

TEST_CASE("swap matrix") {
  CMatrix a = E(2, 1, 2), b = E(2, 2, 2);
  CMatrix P = swap_matrix(2);
  CHECK(rel_residual(P * kron(a, b) * P, kron(b, a)) == 0.0);
}

TEST_CASE("shift_leg realizes block substitution") {
  DynamicalOperator d{[](cplx w) { return CMatrix(w * identity(4)); }, {1, -1}};
  CMatrix m = shift_leg(d, 3, 1, 2, 3, 2.0, 0.5);
  // leg 3 in state 0 gets w q, state 1 gets w/q
  CHECK(m(0, 0) == cplx(1.0));
  CHECK(m(1, 1) == cplx(4.0));
  CHECK_THROWS_AS(shift_leg(d, 1, 1, 2, 3, 2.0, 0.5), BadLegs);
}

TEST_CASE("inverse and residual") {
  CMatrix A = diag({2.0, 4.0});
  CHECK(rel_residual(inverse(A) * A, identity(2)) < 1e-15);
  CHECK_THROWS_AS(inverse(zeros(2, 2)), PoleHit);
  CHECK(rel_residual(identity(2), 2.0 * identity(2)) == Catch::Approx(std::sqrt(2.0) / std::sqrt(8.0)));
}

TEST_CASE("star") {
  auto X = [](cplx z, cplx q) { return CMatrix(z * E(2, 1, 2) + q * E(2, 2, 2)); };
  CMatrix s = star(X, 2.0, 0.5);
  CHECK(s(1, 0) == cplx(0.5));
  CHECK(s(1, 1) == cplx(2.0));
}
