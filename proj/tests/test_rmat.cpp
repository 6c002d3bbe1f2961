#include <catch_amalgamated.hpp>

#include "ybe/rmat.hpp"

using namespace ybe;
using Catch::Approx;

// frozen oracles from an independent numpy evaluation of the displayed formulas
TEST_CASE("r8v oracle entries") {
  CMatrix R = r8v(0.4, 0.9, 0.2, 0.45);
  CHECK(R(0, 0).real() == Approx(0.396912962541565).epsilon(1e-12));
  CHECK(R(1, 1).real() == Approx(-0.410908404421431).epsilon(1e-12));
  CHECK(R(1, 2).real() == Approx(1.466376262611007).epsilon(1e-12));
  CHECK(R(3, 0).real() == Approx(0.097681982626181).epsilon(1e-12));
  CHECK(R(0, 3).real() == Approx(0.271338840628282).epsilon(1e-12));
  int nz = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) nz += std::abs(R(i, j)) > 0;
  CHECK(nz == 8);
}

TEST_CASE("r_irf oracle entries") {
  CMatrix R = r_irf(0.5, 0.2, 0.8, 0.4);
  CHECK(R(0, 0).real() == Approx(0.383479735724985).epsilon(1e-12));
  CHECK(R(1, 1).real() == Approx(-0.160000028820603).epsilon(1e-12));
  CHECK(R(1, 2).real() == Approx(1.44959834674763).epsilon(1e-12));
  CHECK(R(2, 1).real() == Approx(-0.318306751533998).epsilon(1e-12));
  CHECK(R(2, 2).real() == Approx(4.296860442187101).epsilon(1e-12));
  CHECK(zero_weight_residual(R) == 0.0);
  cplx corner = std::sqrt(cplx(0.4)) * scalar_rho8v(0.5, 0.2, 0.4).value;
  CHECK(std::abs(R(0, 0) - corner) < 1e-15);
  CHECK(std::abs(R(3, 3) - corner) < 1e-15);
}

TEST_CASE("twist oracle entries") {
  CMatrix F = f_twist_closed(0.5, 0.3, 0.6, 0.4);
  CHECK(F(1, 1).real() == Approx(1.411144485402368).epsilon(1e-12));
  CHECK(F(1, 2).real() == Approx(-1.609146888849831).epsilon(1e-12));
  CHECK(F(2, 1).real() == Approx(-0.477978156764499).epsilon(1e-12));
  CHECK(F(2, 2).real() == Approx(1.479704006291371).epsilon(1e-12));
  CHECK(zero_weight_residual(F) == 0.0);
  CHECK(std::abs(x11(0.0, 0.3, 0.6, 0.4) - 1.0) < 1e-15);
}

TEST_CASE("r6v structure") {
  const cplx q = 0.45;
  CMatrix R = r6v(0.3, 0.7, q);
  cplx pref = std::sqrt(q) * scalar_f6v(0.3 / 0.7, q).value;
  CHECK(std::abs(R(0, 0) - pref) < 1e-15);
  CHECK(std::abs(R(3, 3) - pref) < 1e-15);
  CHECK(rel_residual(k_factor(q), diag({std::sqrt(q), 1.0 / std::sqrt(q), 1.0 / std::sqrt(q), std::sqrt(q)})) == 0);
  CHECK_THROWS_AS(r6v(0.16, 1.0, 0.4), PoleHit);  // q z2 = z1 / q
}

TEST_CASE("QYBE fixed points") {
  CHECK(qybe_residual([](cplx a, cplx b) { return r6v(a, b, 0.45); }, 0.3, 0.7, 1.1) < 1e-10);
  CHECK(qybe_residual([](cplx a, cplx b) { return r8v(a, b, 0.2, 0.45); }, 0.4, 0.9, 1.3) < 1e-9);
}

TEST_CASE("QDYBE and star-triangle") {
  auto R = [](cplx z, cplx w) { return r_irf(z, 0.2, w, 0.4); };
  CHECK(qdybe_residual(R, 0.5, 1.1, cplx(1.3, 0.4), 0.8, 0.4) < 1e-9);
  CHECK(star_triangle_residual(0.5, 1.1, cplx(1.3, 0.4), 0.2, 0.9, 0.4) < 1e-9);
}

TEST_CASE("Boltzmann weights") {
  CHECK_THROWS_AS(boltzmann_weight(0, 1, 1, 3, 0.5, 0.2, 0.9, 0.4), InadmissibleHeights);
  CHECK_THROWS_AS(boltzmann_weight(0, 2, 1, 1, 0.5, 0.2, 0.9, 0.4), InadmissibleHeights);
  cplx corner = std::sqrt(cplx(0.4)) * scalar_rho8v(0.5, 0.2, 0.4).value;
  for (int s = -2; s <= 2; ++s) {
    CHECK(std::abs(boltzmann_weight(s, s + 1, s + 1, s + 2, 0.5, 0.2, 0.9, 0.4) - corner) < 1e-14);
    CHECK(std::abs(boltzmann_weight(s, s - 1, s - 1, s - 2, 0.5, 0.2, 0.9, 0.4) - corner) < 1e-14);
  }
}

TEST_CASE("twist product converges, with the dilation z2 -> z2 p^{-2k}") {
  const double p = 0.3, w = 0.6, q = 0.4, z = 0.5;
  CMatrix ref = f_twist_closed(z, p, w, q);
  double prev = 1e9;
  for (int N = 1; N <= 6; ++N) {
    double r = rel_residual(f_twist_product(z, 1.0, p, w, q, N), ref);
    CHECK(r < prev);
    prev = r;
  }
  CHECK(rel_residual(f_twist_product(z, 1.0, p, w, q, 2), ref) < 0.1);
  CHECK(rel_residual(f_twist_product(z, 1.0, p, w, q, 60), ref) < 1e-12);
  // p -> 0: unit diagonal and vanishing (2,1) entry; (1,2) keeps a geometric sum in w^2
  CMatrix small = f_twist_product(z, 1.0, 1e-3, w, q, 40);
  CHECK(rel_residual(small, f_twist_closed(z, 1e-3, w, q)) < 1e-12);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(small(i, i) - 1.0) < 1e-5);
  CHECK(std::abs(small(2, 1)) < 1e-5);
  CHECK(std::abs(small(1, 2)) > 0.1);
}

TEST_CASE("R^IRF from twist conjugation") {
  CHECK(rel_residual(r_irf_from_twist(0.5, 1.0, 0.2, 0.8, 0.4, 120), r_irf(0.5, 0.2, 0.8, 0.4)) < 1e-8);
  CHECK(rel_residual(r_irf_from_twist_closed(0.5, 1.0, 0.2, 0.8, 0.4), r_irf(0.5, 0.2, 0.8, 0.4)) < 1e-12);
}

TEST_CASE("p -> 0 limit of r8v is r6v") {
  double prev = 1.0;
  for (double p : {1e-2, 1e-3, 1e-4}) {
    double d = rel_residual(r8v(0.4, 0.9, p, 0.45), r6v(0.4, 0.9, 0.45));
    CHECK(d < prev / 5);
    prev = d;
  }
}

TEST_CASE("universal product: K factor and convergence inside |z1/z2| < q^2") {
  CMatrix N0 = r6v_universal_truncated(0.05, 1.0, 0.8, 0);
  CHECK(rel_residual(N0, r6v(0.05, 1.0, 0.8)) < 0.2);
  double prev = 1e9;
  for (int N = 1; N <= 12; ++N) {
    double r = rel_residual(r6v_universal_truncated(0.2, 1.0, 0.8, N), r6v(0.2, 1.0, 0.8));
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev < 1e-7);
}
