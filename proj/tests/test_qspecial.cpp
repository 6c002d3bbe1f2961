#include <catch_amalgamated.hpp>

#include "ybe/qspecial.hpp"

using namespace ybe;
using Catch::Approx;

// frozen oracles (30-digit mpmath evaluations)
TEST_CASE("qpoch oracles") {
  CHECK(qpoch_finite(0.3, 0.5, 5).real() == Approx(0.519803388671875).epsilon(1e-14));
  CHECK(qpoch_finite(0.3, 0.5, 0) == cplx(1.0));
  QValue v = qpoch_inf({0.3}, {0.5});
  CHECK(v.converged);
  CHECK(v.value.real() == Approx(0.510117826633987586).epsilon(1e-14));
  CHECK(theta(0.7, 0.3).real() == Approx(0.0623427981811443203).epsilon(1e-13));
}

TEST_CASE("hypergeometric oracles") {
  CHECK(phi21(0.2, 0.3, 0.7, 0.4, 0.5).real() == Approx(4.78019189738698990).epsilon(1e-13));
  cplx c = phi21(0.2, 0.3, 0.7, 0.4, cplx(0.5, 0.2));
  CHECK(c.real() == Approx(3.48022781858139057).epsilon(1e-13));
  CHECK(c.imag() == Approx(2.82548170808702689).epsilon(1e-13));
  CHECK(phi01(0.6, 0.5, 0.8).real() == Approx(6.62773207978580542).epsilon(1e-13));
  CHECK(scalar_f6v(0.3 / 0.7, 0.45).value.real() == Approx(0.665260922390479399).epsilon(1e-13));
}

TEST_CASE("multi-base product and theta zeros") {
  cplx a = qp({0.2}, {0.3, 0.5}), b = 1.0;
  for (int i = 0; i < 80; ++i)
    for (int j = 0; i + j < 80; ++j) b *= 1.0 - 0.2 * std::pow(0.3, i) * std::pow(0.5, j);
  CHECK(std::abs(a - b) < 1e-13);
  CHECK(std::abs(theta(1.0, 0.3)) < 1e-15);
  CHECK(std::abs(theta(0.3, 0.3)) < 1e-15);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(qpoch_inf({0.3}, {1.2}), DivergentBase);
  CHECK_THROWS_AS(phi21(0.2, 0.3, 0.7, 0.4, 1.5), DivergentBase);
  CHECK_THROWS_AS(basic_hypergeometric({0.1, 0.2, 0.3}, {0.4}, 0.5, 0.1), DivergentBase);
  CHECK_THROWS_AS(phi21(0.2, 0.3, 1.0 / 0.16, 0.4, 0.5), PoleHit);  // c = q^-2
  CHECK_THROWS_AS(exp_q(1.0 / (1.0 - 0.25), 0.5), PoleHit);
  TruncationPolicy bad;
  bad.max_terms = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  TruncationPolicy tiny;
  tiny.max_terms = tiny.hard_cap = 3;
  CHECK_THROWS_AS(qpoch_inf({0.3}, {0.9}, tiny), CapExceeded);
}

TEST_CASE("identities") {
  CHECK(phi21_recurrence_residual(0.2, 0.3, 0.7, 0.4, 0.5) < 1e-12);
  CHECK(connection_formula_residual(0.2, 0.3, 0.7, 0.4, 0.5) < 1e-12);
  CHECK(connection_formula_residual(0.2, 0.3, 0.7, 0.4, cplx(0.3, 0.4)) < 1e-12);
  CHECK(phi01_phi21_identity_residual(0.6, 0.5, 0.7) < 1e-12);
  CHECK(std::abs(scalar_f6v(0.4, 0.45).value - scalar_f6v_expsum(0.4, 0.45)) < 1e-13);
  CHECK(std::abs(exp_q(0.5, 0.4).value - exp_q_series(0.5, 0.4).value) < 1e-13);
  for (int r = 1; r <= 3; ++r)
    CHECK(std::abs(scalar_fq_hexagon(0.6, 0.4, r).value - scalar_fq_hexagon_expsum(0.6, 0.4, r)) < 1e-12);
}

TEST_CASE("continued 2phi1 agrees with the series inside the disc") {
  CHECK(std::abs(phi21_continued(0.2, 0.3, 0.7, 0.4, 0.45) - phi21(0.2, 0.3, 0.7, 0.4, 0.45)) < 1e-13);
  CHECK(std::abs(phi21_continued(0.2, 0.3, 0.7, 0.4, 0.8) - phi21(0.2, 0.3, 0.7, 0.4, 0.8)) < 1e-12);
}

TEST_CASE("qint") {
  CHECK(qint((long long)3, cplx(0.5)).real() == Approx(0.25 + 1 + 4));
  CHECK(mod_floor_int(-1, 3) == 2);
}
