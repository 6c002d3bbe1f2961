#include <catch_amalgamated.hpp>

#include "ybe/gauge.hpp"

using namespace ybe;
using Catch::Approx;

TEST_CASE("S and M+ oracle entries") {
  CMatrix S = s_gauge(0.6, 0.25, 0.8, 0.4);
  CHECK(S(0, 0).real() == Approx(4.777920569773141).epsilon(1e-12));
  CHECK(S(0, 1).real() == Approx(2.450832153229541).epsilon(1e-12));
  CHECK(S(1, 0).real() == Approx(3.303512351481642).epsilon(1e-12));
  CHECK(S(1, 1).real() == Approx(1.800063733109813).epsilon(1e-12));
  CMatrix M = m_plus_hypergeometric(0.4, 0.3, 0.8, 0.4);
  CHECK(M(0, 0).real() == Approx(2.172867526026431).epsilon(1e-12));
  CHECK(M(0, 1).real() == Approx(-3.055054033979555).epsilon(1e-12));
  CHECK(M(1, 0).real() == Approx(-0.810330958931698).epsilon(1e-12));
  CHECK(M(1, 1).real() == Approx(1.843690314303532).epsilon(1e-12));
}

TEST_CASE("C matrices") {
  const cplx z = 0.6, p = 0.3, w = 0.8, q = 0.4;
  CMatrix Cp = c_pm_ev(+1, z, p, w, q);
  cplx pref = Cp(0, 0);
  CMatrix inner = Cp / pref;
  CHECK(std::abs(inner.determinant() - (1.0 - z)) < 1e-14);
  CHECK(std::abs(inner(0, 1) + w / std::sqrt(p)) < 1e-14);
  CMatrix at = c_pm_ev(+1, z, p, std::sqrt(p), q) / pref;
  CHECK(rel_residual(at, mat2(1.0, -1.0, -z, 1.0)) < 1e-14);
  CMatrix C2 = c_k_ev(+1, 2, z, p, w, q);
  CMatrix C2inner = mat2(1.0, -std::pow(p, 1.5) / w, -std::sqrt(p) * w * z, 1.0);
  cplx pref2 = qp(q * q * p * p * z, ipow(q, 4)) / qp(p * p * z, ipow(q, 4));
  CHECK(rel_residual(C2, pref2 * C2inner) < 1e-14);
  CMatrix Cm1 = c_k_ev(-1, 1, z, p, w, q);
  CHECK(std::abs(Cm1(0, 1) / Cm1(0, 0) + std::pow(p, 1.5) / (w * z)) < 1e-14);
  CHECK(std::abs(Cm1(1, 0) / Cm1(0, 0) + std::sqrt(p) * w) < 1e-14);
  CHECK(rel_residual(c_k_ev(+1, 1, z, p, w, q), Cp) == 0.0);
}

TEST_CASE("M+ routes and equations") {
  CHECK(std::abs(a_plus(0.0, 0.3, 0.8) - 1.0) < 1e-15);
  CHECK(eq_a_plus_residual(0.4, 0.3, 0.8) < 1e-10);
  CHECK(rel_residual(m_plus_product(0.4, 0.3, 0.8, 0.4, 10), m_plus_hypergeometric(0.4, 0.3, 0.8, 0.4)) < 1e-7);
  CHECK(eq_m_plus_residual(0.4, 0.3, 0.8, 0.4) < 1e-9);
}

TEST_CASE("M- routes and equations") {
  CHECK(std::abs(alpha_minus(0.0, 0.25, 0.9) - 1.0) < 1e-15);
  const cplx z = 1.0 / 0.3;
  CHECK(rel_residual(m_minus_inv(z, 0.25, 0.9, 0.4, Route::TwoPhiOne), m_minus_inv(z, 0.25, 0.9, 0.4, Route::OnePhiOne)) < 1e-9);
  CHECK(rel_residual(m_minus_inv(0.6, 0.25, 0.8, 0.4, Route::Product, 60), m_minus_inv_onephione(0.6, 0.25, 0.8, 0.4)) < 1e-9);
  CHECK(beta_relation_residual(0.3, 0.25, 0.9) < 1e-10);
  CHECK(eq_a_bis_residual(0.3, 0.25, 0.9) < 1e-10);
  CHECK(eq_a_minus_residual(0.3, 0.25, 0.9) < 1e-10);
  CHECK(eq_m_minus_residual(0.6, 0.25, 0.8, 0.4) < 1e-9);
}

TEST_CASE("S assembly") {
  CHECK(rel_residual(s_gauge(0.6, 0.25, 0.8, 0.4), s_gauge_via_route(0.6, 0.25, 0.8, 0.4)) < 1e-7);
  CHECK(s_times_m_residual(0.6, 0.25, 0.8, 0.4) < 1e-7);
  const cplx z = 0.6, p = 0.25, w = 0.8, q = 0.4;
  cplx e11 = theta(-p * p * z / (w * w), ipow(p, 4)) * lambda_gauge(z, p, w, q)(0, 0);
  CHECK(std::abs(s_gauge(z, p, w, q)(0, 0) - e11) < 1e-14);
}

TEST_CASE("vertex-IRF") {
  CHECK(vertex_irf_residual(0.5, 1.1, 0.2, 0.9, 0.4) < 1e-7);
  double a = vertex_irf_residual(0.5, 1.1, 0.2, 0.9, 0.4), b = vertex_irf_residual(0.5 * 1.3, 1.1 * 1.3, 0.2, 0.9, 0.4);
  CHECK(a < 1e-12);
  CHECK(b < 1e-12);
  auto r = phi_vector_residual(0.5, 1.1, 0.2, 0.9, 0.4);
  CHECK(r.primal < 1e-7);
  CHECK(r.dual < 1e-7);
}

TEST_CASE("hexagonal") {
  for (int r = 1; r <= 3; ++r) {
    auto c = hexagonal_characters(r, 0.4);
    CHECK(std::abs(c.a_plus * c.a_minus + 0.4 / std::pow(0.4 - 1 / 0.4, 2)) < 1e-13);
    HexagonalDetail h = hexagonal_components(r, 0.7, 0.4);
    CHECK(h.plus < 1e-9);
    CHECK(h.minus < 1e-9);
    CHECK(h.ad < 1e-9);
    CHECK(h.star < 1e-9);
    CHECK(h.ratio < 1e-9);
    ResidualReport rep = hexagonal_check(r, cplx(0.7, 0.2), 0.4);
    CHECK(rep.pass);
  }
}
