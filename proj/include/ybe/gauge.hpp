#pragma once
// Vertex-IRF gauge layer for r = 1: evaluated C^[+-], C^[+-k], M^(0), M^(+-),
// their difference equations, S(z;p,w), the vertex-IRF identity, and the
// general-r hexagonal check.

#include <chrono>

#include "ybe/report.hpp"
#include "ybe/rmat.hpp"

namespace ybe {

inline CMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline cplx pochq4_ratio(cplx num, cplx den, cplx q, const TruncationPolicy& pol) {
  cplx q4 = ipow(q, 4);
  cplx d = qp(den, q4, pol);
  guard_pole(d, "C prefactor denominator");
  return qp(num, q4, pol) / d;
}

// sign > 0: C^[+](z) ; sign < 0: C^[-](z)
inline CMatrix c_pm_ev(int sign, cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  if (z == cplx(0.0)) throw ZeroArgument("C^[+-] needs z != 0");
  const cplx sp = std::sqrt(p), q2 = q * q, q4 = q2 * q2;
  if (sign > 0) return pochq4_ratio(q2 * z, z, q, pol) * mat2(1.0, -w / sp, -sp * z / w, 1.0);
  return pochq4_ratio(q4 / z, q2 / z, q, pol) * mat2(1.0, -w / (sp * z), -sp / w, 1.0);
}

// C^[+k] (k >= 1, C^[+1] = C^[+]) and C^[-k] (k >= 0, C^[-0] = C^[-]):
// C^[+(k+1)](z) = Ad_{diag(1,p) omega_z} C^[+k](p^2 z),
// C^[-(k+1)](z) = Ad_{diag(1/w,w)} C^[-k](z/p^2)
inline CMatrix c_k_ev(int sign, int k, cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  if (sign > 0) {
    if (k < 1) throw BadIndex("C^[+k] needs k >= 1");
    if (k == 1) return c_pm_ev(+1, z, p, w, q, pol);
    CMatrix X = diag({1.0, p}) * omega_z(1, z);
    return X * c_k_ev(+1, k - 1, p * p * z, p, w, q, pol) * inverse(X);
  }
  if (k < 0) throw BadIndex("C^[-k] needs k >= 0");
  if (k == 0) return c_pm_ev(-1, z, p, w, q, pol);
  CMatrix A = diag({1.0 / w, w}), Ai = diag({w, 1.0 / w});
  return A * c_k_ev(-1, k - 1, z / (p * p), p, w, q, pol) * Ai;
}

// ---- M^(+) ---------------------------------------------------------------

inline cplx a_plus(cplx z, cplx p, cplx w, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, w2 = w * w;
  return phi21(-w2 / p2, -p2 / w2, p2, p2 * p2, p2 * z, pol);
}
inline cplx c_plus(cplx z, cplx p, cplx w, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, w2 = w * w;
  return z / p * (w + 1.0 / w) / (p - 1.0 / p) * phi21(-p2 * w2, -p2 / w2, p2 * p2 * p2, p2 * p2, p2 * z, pol);
}

inline CMatrix m_plus_hypergeometric(cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, q2 = q * q, q4 = q2 * q2, sp = std::sqrt(p), pw = p / w;
  cplx den = qp({z}, {p2, q4}, pol);
  guard_pole(den, "M+ prefactor");
  cplx pref = qp({q2 * z}, {p2, q4}, pol) / den * qp(p2 * z, p2 * p2, pol);
  cplx a = a_plus(z, p, w, pol), c = c_plus(z, p, w, pol), d = a_plus(z, p, pw, pol);
  // b = (p/z) c(z; p/w), with the z cancelled
  cplx b = (pw + 1.0 / pw) / (p - 1.0 / p) * phi21(-p2 * pw * pw, -p2 / (pw * pw), p2 * p2 * p2, p2 * p2, p2 * z, pol);
  return pref * mat2(a, b / sp, sp * c, d);
}

// prod_{k<N} D^k C^[+](p^{4k} z) C^[+2](p^{4k} z) D^{-k}, D = diag(p, 1/p)
inline CMatrix m_plus_product(cplx z, cplx p, cplx w, cplx q, int N, const TruncationPolicy& pol = {}) {
  CMatrix M = identity(2);
  for (int k = 0; k < N; ++k) {
    cplx pk = ipow(p, k);
    cplx zz = z * ipow(p, 4LL * k);
    M = M * diag({pk, 1.0 / pk}) * c_pm_ev(+1, zz, p, w, q, pol) * c_k_ev(+1, 2, zz, p, w, q, pol) *
        diag({1.0 / pk, pk});
  }
  return M;
}

enum class Route { Product, Hypergeometric, OnePhiOne, TwoPhiOne };

inline CMatrix m_plus(cplx z, cplx p, cplx w, cplx q, Route via, int N = 0, const TruncationPolicy& pol = {}) {
  if (via == Route::Product) return m_plus_product(z, p, w, q, N, pol);
  return m_plus_hypergeometric(z, p, w, q, pol);
}

// (1 - p^2 z) a(z) = [1 + p^-2 + (w^2/p^2 + p^2/w^2) p^2 z] a(p^4 z) - p^-2 (1 - p^4 z) a(p^8 z)
inline double eq_a_plus_residual(cplx z, cplx p, cplx w, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, p4 = p2 * p2, w2 = w * w;
  cplx t0 = (1.0 - p2 * z) * a_plus(z, p, w, pol);
  cplx t1 = (1.0 + 1.0 / p2 + (w2 / p2 + p2 / w2) * p2 * z) * a_plus(p4 * z, p, w, pol);
  cplx t2 = (1.0 - p4 * z) * a_plus(p4 * p4 * z, p, w, pol) / p2;
  return std::abs(t0 - t1 + t2) / std::max({std::abs(t0), std::abs(t1), std::abs(t2), 1.0});
}

// M+(z) = C^[+](z) C^[+2](z) D M+(p^4 z) D^{-1}
inline double eq_m_plus_residual(cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  CMatrix D = diag({p, 1.0 / p}), Di = diag({1.0 / p, p});
  CMatrix lhs = m_plus_hypergeometric(z, p, w, q, pol);
  CMatrix rhs = c_pm_ev(+1, z, p, w, q, pol) * c_k_ev(+1, 2, z, p, w, q, pol) * D *
                m_plus_hypergeometric(ipow(p, 4) * z, p, w, q, pol) * Di;
  return rel_residual(lhs, rhs);
}

// ---- M^(-) ---------------------------------------------------------------

// alpha(zi) = 0phi1(-; p^2/w^2; p^2; p^4 zi/w^2), zi = 1/z
inline cplx alpha_minus(cplx zi, cplx p, cplx w, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, w2 = w * w;
  return phi01(p2 / w2, p2, p2 * p2 * zi / w2, pol);
}
inline cplx beta_minus(cplx zi, cplx p, cplx w, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, w2 = w * w;
  cplx den = p / w - w / p;
  guard_pole(den, "beta: w^2 = p^2");
  return p * zi / den * phi01(p2 * p2 / w2, p2, p2 * p2 * p2 * zi / w2, pol);
}
// a^(-) = 2phi1(-w^-2, -p^2 w^-2; p^4 w^-4; p^4; p^4 zi)
inline cplx a_minus(cplx zi, cplx p, cplx w, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, p4 = p2 * p2, w2 = w * w;
  return phi21(-1.0 / w2, -p2 / w2, p4 / (w2 * w2), p4, p4 * zi, pol);
}
inline cplx c_minus(cplx zi, cplx p, cplx w, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, p4 = p2 * p2, w2 = w * w;
  cplx den = w - 1.0 / w;
  guard_pole(den, "c^(-): w^2 = 1");
  return phi21(-w2, -p2 * w2, p4 * w2 * w2, p4, p4 * zi, pol) / den;
}

inline cplx m_minus_prefactor(cplx zi, cplx p, cplx q, const TruncationPolicy& pol) {
  const cplx p2 = p * p, q2 = q * q, q4 = q2 * q2;
  cplx den = qp({q2 * p2 * zi}, {p2, q4}, pol);
  guard_pole(den, "M- prefactor");
  return qp({q4 * p2 * zi}, {p2, q4}, pol) / den;
}

// M^(-)^{-1} from the 0phi1 entries
inline CMatrix m_minus_inv_onephione(cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  if (z == cplx(0.0)) throw ZeroArgument("M^(-) needs z != 0");
  const cplx zi = 1.0 / z, sp = std::sqrt(p), pw = p / w;
  cplx a = alpha_minus(zi, p, w, pol), b = beta_minus(zi, p, w, pol);
  cplx g = z / p * beta_minus(zi, p, pw, pol), d = alpha_minus(zi, p, pw, pol);
  return m_minus_prefactor(zi, p, q, pol) * mat2(a, b / sp, sp * g, d);
}

// M^(-) from the 2phi1 entries
inline CMatrix m_minus_twophione(cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  if (z == cplx(0.0)) throw ZeroArgument("M^(-) needs z != 0");
  const cplx zi = 1.0 / z, sp = std::sqrt(p), pw = p / w, p2 = p * p;
  cplx den = qp(p2 * zi, p2 * p2, pol);
  guard_pole(den, "M- (p^2/z; p^4)");
  cplx pref = 1.0 / m_minus_prefactor(zi, p, q, pol) / den;
  cplx a = a_minus(zi, p, w, pol), c = c_minus(zi, p, w, pol);
  cplx b = p * zi * c_minus(zi, p, pw, pol), d = a_minus(zi, p, pw, pol);
  return pref * mat2(d, -b / sp, -sp * c, a);
}

// new factors enter on the left: N <- A^k C^[-1](z p^{-2k}) A^{-k} N, A = diag(1/w, w)
inline CMatrix m_minus_inv_product(cplx z, cplx p, cplx w, cplx q, int N, const TruncationPolicy& pol = {}) {
  CMatrix M = identity(2);
  for (int k = 0; k < N; ++k) {
    cplx wk = ipow(w, k);
    M = diag({1.0 / wk, wk}) * c_k_ev(-1, 1, z * ipow(p, -2LL * k), p, w, q, pol) * diag({wk, 1.0 / wk}) * M;
  }
  return M;
}

inline CMatrix m_minus_inv(cplx z, cplx p, cplx w, cplx q, Route via, int N = 0, const TruncationPolicy& pol = {}) {
  switch (via) {
    case Route::Product: return m_minus_inv_product(z, p, w, q, N, pol);
    case Route::TwoPhiOne: return inverse(m_minus_twophione(z, p, w, q, pol));
    default: return m_minus_inv_onephione(z, p, w, q, pol);
  }
}

// alpha(zi) = (1 + w^-2) alpha(p^2 zi) + w^-2 (p^4 zi - 1) alpha(p^4 zi)
inline double eq_a_bis_residual(cplx zi, cplx p, cplx w, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, w2 = w * w;
  cplx t0 = alpha_minus(zi, p, w, pol), t1 = (1.0 + 1.0 / w2) * alpha_minus(p2 * zi, p, w, pol),
       t2 = (p2 * p2 * zi - 1.0) / w2 * alpha_minus(p2 * p2 * zi, p, w, pol);
  return std::abs(t0 - t1 - t2) / std::max({std::abs(t0), std::abs(t1), std::abs(t2), 1.0});
}

// beta(zi) = w [alpha(zi) - alpha(zi/p^2)]
inline double beta_relation_residual(cplx zi, cplx p, cplx w, const TruncationPolicy& pol = {}) {
  cplx lhs = beta_minus(zi, p, w, pol);
  cplx rhs = w * (alpha_minus(zi, p, w, pol) - alpha_minus(zi / (p * p), p, w, pol));
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

// (1 - p^4 zi) a(zi) = [1 + w^-4 + (1 + p^-2) p^6 w^-2 zi] a(p^4 zi) - w^-4 (1 - p^6 zi) a(p^8 zi)
inline double eq_a_minus_residual(cplx zi, cplx p, cplx w, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, p4 = p2 * p2, w2 = w * w, w4 = w2 * w2;
  cplx t0 = (1.0 - p4 * zi) * a_minus(zi, p, w, pol);
  cplx t1 = (1.0 + 1.0 / w4 + (1.0 + 1.0 / p2) * p4 * p2 / w2 * zi) * a_minus(p4 * zi, p, w, pol);
  cplx t2 = (1.0 - p4 * p2 * zi) / w4 * a_minus(p4 * p4 * zi, p, w, pol);
  return std::abs(t0 - t1 + t2) / std::max({std::abs(t0), std::abs(t1), std::abs(t2), 1.0});
}

// N(z) = A N(z/p^2) A^{-1} C^[-1](z), N = M^(-)^{-1}
inline double eq_m_minus_residual(cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  CMatrix A = diag({1.0 / w, w}), Ai = diag({w, 1.0 / w});
  CMatrix lhs = m_minus_inv_onephione(z, p, w, q, pol);
  CMatrix rhs = A * m_minus_inv_onephione(z / (p * p), p, w, q, pol) * Ai * c_k_ev(-1, 1, z, p, w, q, pol);
  return rel_residual(lhs, rhs);
}

// ---- M^(0), S ------------------------------------------------------------

inline CMatrix m0(cplx p, cplx w) {
  return diag({std::sqrt(std::pow(p, 0.25) / std::sqrt(w)), std::sqrt(std::pow(p, -0.25) * std::sqrt(w))});
}

inline cplx lambda_scalar(cplx z, cplx p, cplx q, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, q2 = q * q, q4 = q2 * q2;
  cplx th = theta(z, p2, pol);
  cplx den = qp({q2 * z, q4 * p2 / z}, {q4, p2}, pol);
  guard_pole(th * den, "Lambda denominator");
  return qp({z, q2 * p2 / z}, {q4, p2}, pol) / den / th;
}

inline CMatrix lambda_gauge(cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, w2 = w * w;
  cplx d1 = qp(w2, p2, pol), d2 = qp(p2 / w2, p2, pol);
  guard_pole(d1 * d2, "Lambda: (w^2;p^2) or (p^2/w^2;p^2) vanishes");
  cplx s = lambda_scalar(z, p, q, pol);
  return diag({s * std::pow(p, -0.125) * std::pow(w, 0.25) / d1, s * std::pow(p, 0.125) * std::pow(w, -0.25) / d2});
}

inline CMatrix s_gauge(cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, w2 = w * w, sp = std::sqrt(p);
  auto T = [&](cplx x) { return theta(x, p2 * p2, pol); };
  CMatrix M = mat2(T(-p2 * z / w2), w / sp * T(-p2 * w2 * z), sp * w * T(-z / w2), T(-w2 * z));
  return M * lambda_gauge(z, p, w, q, pol);
}

// S = M+^{-1} M^(-) M0^{-1}
inline CMatrix s_gauge_via_route(cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  return inverse(m_plus_hypergeometric(z, p, w, q, pol)) * inverse(m_minus_inv_onephione(z, p, w, q, pol)) *
         inverse(m0(p, w));
}

// || S M - I || with M = M0 M^(-)^{-1} M+
inline double s_times_m_residual(cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  CMatrix M = m0(p, w) * m_minus_inv_onephione(z, p, w, q, pol) * m_plus_hypergeometric(z, p, w, q, pol);
  return rel_residual(s_gauge(z, p, w, q, pol) * M, identity(2));
}

// S1(z1;w) S2(z2;w q^{h1}) R^IRF(z1/z2;w) vs R^8V(z1,z2) S2(z2;w) S1(z1;w q^{h2})
inline double vertex_irf_residual(cplx z1, cplx z2, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  CMatrix I2 = identity(2);
  CMatrix S2sh = CMatrix::Zero(4, 4), S1sh = CMatrix::Zero(4, 4);
  for (int e = 0; e < 2; ++e) {
    cplx we = w * (e == 0 ? q : 1.0 / q);
    CMatrix Pe = CMatrix::Zero(2, 2);
    Pe(e, e) = 1.0;
    S2sh += kron(Pe, s_gauge(z2, p, we, q, pol));
    S1sh += kron(s_gauge(z1, p, we, q, pol), Pe);
  }
  CMatrix L = kron(s_gauge(z1, p, w, q, pol), I2) * S2sh * r_irf(z1 / z2, p, w, q, pol);
  CMatrix R = r8v(z1, z2, p, q, pol) * kron(I2, s_gauge(z2, p, w, q, pol)) * S1sh;
  return rel_residual(L, R);
}

// Phi^(eps)(z; w): columns of S ; dual Phi~^(eps): rows of S^{-1} ; eps = +1 -> index 0
inline CMatrix phi_vector(int eps, cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  return s_gauge(z, p, w, q, pol).col(eps == 1 ? 0 : 1);
}
inline CMatrix phi_dual_vector(int eps, cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  return inverse(s_gauge(z, p, w, q, pol)).row(eps == 1 ? 0 : 1);
}

struct PhiVectorResidual {
  double primal = 0.0, dual = 0.0;
};

// Column/row forms of the vertex-IRF identity over heights l in [lmin, lmax],
// with w_l = w q^l and weights W(l, l', m, m' | z1/z2) at base w.
inline PhiVectorResidual phi_vector_residual(cplx z1, cplx z2, cplx p, cplx w, cplx q, int lmin = -2, int lmax = 2,
                                             const TruncationPolicy& pol = {}) {
  PhiVectorResidual out;
  CMatrix R8 = r8v(z1, z2, p, q, pol);
  const cplx z = z1 / z2;
  for (int l = lmin; l <= lmax; ++l) {
    cplx wl = w * ipow(q, l);
    for (int lp : {l - 1, l + 1})
      for (int mp : {lp - 1, lp + 1}) {
        CMatrix L = R8 * kron(phi_vector(lp - l, z1, p, wl * ipow(q, mp - lp), q, pol), phi_vector(mp - lp, z2, p, wl, q, pol));
        CMatrix Rr = CMatrix::Zero(4, 1);
        CMatrix Ld = kron(phi_dual_vector(mp - lp, z1, p, wl, q, pol),
                          phi_dual_vector(lp - l, z2, p, wl * ipow(q, mp - lp), q, pol)) * R8;
        CMatrix Rd = CMatrix::Zero(1, 4);
        for (int m : {l - 1, l + 1}) {
          if (std::abs(m - mp) != 1) continue;
          Rr += boltzmann_weight(l, lp, m, mp, z, p, w, q, pol) *
                kron(phi_vector(mp - m, z1, p, wl, q, pol), phi_vector(m - l, z2, p, wl * ipow(q, mp - m), q, pol));
          Rd += boltzmann_weight(l, m, lp, mp, z, p, w, q, pol) *
                kron(phi_dual_vector(m - l, z1, p, wl * ipow(q, mp - m), q, pol), phi_dual_vector(mp - m, z2, p, wl, q, pol));
        }
        out.primal = std::max(out.primal, (L - Rr).norm() / std::max(L.norm(), 1.0));
        out.dual = std::max(out.dual, (Ld - Rd).norm() / std::max(Ld.norm(), 1.0));
      }
  }
  return out;
}

// ---- hexagonal relation, general r ---------------------------------------

struct CharacterChoice {
  int r = 1;
  cplx a_plus, a_minus;  // same value for every simple root
};

// (q - 1/q) a^- q^{-1/(r+1)} = 1 and a^+ = (q^{-1} a^-)^*
inline CharacterChoice hexagonal_characters(int r, cplx q) {
  CharacterChoice c;
  c.r = r;
  c.a_minus = std::pow(q, 1.0 / (r + 1)) / (q - 1.0 / q);
  c.a_plus = -std::pow(q, double(r) / (r + 1)) / (q - 1.0 / q);
  return c;
}

namespace detail {
// exp of sum_k s^k q^{k(e0+r+1-j)} (1 - q^{2kj}) / ((1 - q^{2k(r+1)}) k) u^k
inline cplx y_ratio(double s, int e0, int j, int r, cplx q, cplx u, const TruncationPolicy& pol) {
  if (std::abs(q) < 1.0) {
    cplx Q = ipow(q, 2LL * (r + 1));
    cplx den = qp(s * ipow(q, e0 + r + 1 - j) * u, Q, pol);
    guard_pole(den, "Y factor");
    return qp(s * ipow(q, e0 + r + 1 + j) * u, Q, pol) / den;
  }
  // |q| > 1: same sum with Q = 1/q, resummed into a ratio of Pochhammers in Q^{2(r+1)}
  cplx Qi = 1.0 / q, Q = ipow(Qi, 2LL * (r + 1));
  cplx x = s * ipow(q, e0 + j - r - 1) * u;
  cplx den = qp(x, Q, pol);
  guard_pole(den, "Y factor");
  return qp(x * ipow(Qi, 2LL * j), Q, pol) / den;
}

inline CMatrix qpow_zeta_diff(int r, int a, int b, cplx q) {
  return qpow_diag(ev_cartan_zeta(r, a) - ev_cartan_zeta(r, b), q);
}
}  // namespace detail

// ev_z(C^-) = X^- Y^- Z^- from the product formula
inline CMatrix ev_c_minus(int r, cplx z, cplx q, const TruncationPolicy& pol = {}) {
  const int n = r + 1;
  const cplx dq = q - 1.0 / q, am = hexagonal_characters(r, q).a_minus;
  const double sig = (r % 2 == 0) ? -1.0 : 1.0;
  CMatrix I = identity(n);
  CMatrix Z = I;
  for (int i = r; i >= 1; --i)
    Z = Z * (I - dq * am * E(n, i + 1, i) * detail::qpow_zeta_diff(r, i + 1, i, q));
  CMatrix X = I;
  for (int i = 1; i <= r; ++i)
    X = X * (I - dq / z * ipow(-q, i - 1) * ipow(1.0 - ipow(q, -2), i - 1) * ipow(am, i) * E(n, i, n) *
                     qpow_diag(ev_cartan_zeta(r, i), q));
  std::vector<cplx> Y(n, 1.0);
  for (int j = 1; j <= r; ++j) {
    Y[j - 1] /= detail::y_ratio(sig, j - 1 - r, j, r, q, 1.0 / z, pol);
    Y[j] *= detail::y_ratio(sig, j + 1 - r, j, r, q, 1.0 / z, pol);
  }
  return X * diag(Y) * Z;
}

// ev_z(C^+) = Z^+ Y^+ X^+
inline CMatrix ev_c_plus(int r, cplx z, cplx q, const TruncationPolicy& pol = {}) {
  const int n = r + 1;
  const cplx dq = q - 1.0 / q, ap = hexagonal_characters(r, q).a_plus;
  const double sig = (r % 2 == 0) ? -1.0 : 1.0;
  CMatrix I = identity(n);
  CMatrix Z = I;
  for (int i = 1; i <= r; ++i) Z = Z * (I + dq * ap * detail::qpow_zeta_diff(r, i - 1, i, q) * E(n, i, i + 1));
  CMatrix X = I;
  for (int i = r; i >= 1; --i)
    X = X * (I + dq * z * ipow(-1.0 / q, i - 1) * ipow(q, 1 - i) * ipow(1.0 - q * q, i - 1) * ipow(ap, i) *
                     detail::qpow_zeta_diff(r, r, i - 1, q) * E(n, n, i));
  std::vector<cplx> Y(n, 1.0);
  for (int j = 1; j <= r; ++j) {
    cplx u = z * ipow(q, r + 1 - j);
    Y[j - 1] /= detail::y_ratio(sig, 0, j, r, q, u, pol);
    Y[j] *= detail::y_ratio(sig, -2, j, r, q, u, pol);
  }
  return Z * diag(Y) * X;
}

struct HexagonalDetail {
  double plus = 0, minus = 0, ad = 0, star = 0, ratio = 0;
};

inline HexagonalDetail hexagonal_components(int r, cplx z, cplx q, const TruncationPolicy& pol = {}) {
  HexagonalDetail h;
  const int n = r + 1;
  CMatrix W = omega_z(r, z), Wi = omega_z_inv(r, z);
  CMatrix Cp = ev_c_plus(r, z, q, pol), Cm = ev_c_minus(r, z, q, pol);
  CMatrix Cp_inv = inverse(Cp), Cm_inv = inverse(Cm);
  h.plus = rel_residual(Cp_inv, scalar_fq_hexagon(z, q, r, pol).value * (identity(n) + W));
  h.minus = rel_residual(Cm_inv, scalar_fq_hexagon_dual(z, q, r, pol).value * (identity(n) + Wi));
  CMatrix U = Cp_inv * Cm, Ui = inverse(U);
  h.ratio = rel_residual(U, scalar_fq_hexagon(z, q, r, pol).value / scalar_fq_hexagon_dual(z, q, r, pol).value * W);
  for (Gen g : {Gen::E, Gen::F, Gen::K})
    for (int i = 0; i <= r; ++i) {
      CMatrix u = ev_generator(r, z, g, i, q);
      h.ad = std::max(h.ad, rel_residual(U * u * Ui, W * u * Wi));
    }
  CMatrix Cm_star = ev_c_minus(r, 1.0 / z, 1.0 / q, pol).transpose();
  h.star = rel_residual(Cp, Cm_star);
  return h;
}

inline ResidualReport hexagonal_check(int r, cplx z, cplx q, const TruncationPolicy& pol = {}, double tol = 1e-9) {
  auto t0 = std::chrono::steady_clock::now();
  ResidualReport rep;
  rep.suite = "hexagonal";
  rep.params = {{"r", double(r)}, {"z", z.real()}, {"q", q.real()}};
  if (z.imag() != 0.0) rep.params["z_im"] = z.imag();
  rep.tolerance = tol;
  rep.truncation = {{"max_terms", double(pol.max_terms)}, {"tail_tolerance", pol.tail_tolerance}};
  try {
    HexagonalDetail h = hexagonal_components(r, z, q, pol);
    rep.residual = std::max({h.plus, h.minus, h.ad, h.star, h.ratio});
  } catch (const Error& e) {
    rep.error = e.what();
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  rep.decide();
  return rep;
}

}  // namespace ybe
