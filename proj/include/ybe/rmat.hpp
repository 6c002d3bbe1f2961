#pragma once
// 6V, 8V and IRF R-matrices for r = 1, the twist F, and residual checks
// (QYBE, QDYBE, star-triangle). All matrices carry their full scalar factors.

#include <array>
#include <map>
#include <tuple>
#include <string>

#include "ybe/evalrep.hpp"

namespace ybe {

enum class Model { SixVertex, EightVertex, IRF, TwistF };

inline const char* model_name(Model m) {
  switch (m) {
    case Model::SixVertex: return "6V";
    case Model::EightVertex: return "8V";
    case Model::IRF: return "IRF";
    case Model::TwistF: return "twist";
  }
  return "?";
}

// A labeled operator on V(x)V; evaluate(z1, z2) returns the 4x4 matrix.
struct ROperator {
  Model model;
  cplx q = 0.5, p = 0.0, w = 1.0;
  std::function<CMatrix(cplx, cplx)> evaluate;
};

inline CMatrix mat4(std::initializer_list<std::initializer_list<cplx>> rows) {
  CMatrix m(4, 4);
  int i = 0;
  for (auto& row : rows) {
    int j = 0;
    for (auto x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline void guard_pole(cplx v, const char* what) {
  if (std::abs(v) < kPoleTol) throw PoleHit(what);
}

// K = ev(q^{h(x)h/2}) = diag(q^{1/2}, q^{-1/2}, q^{-1/2}, q^{1/2})
inline CMatrix k_factor(cplx q) {
  cplx s = std::sqrt(q);
  return diag({s, 1.0 / s, 1.0 / s, s});
}

inline CMatrix r6v(cplx z1, cplx z2, cplx q, const TruncationPolicy& pol = {}) {
  cplx d = q * z2 - z1 / q;
  guard_pole(d, "r6v: q z2 - z1/q = 0");
  cplx b = (z2 - z1) / d, c23 = (q - 1.0 / q) * z2 / d, c32 = (q - 1.0 / q) * z1 / d;
  cplx pref = std::sqrt(q) * scalar_f6v(z1 / z2, q, pol).value;
  return pref * mat4({{1, 0, 0, 0}, {0, b, c23, 0}, {0, c32, b, 0}, {0, 0, 0, 1}});
}

// R-hat = K^{-1} R
inline CMatrix r6v_hat(cplx z1, cplx z2, cplx q, const TruncationPolicy& pol = {}) {
  return inverse(k_factor(q)) * r6v(z1, z2, q, pol);
}

// K prod_{n<=N} (1 + (q-1/q) e_{a1+n d} (x) f_{a1+n d})
//   exp( sum_{n=1}^N (q-1/q) n/[2n] e_{n d} (x) f_{n d} )
//   prod^{<-}_{n<=N} (1 + (q-1/q) e_{a0+n d} (x) f_{a0+n d})
// e_q^{x} reduces to 1 + x since every x here squares to zero.
inline CMatrix r6v_universal_truncated(cplx z1, cplx z2, cplx q, int N) {
  const cplx dq = q - 1.0 / q;
  CMatrix I4 = identity(4);
  CMatrix A = I4;
  for (int n = 0; n <= N; ++n) {
    PbwLabel L{RootKind::AlphaIPlusN, 1, 2, n, 1};
    A = A * (I4 + dq * kron(ev_pbw(z1, q, L, +1), ev_pbw(z2, q, L, -1)));
  }
  CMatrix H = CMatrix::Zero(4, 4);
  for (int n = 1; n <= N; ++n) {
    PbwLabel L{RootKind::Imag, 1, 2, n, 1};
    H += dq * double(n) / qint((long long)2 * n, q) * kron(ev_pbw(z1, q, L, +1), ev_pbw(z2, q, L, -1));
  }
  CMatrix X = I4;  // H is diagonal
  for (int a = 0; a < 4; ++a) X(a, a) = std::exp(H(a, a));
  CMatrix B = I4;
  for (int n = 0; n <= N; ++n) {
    PbwLabel L{RootKind::Alpha0PlusN, 1, 2, n, 1};
    B = (I4 + dq * kron(ev_pbw(z1, q, L, +1), ev_pbw(z2, q, L, -1))) * B;
  }
  return k_factor(q) * A * X * B;
}

inline CMatrix r8v(cplx z1, cplx z2, cplx p, cplx q, const TruncationPolicy& pol = {}) {
  const cplx z = z1 / z2, p2 = p * p, q2 = q * q, P4 = p2 * p2;
  auto T = [&](cplx x) { return theta(x, P4, pol); };
  cplx tp2 = T(p2), den1 = T(p2 * z / q2), den2 = T(z / q2);
  guard_pole(tp2 * den1, "r8v: Theta(p^2 z/q^2) = 0");
  guard_pole(den2, "r8v: Theta(z/q^2) = 0");
  cplx a = T(p2 * z) * T(p2 * q2) / (tp2 * den1);
  cplx b = T(z) * T(p2 * q2) / (tp2 * den2) / q;
  cplx c = T(p2 * z) * T(1.0 / q2) / (tp2 * den2);
  cplx d = p / q * T(z) * T(q2) / (tp2 * den1);
  cplx pref = std::sqrt(q) * scalar_rho8v(z, p, q, pol).value;
  return pref * mat4({{a, 0, 0, d / z1}, {0, b, c, 0}, {0, z * c, b, 0}, {z2 * d, 0, 0, a}});
}

inline cplx b_irf(cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, q2 = q * q, w2 = w * w;
  cplx den = qp(p2 / w2, p2, pol);
  cplx th = theta(z / q2, p2, pol);
  guard_pole(den * th, "b_irf denominator");
  return qp({q2 * p2 / w2, p2 / (q2 * w2)}, {p2}, pol) / (den * den) * theta(z, p2, pol) / th / q;
}

inline cplx c_irf(cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, q2 = q * q, w2 = w * w;
  cplx den = theta(w2, p2, pol) * theta(z / q2, p2, pol);
  guard_pole(den, "c_irf denominator");
  return theta(1.0 / q2, p2, pol) * theta(w2 * z, p2, pol) / den;
}

inline CMatrix r_irf(cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  cplx pw = p / w;
  cplx pref = std::sqrt(q) * scalar_rho8v(z, p, q, pol).value;
  return pref * mat4({{1, 0, 0, 0},
                      {0, b_irf(z, p, w, q, pol), c_irf(z, p, w, q, pol), 0},
                      {0, z * c_irf(z, p, pw, q, pol), b_irf(z, p, pw, q, pol), 0},
                      {0, 0, 0, 1}});
}

// twist entries
inline cplx x11(cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, q2 = q * q, w2 = w * w;
  return phi21(q2, q2 * p2 / w2, p2 / w2, p2, p2 * z / q2, pol);
}
inline cplx x12(cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  const cplx p2 = p * p, q2 = q * q, w2 = w * w;
  guard_pole(1.0 - 1.0 / w2, "x12: w^2 = 1");
  return -(q - 1.0 / q) / (1.0 - 1.0 / w2) * phi21(q2 * p2, q2 * w2, p2 * w2, p2, p2 * z / q2, pol);
}

// closed form; the (3,2) entry carries the factor z
inline CMatrix f_twist_closed(cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol = {}) {
  cplx pw = p / w;
  cplx phi = scalar_phi_twist(z, p, q, pol).value;
  return phi * mat4({{1, 0, 0, 0},
                     {0, x11(z, p, w, q, pol), x12(z, p, w, q, pol), 0},
                     {0, z * x12(z, p, pw, q, pol), x11(z, p, pw, q, pol), 0},
                     {0, 0, 0, 1}});
}

// F_N = prod_{k=1}^{N} (left to right) D_2^{-k} R-hat(z1, z2 p^{-2k}) D_2^{k}, D = diag(w, 1/w)
inline CMatrix f_twist_product(cplx z1, cplx z2, cplx p, cplx w, cplx q, int N,
                               const TruncationPolicy& pol = {}) {
  CMatrix F = identity(4);
  for (int k = 1; k <= N; ++k) {
    cplx wk = ipow(w, k);
    CMatrix D = kron(identity(2), diag({wk, 1.0 / wk}));
    CMatrix Dinv = kron(identity(2), diag({1.0 / wk, wk}));
    F = F * (Dinv * r6v_hat(z1, z2 * ipow(p, -2LL * k), q, pol) * D);
  }
  return F;
}

// F21^{-1} R12 F12 with F21 = P F(z2, z1) P
inline CMatrix r_irf_from_twist(cplx z1, cplx z2, cplx p, cplx w, cplx q, int N,
                                const TruncationPolicy& pol = {}) {
  CMatrix P = swap_matrix(2);
  CMatrix F12 = f_twist_product(z1, z2, p, w, q, N, pol);
  CMatrix F21 = P * f_twist_product(z2, z1, p, w, q, N, pol) * P;
  return inverse(F21) * r6v(z1, z2, q, pol) * F12;
}

// same conjugation built from the closed-form twist (needs |p^2 z2/(q^2 z1)| < 1)
inline CMatrix r_irf_from_twist_closed(cplx z1, cplx z2, cplx p, cplx w, cplx q,
                                       const TruncationPolicy& pol = {}) {
  CMatrix P = swap_matrix(2);
  CMatrix F21 = P * f_twist_closed(z2 / z1, p, w, q, pol) * P;
  return inverse(F21) * r6v(z1, z2, q, pol) * f_twist_closed(z1 / z2, p, w, q, pol);
}

// ---- residual suites -----------------------------------------------------

using SpectralR = std::function<CMatrix(cplx, cplx)>;

// R12 R13 R23 vs R23 R13 R12
inline double qybe_residual(const SpectralR& R, cplx z1, cplx z2, cplx z3) {
  CMatrix r12 = embed(R(z1, z2), 1, 2, 3, 2), r13 = embed(R(z1, z3), 1, 3, 3, 2),
          r23 = embed(R(z2, z3), 2, 3, 3, 2);
  return rel_residual(r12 * r13 * r23, r23 * r13 * r12);
}

// R(z; w) acting on V(x)V, dynamical in w
using DynamicalR = std::function<CMatrix(cplx z, cplx w)>;

// R12(w) R13(w q^{h2}) R23(w) vs R23(w q^{h1}) R13(w) R12(w q^{h3})
inline double qdybe_residual(const DynamicalR& R, cplx z1, cplx z2, cplx z3, cplx w, cplx q) {
  auto dyn = [&](cplx za, cplx zb) { return DynamicalOperator{[=](cplx ww) { return R(za / zb, ww); }, {1, -1}}; };
  CMatrix L = embed(R(z1 / z2, w), 1, 2, 3, 2) * shift_leg(dyn(z1, z3), 2, 1, 3, 3, w, q) *
              embed(R(z2 / z3, w), 2, 3, 3, 2);
  CMatrix Rr = shift_leg(dyn(z2, z3), 1, 2, 3, 3, w, q) * embed(R(z1 / z3, w), 1, 3, 3, 2) *
               shift_leg(dyn(z1, z2), 3, 1, 2, 3, w, q);
  return rel_residual(L, Rr);
}

// [h (x) 1 + 1 (x) h, X] for a 4x4 X
inline double zero_weight_residual(const CMatrix& X) {
  CMatrix h = diag({2.0, 0.0, 0.0, -2.0});
  return (h * X - X * h).norm();
}

inline bool admissible(long long l, long long lp, long long m, long long mp) {
  return std::llabs(l - lp) == 1 && std::llabs(lp - mp) == 1 && std::llabs(mp - m) == 1 && std::llabs(m - l) == 1;
}

// W(l, l', m, m' | z): matrix element of R^IRF(z; p, w0 q^l) with
// eps'_1 = l'-l, eps_2 = m-l, eps_1 = m'-m, eps'_2 = m'-l', index = (3 - eps)/2
inline cplx boltzmann_weight(long long l, long long lp, long long m, long long mp, cplx z, cplx p, cplx w0, cplx q,
                             const TruncationPolicy& pol = {}) {
  if (!admissible(l, lp, m, mp)) throw InadmissibleHeights("adjacent heights must differ by 1");
  auto idx = [](long long eps) { return static_cast<int>((3 - eps) / 2) - 1; };
  int j1 = idx(lp - l), i2 = idx(m - l), i1 = idx(mp - m), j2 = idx(mp - lp);
  CMatrix R = r_irf(z, p, w0 * ipow(q, l), q, pol);
  return R(i1 * 2 + i2, j1 * 2 + j2);
}

// QDYBE rewritten through W: every factor R(w0 q^s)[(i1 i2),(j1 j2)] is the weight
// W(s, s+eps(j1), s+eps(i2), s+eps(i1)+eps(i2)), zero unless eps(i1)+eps(i2) = eps(j1)+eps(j2).
inline double star_triangle_residual(cplx z1, cplx z2, cplx z3, cplx p, cplx w0, cplx q,
                                     const TruncationPolicy& pol = {}) {
  auto eps = [](int i) { return i == 0 ? 1 : -1; };
  std::map<std::tuple<int, int, int, int, int, int>, cplx> cache;
  auto Wm = [&](int s, int i1, int i2, int j1, int j2, int which, cplx z) -> cplx {
    if (eps(i1) + eps(i2) != eps(j1) + eps(j2)) return 0.0;
    auto key = std::make_tuple(s, i1, i2, j1, j2, which);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    cplx v = boltzmann_weight(s, s + eps(j1), s + eps(i2), s + eps(i1) + eps(i2), z, p, w0, q, pol);
    cache[key] = v;
    return v;
  };
  const cplx z12 = z1 / z2, z13 = z1 / z3, z23 = z2 / z3;
  double worst = 0, scale = 1.0;
  std::vector<std::pair<cplx, cplx>> vals;
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int i3 = 0; i3 < 2; ++i3)
        for (int j1 = 0; j1 < 2; ++j1)
          for (int j2 = 0; j2 < 2; ++j2)
            for (int j3 = 0; j3 < 2; ++j3) {
              cplx L = 0.0, R = 0.0;
              for (int k1 = 0; k1 < 2; ++k1)
                for (int k2 = 0; k2 < 2; ++k2)
                  for (int k3 = 0; k3 < 2; ++k3) {
                    L += Wm(0, i1, i2, k1, k2, 12, z12) * Wm(eps(k2), k1, i3, j1, k3, 13, z13) *
                         Wm(0, k2, k3, j2, j3, 23, z23);
                    R += Wm(eps(i1), i2, i3, k2, k3, 23, z23) * Wm(0, i1, k3, k1, j3, 13, z13) *
                         Wm(eps(j3), k1, k2, j1, j2, 12, z12);
                  }
              worst = std::max(worst, std::abs(L - R));
              scale = std::max({scale, std::abs(L), std::abs(R)});
            }
  return worst / scale;
}

inline ROperator make_r6v(cplx q) {
  return {Model::SixVertex, q, 0.0, 1.0, [q](cplx a, cplx b) { return r6v(a, b, q); }};
}
inline ROperator make_r8v(cplx p, cplx q) {
  return {Model::EightVertex, q, p, 1.0, [p, q](cplx a, cplx b) { return r8v(a, b, p, q); }};
}
inline ROperator make_r_irf(cplx p, cplx w, cplx q) {
  return {Model::IRF, q, p, w, [p, w, q](cplx a, cplx b) { return r_irf(a / b, p, w, q); }};
}
inline ROperator make_twist(cplx p, cplx w, cplx q) {
  return {Model::TwistF, q, p, w, [p, w, q](cplx a, cplx b) { return f_twist_closed(a / b, p, w, q); }};
}

}  // namespace ybe
