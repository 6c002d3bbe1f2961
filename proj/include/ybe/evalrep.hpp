#pragma once
// Evaluation representation ev_z of U_q(A_r^(1))' on C^{r+1}.

#include <string>

#include "ybe/tensor.hpp"

namespace ybe {

enum class Gen { E, F, H, K, Kinv };

// images of e_i, f_i, h_{alpha_i} (0 <= i <= r); K = q^{h_i}
inline CMatrix ev_generator(int r, cplx z, Gen which, int i, cplx q = 0.5) {
  const int n = r + 1;
  if (r < 1 || i < 0 || i > r) throw BadIndex("generator index out of range");
  if (z == cplx(0.0)) throw ZeroArgument("ev_z needs z != 0");
  CMatrix h;
  if (i == 0)
    h = E(n, n, n) - E(n, 1, 1);
  else
    h = E(n, i, i) - E(n, i + 1, i + 1);
  switch (which) {
    case Gen::E:
      return i == 0 ? CMatrix(z * E(n, n, 1)) : E(n, i, i + 1);
    case Gen::F:
      return i == 0 ? CMatrix(E(n, 1, n) / z) : E(n, i + 1, i);
    case Gen::H:
      return h;
    case Gen::K:
    case Gen::Kinv: {
      CMatrix k = CMatrix::Zero(n, n);
      double sg = which == Gen::K ? 1.0 : -1.0;
      for (int a = 0; a < n; ++a) k(a, a) = std::pow(q, sg * h(a, a).real());
      return k;
    }
  }
  throw BadIndex("unknown generator");
}

enum class RootKind { AlphaIJ, DeltaMinusAlphaIJ, AlphaIPlusN, Alpha0PlusN, Imag, ImagPrimed };

struct PbwLabel {
  RootKind kind = RootKind::AlphaIJ;
  int i = 1, j = 2, n = 0;
  int r = 1;
};

inline void validate(const PbwLabel& L) {
  const int r = L.r;
  auto bad = [](const char* m) { throw BadLabel(m); };
  if (r < 1) bad("rank must be >= 1");
  switch (L.kind) {
    case RootKind::AlphaIJ:
    case RootKind::DeltaMinusAlphaIJ:
      if (!(1 <= L.i && L.i < L.j && L.j <= r + 1)) bad("need 1 <= i < j <= r+1");
      break;
    case RootKind::AlphaIPlusN:
      if (!(1 <= L.i && L.i <= r) || L.n < 0) bad("need 1 <= i <= r, n >= 0");
      break;
    case RootKind::Alpha0PlusN:
      if (r != 1 || L.n < 0) bad("alpha_0 + n delta table is given for r = 1 only");
      break;
    case RootKind::Imag:
    case RootKind::ImagPrimed:
      if (!(1 <= L.i && L.i <= r) || L.n < 1) bad("need 1 <= i <= r, n >= 1");
      break;
  }
}

// ev_z(e_gamma) from the tables
inline CMatrix ev_pbw_e(cplx z, cplx q, const PbwLabel& L) {
  validate(L);
  const int d = L.r + 1;
  const int i = L.i, j = L.j, n = L.n;
  switch (L.kind) {
    case RootKind::AlphaIJ:
      return ipow(-1.0 / q, j - i - 1) * E(d, i, j);
    case RootKind::DeltaMinusAlphaIJ:
      return z * ipow(-1.0 / q, i - 1) * E(d, j, i);
    case RootKind::AlphaIPlusN:
      return double(((n * i) % 2) ? -1 : 1) * ipow(z, n) * ipow(q, -(long long)i * n) * E(d, i, i + 1);
    case RootKind::Alpha0PlusN:
      return z * ipow(-z / q, n) * E(d, 2, 1);
    case RootKind::Imag:
      return double((n - 1) % 2 ? -1 : 1) * ipow(z, n) * ipow(q, (long long)(1 - i) * n) * qint((long long)n, q) /
             double(n) * (E(d, i, i) - ipow(q, -2LL * n) * E(d, i + 1, i + 1));
    case RootKind::ImagPrimed:
      return double((n - 1) % 2 ? -1 : 1) * ipow(z, n) * ipow(q, 1 - (long long)i * n) *
             (E(d, i, i) - ipow(q, -2) * E(d, i + 1, i + 1));
  }
  throw BadLabel("unknown root kind");
}

// sign = +1: e_gamma; sign = -1: f_gamma = e_gamma^*, realized as the transpose at (1/z, 1/q)
inline CMatrix ev_pbw(cplx z, cplx q, const PbwLabel& L, int sign) {
  if (sign > 0) return ev_pbw_e(z, q, L);
  return star([&](cplx zz, cplx qq) { return ev_pbw_e(zz, qq, L); }, z, q);
}

// ev(zeta_i) = -(i/(r+1)) 1 + sum_{j<=i} E_jj ; i = 0 and i = r+1 give 0
inline CMatrix ev_cartan_zeta(int r, int i) {
  if (i < 0 || i > r + 1) throw BadIndex("zeta index out of range");
  CMatrix m = CMatrix::Zero(r + 1, r + 1);
  if (i == 0 || i == r + 1) return m;
  for (int a = 1; a <= r + 1; ++a) m(a - 1, a - 1) = (a <= i ? 1.0 : 0.0) - double(i) / (r + 1);
  return m;
}

// q^D for diagonal D, entrywise on the diagonal
inline CMatrix qpow_diag(const CMatrix& D, cplx q) {
  CMatrix m = CMatrix::Zero(D.rows(), D.cols());
  for (Eigen::Index a = 0; a < D.rows(); ++a) m(a, a) = std::pow(q, D(a, a));
  return m;
}

inline CMatrix omega_z(int r, cplx z) {
  const int n = r + 1;
  CMatrix w = CMatrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) w(i, i + 1) = 1.0;
  w(n - 1, 0) = z;
  return w;
}

inline CMatrix omega_z_inv(int r, cplx z) {
  const int n = r + 1;
  CMatrix w = CMatrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) w(i + 1, i) = 1.0;
  w(0, n - 1) = 1.0 / z;
  return w;
}

// max over u in {e_i, f_i, q^{h_i}} and both signs of
// || ev(sigma^pm(u)) - Ad_{omega^{pm aleph}} ev(u) ||, sigma^pm acting by i -> i -/+ aleph,
// with Ad_x(y) = x y x^{-1}
inline double sigma_intertwining_residual(int r, cplx z, cplx q, int aleph = 1) {
  CMatrix W = CMatrix::Identity(r + 1, r + 1), Wi = W;
  for (int k = 0; k < aleph; ++k) {
    W = W * omega_z(r, z);
    Wi = Wi * omega_z_inv(r, z);
  }
  double worst = 0;
  for (Gen g : {Gen::E, Gen::F, Gen::K})
    for (int i = 0; i <= r; ++i) {
      CMatrix u = ev_generator(r, z, g, i, q);
      CMatrix up = ev_generator(r, z, g, mod_floor_int(i - aleph, r + 1), q);
      CMatrix um = ev_generator(r, z, g, mod_floor_int(i + aleph, r + 1), q);
      worst = std::max(worst, (up - W * u * Wi).norm());
      worst = std::max(worst, (um - Wi * u * W).norm());
    }
  return worst;
}

// commutators, K-conjugation and q-Serre relations on generator images
inline double defining_relations_residual(int r, cplx z, cplx q) {
  double worst = 0;
  auto a_ij = [r](int i, int j) {
    if (i == j) return 2;
    if (r == 1) return -2;
    int d = mod_floor_int(i - j, r + 1);
    return (d == 1 || d == r) ? -1 : 0;
  };
  const cplx dq = q - 1.0 / q;
  for (int i = 0; i <= r; ++i) {
    CMatrix ei = ev_generator(r, z, Gen::E, i, q), fi = ev_generator(r, z, Gen::F, i, q);
    CMatrix Ki = ev_generator(r, z, Gen::K, i, q), Kinv = ev_generator(r, z, Gen::Kinv, i, q);
    for (int j = 0; j <= r; ++j) {
      CMatrix ej = ev_generator(r, z, Gen::E, j, q), fj = ev_generator(r, z, Gen::F, j, q);
      CMatrix comm = ei * fj - fj * ei;
      CMatrix rhs = i == j ? CMatrix((Ki - Kinv) / dq) : CMatrix::Zero(r + 1, r + 1);
      worst = std::max(worst, (comm - rhs).norm());
      worst = std::max(worst, (Ki * ej * Kinv - ipow(q, a_ij(i, j)) * ej).norm());
      worst = std::max(worst, (Ki * fj * Kinv - ipow(q, -a_ij(i, j)) * fj).norm());
      if (i != j) {
        const int m = 1 - a_ij(i, j);
        CMatrix se = CMatrix::Zero(r + 1, r + 1), sf = se;
        for (int k = 0; k <= m; ++k) {
          // q-binomial [m choose k]
          cplx bin = 1.0;
          for (int t = 1; t <= k; ++t) bin *= qint((long long)(m - t + 1), q) / qint((long long)t, q);
          double sg = k % 2 ? -1.0 : 1.0;
          CMatrix pe = CMatrix::Identity(r + 1, r + 1), pe2 = pe, pf = pe, pf2 = pe;
          for (int t = 0; t < m - k; ++t) { pe = pe * ei; pf = pf * fi; }
          for (int t = 0; t < k; ++t) { pe2 = pe2 * ei; pf2 = pf2 * fi; }
          se += sg * bin * pe * ej * pe2;
          sf += sg * bin * pf * fj * pf2;
        }
        worst = std::max({worst, se.norm(), sf.norm()});
      }
    }
  }
  return worst;
}

// Residual of (q-1/q) sum e_{n delta} x^n = log(1 + (q-1/q) sum e'_{n delta} x^n), relative per order,
// compared order by order up to nmax on the diagonal images of color i.
inline double imaginary_log_residual(int r, cplx z, cplx q, int i, int nmax) {
  const cplx dq = q - 1.0 / q;
  double worst = 0;
  for (int a = 0; a <= r; ++a) {
    std::vector<cplx> s(nmax + 1, 0.0), L(nmax + 1, 0.0);
    for (int n = 1; n <= nmax; ++n)
      s[n] = dq * ev_pbw_e(z, q, PbwLabel{RootKind::ImagPrimed, i, i + 1, n, r})(a, a);
    for (int n = 1; n <= nmax; ++n) {
      cplx acc = double(n) * s[n];
      for (int k = 1; k < n; ++k) acc -= double(k) * L[k] * s[n - k];
      L[n] = acc / double(n);
      cplx lhs = dq * ev_pbw_e(z, q, PbwLabel{RootKind::Imag, i, i + 1, n, r})(a, a);
      worst = std::max(worst, std::abs(lhs - L[n]) / std::max(1.0, std::abs(lhs)));
    }
  }
  return worst;
}

}  // namespace ybe
