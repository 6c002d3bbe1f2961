#pragma once
// Exact matrix data for A_r^(1): extended Cartan matrix, rotation Y, Theta+,
// v, projectors, quasi-inverses and S^(1). Entries are boost::rational.
// Basis order: kappa_0, ..., kappa_r, kappa_d (d stored at index r+1).

#include <boost/rational.hpp>
#include <complex>
#include <numeric>
#include <vector>

#include "ybe/errors.hpp"
#include "ybe/qspecial.hpp"

namespace ybe {

using Rational = boost::rational<long long>;

class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(int r, int c) : rows_(r), cols_(c), a_(static_cast<std::size_t>(r) * c, Rational(0)) {}
  static RMatrix identity(int n) {
    RMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  RMatrix operator+(const RMatrix& o) const {
    RMatrix m(*this);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] += o.a_[k];
    return m;
  }
  RMatrix operator-(const RMatrix& o) const {
    RMatrix m(*this);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] -= o.a_[k];
    return m;
  }
  RMatrix operator*(const RMatrix& o) const {
    if (cols_ != o.rows_) throw BadIndex("RMatrix shape mismatch");
    RMatrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rational& x = (*this)(i, k);
        if (x.numerator() == 0) continue;
        for (int j = 0; j < o.cols_; ++j) m(i, j) += x * o(k, j);
      }
    return m;
  }
  RMatrix operator*(const Rational& s) const {
    RMatrix m(*this);
    for (auto& x : m.a_) x *= s;
    return m;
  }
  RMatrix transpose() const {
    RMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  RMatrix pow(int e) const {
    RMatrix r = identity(rows_), b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
  bool operator==(const RMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool is_zero() const {
    for (auto& x : a_)
      if (x.numerator() != 0) return false;
    return true;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

inline int mod_floor(long long k, int m) { return mod_floor_int(k, m); }

struct CartanData {
  int r = 1, aleph = 1, aleph_inv = 1;
  RMatrix A, Abar, Y, P, ThetaPlus, T, Pi, Omega, PiAleph, S1, S0, S1_general_form;
  RMatrix v, w, kd, k0;  // column vectors
};

// rank-one matrix x . y^T
inline RMatrix outer(const RMatrix& x, const RMatrix& y) { return x * y.transpose(); }

inline CartanData build_cartan_data(int r, int aleph) {
  if (r < 1) throw BadIndex("rank must be >= 1");
  if (aleph < 1 || aleph > r || std::gcd(aleph, r + 1) != 1) throw NotCoprime("aleph must be in [1,r] and prime to r+1");
  const int n = r + 2, d = r + 1, m = r + 1;
  CartanData c;
  c.r = r;
  c.aleph = aleph;
  for (int a = 1; a <= r; ++a)
    if ((a * aleph) % m == 1) c.aleph_inv = a;
  if (r == 1) c.aleph_inv = 1;

  c.Y = RMatrix(n, n);
  for (int i = 0; i <= r; ++i)
    for (int j = 0; j <= r; ++j)
      if (i == mod_floor(j - 1, m)) c.Y(i, j) = 1;
  c.P = RMatrix(n, n);
  for (int i = 0; i <= r; ++i) c.P(i, i) = 1;
  c.Abar = c.P * Rational(2) - c.Y - c.Y.transpose();
  c.A = c.Abar;
  c.A(d, 0) += 1;
  c.A(0, d) += 1;

  c.v = RMatrix(n, 1);
  for (int j = 0; j <= r; ++j) {
    int jm = mod_floor(j - aleph, m);
    c.v(j, 0) = Rational(j * (r + 1 - j) - jm * (r + 1 - jm), 2 * (r + 1));
  }
  c.w = RMatrix(n, 1);
  for (int i = 0; i <= r; ++i) c.w(i, 0) = 1;
  c.kd = RMatrix(n, 1);
  c.kd(d, 0) = 1;
  c.k0 = RMatrix(n, 1);
  c.k0(0, 0) = 1;

  RMatrix Ya = c.Y.pow(aleph);
  c.ThetaPlus = Ya + outer(c.kd, c.kd) + outer(c.kd, c.v);

  c.T = RMatrix(n, n);
  for (int l = 1; l <= r; ++l) c.T = c.T + c.Y.pow(l) * Rational(-l * (r + 1 - l), 2 * (r + 1));
  c.Pi = c.P - outer(c.w, c.w) * Rational(1, r + 1);
  c.Omega = RMatrix(n, n);
  for (int l = 1; l <= r; ++l) c.Omega = c.Omega + c.Y.pow(aleph * l) * Rational(-l, r + 1);
  c.PiAleph = c.Pi - outer(c.kd, c.v) * c.Omega;

  // closed form as displayed, then the gauge term y kd.w^T + z w.kd^T with
  // y = -1/2, z = (r-1)/(2(r+1)) that restores A + S1 + S1^T = 0
  RMatrix YOm = Ya * c.Omega;
  c.S1_general_form = YOm * c.Abar + outer(c.kd, c.k0) * c.Pi * YOm + YOm * c.Pi * outer(c.k0, c.kd);
  c.S1 = c.S1_general_form + outer(c.kd, c.w) * Rational(-1, 2) + outer(c.w, c.kd) * Rational(r - 1, 2 * (r + 1));

  // S0 = (Theta+)^{-1} S1 ; Theta+ = permutation block plus a d-row, inverted directly
  RMatrix Yinv = c.Y.transpose().pow(aleph);
  RMatrix ThInv = Yinv + outer(c.kd, c.kd) - outer(c.kd, Yinv.transpose() * c.v);
  c.S0 = ThInv * c.S1;
  return c;
}

// S^(1) for aleph = 1, written coefficient by coefficient from the log_q expression
inline RMatrix s1_explicit_aleph1(int r) {
  const int n = r + 2, d = r + 1, m = r + 1;
  RMatrix M(n, n);
  for (int i = 0; i <= r; ++i) {
    int ip = mod_floor(i + 1, m);
    M(i, i) -= 1;
    M(i, ip) += 1;
    M(i, d) += Rational(i, r + 1);
    M(d, ip) -= Rational(i, r + 1);
    M(i, d) -= Rational(1, 2 * (r + 1));
    M(d, i) -= Rational(1, 2 * (r + 1));
  }
  return M;
}

inline int chi_aleph(long long u, int r, int aleph) {
  const int m = r + 1;
  int ap = 1;
  for (int a = 1; a <= r; ++a)
    if ((a * aleph) % m == 1) ap = a;
  long long s = 2LL * mod_floor(u * ap, m) - mod_floor((u + 1) * ap, m) - mod_floor((u - 1) * ap, m);
  return static_cast<int>(-s / m);
}

// sum_u chi(u) Y^{u+aleph}
inline RMatrix chi_sum(const CartanData& c) {
  RMatrix S(c.r + 2, c.r + 2);
  for (int u = 0; u <= c.r; ++u) S = S + c.Y.pow(u + c.aleph) * Rational(chi_aleph(u, c.r, c.aleph));
  return S;
}

// c_ij^(n): first and second displayed forms
inline cplx c_coeff(int i, int j, int n, int r, cplx q) {
  if (i < 1 || j < 1 || i > r || j > r || n < 1) throw BadIndex("c_coeff indices");
  cplx qn = ipow(q, n);
  return double(n) * qint((long long)std::min(i, j), qn) * qint((long long)(r + 1 - std::max(i, j)), qn) /
         (qint((long long)n, q) * qint((long long)(r + 1), qn));
}
inline cplx c_coeff_alt(int i, int j, int n, int r, cplx q) {
  if (i < 1 || j < 1 || i > r || j > r || n < 1) throw BadIndex("c_coeff indices");
  cplx qn = qint((long long)n, q);
  return double(n) / (qn * qn) * qint((long long)n * std::min(i, j), q) *
         qint((long long)n * (r + 1 - std::max(i, j)), q) / qint((long long)n * (r + 1), q);
}

// r x r tridiagonal matrix with q + 1/q on the diagonal and its closed-form inverse
inline std::vector<std::vector<cplx>> atilde(int r, cplx q) {
  std::vector<std::vector<cplx>> a(r, std::vector<cplx>(r, 0.0));
  for (int i = 0; i < r; ++i) {
    a[i][i] = q + 1.0 / q;
    if (i + 1 < r) a[i][i + 1] = a[i + 1][i] = -1.0;
  }
  return a;
}
inline std::vector<std::vector<cplx>> atilde_inverse(int r, cplx q) {
  std::vector<std::vector<cplx>> a(r, std::vector<cplx>(r, 0.0));
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j)
      a[i - 1][j - 1] = qint((long long)std::min(i, j), q) * qint((long long)(r + 1 - std::max(i, j)), q) /
                        qint((long long)(r + 1), q);
  return a;
}

// A_r Cartan matrix entry (alpha_i, alpha_j), 1-based
inline int cartan_ar(int i, int j) { return i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0); }

}  // namespace ybe
