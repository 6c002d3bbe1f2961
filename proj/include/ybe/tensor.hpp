#pragma once
// Dense complex matrices on V^{(x)n}, V = C^d. Storage is an Eigen row-major
// dynamic matrix; legs are numbered from 1 as in R_{12}, R_{13}, R_{23}.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "ybe/errors.hpp"
#include "ybe/qspecial.hpp"

namespace ybe {

using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline CMatrix identity(int n) { return CMatrix::Identity(n, n); }
inline CMatrix zeros(int r, int c) { return CMatrix::Zero(r, c); }

// E_{i,j} with 1-based indices, as written in the formulas
inline CMatrix E(int n, int i, int j) {
  CMatrix m = CMatrix::Zero(n, n);
  m(i - 1, j - 1) = 1.0;
  return m;
}

inline CMatrix diag(const std::vector<cplx>& d) {
  CMatrix m = CMatrix::Zero(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

inline CMatrix kron(const CMatrix& A, const CMatrix& B) {
  CMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

inline double frob(const CMatrix& A) { return A.norm(); }

// ||A - B||_F / max(||A||_F, ||B||_F, 1)
inline double rel_residual(const CMatrix& A, const CMatrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw BadIndex("rel_residual: shape mismatch");
  return (A - B).norm() / std::max({A.norm(), B.norm(), 1.0});
}

inline CMatrix inverse(const CMatrix& A) {
  Eigen::PartialPivLU<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>> lu(A);
  if (std::abs(lu.determinant()) < 1e-300) throw PoleHit("singular matrix");
  return lu.inverse();
}

inline int ipow_int(int b, int e) {
  int r = 1;
  while (e--) r *= b;
  return r;
}

// Operator on legs (i, j) of V^{(x)n}, identity elsewhere. Legs are 1-based,
// i != j; i > j is allowed and means the operator's first factor sits on leg i.
inline CMatrix embed(const CMatrix& op, int i, int j, int n, int dim) {
  if (i < 1 || j < 1 || i > n || j > n || i == j) throw BadLegs("embed: legs must be distinct and in 1..n");
  if (op.rows() != dim * dim || op.cols() != dim * dim) throw BadLegs("embed: operator is not on V(x)V");
  const int N = ipow_int(dim, n);
  std::vector<int> stride(n);
  for (int k = 0; k < n; ++k) stride[k] = ipow_int(dim, n - 1 - k);
  CMatrix out = CMatrix::Zero(N, N);
  const int si = stride[i - 1], sj = stride[j - 1];
  for (int col = 0; col < N; ++col) {
    const int ci = (col / si) % dim, cj = (col / sj) % dim;
    const int base = col - ci * si - cj * sj;
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        cplx v = op(a * dim + b, ci * dim + cj);
        if (v != cplx(0.0)) out(base + a * si + b * sj, col) += v;
      }
  }
  return out;
}

// projector onto basis vector e_{idx} (0-based) of leg k in V^{(x)n}
inline CMatrix leg_projector(int k, int idx, int n, int dim) {
  CMatrix P = CMatrix::Identity(1, 1);
  for (int l = 1; l <= n; ++l) {
    CMatrix f = CMatrix::Identity(dim, dim);
    if (l == k) {
      f = CMatrix::Zero(dim, dim);
      f(idx, idx) = 1.0;
    }
    P = kron(P, f);
  }
  return P;
}

// single-leg operator a on leg k of V^{(x)n}
inline CMatrix on_leg(const CMatrix& a, int k, int n) {
  const int dim = static_cast<int>(a.rows());
  CMatrix P = CMatrix::Identity(1, 1);
  for (int l = 1; l <= n; ++l) P = kron(P, l == k ? a : CMatrix::Identity(dim, dim));
  return P;
}

// swap operator on V(x)V
inline CMatrix swap_matrix(int dim) {
  CMatrix P = CMatrix::Zero(dim * dim, dim * dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) P(b * dim + a, a * dim + b) = 1.0;
  return P;
}

// A w-dependent operator on V(x)V together with the h-weights of V's basis.
struct DynamicalOperator {
  std::function<CMatrix(cplx)> op;
  std::vector<int> weights{1, -1};
};

// sum over eps of op(w q^eps) on legs (i,j), times the projector onto the
// eps-weight vector of leg k: the block form of op(w q^{h_k}).
inline CMatrix shift_leg(const DynamicalOperator& d, int k, int i, int j, int n, cplx w, cplx q) {
  if (k == i || k == j || k < 1 || k > n) throw BadLegs("shift_leg: shifting leg must differ from (i,j)");
  const int dim = static_cast<int>(d.weights.size());
  const int N = ipow_int(dim, n);
  CMatrix out = CMatrix::Zero(N, N);
  for (int e = 0; e < dim; ++e) {
    CMatrix m = embed(d.op(w * ipow(q, d.weights[e])), i, j, n, dim);
    out += m * leg_projector(k, e, n, dim);
  }
  return out;
}

// matrix-level * involution: X(z,q) -> X(1/z,1/q)^T
inline CMatrix star(const std::function<CMatrix(cplx, cplx)>& X, cplx z, cplx q) {
  return X(1.0 / z, 1.0 / q).transpose();
}

}  // namespace ybe
