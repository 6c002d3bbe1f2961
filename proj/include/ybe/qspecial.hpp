#pragma once
// q-special functions over std::complex<double>.
//
// Products stop once |factor - 1| < tail_tolerance holds on 3 consecutive
// indices (shells l1+...+ln = s for several bases); series stop once
// |term| < tail_tolerance * |partial sum| holds on 3 consecutive terms.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "ybe/errors.hpp"

namespace ybe {

using cplx = std::complex<double>;

// Denominators smaller than this are treated as exact zeros.
inline constexpr double kPoleTol = 1e-13;

struct TruncationPolicy {
  int max_terms = 20000;
  double tail_tolerance = 1e-17;
  int hard_cap = 20000;

  void validate() const {
    if (max_terms <= 0 || hard_cap <= 0 || max_terms > hard_cap || !(tail_tolerance >= 0))
      throw ConfigError("TruncationPolicy needs 0 < max_terms <= hard_cap, tail_tolerance >= 0");
  }
};

struct QValue {
  cplx value{1.0, 0.0};
  double tail_bound = 0.0;
  int terms = 0;       // indices (or shells) consumed
  bool converged = true;
};

inline cplx ipow(cplx x, long long n) {
  if (n < 0) return 1.0 / ipow(x, -n);
  cplx r = 1.0;
  while (n) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

// residue of k in {0..m-1}
inline int mod_floor_int(long long k, int m) {
  long long r = k % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

// symmetric q-integer [n]_q
inline cplx qint(double n, cplx q) {
  cplx qn = std::pow(q, n);
  return (qn - 1.0 / qn) / (q - 1.0 / q);
}
inline cplx qint(long long n, cplx q) {
  cplx qn = ipow(q, n);
  return (qn - 1.0 / qn) / (q - 1.0 / q);
}

inline cplx qpoch_finite(cplx a, cplx q, int k) {
  cplx r = 1.0, ql = 1.0;
  for (int l = 0; l < k; ++l) {
    r *= 1.0 - a * ql;
    ql *= q;
  }
  return r;
}

namespace detail {

inline void check_bases(const std::vector<cplx>& bases) {
  if (bases.empty()) throw DivergentBase("no base given");
  for (auto b : bases)
    if (!(std::abs(b) < 1.0)) throw DivergentBase("|base| >= 1");
}

// Calls fn(x) for every monomial x = b0^l0 ... b_{n-1}^l_{n-1} with sum l = s.
template <class Fn>
void for_shell(const std::vector<std::vector<cplx>>& pw, int s, Fn&& fn) {
  const int n = static_cast<int>(pw.size());
  if (n == 1) {
    fn(pw[0][s]);
    return;
  }
  std::function<void(int, int, cplx)> rec = [&](int idx, int left, cplx acc) {
    if (idx == n - 1) {
      fn(acc * pw[idx][left]);
      return;
    }
    for (int l = 0; l <= left; ++l) rec(idx + 1, left - l, acc * pw[idx][l]);
  };
  rec(0, s, 1.0);
}

}  // namespace detail

// (z_1,...,z_m; q_1,...,q_n)_inf
inline QValue qpoch_inf(const std::vector<cplx>& zs, const std::vector<cplx>& bases,
                        const TruncationPolicy& pol = {}) {
  pol.validate();
  detail::check_bases(bases);
  double bmax = 0;
  for (auto b : bases) bmax = std::max(bmax, std::abs(b));
  std::vector<std::vector<cplx>> pw(bases.size(), std::vector<cplx>{1.0});
  QValue out;
  double rel_tail = 0;
  for (cplx z : zs) {
    cplx prod = 1.0;
    int streak = 0, s = 0;
    double last = 0;
    bool done = false;
    for (; s < pol.max_terms; ++s) {
      for (std::size_t i = 0; i < bases.size(); ++i)
        while (static_cast<int>(pw[i].size()) <= s) pw[i].push_back(pw[i].back() * bases[i]);
      cplx shell = 1.0;
      detail::for_shell(pw, s, [&](cplx x) { shell *= 1.0 - z * x; });
      prod *= shell;
      last = std::abs(shell - 1.0);
      streak = last < pol.tail_tolerance ? streak + 1 : 0;
      if (streak >= 3) {
        done = true;
        ++s;
        break;
      }
    }
    if (!done && s >= pol.hard_cap) throw CapExceeded("infinite product did not settle");
    out.converged = out.converged && done;
    out.terms = std::max(out.terms, s);
    out.value *= prod;
    // geometric estimate of the omitted shells
    double n = static_cast<double>(bases.size());
    rel_tail += last * std::pow(1.0 + bmax, n - 1.0) * bmax / (1.0 - bmax);
  }
  out.tail_bound = std::abs(out.value) * rel_tail;
  return out;
}

// value-only conveniences
inline cplx qp(cplx z, cplx q, const TruncationPolicy& pol = {}) { return qpoch_inf({z}, {q}, pol).value; }
inline cplx qp(std::initializer_list<cplx> zs, std::initializer_list<cplx> qs,
               const TruncationPolicy& pol = {}) {
  return qpoch_inf(std::vector<cplx>(zs), std::vector<cplx>(qs), pol).value;
}

inline QValue theta_q(cplx z, cplx q, const TruncationPolicy& pol = {}) {
  if (z == cplx(0.0)) throw ZeroArgument("theta_q(0)");
  if (!(std::abs(q) > 0.0)) throw DivergentBase("theta_q needs 0 < |q| < 1");
  return qpoch_inf({z, q / z, q}, {q}, pol);
}
inline cplx theta(cplx z, cplx q, const TruncationPolicy& pol = {}) { return theta_q(z, q, pol).value; }

inline QValue exp_q_inv(cplx z, cplx q, const TruncationPolicy& pol = {}) {
  return qpoch_inf({(1.0 - q * q) * z}, {q * q}, pol);
}

inline QValue exp_q(cplx z, cplx q, const TruncationPolicy& pol = {}) {
  QValue d = exp_q_inv(z, q, pol);
  if (std::abs(d.value) < kPoleTol) throw PoleHit("exp_q denominator vanishes");
  QValue out = d;
  out.value = 1.0 / d.value;
  out.tail_bound = d.tail_bound / (std::abs(d.value) * std::abs(d.value));
  return out;
}

// Generic series driver: term(k) -> t_k computed by ratio(k) = t_{k+1}/t_k.
template <class Ratio>
QValue sum_series(Ratio&& ratio, const TruncationPolicy& pol) {
  pol.validate();
  cplx t = 1.0, sum = 1.0;
  int streak = 0, k = 0;
  double prev = 1.0, last = 1.0;
  bool done = false;
  for (; k < pol.max_terms; ++k) {
    t *= ratio(k);
    sum += t;
    prev = last;
    last = std::abs(t);
    double scale = std::abs(sum);
    streak = (last <= pol.tail_tolerance * scale || last == 0.0) ? streak + 1 : 0;
    if (streak >= 3) {
      done = true;
      ++k;
      break;
    }
  }
  if (!done && k >= pol.hard_cap) throw CapExceeded("series did not settle");
  QValue out;
  out.value = sum;
  out.terms = k;
  out.converged = done;
  double rho = prev > 0 ? std::min(last / prev, 0.999) : 0.0;
  out.tail_bound = last * rho / (1.0 - rho) + (done ? 0.0 : last);
  return out;
}

// sum_n z^n / (n)_q!  with (n)_q = (1 - q^{2n})/(1 - q^2)
inline QValue exp_q_series(cplx z, cplx q, const TruncationPolicy& pol = {}) {
  cplx q2 = q * q;
  return sum_series(
      [&](int k) {
        cplx n1 = (1.0 - ipow(q2, k + 1)) / (1.0 - q2);
        return z / n1;
      },
      pol);
}

namespace detail {
inline void check_lower(const std::vector<cplx>& b_list, cplx q) {
  for (cplx b : b_list) {
    cplx x = b;
    for (int k = 0; k < 4000; ++k) {
      if (std::abs(1.0 - x) < kPoleTol) throw PoleHit("lower parameter of the form q^{-m}");
      if (std::abs(x) < 0.5) break;
      x *= q;
    }
  }
}
}  // namespace detail

// r_phi_s(a; b; q; z) including the [(-1)^k q^{k(k-1)/2}]^{1+s-r} factor
inline QValue basic_hypergeometric(const std::vector<cplx>& a_list, const std::vector<cplx>& b_list,
                                   cplx q, cplx z, const TruncationPolicy& pol = {}) {
  if (!(std::abs(q) < 1.0)) throw DivergentBase("|q| >= 1 in basic hypergeometric series");
  detail::check_lower(b_list, q);
  const int r = static_cast<int>(a_list.size()), s = static_cast<int>(b_list.size());
  const int e = 1 + s - r;
  if (z != cplx(0.0)) {
    if (e < 0) throw DivergentBase("r > s+1: series has zero radius");
    if (e == 0 && !(std::abs(z) < 1.0)) throw DivergentBase("|z| >= 1 for r = s+1");
  }
  return sum_series(
      [&](int k) {
        cplx qk = ipow(q, k);
        cplx num = z, den = 1.0 - qk * q;
        for (cplx a : a_list) num *= 1.0 - a * qk;
        for (cplx b : b_list) den *= 1.0 - b * qk;
        if (e != 0) num *= ipow(-qk, e);
        return num / den;
      },
      pol);
}

inline cplx phi21(cplx a, cplx b, cplx c, cplx q, cplx z, const TruncationPolicy& pol = {}) {
  return basic_hypergeometric({a, b}, {c}, q, z, pol).value;
}

// 0phi1(-; b; q; z)
inline cplx phi01(cplx b, cplx q, cplx z, const TruncationPolicy& pol = {}) {
  return basic_hypergeometric({}, {b}, q, z, pol).value;
}

// 2phi1 extended outside the unit disc through its three-term q-difference
// relation, stepping up from arguments q^K z that lie inside |x| < 1/2.
inline cplx phi21_continued(cplx a, cplx b, cplx c, cplx q, cplx z, const TruncationPolicy& pol = {}) {
  if (std::abs(z) < 0.5) return phi21(a, b, c, q, z, pol);
  int K = 0;
  while (std::abs(z * ipow(q, K)) >= 0.5) ++K;
  cplx f2 = phi21(a, b, c, q, z * ipow(q, K + 1), pol);
  cplx f1 = phi21(a, b, c, q, z * ipow(q, K), pol);
  for (int k = K - 1; k >= 0; --k) {
    cplx x = z * ipow(q, k);
    if (std::abs(1.0 - x) < kPoleTol) throw PoleHit("2phi1 continuation at z = q^{-k}");
    cplx f0 = -(((a + b) * x - c / q - 1.0) * f1 + (c / q - a * b * x) * f2) / (1.0 - x);
    f2 = f1;
    f1 = f0;
  }
  return f1;
}

// residual of the three-term relation at a point
inline double phi21_recurrence_residual(cplx a, cplx b, cplx c, cplx q, cplx z,
                                        const TruncationPolicy& pol = {}) {
  cplx f0 = phi21(a, b, c, q, z, pol), f1 = phi21(a, b, c, q, q * z, pol),
       f2 = phi21(a, b, c, q, q * q * z, pol);
  cplx t0 = (1.0 - z) * f0, t1 = ((a + b) * z - c / q - 1.0) * f1, t2 = (c / q - a * b * z) * f2;
  double scale = std::max({std::abs(t0), std::abs(t1), std::abs(t2), 1.0});
  return std::abs(t0 + t1 + t2) / scale;
}

// |LHS - RHS| / max(|LHS|, |RHS|, 1) for the 2phi1 connection formula
inline double connection_formula_residual(cplx a, cplx b, cplx c, cplx q, cplx z,
                                          const TruncationPolicy& pol = {}) {
  auto guard = [](cplx v, const char* what) {
    if (std::abs(v) < kPoleTol) throw PoleHit(what);
  };
  cplx d1 = qp({c, b / a}, {q}, pol), d2 = qp({c, a / b}, {q}, pol);
  guard(d1, "(c, b/a; q) vanishes");
  guard(d2, "(c, a/b; q) vanishes");
  cplx th = theta(q / z, q, pol);
  guard(th, "Theta_q(q/z) vanishes");
  cplx u = q * c / (a * b * z);
  cplx lhs = phi21_continued(a, b, c, q, z, pol);
  cplx t1 = qp({b, c / a}, {q}, pol) / d1 * theta(q / (a * z), q, pol) / th *
            phi21_continued(a, q * a / c, q * a / b, q, u, pol);
  cplx t2 = qp({a, c / b}, {q}, pol) / d2 * theta(q / (b * z), q, pol) / th *
            phi21_continued(b, q * b / c, q * b / a, q, u, pol);
  cplx rhs = t1 + t2;
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

// 0phi1(-; a; q; a z) = (z; q^2)_inf 2phi1(-qa, -a; a^2; q^2; z)
inline double phi01_phi21_identity_residual(cplx a, cplx q, cplx z, const TruncationPolicy& pol = {}) {
  cplx lhs = phi01(a, q, a * z, pol);
  cplx rhs = qp(z, q * q, pol) * phi21(-q * a, -a, a * a, q * q, z, pol);
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

// ---- scalar prefactors ---------------------------------------------------

namespace detail {
inline QValue ratio(const QValue& n, const QValue& d, const char* what) {
  if (std::abs(d.value) < kPoleTol) throw PoleHit(what);
  QValue out;
  out.value = n.value / d.value;
  out.tail_bound = std::abs(out.value) * (n.tail_bound / std::max(std::abs(n.value), 1e-300) +
                                          d.tail_bound / std::abs(d.value));
  out.terms = std::max(n.terms, d.terms);
  out.converged = n.converged && d.converged;
  return out;
}
}  // namespace detail

// f(u) = (u, q^4 u; q^4) / (q^2 u; q^4)^2
inline QValue scalar_f6v(cplx u, cplx q, const TruncationPolicy& pol = {}) {
  cplx q2 = q * q, q4 = q2 * q2;
  return detail::ratio(qpoch_inf({u, q4 * u}, {q4}, pol), qpoch_inf({q2 * u, q2 * u}, {q4}, pol),
                       "f(u) denominator vanishes");
}

// exp[ sum_n (q^n - q^-n)/(q^n + q^-n) u^n / n ]
inline cplx scalar_f6v_expsum(cplx u, cplx q, const TruncationPolicy& pol = {}) {
  if (!(std::abs(u) < 1.0)) throw DivergentBase("exp-sum form of f needs |u| < 1");
  cplx acc = 0.0, un = 1.0;
  int streak = 0;
  for (int n = 1; n <= pol.hard_cap; ++n) {
    un *= u;
    cplx qn = ipow(q, n);
    cplx t = (qn - 1.0 / qn) / (qn + 1.0 / qn) * un / double(n);
    acc += t;
    streak = std::abs(t) <= pol.tail_tolerance * std::max(std::abs(acc), 1.0) ? streak + 1 : 0;
    if (streak >= 3) return std::exp(acc);
  }
  throw CapExceeded("exp-sum of f");
}

// rho(z;p) of the 8V and IRF matrices
inline QValue scalar_rho8v(cplx z, cplx p, cplx q, const TruncationPolicy& pol = {}) {
  cplx p2 = p * p, q2 = q * q, q4 = q2 * q2;
  if (z == cplx(0.0)) return QValue{};
  std::vector<cplx> b{p2, q4};
  return detail::ratio(qpoch_inf({z, q4 * z, p2 * q2 / z, p2 * q2 / z}, b, pol),
                       qpoch_inf({q2 * z, q2 * z, p2 / z, p2 * q4 / z}, b, pol), "rho denominator vanishes");
}

// phi(z;p) prefactor of the twist
inline QValue scalar_phi_twist(cplx z, cplx p, cplx q, const TruncationPolicy& pol = {}) {
  cplx p2 = p * p, q2 = q * q, q4 = q2 * q2;
  std::vector<cplx> b{q4, p2};
  return detail::ratio(qpoch_inf({p2 * z, q4 * p2 * z}, b, pol),
                       qpoch_inf({q2 * p2 * z, q2 * p2 * z}, b, pol), "phi denominator vanishes");
}

// f_q(z) = (s q^{2(r+1)} z; q^{2(r+1)}) / (s q^{2r} z; q^{2(r+1)}), s = (-1)^{r+1}
inline QValue scalar_fq_hexagon(cplx z, cplx q, int r, const TruncationPolicy& pol = {}) {
  double s = (r % 2 == 1) ? 1.0 : -1.0;
  cplx Q = ipow(q, 2 * (r + 1));
  return detail::ratio(qpoch_inf({s * Q * z}, {Q}, pol), qpoch_inf({s * ipow(q, 2 * r) * z}, {Q}, pol),
                       "f_q denominator vanishes");
}

// f_{q^{-1}}(z^{-1}) written with |q| < 1 bases
inline QValue scalar_fq_hexagon_dual(cplx z, cplx q, int r, const TruncationPolicy& pol = {}) {
  double s = (r % 2 == 1) ? 1.0 : -1.0;
  cplx Q = ipow(q, 2 * (r + 1));
  return detail::ratio(qpoch_inf({s * q * q / z}, {Q}, pol), qpoch_inf({s / z}, {Q}, pol),
                       "f_{1/q} denominator vanishes");
}

// exp[ sum_k (-1)^{k(r+1)} q^{kr} [k]_q / (k [k(r+1)]_q) z^k ], valid for any q once it converges
inline cplx scalar_fq_hexagon_expsum(cplx z, cplx q, int r, const TruncationPolicy& pol = {}) {
  cplx acc = 0.0, zk = 1.0;
  int streak = 0;
  for (int k = 1; k <= pol.hard_cap; ++k) {
    zk *= z;
    double sg = ((k * (r + 1)) % 2 == 0) ? 1.0 : -1.0;
    cplx t = sg * ipow(q, (long long)k * r) * qint((long long)k, q) / (double(k) * qint((long long)k * (r + 1), q)) * zk;
    acc += t;
    streak = std::abs(t) <= pol.tail_tolerance * std::max(std::abs(acc), 1.0) ? streak + 1 : 0;
    if (streak >= 3) return std::exp(acc);
  }
  throw CapExceeded("exp-sum of f_q");
}

}  // namespace ybe
