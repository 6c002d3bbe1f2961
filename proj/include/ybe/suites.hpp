#pragma once
// Identity suites over seeded random parameter points, evaluated in parallel
// and returned in sorted order.
//
// Sampling: std::mt19937_64 seeded with the 64-bit seed; a uniform double on
// [0,1) is (x >> 11) * 2^-53, so the stream is identical on every platform.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <numbers>
#include <random>
#include <thread>

#include "ybe/cartan.hpp"
#include "ybe/gauge.hpp"

namespace ybe {

struct Range {
  double lo = 0, hi = 0;
  bool fixed() const { return lo == hi; }
};

inline Range parse_range(const std::string& key, const std::string& s) {
  try {
    auto colon = s.find(':');
    std::size_t used = 0;
    if (colon == std::string::npos) {
      double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {v, v};
    }
    std::string a = s.substr(0, colon), b = s.substr(colon + 1);
    double lo = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    double hi = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(s);
    if (!(lo < hi)) throw ConfigError(key + ": range needs lo < hi");
    return {lo, hi};
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number or lo:hi, got '" + s + "'");
  }
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"qspecial", "cartan",    "evalrep",    "qybe6v",
                                              "qybe8v",   "qdybe-irf", "twist",      "vertex-irf",
                                              "hexagonal"};
  return names;
}

struct SuiteConfig {
  std::string suite = "all";
  std::uint64_t seed = 42;
  int samples = 20;
  double tolerance = 0.0;  // 0: per-check default
  int trunc = 0;           // 0: per-check default N for product routes
  std::string format = "json";
  bool timing = false;     // wall_ms is measured only when set; otherwise 0
  std::map<std::string, Range> overrides;  // q, p, w, z (modulus)
  TruncationPolicy policy;

  void validate() const {
    if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
      throw ConfigError("unknown suite '" + suite + "'");
    if (samples < 1) throw ConfigError("samples must be >= 1");
    if (tolerance < 0.0 || !std::isfinite(tolerance)) throw ConfigError("tolerance must be > 0");
    if (trunc < 0) throw ConfigError("trunc must be >= 0");
    if (format != "json" && format != "csv" && format != "text") throw ConfigError("format must be json, csv or text");
    for (auto& [k, r] : overrides) {
      if (k != "q" && k != "p" && k != "w" && k != "z") throw ConfigError("unknown parameter override '" + k + "'");
      if ((k == "q" || k == "p") && !(r.lo > 0.0 && r.hi < 1.0)) throw ConfigError(k + " must lie in (0,1)");
      if ((k == "w" || k == "z") && !(r.lo > 0.0)) throw ConfigError(k + " must be positive");
    }
    policy.validate();
  }
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double in(Range r) { return r.fixed() ? r.lo : r.lo + (r.hi - r.lo) * uniform(); }
  // modulus in r, phase uniform in [-pi, pi); a fixed modulus gives a real point
  cplx complex_in(Range r) {
    double m = in(r);
    if (r.fixed()) return m;
    double t = (2.0 * uniform() - 1.0) * std::numbers::pi;
    return std::polar(m, t);
  }

 private:
  std::mt19937_64 rng_;
};

using Params = std::map<std::string, double>;

struct Check {
  std::string suite;
  Params params;
  Params truncation;
  double tolerance;
  std::function<double()> eval;
};

inline void put(Params& P, const std::string& k, cplx v) {
  P[k] = v.real();
  if (v.imag() != 0.0) P[k + "_im"] = v.imag();
}

namespace detail {

constexpr double kMinDenominator = 1e-6;

struct Box {
  Range q{0.1, 0.6}, p{0.1, 0.6}, w{0.5, 1.5}, z{0.2, 2.0};
};

inline Box make_box(const SuiteConfig& c, Box b = {}) {
  auto it = c.overrides.find("q");
  if (it != c.overrides.end()) b.q = it->second;
  if ((it = c.overrides.find("p")) != c.overrides.end()) b.p = it->second;
  if ((it = c.overrides.find("w")) != c.overrides.end()) b.w = it->second;
  if ((it = c.overrides.find("z")) != c.overrides.end()) b.z = it->second;
  return b;
}

// draw until accept() holds; accept may throw ybe::Error, which rejects
template <class Draw, class Accept>
auto draw_until(Draw&& draw, Accept&& accept) {
  for (int tries = 0; tries < 10000; ++tries) {
    auto pt = draw();
    try {
      if (accept(pt)) return pt;
    } catch (const Error&) {
    }
  }
  throw ConfigError("parameter box has no admissible points");
}

inline bool big(cplx v) { return std::abs(v) > kMinDenominator && std::isfinite(std::abs(v)); }

inline double tol(const SuiteConfig& c, double dflt) { return c.tolerance > 0 ? c.tolerance : dflt; }

inline Params policy_params(const TruncationPolicy& pol) {
  return {{"max_terms", double(pol.max_terms)}, {"tail_tolerance", pol.tail_tolerance}};
}

// ---- qspecial -----------------------------------------------------------

inline void build_qspecial(const SuiteConfig& c, Sampler& S, std::vector<Check>& out) {
  Box b = make_box(c);
  const auto pol = c.policy;
  for (int k = 0; k < c.samples; ++k) {
    struct Pt { cplx a, bb, cc, q, z; };
    Pt pt = draw_until(
        [&] { return Pt{S.in({0.1, 0.9}), S.in({0.1, 0.9}), S.in({0.1, 0.9}), S.in(b.q), S.complex_in({0.2, 0.9})}; },
        [&](const Pt& t) {
          return big(qp({t.cc, t.bb / t.a, t.a / t.bb}, {t.q}, pol)) && big(theta(t.q / t.z, t.q, pol)) &&
                 big(1.0 - t.z) && std::abs(t.q * t.cc / (t.a * t.bb * t.z)) > 1.0 + 1e-3;
        });
    Params P{{"index", double(k)}};
    put(P, "a", pt.a);
    put(P, "b", pt.bb);
    put(P, "c", pt.cc);
    put(P, "q", pt.q);
    put(P, "z", pt.z);
    Params T = policy_params(pol);
    double t = tol(c, 1e-9);
    out.push_back({"qspecial/recurrence", P, T, t, [=] { return phi21_recurrence_residual(pt.a, pt.bb, pt.cc, pt.q, pt.z, pol); }});
    out.push_back({"qspecial/connection", P, T, t, [=] { return connection_formula_residual(pt.a, pt.bb, pt.cc, pt.q, pt.z, pol); }});
    out.push_back({"qspecial/phi01_phi21", P, T, t, [=] { return phi01_phi21_identity_residual(pt.a, pt.q, pt.z, pol); }});
    out.push_back({"qspecial/f6v_expsum", P, T, t, [=] {
                     cplx u = pt.z;
                     cplx x = scalar_f6v(u, pt.q, pol).value, y = scalar_f6v_expsum(u, pt.q, pol);
                     return std::abs(x - y) / std::max(std::abs(x), 1.0);
                   }});
    out.push_back({"qspecial/exp_q", P, T, t, [=] {
                     cplx x = exp_q(pt.z, pt.q, pol).value, y = exp_q_series(pt.z, pt.q, pol).value;
                     return std::abs(x - y) / std::max(std::abs(x), 1.0);
                   }});
  }
}

// ---- cartan (exact) -------------------------------------------------------

// number of failed rational identities for (r, aleph)
inline double cartan_failures(int r, int aleph) {
  CartanData d = build_cartan_data(r, aleph);
  int bad = 0;
  bad += !(d.ThetaPlus * d.A * d.ThetaPlus.transpose() == d.A);
  bad += !(d.A + d.S1 + d.S1.transpose()).is_zero();
  bad += !(d.Abar * d.T == d.Pi);
  bad += !(d.T * d.Abar == d.Pi);
  bad += !(d.Omega * (d.P - d.Y.pow(aleph)) == d.Pi);
  bad += !(d.PiAleph * d.PiAleph == d.PiAleph);
  bad += !(d.ThetaPlus * d.S0 == d.S1);
  if (aleph == 1) bad += !(d.S1 == s1_explicit_aleph1(r));
  return bad;
}

// max over i,j of |sum_k c_ik [n(a_k,a_j)]_q / n - delta_ij| and the two closed forms' gap
inline double c_coeff_residual(int r, int n, cplx q) {
  double worst = 0;
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j) {
      cplx s = 0.0;
      for (int k = 1; k <= r; ++k) s += c_coeff(i, k, n, r, q) * qint((long long)n * cartan_ar(k, j), q) / double(n);
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
      worst = std::max(worst, std::abs(c_coeff(i, j, n, r, q) - c_coeff_alt(i, j, n, r, q)));
    }
  if (r == 1) worst = std::max(worst, std::abs(c_coeff(1, 1, n, 1, q) - double(n) / qint((long long)2 * n, q)));
  return worst;
}

inline void build_cartan(const SuiteConfig& c, Sampler& S, std::vector<Check>& out) {
  for (int r = 1; r <= 6; ++r)
    for (int a = 1; a <= r; ++a) {
      if (std::gcd(a, r + 1) != 1) continue;
      out.push_back({"cartan/identities", {{"r", double(r)}, {"aleph", double(a)}}, {}, 0.0,
                     [=] { return cartan_failures(r, a); }});
    }
  Box b = make_box(c);
  for (int k = 0; k < c.samples; ++k) {
    double q = S.in(b.q);
    for (int r = 1; r <= 6; ++r)
      for (int n = 1; n <= 5; ++n)
        out.push_back({"cartan/c_coeff", {{"index", double(k)}, {"r", double(r)}, {"n", double(n)}, {"q", q}}, {},
                       tol(c, 1e-12), [=] { return c_coeff_residual(r, n, q); }});
  }
}

// ---- evalrep --------------------------------------------------------------

inline void build_evalrep(const SuiteConfig& c, Sampler& S, std::vector<Check>& out) {
  Box b = make_box(c);
  for (int k = 0; k < c.samples; ++k) {
    cplx q = S.in(b.q), z = S.complex_in(b.z);
    for (int r = 1; r <= 4; ++r) {
      Params P{{"index", double(k)}, {"r", double(r)}};
      put(P, "q", q);
      put(P, "z", z);
      out.push_back({"evalrep/sigma", P, {}, tol(c, 1e-12), [=] {
                       double m = 0;
                       for (int a = 1; a <= r; ++a)
                         if (std::gcd(a, r + 1) == 1) m = std::max(m, sigma_intertwining_residual(r, z, q, a));
                       return m;
                     }});
      out.push_back({"evalrep/relations", P, {}, tol(c, 1e-9), [=] { return defining_relations_residual(r, z, q); }});
      out.push_back({"evalrep/imaginary_log", P, {{"nmax", 8.0}}, tol(c, 1e-9), [=] {
                       double m = 0;
                       for (int i = 1; i <= r; ++i) m = std::max(m, imaginary_log_residual(r, z, q, i, 8));
                       return m;
                     }});
    }
  }
}

// ---- R-matrix suites ------------------------------------------------------

inline bool r6v_ok(cplx z1, cplx z2, cplx q, const TruncationPolicy& pol) {
  return big(q * z2 - z1 / q) && big(qp(q * q * z1 / z2, ipow(q, 4), pol));
}

inline bool r8v_ok(cplx z, cplx p, cplx q, const TruncationPolicy& pol) {
  const cplx p2 = p * p, q2 = q * q, P4 = p2 * p2;
  return big(theta(z / q2, P4, pol)) && big(theta(p2 * z / q2, P4, pol)) &&
         big(qp({q2 * z, q2 * z, p2 / z, p2 * q2 * q2 / z}, {p2, q2 * q2}, pol));
}

inline bool irf_ok(cplx z, cplx p, cplx w, cplx q, const TruncationPolicy& pol) {
  const cplx p2 = p * p, q2 = q * q;
  return big(theta(z / q2, p2, pol)) && big(theta(w * w, p2, pol)) && big(qp(p2 / (w * w), p2, pol)) &&
         big(theta(p2 / (w * w), p2, pol)) && big(qp({q2 * z, q2 * z, p2 / z, p2 * q2 * q2 / z}, {p2, q2 * q2}, pol));
}

inline void build_qybe(const SuiteConfig& c, Sampler& S, std::vector<Check>& out, bool elliptic) {
  Box b = make_box(c);
  const auto pol = c.policy;
  for (int k = 0; k < c.samples; ++k) {
    struct Pt { cplx q, p, z1, z2, z3; };
    Pt pt = draw_until(
        [&] { return Pt{S.in(b.q), elliptic ? cplx(S.in(b.p)) : cplx(0.0), S.complex_in(b.z), S.complex_in(b.z), S.complex_in(b.z)}; },
        [&](const Pt& t) {
          cplx zs[3] = {t.z1, t.z2, t.z3};
          for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
              if (elliptic ? !r8v_ok(zs[i] / zs[j], t.p, t.q, pol) : !r6v_ok(zs[i], zs[j], t.q, pol)) return false;
            }
          return true;
        });
    Params P{{"index", double(k)}};
    put(P, "q", pt.q);
    if (elliptic) put(P, "p", pt.p);
    put(P, "z1", pt.z1);
    put(P, "z2", pt.z2);
    put(P, "z3", pt.z3);
    if (elliptic)
      out.push_back({"qybe8v", P, policy_params(pol), tol(c, 1e-9), [=] {
                       return qybe_residual([=](cplx a, cplx bb) { return r8v(a, bb, pt.p, pt.q, pol); }, pt.z1, pt.z2, pt.z3);
                     }});
    else
      out.push_back({"qybe6v", P, policy_params(pol), tol(c, 1e-9), [=] {
                       return qybe_residual([=](cplx a, cplx bb) { return r6v(a, bb, pt.q, pol); }, pt.z1, pt.z2, pt.z3);
                     }});
  }
}

inline void build_qdybe(const SuiteConfig& c, Sampler& S, std::vector<Check>& out) {
  Box b = make_box(c);
  const auto pol = c.policy;
  for (int k = 0; k < c.samples; ++k) {
    struct Pt { cplx q, p, w, z1, z2, z3; };
    Pt pt = draw_until(
        [&] { return Pt{S.in(b.q), S.in(b.p), S.in(b.w), S.complex_in(b.z), S.complex_in(b.z), S.complex_in(b.z)}; },
        [&](const Pt& t) {
          cplx zs[3] = {t.z1, t.z2, t.z3};
          for (int s = -2; s <= 2; ++s)
            for (int i = 0; i < 3; ++i)
              for (int j = i + 1; j < 3; ++j)
                if (!irf_ok(zs[i] / zs[j], t.p, t.w * ipow(t.q, s), t.q, pol)) return false;
          return true;
        });
    Params P{{"index", double(k)}};
    put(P, "q", pt.q);
    put(P, "p", pt.p);
    put(P, "w", pt.w);
    put(P, "z1", pt.z1);
    put(P, "z2", pt.z2);
    put(P, "z3", pt.z3);
    out.push_back({"qdybe-irf/qdybe", P, policy_params(pol), tol(c, 1e-9), [=] {
                     return qdybe_residual([=](cplx z, cplx w) { return r_irf(z, pt.p, w, pt.q, pol); }, pt.z1, pt.z2,
                                           pt.z3, pt.w, pt.q);
                   }});
    out.push_back({"qdybe-irf/star_triangle", P, policy_params(pol), tol(c, 1e-9),
                   [=] { return star_triangle_residual(pt.z1, pt.z2, pt.z3, pt.p, pt.w, pt.q, pol); }});
    out.push_back({"qdybe-irf/zero_weight", P, policy_params(pol), tol(c, 1e-12), [=] {
                     CMatrix R = r_irf(pt.z1 / pt.z2, pt.p, pt.w, pt.q, pol);
                     return zero_weight_residual(R) / std::max(R.norm(), 1.0);
                   }});
  }
}

// The twist product converges for p < w < 1 at rate max(w^2, p^2/w^2); the
// closed forms of F and F21 need |p^2 z/q^2| < 1 and |p^2/(q^2 z)| < 1.
inline int twist_default_n(double p, double w) {
  double rate = std::max(w * w, p * p / (w * w));
  return std::min(2000, static_cast<int>(std::ceil(std::log(1e-13) / std::log(rate))) + 1);
}

inline void build_twist(const SuiteConfig& c, Sampler& S, std::vector<Check>& out) {
  Box b = make_box(c, Box{{0.1, 0.6}, {0.1, 0.4}, {0.5, 0.9}, {0.2, 2.0}});
  const auto pol = c.policy;
  for (int k = 0; k < c.samples; ++k) {
    struct Pt { cplx q, p, w, z; };
    Pt pt = draw_until([&] { return Pt{S.in(b.q), S.in(b.p), S.in(b.w), S.complex_in(b.z)}; },
                       [&](const Pt& t) {
                         const double r = std::abs(t.p * t.p / (t.q * t.q));
                         return std::abs(t.p) < std::abs(t.w) && r * std::abs(t.z) < 0.9 && r / std::abs(t.z) < 0.9 &&
                                irf_ok(t.z, t.p, t.w, t.q, pol) && r6v_ok(t.z, 1.0, t.q, pol) &&
                                big(qp({t.q * t.q * t.p * t.p * t.z, t.q * t.q * t.p * t.p / t.z}, {t.q * t.q * t.q * t.q, t.p * t.p}, pol)) &&
                                big(1.0 - 1.0 / (t.w * t.w)) && big(1.0 - t.w * t.w / (t.p * t.p));
                       });
    int N = c.trunc > 0 ? c.trunc : twist_default_n(pt.p.real(), pt.w.real());
    Params P{{"index", double(k)}};
    put(P, "q", pt.q);
    put(P, "p", pt.p);
    put(P, "w", pt.w);
    put(P, "z", pt.z);
    Params T = policy_params(pol);
    T["N"] = N;
    out.push_back({"twist/product_vs_closed", P, T, tol(c, 1e-9), [=] {
                     return rel_residual(f_twist_product(pt.z, 1.0, pt.p, pt.w, pt.q, N, pol),
                                         f_twist_closed(pt.z, pt.p, pt.w, pt.q, pol));
                   }});
    out.push_back({"twist/r_irf_from_twist", P, T, tol(c, 1e-8), [=] {
                     return rel_residual(r_irf_from_twist(pt.z, 1.0, pt.p, pt.w, pt.q, N, pol), r_irf(pt.z, pt.p, pt.w, pt.q, pol));
                   }});
    out.push_back({"twist/r_irf_from_closed_twist", P, policy_params(pol), tol(c, 1e-8), [=] {
                     return rel_residual(r_irf_from_twist_closed(pt.z, 1.0, pt.p, pt.w, pt.q, pol), r_irf(pt.z, pt.p, pt.w, pt.q, pol));
                   }});
    out.push_back({"twist/zero_weight", P, policy_params(pol), tol(c, 1e-12), [=] {
                     CMatrix F = f_twist_closed(pt.z, pt.p, pt.w, pt.q, pol);
                     return zero_weight_residual(F) / std::max(F.norm(), 1.0);
                   }});
  }
}

inline void build_vertex_irf(const SuiteConfig& c, Sampler& S, std::vector<Check>& out) {
  Box b = make_box(c);
  const auto pol = c.policy;
  for (int k = 0; k < c.samples; ++k) {
    struct Pt { cplx q, p, w, z1, z2; };
    Pt pt = draw_until(
        [&] { return Pt{S.in(b.q), S.in(b.p), S.in(b.w), S.complex_in(b.z), S.complex_in(b.z)}; },
        [&](const Pt& t) {
          const cplx p2 = t.p * t.p, q2 = t.q * t.q;
          if (!r8v_ok(t.z1 / t.z2, t.p, t.q, pol)) return false;
          for (int s = -3; s <= 3; ++s) {
            cplx ws = t.w * ipow(t.q, s);
            if (!irf_ok(t.z1 / t.z2, t.p, ws, t.q, pol)) return false;
            if (!big(qp(ws * ws, p2, pol)) || !big(1.0 - ws * ws) || !big(ws * ws - p2)) return false;
          }
          for (cplx z : {t.z1, t.z2})
            if (!big(theta(z, p2, pol)) || !big(qp({q2 * z, q2 * q2 * p2 / z, q2 * p2 / z}, {q2 * q2, p2}, pol)))
              return false;
          return std::abs(p2 * t.z1) < 0.9 && std::abs(p2 * t.z2) < 0.9;
        });
    Params P{{"index", double(k)}};
    put(P, "q", pt.q);
    put(P, "p", pt.p);
    put(P, "w", pt.w);
    put(P, "z1", pt.z1);
    put(P, "z2", pt.z2);
    Params T = policy_params(pol);
    out.push_back({"vertex-irf/matrix", P, T, tol(c, 1e-7), [=] { return vertex_irf_residual(pt.z1, pt.z2, pt.p, pt.w, pt.q, pol); }});
    out.push_back({"vertex-irf/phi_vectors", P, T, tol(c, 1e-7), [=] {
                     auto r = phi_vector_residual(pt.z1, pt.z2, pt.p, pt.w, pt.q, -2, 2, pol);
                     return std::max(r.primal, r.dual);
                   }});
    out.push_back({"vertex-irf/s_times_m", P, T, tol(c, 1e-7), [=] { return s_times_m_residual(pt.z1, pt.p, pt.w, pt.q, pol); }});
    out.push_back({"vertex-irf/s_route", P, T, tol(c, 1e-7), [=] {
                     return rel_residual(s_gauge(pt.z1, pt.p, pt.w, pt.q, pol), s_gauge_via_route(pt.z1, pt.p, pt.w, pt.q, pol));
                   }});
    out.push_back({"vertex-irf/difference_equations", P, T, tol(c, 1e-9), [=] {
                     const cplx z = pt.z1, zi = 1.0 / z;
                     return std::max({eq_a_plus_residual(z, pt.p, pt.w, pol), eq_m_plus_residual(z, pt.p, pt.w, pt.q, pol),
                                      eq_a_bis_residual(zi, pt.p, pt.w, pol), beta_relation_residual(zi, pt.p, pt.w, pol),
                                      eq_a_minus_residual(zi, pt.p, pt.w, pol), eq_m_minus_residual(z, pt.p, pt.w, pt.q, pol)});
                   }});
    out.push_back({"vertex-irf/m_minus_routes", P, T, tol(c, 1e-9), [=] {
                     return rel_residual(m_minus_inv(pt.z1, pt.p, pt.w, pt.q, Route::TwoPhiOne, 0, pol),
                                         m_minus_inv_onephione(pt.z1, pt.p, pt.w, pt.q, pol));
                   }});
    int N = c.trunc > 0 ? c.trunc : std::max(1, static_cast<int>(std::ceil(std::log(1e-13) / (2.0 * std::log(pt.p.real())))) + 1);
    Params T2 = T;
    T2["N"] = N;
    out.push_back({"vertex-irf/m_plus_routes", P, T2, tol(c, 1e-7), [=] {
                     return rel_residual(m_plus_product(pt.z1, pt.p, pt.w, pt.q, N, pol),
                                         m_plus_hypergeometric(pt.z1, pt.p, pt.w, pt.q, pol));
                   }});
  }
}

inline void build_hexagonal(const SuiteConfig& c, Sampler& S, std::vector<Check>& out) {
  Box b = make_box(c);
  const auto pol = c.policy;
  for (int r = 1; r <= 3; ++r)
    for (int k = 0; k < c.samples; ++k) {
      struct Pt { cplx q, z; };
      Pt pt = draw_until([&] { return Pt{S.in(b.q), S.complex_in(b.z)}; },
                         [&](const Pt& t) {
                           double s = (r % 2 == 1) ? 1.0 : -1.0;
                           cplx Q = ipow(t.q, 2 * (r + 1));
                           return big(qp(s * ipow(t.q, 2 * r) * t.z, Q, pol)) && big(qp(s / t.z, Q, pol)) &&
                                  big(qp(s * t.q * t.q / t.z, Q, pol)) && big(qp(s * ipow(t.q, 2 * (r + 1)) * t.z, Q, pol));
                         });
      Params P{{"index", double(k)}, {"r", double(r)}};
      put(P, "q", pt.q);
      put(P, "z", pt.z);
      double t = tol(c, 1e-9);
      out.push_back({"hexagonal", P, policy_params(pol), t, [=] {
                       ResidualReport rep = hexagonal_check(r, pt.z, pt.q, pol, t);
                       if (!rep.error.empty()) throw PoleHit(rep.error);
                       return rep.residual;
                     }});
    }
}

}  // namespace detail

// Each suite draws from its own stream seeded by (seed, suite index), so a
// suite's points do not depend on which other suites run.
inline std::vector<Check> build_checks(const SuiteConfig& c) {
  c.validate();
  std::vector<Check> out;
  const auto& names = suite_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string& s = names[i];
    if (c.suite != "all" && c.suite != s) continue;
    std::seed_seq seq{static_cast<std::uint32_t>(c.seed), static_cast<std::uint32_t>(c.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::array<std::uint64_t, 1> st{};
    std::array<std::uint32_t, 2> words{};
    seq.generate(words.begin(), words.end());
    st[0] = (std::uint64_t(words[0]) << 32) | words[1];
    Sampler S(st[0]);
    if (s == "qspecial") detail::build_qspecial(c, S, out);
    else if (s == "cartan") detail::build_cartan(c, S, out);
    else if (s == "evalrep") detail::build_evalrep(c, S, out);
    else if (s == "qybe6v") detail::build_qybe(c, S, out, false);
    else if (s == "qybe8v") detail::build_qybe(c, S, out, true);
    else if (s == "qdybe-irf") detail::build_qdybe(c, S, out);
    else if (s == "twist") detail::build_twist(c, S, out);
    else if (s == "vertex-irf") detail::build_vertex_irf(c, S, out);
    else if (s == "hexagonal") detail::build_hexagonal(c, S, out);
  }
  return out;
}

// YBE_FORGE_THREADS caps the worker count; unset or invalid means hardware concurrency
inline unsigned thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* e = std::getenv("YBE_FORGE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(e, &end, 10);
    if (end != e && *end == '\0' && v >= 1) return static_cast<unsigned>(std::min<long>(v, hw * 4L));
  }
  return hw;
}

inline std::vector<ResidualReport> run_checks(const std::vector<Check>& checks, bool timing = false) {
  std::vector<ResidualReport> reps(checks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < checks.size();) {
      const Check& ch = checks[i];
      ResidualReport& r = reps[i];
      r.suite = ch.suite;
      r.params = ch.params;
      r.truncation = ch.truncation;
      r.tolerance = ch.tolerance;
      auto t0 = std::chrono::steady_clock::now();
      try {
        r.residual = ch.eval();
        if (!std::isfinite(r.residual)) r.error = "non-finite residual";
      } catch (const Error& e) {
        r.error = e.what();
        r.residual = std::numeric_limits<double>::infinity();
      }
      if (timing) r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      r.decide();
    }
  };
  unsigned n = std::min<std::size_t>(thread_cap(), std::max<std::size_t>(1, checks.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::stable_sort(reps.begin(), reps.end(), [](const ResidualReport& a, const ResidualReport& b) {
    return std::tie(a.suite, a.params) < std::tie(b.suite, b.params);
  });
  return reps;
}

inline std::vector<ResidualReport> run_suite(const SuiteConfig& c) { return run_checks(build_checks(c), c.timing); }

// ---- convergence studies --------------------------------------------------

struct ConvergeRow {
  int N;
  double residual;
};

struct ConvergeResult {
  std::string target;
  Params params;
  std::vector<ConvergeRow> rows;
  bool monotone = true;
  bool has_fit = false;
  double rate = 0.0;  // fitted residual(N+1)/residual(N)
};

inline const std::vector<std::string>& converge_targets() {
  static const std::vector<std::string> t{"twist", "m_plus", "m_minus", "r6v_universal", "r_irf_twist"};
  return t;
}

// least-squares slope of log residual against N, exponentiated
inline ConvergeResult fit_rows(ConvergeResult res) {
  std::vector<std::pair<double, double>> pts;
  for (auto& r : res.rows)
    if (r.residual > 0 && std::isfinite(r.residual)) pts.push_back({double(r.N), std::log(r.residual)});
  for (std::size_t i = 1; i < res.rows.size(); ++i)
    if (!(res.rows[i].residual < res.rows[i - 1].residual)) res.monotone = false;
  if (pts.size() >= 2) {
    double mx = 0, my = 0;
    for (auto& [x, y] : pts) mx += x, my += y;
    mx /= pts.size();
    my /= pts.size();
    double sxy = 0, sxx = 0;
    for (auto& [x, y] : pts) sxy += (x - mx) * (y - my), sxx += (x - mx) * (x - mx);
    res.has_fit = true;
    res.rate = std::exp(sxy / sxx);
  }
  return res;
}

// params: q, p, w, z (real); defaults depend on the target
inline ConvergeResult converge(const std::string& target, int nmin, int nmax, Params params,
                               const TruncationPolicy& pol = {}) {
  if (std::find(converge_targets().begin(), converge_targets().end(), target) == converge_targets().end())
    throw ConfigError("unknown converge target '" + target + "'");
  if (nmin < 0 || nmax < nmin) throw ConfigError("N range needs 0 <= nmin <= nmax");
  pol.validate();
  Params dflt;
  if (target == "twist") dflt = {{"q", 0.4}, {"p", 0.3}, {"w", 0.6}, {"z", 0.5}};
  else if (target == "r_irf_twist") dflt = {{"q", 0.4}, {"p", 0.2}, {"w", 0.8}, {"z", 0.5}};
  else if (target == "m_plus") dflt = {{"q", 0.4}, {"p", 0.3}, {"w", 0.8}, {"z", 0.4}};
  else if (target == "m_minus") dflt = {{"q", 0.4}, {"p", 0.25}, {"w", 0.8}, {"z", 0.6}};
  else dflt = {{"q", 0.4}, {"z", 0.2}};
  for (auto& [k, v] : params) {
    if (!dflt.count(k)) throw ConfigError("parameter '" + k + "' does not apply to target " + target);
    dflt[k] = v;
  }
  ConvergeResult res;
  res.target = target;
  res.params = dflt;
  const double q = dflt["q"], z = dflt["z"];
  const double p = dflt.count("p") ? dflt["p"] : 0.0, w = dflt.count("w") ? dflt["w"] : 1.0;
  CMatrix ref;
  if (target == "twist") ref = f_twist_closed(z, p, w, q, pol);
  else if (target == "r_irf_twist") ref = r_irf(z, p, w, q, pol);
  else if (target == "m_plus") ref = m_plus_hypergeometric(z, p, w, q, pol);
  else if (target == "m_minus") ref = m_minus_inv_onephione(z, p, w, q, pol);
  else ref = r6v(z, 1.0, q, pol);
  for (int N = nmin; N <= nmax; ++N) {
    CMatrix X;
    if (target == "twist") X = f_twist_product(z, 1.0, p, w, q, N, pol);
    else if (target == "r_irf_twist") X = r_irf_from_twist(z, 1.0, p, w, q, N, pol);
    else if (target == "m_plus") X = m_plus_product(z, p, w, q, N, pol);
    else if (target == "m_minus") X = m_minus_inv_product(z, p, w, q, N, pol);
    else X = r6v_universal_truncated(z, 1.0, q, N);
    res.rows.push_back({N, rel_residual(X, ref)});
  }
  return fit_rows(res);
}

}  // namespace ybe
