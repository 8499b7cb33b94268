#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmatrix.hpp"
#include "half_int.hpp"
#include "rational.hpp"
#include "representation.hpp"
#include "triple.hpp"

namespace dsirrep {

struct NamedResidual {
  std::string name;
  double residual = 0.0;
};
using ResidualList = std::vector<NamedResidual>;

inline double worst(const ResidualList &list) {
  double w = 0.0;
  for (const auto &r : list) w = std::max(w, r.residual);
  return w;
}
inline const NamedResidual *worst_entry(const ResidualList &list) {
  const NamedResidual *w = nullptr;
  for (const auto &r : list)
    if (!w || r.residual > w->residual) w = &r;
  return w;
}

// ---------------------------------------------------------------------------
// Commutation relations
// ---------------------------------------------------------------------------

/// Residual max|[X,Y] - rhs| for each of the 45 generator pairs. The sign of
/// the [V,V] relations follows g.algebra.
inline ResidualList check_all_crs(const GeneratorSet &g) {
  const double curv = g.algebra == Algebra::dS ? 1.0 : -1.0;
  const auto n = g.dim();
  const CMatrix zero = zeros(n, n);
  ResidualList out;
  out.reserve(45);
  auto add = [&](std::string x, std::string y, const CMatrix &a, const CMatrix &b, const CMatrix &rhs) {
    out.push_back({"[" + x + "," + y + "]", max_abs(commutator(a, b) - rhs)});
  };
  auto eps_sum = [&](int i, int j, const Triple &t) {
    CMatrix r = zero;
    for (int k = 0; k < 3; ++k)
      if (const int e = levi_civita(i, j, k)) r += (kI * double(e)) * t[k];
    return r;
  };
  auto nm = [](char x, int i) { return std::string{x, axis_name(i)}; };

  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) add(nm('J', i), nm('J', j), g.j[i], g.j[j], eps_sum(i, j, g.j));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) add(nm('J', i), nm('K', j), g.j[i], g.k[j], eps_sum(i, j, g.k));
  for (int i = 0; i < 3; ++i) add(nm('J', i), "Vt", g.j[i], g.vt, zero);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) add(nm('J', i), nm('V', j), g.j[i], g.v[j], eps_sum(i, j, g.v));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) add(nm('K', i), nm('K', j), g.k[i], g.k[j], -eps_sum(i, j, g.j));
  for (int i = 0; i < 3; ++i) add(nm('K', i), "Vt", g.k[i], g.vt, -kI * g.v[i]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) add(nm('K', i), nm('V', j), g.k[i], g.v[j], i == j ? CMatrix(-kI * g.vt) : zero);
  for (int i = 0; i < 3; ++i) add("Vt", nm('V', i), g.vt, g.v[i], (curv * kI) * g.k[i]);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) add(nm('V', i), nm('V', j), g.v[i], g.v[j], curv * eps_sum(i, j, g.j));
  return out;
}

/// Residual of X^dagger -+ X against the required pattern: J Hermitian, K
/// anti-Hermitian; dS: V_i Hermitian and V_t anti-Hermitian; AdS the reverse.
inline ResidualList check_hermiticity(const GeneratorSet &g) {
  const bool ds = g.algebra == Algebra::dS;
  ResidualList out;
  auto herm = [](const CMatrix &x) { return max_abs(dagger(x) - x); };
  auto anti = [](const CMatrix &x) { return max_abs(dagger(x) + x); };
  for (int i = 0; i < 3; ++i) out.push_back({std::string{'J', axis_name(i)}, herm(g.j[i])});
  for (int i = 0; i < 3; ++i) out.push_back({std::string{'K', axis_name(i)}, anti(g.k[i])});
  out.push_back({"Vt", ds ? anti(g.vt) : herm(g.vt)});
  for (int i = 0; i < 3; ++i) out.push_back({std::string{'V', axis_name(i)}, ds ? herm(g.v[i]) : anti(g.v[i])});
  return out;
}

// ---------------------------------------------------------------------------
// Casimir operators
// ---------------------------------------------------------------------------

/// C1 from the ladder combinations J+-, K+- (X+- = Xx +- iXy) and
/// V+- = (Vx +- iVy)/2, W+- = (Vz +- Vt)/2.
inline CMatrix casimir1_matrix(const GeneratorSet &g) {
  const CMatrix jp = g.j[0] + kI * g.j[1], jm = g.j[0] - kI * g.j[1];
  const CMatrix kp = g.k[0] + kI * g.k[1], km = g.k[0] - kI * g.k[1];
  const CMatrix vp = (g.v[0] + kI * g.v[1]) * 0.5, vm = (g.v[0] - kI * g.v[1]) * 0.5;
  const CMatrix wp = (g.v[2] + g.vt) * 0.5, wm = (g.v[2] - g.vt) * 0.5;
  return g.k[2] * g.k[2] - g.j[2] * g.j[2] + 0.5 * ((kp * km + km * kp) - (jp * jm + jm * jp)) -
         2.0 * ((vp * vm + vm * vp) + (wp * wm + wm * wp));
}

/// C1 = Vt^2 + K^2 - J^2 - V^2 from Cartesian components.
inline CMatrix casimir1_direct(const GeneratorSet &g) {
  return g.vt * g.vt + dot(g.k, g.k) - dot(g.j, g.j) - dot(g.v, g.v);
}

/// One literal reading of C2 = (K.J)^2 - (V.J)^2 + Q.Q with Q = Vt J + K x V.
/// Each field selects one of the ambiguities in the printed formula.
struct Casimir2Reading {
  enum class Last { QQ, QJ, JQ, JJ };
  int cross_sign = 1;    // Q = Vt J + cross_sign * (K x V)
  bool k_left = true;    // (K x V)_i = eps_ijk K_j V_k, else eps_ijk V_k K_j
  bool vt_left = true;   // Vt J_i, else J_i Vt
  int vj_sign = -1;      // coefficient of (V.J)^2
  int last_sign = 1;     // coefficient of the final term
  Last last = Last::QQ;

  std::string describe() const {
    std::string q = std::string(vt_left ? "Vt*J" : "J*Vt") + (cross_sign > 0 ? " + " : " - ") +
                    (k_left ? "eps K_j V_k" : "eps V_k K_j");
    const char *lt[] = {"Q.Q", "Q.J", "J.Q", "J.J"};
    return std::string("(K.J)^2 ") + (vj_sign < 0 ? "- " : "+ ") + "(V.J)^2 " + (last_sign > 0 ? "+ " : "- ") +
           lt[int(last)] + "  with Q = " + q;
  }
  friend bool operator==(const Casimir2Reading &, const Casimir2Reading &) = default;
};

/// Reading selected by disambiguate_casimir2 over the ten reference irreps.
inline constexpr Casimir2Reading kDefaultCasimir2Reading{};

inline Triple casimir2_q_vector(const GeneratorSet &g, const Casimir2Reading &r) {
  Triple cr = r.k_left ? cross(g.k, g.v) : Triple{};
  if (!r.k_left) {
    const Triple vk = cross(g.v, g.k); // eps_ijk V_j K_k = -eps_ijk V_k K_j
    for (int i = 0; i < 3; ++i) cr[i] = -vk[i];
  }
  Triple q;
  for (int i = 0; i < 3; ++i)
    q[i] = (r.vt_left ? CMatrix(g.vt * g.j[i]) : CMatrix(g.j[i] * g.vt)) + double(r.cross_sign) * cr[i];
  return q;
}

inline CMatrix casimir2_matrix(const GeneratorSet &g, const Casimir2Reading &r = kDefaultCasimir2Reading) {
  const CMatrix kj = dot(g.k, g.j), vj = dot(g.v, g.j);
  const Triple q = casimir2_q_vector(g, r);
  CMatrix last;
  switch (r.last) {
  case Casimir2Reading::Last::QQ: last = dot(q, q); break;
  case Casimir2Reading::Last::QJ: last = dot(q, g.j); break;
  case Casimir2Reading::Last::JQ: last = dot(g.j, q); break;
  case Casimir2Reading::Last::JJ: last = dot(g.j, g.j); break;
  }
  return kj * kj + double(r.vj_sign) * (vj * vj) + double(r.last_sign) * last;
}

inline std::vector<Casimir2Reading> enumerate_casimir2_readings() {
  std::vector<Casimir2Reading> out;
  for (int cs : {1, -1})
    for (bool kl : {true, false})
      for (bool vl : {true, false})
        for (int vj : {-1, 1})
          for (int ls : {1, -1})
            for (auto last : {Casimir2Reading::Last::QQ, Casimir2Reading::Last::QJ, Casimir2Reading::Last::JQ,
                              Casimir2Reading::Last::JJ})
              out.push_back({cs, kl, vl, vj, ls, last});
  return out;
}

/// lambda = tr(M)/dim when M is within tol of lambda * I.
inline std::optional<Complex> scalar_check(const CMatrix &m, double tol = 1e-9) {
  if (m.rows() != m.cols()) throw ShapeError("scalar_check: matrix must be square");
  if (m.rows() == 0) return std::nullopt;
  const Complex lambda = m.trace() / double(m.rows());
  if (max_abs(m - lambda * identity(m.rows())) < tol) return lambda;
  return std::nullopt;
}

struct CasimirInvariants {
  Rat neg_c1;
  Rat neg_c2;
  HalfInt p;
  HalfInt q;
};

/// TypeA: p = N, q = 0, -C1 = p(p+1) - 2, C2 = 0. TypeB: p = q = (N+1)/2,
/// -C1 = 2(p^2 - 1), -C2 = p^2 (p^2 - 1). For TypeA q = 1 gives the same values.
inline CasimirInvariants casimir_invariants_closed_form(const CanonicalSpec &spec) {
  if (spec.n < 2) throw DomainError("casimir invariants: N must be at least 2");
  if (spec.family == Family::TypeA) {
    const Rat p = spec.n;
    return {p * (p + 1) - 2, p * (p + 1) * 0 * (0 - 1), HalfInt::integer(spec.n), HalfInt::integer(0)};
  }
  const HalfInt p = half(spec.n + 1);
  const Rat pr = p.to_rat();
  return {2 * (pr * pr - 1), pr * pr * (pr * pr - 1), p, p};
}

/// Recovers (p, q) from -C1 and -C2 of an irrep, if they fit either family.
inline std::optional<std::pair<HalfInt, HalfInt>> identify_pq(double neg_c1, double neg_c2, double tol = 1e-7) {
  auto as_half = [&](double x) -> std::optional<HalfInt> {
    const double t = std::round(2 * x);
    if (std::abs(2 * x - t) > 1e-6) return std::nullopt;
    return half(int(t));
  };
  if (std::abs(neg_c2) < tol) {
    // p(p+1) = -C1 + 2
    const double disc = 1 + 4 * (neg_c1 + 2);
    if (disc < 0) return std::nullopt;
    const auto p = as_half((-1 + std::sqrt(disc)) / 2);
    if (!p || !p->is_integer() || p->twice() < 4) return std::nullopt;
    return std::pair{*p, HalfInt::integer(0)};
  }
  const double p2 = neg_c1 / 2 + 1;
  if (p2 <= 0) return std::nullopt;
  const auto p = as_half(std::sqrt(p2));
  if (!p || p->twice() < 3) return std::nullopt;
  const double pv = p->value();
  if (std::abs(pv * pv * (pv * pv - 1) - neg_c2) > tol * std::max(1.0, std::abs(neg_c2))) return std::nullopt;
  return std::pair{*p, *p};
}

struct Casimir2Disambiguation {
  std::vector<Casimir2Reading> accepted;
  bool accepted_agree = false; // all accepted readings give the same matrices
  std::optional<Casimir2Reading> chosen;
};

/// Tries every literal reading on the ten reference irreps and keeps those
/// that are scalar on each and match the closed-form -C2 within tol.
inline Casimir2Disambiguation disambiguate_casimir2(double tol = 1e-8) {
  std::vector<GeneratorSet> irreps;
  std::vector<double> expected;
  for (int ref = 1; ref <= 10; ++ref) {
    const auto spec = reference_irrep(ref);
    irreps.push_back(canonical_generators(spec));
    expected.push_back(-to_double(casimir_invariants_closed_form(spec).neg_c2));
  }
  Casimir2Disambiguation out;
  for (const auto &r : enumerate_casimir2_readings()) {
    bool ok = true;
    for (std::size_t i = 0; i < irreps.size() && ok; ++i) {
      const auto s = scalar_check(casimir2_matrix(irreps[i], r), tol);
      ok = s && std::abs(*s - expected[i]) < tol;
    }
    if (ok) out.accepted.push_back(r);
  }
  out.accepted_agree = !out.accepted.empty();
  for (std::size_t a = 1; a < out.accepted.size() && out.accepted_agree; ++a)
    for (const auto &g : irreps)
      if (max_abs(casimir2_matrix(g, out.accepted[a]) - casimir2_matrix(g, out.accepted[0])) > tol) {
        out.accepted_agree = false;
        break;
      }
  if (out.accepted_agree) {
    const auto lit = std::find(out.accepted.begin(), out.accepted.end(), kDefaultCasimir2Reading);
    out.chosen = lit != out.accepted.end() ? *lit : out.accepted.front();
  }
  return out;
}

/// Max over generators X of |[C, X]|.
inline double commutes_with_all(const CMatrix &c, const GeneratorSet &g) {
  double w = 0.0;
  for (auto name : kGeneratorNames) w = std::max(w, max_abs(commutator(c, g.generator(name))));
  return w;
}

// ---------------------------------------------------------------------------
// Full report
// ---------------------------------------------------------------------------

struct VerifyOptions {
  double cr_tolerance = 1e-10;
  double hermiticity_tolerance = 1e-11;
  double scalar_tolerance = 1e-9;
  Casimir2Reading casimir2_reading = kDefaultCasimir2Reading;
};

struct VerificationReport {
  Algebra algebra = Algebra::dS;
  ResidualList cr_residuals;
  ResidualList hermiticity_residuals;
  CMatrix casimir1;
  double casimir1_forms_agreement = 0.0; // ladder form vs Cartesian form
  double casimir1_commutator = 0.0;      // max |[C1, X]|
  std::optional<Complex> casimir1_scalar;
  std::optional<Complex> casimir2_scalar;
  std::optional<HalfInt> p;
  std::optional<HalfInt> q;
  bool duplicates_present = false;
  VerifyOptions options;

  bool crs_ok() const { return worst(cr_residuals) < options.cr_tolerance; }
  bool hermiticity_ok() const { return worst(hermiticity_residuals) < options.hermiticity_tolerance; }
  bool ok() const { return crs_ok() && hermiticity_ok(); }
};

inline bool has_duplicate_labels(const BackboneGraph &g) {
  auto labels = g.blocks;
  std::sort(labels.begin(), labels.end());
  return std::adjacent_find(labels.begin(), labels.end()) != labels.end();
}

inline VerificationReport verify(const GeneratorSet &g, const VerifyOptions &opt = {}) {
  VerificationReport r;
  r.options = opt;
  r.algebra = g.algebra;
  r.cr_residuals = check_all_crs(g);
  r.hermiticity_residuals = check_hermiticity(g);
  r.casimir1 = casimir1_matrix(g);
  r.casimir1_forms_agreement = max_abs(r.casimir1 - casimir1_direct(g));
  r.casimir1_commutator = commutes_with_all(r.casimir1, g);
  r.casimir1_scalar = scalar_check(r.casimir1, opt.scalar_tolerance);
  r.casimir2_scalar = scalar_check(casimir2_matrix(g, opt.casimir2_reading), opt.scalar_tolerance);
  r.duplicates_present = has_duplicate_labels(g.backbone);

  // p and q are defined through the dS invariants.
  const GeneratorSet ds = to_ds(g);
  const auto c1 = g.algebra == Algebra::dS ? r.casimir1_scalar : scalar_check(casimir1_matrix(ds), opt.scalar_tolerance);
  const auto c2 = g.algebra == Algebra::dS ? r.casimir2_scalar
                                           : scalar_check(casimir2_matrix(ds, opt.casimir2_reading), opt.scalar_tolerance);
  if (c1 && c2 && r.ok()) {
    if (const auto pq = identify_pq(-c1->real(), -c2->real())) {
      r.p = pq->first;
      r.q = pq->second;
    }
  }
  return r;
}

} // namespace dsirrep
