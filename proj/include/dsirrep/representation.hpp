#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cmatrix.hpp"
#include "coupling.hpp"
#include "errors.hpp"
#include "hla_block.hpp"
#include "rational.hpp"
#include "triple.hpp"

namespace dsirrep {

enum class Family { TypeA, TypeB };
enum class Algebra { dS, AdS };

inline std::string_view family_name(Family f) { return f == Family::TypeA ? "A" : "B"; }
inline std::string_view algebra_name(Algebra a) { return a == Algebra::dS ? "ds" : "ads"; }

/// One of the two canonical irrep families with N blocks:
/// TypeA (A,A) + (A-1/2,A-1/2) + ... + (0,0); TypeB (A,0) + (A-1/2,1/2) + ... + (0,A).
struct CanonicalSpec {
  Family family = Family::TypeA;
  int n = 2;
};

struct Edge {
  std::size_t p = 0;
  std::size_t q = 0;
  friend bool operator==(const Edge &, const Edge &) = default;
};

/// Blocks in matrix order plus the pairs carrying nonzero V blocks. Edges
/// refer to positions, so equal labels may appear more than once.
struct BackboneGraph {
  std::vector<BlockLabel> blocks;
  std::vector<Edge> edges;
  std::vector<std::string> names; // optional display names, parallel to blocks

  std::size_t size() const { return blocks.size(); }
  std::string name(std::size_t i) const {
    return i < names.size() && !names[i].empty() ? names[i] : std::to_string(i);
  }
  int total_dim() const {
    int d = 0;
    for (const auto &b : blocks) d += block_dim(b);
    return d;
  }
  std::vector<int> offsets() const {
    std::vector<int> off{0};
    for (const auto &b : blocks) off.push_back(off.back() + block_dim(b));
    return off;
  }
  /// Throws on out-of-range indices, self-edges and repeated edges.
  void check_indices() const {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto [p, q] = edges[e];
      if (p >= blocks.size() || q >= blocks.size())
        throw DomainError("edge " + std::to_string(e) + " refers to a missing block");
      if (p == q) throw DomainError("edge " + std::to_string(e) + " joins block " + name(p) + " to itself");
      for (std::size_t f = 0; f < e; ++f)
        if ((edges[f].p == p && edges[f].q == q) || (edges[f].p == q && edges[f].q == p))
          throw DomainError("edge " + name(p) + "-" + name(q) + " listed twice");
    }
  }
};

/// Coefficients of one edge: V_PQ = t_pq U_PQ and V_QP = t_qp U_QP.
struct EdgeCoupling {
  double t_pq = 0.0;
  double t_qp = 0.0;
};

inline BackboneGraph canonical_backbone(const CanonicalSpec &spec) {
  if (spec.n < 2)
    throw DomainError("a representation needs at least two blocks, got N=" + std::to_string(spec.n));
  BackboneGraph g;
  const int top = spec.n - 1; // 2A
  for (int k = 0; k < spec.n; ++k) {
    if (spec.family == Family::TypeA)
      g.blocks.push_back(BlockLabel::from_twice(top - k, top - k));
    else
      g.blocks.push_back(BlockLabel::from_twice(top - k, k));
  }
  for (int k = 0; k + 1 < spec.n; ++k) g.edges.push_back({std::size_t(k), std::size_t(k + 1)});
  return g;
}

inline long canonical_dimension(const CanonicalSpec &spec) {
  const long n = spec.n;
  if (spec.family == Family::TypeA) return n * (n + 1) * (2 * n + 1) / 6;
  return n * (n + 1) * (n + 2) / 6;
}

/// Exact t_{n,n+1}^2 for edge n (1-based).
inline Rat canonical_t_squared(const CanonicalSpec &spec, int n) {
  if (spec.n < 2) throw DomainError("canonical_t: N must be at least 2");
  if (n < 1 || n > spec.n - 1)
    throw DomainError("canonical_t: edge index " + std::to_string(n) + " outside 1.." + std::to_string(spec.n - 1));
  if (spec.family == Family::TypeB) return Rat(1, 4);
  const int N = spec.n;
  if (n == 1) return Rat(1, 2 * (N - 1));
  return Rat((2 * N - n + 1) * n, 4 * (N - n) * (N - n + 1));
}

/// (t_{n,n+1}, t_{n+1,n}). Gauge: TypeA has t_{n,n+1} > 0 > t_{n+1,n}; TypeB both +1/2.
inline std::pair<double, double> canonical_t(const CanonicalSpec &spec, int n) {
  const double t = std::sqrt(to_double(canonical_t_squared(spec, n)));
  return {t, spec.family == Family::TypeA ? -t : t};
}

inline std::vector<EdgeCoupling> canonical_couplings(const CanonicalSpec &spec) {
  std::vector<EdgeCoupling> out;
  for (int n = 1; n < spec.n; ++n) {
    const auto [f, b] = canonical_t(spec, n);
    out.push_back({f, b});
  }
  return out;
}

inline constexpr std::array<std::string_view, 10> kGeneratorNames = {"Jx", "Jy", "Jz", "Kx", "Ky",
                                                                     "Kz", "Vt", "Vx", "Vy", "Vz"};

/// The ten generators of a de Sitter or anti-de Sitter representation.
struct GeneratorSet {
  BackboneGraph backbone;
  std::vector<EdgeCoupling> couplings; // parallel to backbone.edges
  Algebra algebra = Algebra::dS;
  Triple j, k, v;
  CMatrix vt;

  Eigen::Index dim() const { return vt.rows(); }

  const CMatrix &generator(std::string_view name) const {
    if (name.size() == 2) {
      const char c = name[1];
      const int axis = c == 'x' ? 0 : c == 'y' ? 1 : c == 'z' ? 2 : -1;
      if (name == "Vt") return vt;
      if (axis >= 0) {
        if (name[0] == 'J') return j[axis];
        if (name[0] == 'K') return k[axis];
        if (name[0] == 'V') return v[axis];
      }
    }
    throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
  }
  CMatrix &generator(std::string_view name) {
    return const_cast<CMatrix &>(static_cast<const GeneratorSet &>(*this).generator(name));
  }
};

enum class SignPolicy { Enforce, Allow };

/// Block-diagonal J, K from each block and V from t * U on each edge. The AdS
/// algebra is obtained from the dS matrices by V -> iV.
inline GeneratorSet assemble(const BackboneGraph &backbone, const std::vector<EdgeCoupling> &couplings,
                             Algebra algebra = Algebra::dS, SignPolicy policy = SignPolicy::Enforce) {
  backbone.check_indices();
  if (couplings.size() != backbone.edges.size())
    throw ContractError("assemble: " + std::to_string(couplings.size()) + " couplings for " +
                        std::to_string(backbone.edges.size()) + " edges");
  const auto off = backbone.offsets();
  const int n = off.back();

  GeneratorSet g;
  g.backbone = backbone;
  g.couplings = couplings;
  g.algebra = algebra;
  CMatrix jp = zeros(n, n), jm = zeros(n, n), jz = zeros(n, n);
  CMatrix kp = zeros(n, n), km = zeros(n, n), kz = zeros(n, n);
  CMatrix vp = zeros(n, n), vm = zeros(n, n), wp = zeros(n, n), wm = zeros(n, n);

  for (std::size_t b = 0; b < backbone.size(); ++b) {
    const auto h = hla_generators(backbone.blocks[b]);
    const int o = off[b], d = off[b + 1] - off[b];
    jp.block(o, o, d, d) = h.j_plus;
    jm.block(o, o, d, d) = h.j_minus;
    jz.block(o, o, d, d) = h.j_z;
    kp.block(o, o, d, d) = h.k_plus;
    km.block(o, o, d, d) = h.k_minus;
    kz.block(o, o, d, d) = h.k_z;
  }

  for (std::size_t e = 0; e < backbone.edges.size(); ++e) {
    const auto [p, q] = backbone.edges[e];
    const auto &bp = backbone.blocks[p], &bq = backbone.blocks[q];
    const auto pc = compatibility(bp, bq);
    if (!pc)
      throw DomainError("assemble: edge " + backbone.name(p) + "-" + backbone.name(q) + " joins incompatible blocks " +
                        bp.to_string() + " and " + bq.to_string());
    const auto [t_pq, t_qp] = couplings[e];
    if (policy == SignPolicy::Enforce) {
      const double expect = t_sign_relation(*pc) * t_pq;
      if (std::abs(t_qp - expect) > 1e-12 * std::max(1.0, std::abs(t_pq)))
        throw ContractError("assemble: edge " + backbone.name(p) + "-" + backbone.name(q) + " of case " +
                            pc->name() + " needs t_QP = " + (t_sign_relation(*pc) < 0 ? "-" : "+") + "t_PQ");
    }
    const auto u = u_blocks(bp, bq);
    const int op = off[p], dp = block_dim(bp), oq = off[q], dq = block_dim(bq);
    vp.block(op, oq, dp, dq) += t_pq * u.u_plus_pq;
    vm.block(op, oq, dp, dq) += t_pq * u.u_minus_pq;
    wp.block(op, oq, dp, dq) += t_pq * u.w_plus_pq;
    wm.block(op, oq, dp, dq) += t_pq * u.w_minus_pq;
    vp.block(oq, op, dq, dp) += t_qp * u.u_plus_qp;
    vm.block(oq, op, dq, dp) += t_qp * u.u_minus_qp;
    wp.block(oq, op, dq, dp) += t_qp * u.w_plus_qp;
    wm.block(oq, op, dq, dp) += t_qp * u.w_minus_qp;
  }

  g.j = cartesian_from_ladder(jp, jm, jz);
  g.k = cartesian_from_ladder(kp, km, kz);
  g.v = {vp + vm, -kI * (vp - vm), wp + wm};
  g.vt = wp - wm;
  if (algebra == Algebra::AdS) {
    for (auto &m : g.v) m *= kI;
    g.vt *= kI;
  }
  return g;
}

/// V -> iV. Applied to a dS set this yields the AdS set and vice versa up to the sign of V.
inline GeneratorSet to_ads(GeneratorSet g) {
  for (auto &m : g.v) m *= kI;
  g.vt *= kI;
  g.algebra = Algebra::AdS;
  return g;
}

/// Inverse of to_ads.
inline GeneratorSet to_ds(GeneratorSet g) {
  if (g.algebra == Algebra::dS) return g;
  for (auto &m : g.v) m *= -kI;
  g.vt *= -kI;
  g.algebra = Algebra::dS;
  return g;
}

inline GeneratorSet canonical_generators(const CanonicalSpec &spec, Algebra algebra = Algebra::dS) {
  return assemble(canonical_backbone(spec), canonical_couplings(spec), algebra);
}

/// The ten lowest-dimensional irreps in order of dimension (reference numbers 1..10).
inline CanonicalSpec reference_irrep(int ref) {
  if (ref < 1 || ref > 10) throw DomainError("reference irreps are numbered 1..10");
  // Odd references are TypeB with N = (ref+3)/2, even ones TypeA with N = (ref+2)/2.
  return ref % 2 ? CanonicalSpec{Family::TypeB, (ref + 3) / 2} : CanonicalSpec{Family::TypeA, (ref + 2) / 2};
}

} // namespace dsirrep
