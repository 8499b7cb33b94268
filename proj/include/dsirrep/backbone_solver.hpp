#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "coupling.hpp"
#include "errors.hpp"
#include "hla_block.hpp"
#include "rational.hpp"
#include "rational_solve.hpp"
#include "representation.hpp"
#include "verifier.hpp"

namespace dsirrep {

enum class Verdict { Valid, Invalid, Underdetermined };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
  case Verdict::Valid: return "valid";
  case Verdict::Invalid: return "invalid";
  default: return "underdetermined";
  }
}

enum class WitnessKind {
  OneBlock,
  IsolatedBlock,
  IncompatibleEdge,
  BoundaryViolation,
  DanglingEnd,
  UniqueNonmonotonicPath,
  LinearInconsistent,
  SignViolation,
  NumericCrFailure,
};

inline std::string_view witness_name(WitnessKind k) {
  switch (k) {
  case WitnessKind::OneBlock: return "one-block";
  case WitnessKind::IsolatedBlock: return "isolated-block";
  case WitnessKind::IncompatibleEdge: return "incompatible-edge";
  case WitnessKind::BoundaryViolation: return "boundary-violation";
  case WitnessKind::DanglingEnd: return "dangling-end";
  case WitnessKind::UniqueNonmonotonicPath: return "unique-nonmonotonic-path";
  case WitnessKind::LinearInconsistent: return "linear-system-inconsistent";
  case WitnessKind::SignViolation: return "sign-constraint-violated";
  default: return "numeric-cr-failure";
  }
}

/// Why a backbone carries no representation. `blocks` lists the block
/// indices involved (for a path: I, K, J).
struct Witness {
  WitnessKind kind = WitnessKind::OneBlock;
  std::vector<std::size_t> blocks;
  std::string detail;
};

namespace detail {

inline std::vector<std::vector<std::size_t>> adjacency(const BackboneGraph &g) {
  std::vector<std::vector<std::size_t>> adj(g.size());
  for (const auto &e : g.edges) {
    adj[e.p].push_back(e.q);
    adj[e.q].push_back(e.p);
  }
  return adj;
}

/// Component id per block.
inline std::vector<std::size_t> component_ids(const BackboneGraph &g, std::size_t &count) {
  std::vector<std::size_t> parent(g.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto &e : g.edges) parent[find(e.p)] = find(e.q);
  std::map<std::size_t, std::size_t> ids;
  std::vector<std::size_t> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = ids.try_emplace(find(i), ids.size()).first->second;
  count = ids.size();
  return out;
}

inline std::string path_text(const BackboneGraph &g, const std::vector<std::size_t> &blocks) {
  std::string s;
  for (std::size_t k = 0; k < blocks.size(); ++k) s += (k ? "-" : "") + g.name(blocks[k]);
  return s;
}

} // namespace detail

/// Checks that need no algebra: block count, isolated blocks, edge
/// compatibility, the zero minimum of A and B in each component, blocks whose
/// neighbours all lie above them, and degree-one blocks that cannot satisfy
/// their own diagonal condition.
inline std::optional<Witness> structural_checks(const BackboneGraph &g) {
  g.check_indices();
  if (g.size() < 2)
    return Witness{WitnessKind::OneBlock, g.size() ? std::vector<std::size_t>{0} : std::vector<std::size_t>{},
                   "a representation needs at least two blocks"};

  const auto adj = detail::adjacency(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (adj[i].empty())
      return Witness{WitnessKind::IsolatedBlock, {i}, "block " + g.name(i) + " " + g.blocks[i].to_string() +
                                                          " has no edges"};

  for (const auto &e : g.edges)
    if (!compatibility(g.blocks[e.p], g.blocks[e.q]))
      return Witness{WitnessKind::IncompatibleEdge,
                     {e.p, e.q},
                     "blocks " + g.name(e.p) + " " + g.blocks[e.p].to_string() + " and " + g.name(e.q) + " " +
                         g.blocks[e.q].to_string() + " do not differ by 1/2 in both labels"};

  std::size_t ncomp = 0;
  const auto comp = detail::component_ids(g, ncomp);
  for (std::size_t c = 0; c < ncomp; ++c) {
    int min_a = -1, min_b = -1;
    std::size_t arg_a = 0, arg_b = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (comp[i] != c) continue;
      if (min_a < 0 || g.blocks[i].A.twice() < min_a) min_a = g.blocks[i].A.twice(), arg_a = i;
      if (min_b < 0 || g.blocks[i].B.twice() < min_b) min_b = g.blocks[i].B.twice(), arg_b = i;
    }
    if (min_a != 0)
      return Witness{WitnessKind::BoundaryViolation, {arg_a}, "smallest A in the component of block " +
                                                                  g.name(arg_a) + " is " + half(min_a).to_string()};
    if (min_b != 0)
      return Witness{WitnessKind::BoundaryViolation, {arg_b}, "smallest B in the component of block " +
                                                                  g.name(arg_b) + " is " + half(min_b).to_string()};
  }

  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto &bi = g.blocks[i];
    const bool all_above_a = std::all_of(adj[i].begin(), adj[i].end(), [&](auto j) { return g.blocks[j].A > bi.A; });
    const bool all_above_b = std::all_of(adj[i].begin(), adj[i].end(), [&](auto j) { return g.blocks[j].B > bi.B; });
    if (all_above_a && bi.A.twice() != 0)
      return Witness{WitnessKind::BoundaryViolation, {i}, "every neighbour of block " + g.name(i) + " " +
                                                              bi.to_string() + " has larger A, so A must be 0"};
    if (all_above_b && bi.B.twice() != 0)
      return Witness{WitnessKind::BoundaryViolation, {i}, "every neighbour of block " + g.name(i) + " " +
                                                              bi.to_string() + " has larger B, so B must be 0"};
  }

  // A degree-one block fixes its single product x through both equations.
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (adj[i].size() != 1) continue;
    const std::size_t j = adj[i][0];
    const auto &bi = g.blocks[i];
    const PairCase c = *compatibility(bi, g.blocks[j]);
    const ZLinear z = z_linear(c, bi.A, bi.B);
    std::optional<Rat> x;
    bool ok = true;
    auto require = [&](const Rat &coef) {
      if (coef == 0) {
        ok = false;
        return;
      }
      const Rat v = Rat(-1) / coef;
      if (x && *x != v) ok = false;
      x = v;
    };
    if (bi.B.twice() > 0) require(z.coef_b);
    if (ok && bi.A.twice() > 0) require(z.coef_a);
    if (ok && x && sign(*x) != t_sign_relation(c)) ok = false;
    if (!ok)
      return Witness{WitnessKind::DanglingEnd, {i, j}, "block " + g.name(i) + " " + bi.to_string() +
                                                           " has one neighbour and cannot satisfy its diagonal condition"};
  }
  return std::nullopt;
}

struct PathTriple {
  std::size_t i = 0, k = 0, j = 0;
  friend bool operator==(const PathTriple &, const PathTriple &) = default;
};

/// Ordered paths I-K-J that are the only 3-path joining I and J, are not
/// monotonic, and whose off-diagonal block entry does not vanish on I.
inline std::vector<PathTriple> unique_nonmonotonic_paths(const BackboneGraph &g) {
  g.check_indices();
  const auto adj = detail::adjacency(g);
  std::vector<PathTriple> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::map<std::size_t, std::vector<std::size_t>> via; // J -> middles K
    for (auto k : adj[i])
      for (auto j : adj[k])
        if (j != i) via[j].push_back(k);
    for (const auto &[j, ks] : via) {
      if (ks.size() != 1) continue;
      const std::size_t k = ks[0];
      const auto c1 = compatibility(g.blocks[i], g.blocks[k]);
      const auto c2 = compatibility(g.blocks[k], g.blocks[j]);
      if (!c1 || !c2 || path_is_monotonic(*c1, *c2)) continue;
      if (z_path_vanishes_on(*c1, *c2, g.blocks[i])) continue;
      out.push_back({i, k, j});
    }
  }
  return out;
}

/// Linear conditions on x_e = t_PQ t_QP from the diagonal identity
/// i[Vx,Vy]_II = -(a_I + b_I). Row 2I holds the b coefficient, row 2I+1 the
/// a coefficient; a row is empty (0 = 0) when the matching label of I is 0.
struct OnBdSystem {
  RatMatrix a;
  RatVector b;
  std::vector<int> required_sign; // per edge: -1 for ++ and --, +1 for +- and -+

  std::size_t equations() const { return a.size(); }
  std::size_t unknowns() const { return required_sign.size(); }
};

inline OnBdSystem build_onbd_system(const BackboneGraph &g) {
  g.check_indices();
  const std::size_t n = g.size(), m = g.edges.size();
  OnBdSystem s;
  s.a.assign(2 * n, RatVector(m, Rat(0)));
  s.b.assign(2 * n, Rat(0));
  s.required_sign.resize(m);
  for (std::size_t e = 0; e < m; ++e) {
    const auto [p, q] = g.edges[e];
    const auto pc = compatibility(g.blocks[p], g.blocks[q]);
    if (!pc) throw ContractError("build_onbd_system: edge " + g.name(p) + "-" + g.name(q) + " is not compatible");
    s.required_sign[e] = t_sign_relation(*pc);
    for (const auto &[self, c] : {std::pair{p, *pc}, std::pair{q, pc->reversed()}}) {
      const auto z = z_linear(c, g.blocks[self].A, g.blocks[self].B);
      if (g.blocks[self].B.twice() > 0) s.a[2 * self][e] += z.coef_b;
      if (g.blocks[self].A.twice() > 0) s.a[2 * self + 1][e] += z.coef_a;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (g.blocks[i].B.twice() > 0) s.b[2 * i] = -1;
    if (g.blocks[i].A.twice() > 0) s.b[2 * i + 1] = -1;
  }
  return s;
}

/// One connected component of a backbone.
struct Component {
  std::vector<std::size_t> blocks;
  std::vector<std::size_t> edges;
  std::optional<CanonicalSpec> spec; // empty for a non-canonical component

  std::string label() const {
    if (!spec) return "non-canonical";
    return std::string("Type") + std::string(family_name(spec->family)) + " N=" + std::to_string(spec->n);
  }
};

/// Connected components, each labelled TypeA (slope +1) or TypeB (slope -1)
/// when it is exactly a canonical chain.
inline std::vector<Component> decompose(const BackboneGraph &g) {
  g.check_indices();
  std::size_t ncomp = 0;
  const auto comp = detail::component_ids(g, ncomp);
  std::vector<Component> out(ncomp);
  for (std::size_t i = 0; i < g.size(); ++i) out[comp[i]].blocks.push_back(i);
  for (std::size_t e = 0; e < g.edges.size(); ++e) out[comp[g.edges[e].p]].edges.push_back(e);

  for (auto &c : out) {
    const int n = int(c.blocks.size());
    if (n < 2 || c.edges.size() != std::size_t(n - 1)) continue;
    std::optional<int> slope;
    bool pure = true;
    for (auto e : c.edges) {
      const auto pc = compatibility(g.blocks[g.edges[e].p], g.blocks[g.edges[e].q]);
      if (!pc || (slope && *slope != pc->slope())) pure = false;
      if (pc) slope = pc->slope();
    }
    if (!pure || !slope) continue;
    const CanonicalSpec spec{*slope > 0 ? Family::TypeA : Family::TypeB, n};
    auto want = canonical_backbone(spec).blocks;
    std::vector<BlockLabel> have;
    for (auto i : c.blocks) have.push_back(g.blocks[i]);
    std::sort(want.begin(), want.end());
    std::sort(have.begin(), have.end());
    if (want == have) c.spec = spec;
  }
  return out;
}

/// Number of blocks carrying each label.
inline std::map<BlockLabel, int> label_multiplicities(const BackboneGraph &g) {
  std::map<BlockLabel, int> m;
  for (const auto &b : g.blocks) ++m[b];
  return m;
}

struct SolverOutcome {
  Verdict verdict = Verdict::Invalid;
  std::optional<std::vector<Rat>> x_values;             // per edge, when solved
  std::optional<std::vector<EdgeCoupling>> t_values;    // per edge, when Valid
  std::vector<Component> components;
  std::map<BlockLabel, int> multiplicities;
  std::optional<Witness> witness;
  std::size_t degrees_of_freedom = 0;                   // when Underdetermined
  double max_cr_residual = 0.0;
  double max_hermiticity_residual = 0.0;
};

struct SolverOptions {
  double numeric_tolerance = 1e-10;
};

/// Couplings from the products: sqrt|x| on the end with the larger A, the
/// other end fixed by the Hermiticity sign rule.
inline std::vector<EdgeCoupling> couplings_from_products(const BackboneGraph &g, const std::vector<Rat> &x) {
  std::vector<EdgeCoupling> out;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [p, q] = g.edges[e];
    const auto pc = compatibility(g.blocks[p], g.blocks[q]);
    if (!pc) throw ContractError("couplings_from_products: incompatible edge");
    const double t = std::sqrt(std::abs(to_double(x[e])));
    const double s = t_sign_relation(*pc);
    out.push_back(g.blocks[p].A > g.blocks[q].A ? EdgeCoupling{t, s * t} : EdgeCoupling{s * t, t});
  }
  return out;
}

inline SolverOutcome solve_and_verify(const BackboneGraph &g, const SolverOptions &opt = {}) {
  SolverOutcome out;
  out.components = decompose(g);
  out.multiplicities = label_multiplicities(g);

  if (auto w = structural_checks(g)) {
    out.witness = std::move(w);
    return out;
  }
  if (const auto paths = unique_nonmonotonic_paths(g); !paths.empty()) {
    const auto &p = paths.front();
    out.witness = Witness{WitnessKind::UniqueNonmonotonicPath, {p.i, p.k, p.j},
                          "path " + detail::path_text(g, {p.i, p.k, p.j}) +
                              " is the only link between its ends and is not monotonic"};
    return out;
  }

  const OnBdSystem sys = build_onbd_system(g);
  const auto sol = solve_rational_linear(sys.a, sys.b);
  if (const auto *bad = std::get_if<Inconsistent>(&sol)) {
    const std::size_t block = bad->failing_row / 2;
    out.witness = Witness{WitnessKind::LinearInconsistent, {block},
                          std::string("the ") + (bad->failing_row % 2 ? "a" : "b") +
                              "-coefficient condition of block " + g.name(block) + " " + g.blocks[block].to_string() +
                              " cannot be met"};
    return out;
  }
  if (const auto *u = std::get_if<Underdetermined>(&sol)) {
    out.verdict = Verdict::Underdetermined;
    out.degrees_of_freedom = u->dof;
    return out;
  }

  const auto &x = std::get<UniqueSolution>(sol).x;
  out.x_values = x;
  for (std::size_t e = 0; e < x.size(); ++e) {
    if (sign(x[e]) != sys.required_sign[e]) {
      const auto [p, q] = g.edges[e];
      out.witness = Witness{WitnessKind::SignViolation, {p, q},
                            "edge " + g.name(p) + "-" + g.name(q) + " needs t_PQ t_QP " +
                                (sys.required_sign[e] < 0 ? "< 0" : "> 0") + " but the solution gives " +
                                to_string(x[e])};
      return out;
    }
  }

  const auto t = couplings_from_products(g, x);
  const GeneratorSet gen = assemble(g, t, Algebra::dS, SignPolicy::Allow);
  const auto crs = check_all_crs(gen);
  const auto herm = check_hermiticity(gen);
  out.max_cr_residual = worst(crs);
  out.max_hermiticity_residual = worst(herm);
  if (out.max_cr_residual >= opt.numeric_tolerance || out.max_hermiticity_residual >= opt.numeric_tolerance) {
    const bool cr_fail = out.max_cr_residual >= opt.numeric_tolerance;
    const auto *w = worst_entry(cr_fail ? crs : herm);
    out.witness = Witness{WitnessKind::NumericCrFailure, {},
                          (cr_fail ? "relation " : "Hermiticity of ") + w->name + " fails with residual " +
                              std::to_string(w->residual)};
    return out;
  }
  out.verdict = Verdict::Valid;
  out.t_values = t;
  return out;
}

} // namespace dsirrep
