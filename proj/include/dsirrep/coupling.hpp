#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "cmatrix.hpp"
#include "errors.hpp"
#include "half_int.hpp"
#include "hla_block.hpp"
#include "rational.hpp"

namespace dsirrep {

/// Relative position of two compatible blocks: A_P = A_Q + sa/2, B_P = B_Q + sb/2.
struct PairCase {
  int sa = 1;
  int sb = 1;

  /// Case seen from the other end of the edge.
  PairCase reversed() const { return {-sa, -sb}; }
  /// ++ and -- edges run along slope +1 in the (B, A) plane, +- and -+ along slope -1.
  int slope() const { return sa * sb; }

  std::string name() const { return std::string(sa > 0 ? "+" : "-") + (sb > 0 ? "+" : "-"); }
  friend bool operator==(const PairCase &, const PairCase &) = default;
};

inline constexpr PairCase kAllCases[4] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

/// The case of P relative to Q, when both labels differ by exactly one half.
inline std::optional<PairCase> compatibility(const BlockLabel &p, const BlockLabel &q) {
  const int da = p.A.twice() - q.A.twice();
  const int db = p.B.twice() - q.B.twice();
  if (std::abs(da) != 1 || std::abs(db) != 1) return std::nullopt;
  return PairCase{da, db};
}

/// Coupling matrices between P and Q with the t factors stripped. The PQ
/// members map Q's space into P's (dim P x dim Q); the QP members the reverse.
/// V+- = (Vx +- i Vy)/2 and W+- = (Vz +- Vt)/2.
struct UBlockSet {
  CMatrix u_plus_pq, u_minus_pq, w_plus_pq, w_minus_pq;
  CMatrix u_plus_qp, u_minus_qp, w_plus_qp, w_minus_qp;

  UBlockSet swapped() const {
    return {u_plus_qp, u_minus_qp, w_plus_qp, w_minus_qp, u_plus_pq, u_minus_pq, w_plus_pq, w_minus_pq};
  }
};

inline UBlockSet u_blocks(const BlockLabel &p, const BlockLabel &q) {
  const auto pc = compatibility(p, q);
  if (!pc)
    throw DomainError("u_blocks: blocks " + p.to_string() + " and " + q.to_string() + " are not compatible");
  const int sa = pc->sa, sb = pc->sb;
  const int s_plus = 1, s_minus = -sa * sb;
  const int sab_plus = sb, sab_minus = sa;
  // Labels of the side carrying the larger A (resp. B), in units of 1/2.
  const bool a_on_p = sa > 0, b_on_p = sb > 0;
  const int A12 = std::max(p.A.twice(), q.A.twice());
  const int B12 = std::max(p.B.twice(), q.B.twice());

  const IndexMap mp(p), mq(q);
  const int np = mp.size(), nq = mq.size();
  UBlockSet u{zeros(np, nq), zeros(np, nq), zeros(np, nq), zeros(np, nq),
              zeros(nq, np), zeros(nq, np), zeros(nq, np), zeros(nq, np)};

  // Everything below is in doubled units: root(x, y) = sqrt((x/2)(y/2)).
  auto root = [](int x, int y) { return std::sqrt(0.25 * std::max(0, x) * std::max(0, y)); };

  for (int i = 0; i < np; ++i) {
    const auto [a1h, b1h] = mp.weights(i);
    const int a1 = a1h.twice(), b1 = b1h.twice();
    for (int j = 0; j < nq; ++j) {
      const auto [a2h, b2h] = mq.weights(j);
      const int a2 = a2h.twice(), b2 = b2h.twice();
      const int a12 = a_on_p ? a1 : a2;
      const int b12 = b_on_p ? b1 : b2;
      for (const int pm : {1, -1}) {
        const int s = pm > 0 ? s_plus : s_minus;
        const int sab = pm > 0 ? sab_plus : sab_minus;
        CMatrix &u_pq = pm > 0 ? u.u_plus_pq : u.u_minus_pq;
        CMatrix &u_qp = pm > 0 ? u.u_plus_qp : u.u_minus_qp;
        CMatrix &w_pq = pm > 0 ? u.w_plus_pq : u.w_minus_pq;
        CMatrix &w_qp = pm > 0 ? u.w_plus_qp : u.w_minus_qp;
        if (a1 == a2 + pm && b1 == b2 + pm)
          u_pq(i, j) = s * root(A12 + pm * sa * a12, B12 + pm * sb * b12);
        if (a1 == a2 - pm && b1 == b2 - pm)
          u_qp(j, i) = s * root(A12 - pm * sa * a12, B12 - pm * sb * b12);
        if (a1 == a2 + pm && b1 == b2 - pm)
          w_pq(i, j) = -sab * root(A12 + pm * sa * a12, B12 - pm * sb * b12);
        if (a1 == a2 - pm && b1 == b2 + pm)
          w_qp(j, i) = sab * root(A12 - pm * sa * a12, B12 + pm * sb * b12);
      }
    }
  }
  return u;
}

/// t_PQ / t_QP required by Hermiticity: -1 for ++ and --, +1 for +- and -+.
inline int t_sign_relation(PairCase c) { return c.sa == c.sb ? -1 : 1; }

/// Diagonal of i[Vx,Vy] on block I contributed by one neighbour J, per unit
/// t_IJ t_JI: coef_b * b_I + coef_a * a_I (the factor 4 included).
struct ZLinear {
  Rat coef_a;
  Rat coef_b;
  friend bool operator==(const ZLinear &, const ZLinear &) = default;
};

/// `c` is the case of I relative to J.
inline ZLinear z_linear(PairCase c, HalfInt a_label, HalfInt b_label) {
  const Rat A = a_label.to_rat(), B = b_label.to_rat();
  if (c.sa > 0 && c.sb > 0) return {4 * B, 4 * A};
  if (c.sa < 0 && c.sb < 0) return {-4 * (B + 1), -4 * (A + 1)};
  if (c.sa > 0) return {-4 * (B + 1), 4 * A};
  return {4 * B, -4 * (A + 1)};
}

/// Both steps of a three-block path shift A and B the same way.
inline bool path_is_monotonic(PairCase first, PairCase second) { return first == second; }

/// coefficient * sqrt(radicand); exact so that vanishing can be decided without rounding.
struct Surd {
  Rat coefficient;
  Rat radicand{1};
  bool is_zero() const { return coefficient == 0 || radicand == 0; }
  double value() const { return to_double(coefficient) * std::sqrt(to_double(radicand)); }
};

/// Entry of i[Vx,Vy]_IJ in row (a, b) of block I for the path I-K-J, per
/// unit t_IK t_KJ. `first` is the case of I relative to K, `second` of K
/// relative to J.
inline Surd z_path(PairCase first, PairCase second, HalfInt a_label, HalfInt b_label, HalfInt a, HalfInt b) {
  const Rat A = a_label.to_rat(), B = b_label.to_rat();
  const Rat x = a.to_rat(), y = b.to_rat();
  const Rat A1 = A + 1, B1 = B + 1;
  const auto key = first.name() + second.name();
  if (first == second) return {0};
  if (key == "++--") return {4 * (A * y + B * x)};
  if (key == "+++-") return {-4 * B, A * A - x * x};
  if (key == "++-+") return {-4 * A, B * B - y * y};
  if (key == "--++") return {-4 * (A1 * y + B1 * x)};
  if (key == "--+-") return {-4 * A1, B1 * B1 - y * y};
  if (key == "---+") return {-4 * B1, A1 * A1 - x * x};
  if (key == "+-++") return {4 * B1, A * A - x * x};
  if (key == "+---") return {4 * A, B1 * B1 - y * y};
  if (key == "+--+") return {4 * (A * y - B1 * x)};
  if (key == "-+++") return {4 * A1, B * B - y * y};
  if (key == "-+--") return {4 * B, A1 * A1 - x * x};
  /* "-++-" */ return {4 * (B * x - A1 * y)};
}

/// Whether z_path vanishes at every weight of block I.
inline bool z_path_vanishes_on(PairCase first, PairCase second, const BlockLabel &i_block) {
  const IndexMap map(i_block);
  for (int k = 0; k < map.size(); ++k) {
    const auto [a, b] = map.weights(k);
    if (!z_path(first, second, i_block.A, i_block.B, a, b).is_zero()) return false;
  }
  return true;
}

} // namespace dsirrep
