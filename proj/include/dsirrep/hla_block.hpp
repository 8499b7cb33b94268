#pragma once

#include <algorithm>
#include <string>
#include <utility>

#include "cmatrix.hpp"
#include "errors.hpp"
#include "half_int.hpp"
#include "su2.hpp"
#include "triple.hpp"

namespace dsirrep {

/// Finite irrep (A, B) of the homogeneous Lorentz algebra.
struct BlockLabel {
  HalfInt A;
  HalfInt B;

  BlockLabel() = default;
  BlockLabel(HalfInt a, HalfInt b) : A(a), B(b) {
    if (a.twice() < 0 || b.twice() < 0)
      throw DomainError("block labels must be non-negative, got (" + a.to_string() + "," + b.to_string() + ")");
  }
  /// Labels given as twice their values: from_twice(1, 0) is (1/2, 0).
  static BlockLabel from_twice(int a2, int b2) { return {half(a2), half(b2)}; }

  SpinLabel spin_a() const { return SpinLabel(A); }
  SpinLabel spin_b() const { return SpinLabel(B); }
  BlockLabel mirrored() const { return {B, A}; }

  std::string to_string() const { return "(" + A.to_string() + "," + B.to_string() + ")"; }

  friend auto operator<=>(const BlockLabel &, const BlockLabel &) = default;
};

inline int block_dim(const BlockLabel &block) { return (block.A.twice() + 1) * (block.B.twice() + 1); }

/// Flattening of the double index (a, b): a varies slowest, both descending.
class IndexMap {
public:
  explicit IndexMap(BlockLabel block) : block_(block) {}

  const BlockLabel &block() const { return block_; }
  int size() const { return block_dim(block_); }

  int flat(HalfInt a, HalfInt b) const {
    return weight_index(block_.spin_a(), a) * (block_.B.twice() + 1) + weight_index(block_.spin_b(), b);
  }
  std::pair<HalfInt, HalfInt> weights(int flat_index) const {
    const int nb = block_.B.twice() + 1;
    return {index_weight(block_.spin_a(), flat_index / nb), index_weight(block_.spin_b(), flat_index % nb)};
  }
  bool contains(HalfInt a, HalfInt b) const {
    return is_weight_of(block_.spin_a(), a) && is_weight_of(block_.spin_b(), b);
  }

private:
  BlockLabel block_;
};

struct HlaGenerators {
  CMatrix j_plus, j_minus, j_z;
  CMatrix k_plus, k_minus, k_z;

  Triple j() const { return cartesian_from_ladder(j_plus, j_minus, j_z); }
  Triple k() const { return cartesian_from_ladder(k_plus, k_minus, k_z); }
};

/// Rotation and boost generators of the block, element by element from the
/// su(2) ladder coefficients of the A and B factors.
inline HlaGenerators hla_generators(const BlockLabel &block) {
  const IndexMap map(block);
  const int n = map.size();
  HlaGenerators g{zeros(n, n), zeros(n, n), zeros(n, n), zeros(n, n), zeros(n, n), zeros(n, n)};
  const SpinLabel sa = block.spin_a(), sb = block.spin_b();
  const HalfInt one = HalfInt::integer(1);
  for (int col = 0; col < n; ++col) {
    const auto [a, b] = map.weights(col);
    g.j_z(col, col) = (a + b).value();
    g.k_z(col, col) = -kI * (a - b).value(); // i Kz = a - b
    if (map.contains(a + one, b)) {
      const int row = map.flat(a + one, b);
      const double r = ladder_r(sa, a);
      g.j_plus(row, col) += r;
      g.k_plus(row, col) += -kI * r;
    }
    if (map.contains(a, b + one)) {
      const int row = map.flat(a, b + one);
      const double r = ladder_r(sb, b);
      g.j_plus(row, col) += r;
      g.k_plus(row, col) += kI * r;
    }
    if (map.contains(a - one, b)) {
      const int row = map.flat(a - one, b);
      const double s = ladder_s(sa, a);
      g.j_minus(row, col) += s;
      g.k_minus(row, col) += -kI * s;
    }
    if (map.contains(a, b - one)) {
      const int row = map.flat(a, b - one);
      const double s = ladder_s(sb, b);
      g.j_minus(row, col) += s;
      g.k_minus(row, col) += kI * s;
    }
  }
  return g;
}

/// Max residual of [Ji,Jj] = i eps Jk, [Ki,Kj] = -i eps Jk, [Ji,Kj] = i eps Kk.
inline double lorentz_cr_residual(const Triple &j, const Triple &k) {
  double worst = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      CMatrix rj = zeros(j[0].rows(), j[0].cols());
      CMatrix rk = rj;
      for (int c = 0; c < 3; ++c) {
        if (const int e = levi_civita(a, b, c)) {
          rj += (kI * double(e)) * j[c];
          rk += (kI * double(e)) * k[c];
        }
      }
      worst = std::max({worst, max_abs(commutator(j[a], j[b]) - rj), max_abs(commutator(k[a], k[b]) + rj),
                        max_abs(commutator(j[a], k[b]) - rk)});
    }
  return worst;
}

inline double check_hla_crs(const BlockLabel &block) {
  const auto g = hla_generators(block);
  return lorentz_cr_residual(g.j(), g.k());
}

} // namespace dsirrep
