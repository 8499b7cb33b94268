#pragma once

#include <cmath>
#include <string>

#include "cmatrix.hpp"
#include "errors.hpp"
#include "half_int.hpp"

namespace dsirrep {

/// Highest weight A >= 0 of an su(2) irrep of dimension 2A+1.
class SpinLabel {
public:
  constexpr SpinLabel() = default;
  explicit SpinLabel(HalfInt a) : a_(a) {
    if (a.twice() < 0) throw DomainError("spin label must be non-negative, got " + a.to_string());
  }
  constexpr HalfInt value() const { return a_; }
  constexpr int dim() const { return a_.twice() + 1; }
  friend constexpr auto operator<=>(SpinLabel, SpinLabel) = default;

private:
  HalfInt a_;
};

// Rows and columns run over a = A, A-1, ..., -A; this ordering is shared by
// every module that flattens su(2) or HLA indices.
inline constexpr int weight_index(SpinLabel spin, HalfInt a) { return (spin.value().twice() - a.twice()) / 2; }
inline constexpr HalfInt index_weight(SpinLabel spin, int k) { return spin.value() - HalfInt::integer(k); }

inline bool is_weight_of(SpinLabel spin, HalfInt a) {
  const int A2 = spin.value().twice();
  return a.twice() >= -A2 && a.twice() <= A2 && (A2 - a.twice()) % 2 == 0;
}

namespace detail {
inline void require_weight(SpinLabel spin, HalfInt a, const char *who) {
  if (!is_weight_of(spin, a))
    throw DomainError(std::string(who) + ": weight " + a.to_string() + " is not in the spin-" +
                      spin.value().to_string() + " multiplet");
}
} // namespace detail

/// sqrt((A-a)(A+a+1)); the raising coefficient out of weight a.
inline double ladder_r(SpinLabel spin, HalfInt a) {
  detail::require_weight(spin, a, "ladder_r");
  const int A2 = spin.value().twice(), a2 = a.twice();
  return std::sqrt(0.25 * (A2 - a2) * (A2 + a2 + 2));
}

/// sqrt((A+a)(A-a+1)); the lowering coefficient out of weight a.
inline double ladder_s(SpinLabel spin, HalfInt a) {
  detail::require_weight(spin, a, "ladder_s");
  const int A2 = spin.value().twice(), a2 = a.twice();
  return std::sqrt(0.25 * (A2 + a2) * (A2 - a2 + 2));
}

struct Su2Generators {
  CMatrix plus;
  CMatrix minus;
  CMatrix z;
};

inline Su2Generators su2_generators(SpinLabel spin) {
  const int n = spin.dim();
  Su2Generators g{zeros(n, n), zeros(n, n), zeros(n, n)};
  for (int col = 0; col < n; ++col) {
    const HalfInt a = index_weight(spin, col);
    g.z(col, col) = a.value();
    if (col > 0) g.plus(col - 1, col) = ladder_r(spin, a);      // a -> a+1
    if (col + 1 < n) g.minus(col + 1, col) = ladder_s(spin, a); // a -> a-1
  }
  return g;
}

} // namespace dsirrep
