#pragma once

#include <array>

#include "cmatrix.hpp"

namespace dsirrep {

/// Cartesian components (x, y, z) of a vector operator.
using Triple = std::array<CMatrix, 3>;

inline constexpr int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

inline constexpr char axis_name(int i) { return "xyz"[i]; }

/// From ladder combinations X+- = Xx +- i Xy.
inline Triple cartesian_from_ladder(const CMatrix &plus, const CMatrix &minus, const CMatrix &z) {
  return {(plus + minus) * 0.5, (plus - minus) * (-0.5 * kI), z};
}

/// Sum_i X_i Y_i.
inline CMatrix dot(const Triple &x, const Triple &y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

/// (X x Y)_i = eps_ijk X_j Y_k, with X kept to the left.
inline Triple cross(const Triple &x, const Triple &y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

} // namespace dsirrep
