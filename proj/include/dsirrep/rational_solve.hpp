#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "rational.hpp"

namespace dsirrep {

using RatMatrix = std::vector<std::vector<Rat>>;
using RatVector = std::vector<Rat>;

struct UniqueSolution {
  RatVector x;
};
struct Underdetermined {
  std::size_t dof = 0;
  std::size_t rank = 0;
};
struct Inconsistent {
  std::size_t rank = 0;
  std::size_t failing_row = 0; // original row index of an unsatisfiable equation
};

using LinearOutcome = std::variant<UniqueSolution, Underdetermined, Inconsistent>;

/// Exact Gauss-Jordan elimination of a x = b.
inline LinearOutcome solve_rational_linear(const RatMatrix &a, const RatVector &b) {
  if (a.size() != b.size()) throw std::invalid_argument("solve_rational_linear: row count mismatch");
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  for (const auto &row : a)
    if (row.size() != cols) throw std::invalid_argument("solve_rational_linear: ragged matrix");

  RatMatrix m = a;
  RatVector rhs = b;
  std::vector<std::size_t> origin(rows);
  for (std::size_t i = 0; i < rows; ++i) origin[i] = i;

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    std::swap(rhs[p], rhs[r]);
    std::swap(origin[p], origin[r]);
    const Rat inv = 1 / m[r][c];
    for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rat f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  const std::size_t rank = r;
  for (std::size_t i = rank; i < rows; ++i)
    if (rhs[i] != 0) return Inconsistent{rank, origin[i]};
  if (rank < cols) return Underdetermined{cols - rank, rank};

  RatVector x(cols);
  for (std::size_t i = 0; i < rank; ++i) x[pivot_col[i]] = rhs[i];
  return UniqueSolution{std::move(x)};
}

} // namespace dsirrep
