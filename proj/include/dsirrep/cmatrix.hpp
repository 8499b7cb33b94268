#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dsirrep {

using Complex = std::complex<double>;
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr Complex kI{0.0, 1.0};

struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline CMatrix zeros(Eigen::Index rows, Eigen::Index cols) { return CMatrix::Zero(rows, cols); }
inline CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

/// XY - YX for square matrices of equal size.
inline CMatrix commutator(const CMatrix &x, const CMatrix &y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows())
    throw ShapeError("commutator: operands must be square and of equal size (" +
                     std::to_string(x.rows()) + "x" + std::to_string(x.cols()) + " vs " +
                     std::to_string(y.rows()) + "x" + std::to_string(y.cols()) + ")");
  return x * y - y * x;
}

inline CMatrix dagger(const CMatrix &x) { return x.adjoint(); }

/// Largest entry modulus; zero for an empty matrix.
inline double max_abs(const CMatrix &x) {
  if (x.size() == 0) return 0.0;
  return x.cwiseAbs().maxCoeff();
}

} // namespace dsirrep
