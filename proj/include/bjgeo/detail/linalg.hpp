#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "bjgeo/types.hpp"

namespace bjgeo::detail {

/// Solves M x = rhs for a small dense square system by Gaussian elimination
/// with partial pivoting. Returns false when the system is near-singular.
inline bool solve_square(std::vector<Vector> M, Vector rhs, Vector& out,
                         double pivot_tol = 1e-12) {
  const int n = int(rhs.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    }
    if (std::abs(M[piv][col]) < pivot_tol) return false;
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = col + 1; r < n; ++r) {
      const double m = M[r][col] / M[col][col];
      for (int c = col; c < n; ++c) M[r][c] -= m * M[col][c];
      rhs[r] -= m * rhs[col];
    }
  }
  out.assign(std::size_t(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = rhs[std::size_t(r)];
    for (int c = r + 1; c < n; ++c) s -= M[r][c] * out[std::size_t(c)];
    out[std::size_t(r)] = s / M[r][r];
  }
  return true;
}

inline int matrix_rank(std::vector<Vector> M) {
  if (M.empty()) return 0;
  const int rows = int(M.size());
  const int cols = int(M[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    double best = 1e-10;
    for (int r = rank; r < rows; ++r) {
      if (std::abs(M[r][col]) > best) {
        best = std::abs(M[r][col]);
        piv = r;
      }
    }
    if (piv < 0) continue;
    std::swap(M[piv], M[rank]);
    for (int r = rank + 1; r < rows; ++r) {
      const double m = M[r][col] / M[rank][col];
      for (int c = col; c < cols; ++c) M[r][c] -= m * M[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace bjgeo::detail
