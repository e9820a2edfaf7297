#pragma once

// Dense Gaussian elimination, just big enough for the 4x4 indifference
// system. Partial pivoting; rank tolerance is relative to the largest
// entry of the input matrix.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>

namespace fdaloha {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<Vec4, 4>;

template <std::size_t R, std::size_t C>
int numeric_rank(std::array<std::array<double, C>, R> m, double rel_tol = 1e-9) {
  double scale = 0.0;
  for (const auto& row : m)
    for (double v : row) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0;
  const double tol = rel_tol * scale;

  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < C && row < R; ++col) {
    std::size_t pivot = row;
    for (std::size_t r = row + 1; r < R; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (std::abs(m[pivot][col]) <= tol) continue;
    std::swap(m[row], m[pivot]);
    for (std::size_t r = row + 1; r < R; ++r) {
      const double f = m[r][col] / m[row][col];
      for (std::size_t c = col; c < C; ++c) m[r][c] -= f * m[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

// Solves A x = b; nullopt when A is singular to working precision.
inline std::optional<Vec4> solve4(Mat4 a, Vec4 b) {
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < 4; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-300) return std::nullopt;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < 4; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  Vec4 x{};
  for (int r = 3; r >= 0; --r) {
    double s = b[r];
    for (std::size_t c = r + 1; c < 4; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

}  // namespace fdaloha
