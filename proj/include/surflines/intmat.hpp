#pragma once

// Exact integer rank and determinant by fraction-free (Bareiss) elimination.

#include <vector>

#include "surflines/bounds.hpp"

namespace surflines {

using IntMatrix = std::vector<std::vector<BigInt>>;

template <class T>
IntMatrix to_int_matrix(const std::vector<std::vector<T>>& m) {
  IntMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i].assign(m[i].begin(), m[i].end());
  return out;
}

namespace detail {

// Eliminates in place; returns the rank and, for square input, the
// determinant up to the recorded sign.
inline std::size_t bareiss(IntMatrix& a, BigInt& det) {
  const std::size_t rows = a.size();
  if (!rows) {
    det = 1;
    return 0;
  }
  const std::size_t cols = a[0].size();
  BigInt prev = 1;
  int sign = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      std::swap(a[piv], a[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      const bool zero_lead = a[i][c] == 0;
      for (std::size_t j = c + 1; j < cols; ++j) {
        if (zero_lead) {
          if (a[i][j] != 0) a[i][j] = a[i][j] * a[r][c] / prev;
        } else {
          a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev;
        }
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  det = (r == rows && rows == cols) ? BigInt(sign) * prev : BigInt(0);
  return r;
}

}  // namespace detail

inline std::size_t int_rank(IntMatrix a) {
  BigInt det;
  return detail::bareiss(a, det);
}

inline BigInt int_determinant(IntMatrix a) {
  if (!a.empty() && a.size() != a[0].size()) throw Error(ErrorCode::Usage, "determinant of a non-square matrix");
  BigInt det;
  detail::bareiss(a, det);
  return det;
}

}  // namespace surflines
