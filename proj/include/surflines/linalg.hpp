#pragma once

// Small dense matrices over a finite field.

#include <array>
#include <vector>

#include "surflines/gf.hpp"

namespace surflines {

using FMatrix = std::vector<std::vector<Elem>>;
using Mat4 = std::array<std::array<Elem, 4>, 4>;

// In-place reduced row echelon form. Returns the pivot columns.
inline std::vector<std::size_t> rref_in_place(const Field& F, FMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const Elem inv = F.inv(m[r][c]);
    for (auto& x : m[r]) x = F.mul(x, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const Elem factor = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(factor, m[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(const Field& F, FMatrix m) { return rref_in_place(F, m).size(); }

// Basis of {v : m v = 0}.
inline FMatrix nullspace(const Field& F, FMatrix m, std::size_t cols) {
  if (m.empty()) {
    FMatrix id(cols, std::vector<Elem>(cols, F.zero()));
    for (std::size_t i = 0; i < cols; ++i) id[i][i] = F.one();
    return id;
  }
  auto pivots = rref_in_place(F, m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  FMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(cols, F.zero());
    v[free] = F.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(m[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Mat4 identity4(const Field& F) {
  Mat4 m{};
  for (auto& row : m) row.fill(F.zero());
  for (int i = 0; i < 4; ++i) m[i][i] = F.one();
  return m;
}

inline Mat4 mat_mul(const Field& F, const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Elem s = F.zero();
      for (int t = 0; t < 4; ++t) s = F.add(s, F.mul(a[i][t], b[t][j]));
      c[i][j] = s;
    }
  return c;
}

inline std::array<Elem, 4> mat_vec(const Field& F, const Mat4& m, const std::array<Elem, 4>& v) {
  std::array<Elem, 4> out{};
  for (int i = 0; i < 4; ++i) {
    Elem s = F.zero();
    for (int t = 0; t < 4; ++t) s = F.add(s, F.mul(m[i][t], v[t]));
    out[i] = s;
  }
  return out;
}

inline Elem determinant4(const Field& F, Mat4 m) {
  Elem det = F.one();
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    while (piv < 4 && m[piv][c].is_zero()) ++piv;
    if (piv == 4) return F.zero();
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = F.neg(det);
    }
    det = F.mul(det, m[c][c]);
    const Elem inv = F.inv(m[c][c]);
    for (int r = c + 1; r < 4; ++r) {
      if (m[r][c].is_zero()) continue;
      const Elem factor = F.mul(m[r][c], inv);
      for (int j = c; j < 4; ++j) m[r][j] = F.sub(m[r][j], F.mul(factor, m[c][j]));
    }
  }
  return det;
}

inline Mat4 inverse4(const Field& F, const Mat4& m) {
  FMatrix aug(4, std::vector<Elem>(8, F.zero()));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) aug[i][j] = m[i][j];
    aug[i][4 + i] = F.one();
  }
  auto pivots = rref_in_place(F, aug);
  if (pivots.size() < 4 || pivots[3] != 3) throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = aug[i][4 + j];
  return out;
}

}  // namespace surflines
