#pragma once

// Points, lines and planes of P^3 over a finite field.
//
// Every object is stored in a canonical form, so equality and ordering are
// plain comparisons of packed coordinates:
//   Point  - coordinates scaled so the first nonzero entry is 1
//   Plane  - covector scaled the same way
//   Line   - the 2x4 reduced row echelon basis of its row space, plus the
//            Pluecker vector (p01,p02,p03,p12,p13,p23) normalized likewise
// Values keep a raw pointer to their field; the field must outlive them.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "surflines/gf.hpp"
#include "surflines/linalg.hpp"

namespace surflines {

using Vec4 = std::array<Elem, 4>;

namespace detail {

inline void scale_canonical(const Field& F, Vec4& v) {
  for (auto& x : v) {
    if (!x.is_zero()) {
      const Elem inv = F.inv(x);
      for (auto& y : v) y = F.mul(y, inv);
      return;
    }
  }
  throw Error(ErrorCode::SingularMatrix, "zero vector has no projective class");
}

inline void check_same_field(const Field* a, const Field* b) {
  if (a != b && !(a && b && a->same_as(*b))) throw Error(ErrorCode::FieldMismatch, "objects over different fields");
}

}  // namespace detail

struct Point {
  const Field* field = nullptr;
  Vec4 coords{};

  static Point from(const Field& F, Vec4 v) {
    detail::scale_canonical(F, v);
    return Point{&F, v};
  }

  bool operator==(const Point& o) const { return coords == o.coords; }
  auto operator<=>(const Point& o) const { return coords <=> o.coords; }
};

struct Plane {
  const Field* field = nullptr;
  Vec4 covector{};

  static Plane from(const Field& F, Vec4 v) {
    detail::scale_canonical(F, v);
    return Plane{&F, v};
  }

  std::size_t pivot() const {
    for (std::size_t i = 0; i < 4; ++i)
      if (!covector[i].is_zero()) return i;
    return 4;
  }

  bool operator==(const Plane& o) const { return covector == o.covector; }
  auto operator<=>(const Plane& o) const { return covector <=> o.covector; }
};

inline Elem dot(const Field& F, const Vec4& a, const Vec4& b) {
  Elem s = F.zero();
  for (int i = 0; i < 4; ++i) s = F.add(s, F.mul(a[i], b[i]));
  return s;
}

class Line {
 public:
  Line() = default;

  // The line spanned by two points given by (not necessarily canonical) rows.
  static Line from_rows(const Field& F, const Vec4& a, const Vec4& b) {
    FMatrix m{{a.begin(), a.end()}, {b.begin(), b.end()}};
    auto piv = rref_in_place(F, m);
    if (piv.size() != 2) throw Error(ErrorCode::EqualLines, "rows do not span a line");
    Line l;
    l.field_ = &F;
    for (int j = 0; j < 4; ++j) {
      l.basis_[0][j] = m[0][j];
      l.basis_[1][j] = m[1][j];
    }
    l.pivots_ = {static_cast<std::uint8_t>(piv[0]), static_cast<std::uint8_t>(piv[1])};
    l.plucker_ = plucker_of(F, l.basis_[0], l.basis_[1]);
    return l;
  }

  static Line from_points(const Point& a, const Point& b) {
    detail::check_same_field(a.field, b.field);
    if (a == b) throw Error(ErrorCode::EqualLines, "coincident points");
    return from_rows(*a.field, a.coords, b.coords);
  }

  // V(h1, h2) for two independent covectors.
  static Line from_covectors(const Field& F, const Vec4& h1, const Vec4& h2) {
    auto ker = nullspace(F, FMatrix{{h1.begin(), h1.end()}, {h2.begin(), h2.end()}}, 4);
    if (ker.size() != 2) throw Error(ErrorCode::EqualLines, "covectors are dependent");
    return from_rows(F, Vec4{ker[0][0], ker[0][1], ker[0][2], ker[0][3]},
                     Vec4{ker[1][0], ker[1][1], ker[1][2], ker[1][3]});
  }

  static Line from_planes(const Plane& a, const Plane& b) {
    detail::check_same_field(a.field, b.field);
    return from_covectors(*a.field, a.covector, b.covector);
  }

  // p_ij = a_i b_j - a_j b_i in the order 01,02,03,12,13,23; first nonzero = 1.
  static std::array<Elem, 6> plucker_of(const Field& F, const Vec4& a, const Vec4& b) {
    static constexpr int idx[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    std::array<Elem, 6> p{};
    for (int t = 0; t < 6; ++t) {
      const int i = idx[t][0], j = idx[t][1];
      p[t] = F.sub(F.mul(a[i], b[j]), F.mul(a[j], b[i]));
    }
    for (auto& x : p) {
      if (!x.is_zero()) {
        const Elem inv = F.inv(x);
        for (auto& y : p) y = F.mul(y, inv);
        break;
      }
    }
    return p;
  }

  const Field& field() const { return *field_; }
  const Field* field_ptr() const { return field_; }
  const std::array<Vec4, 2>& basis() const { return basis_; }
  const Vec4& row(int i) const { return basis_[i]; }
  const std::array<Elem, 6>& plucker() const { return plucker_; }
  std::array<std::uint8_t, 2> pivots() const { return pivots_; }

  bool contains(const Point& pt) const {
    const Field& F = *field_;
    for (int j = 0; j < 4; ++j) {
      Elem v = F.add(F.mul(pt.coords[pivots_[0]], basis_[0][j]), F.mul(pt.coords[pivots_[1]], basis_[1][j]));
      if (v != pt.coords[j]) return false;
    }
    return true;
  }

  bool operator==(const Line& o) const { return basis_ == o.basis_; }
  auto operator<=>(const Line& o) const { return basis_ <=> o.basis_; }

 private:
  const Field* field_ = nullptr;
  std::array<Vec4, 2> basis_{};
  std::array<std::uint8_t, 2> pivots_{};
  std::array<Elem, 6> plucker_{};
};

inline bool plane_contains(const Plane& h, const Point& p) { return dot(*h.field, h.covector, p.coords).is_zero(); }

inline bool plane_contains(const Plane& h, const Line& l) {
  const Field& F = *h.field;
  return dot(F, h.covector, l.row(0)).is_zero() && dot(F, h.covector, l.row(1)).is_zero();
}

// Bilinear Pluecker pairing; zero iff the lines meet (or coincide).
inline Elem plucker_pairing(const Field& F, const std::array<Elem, 6>& p, const std::array<Elem, 6>& r) {
  Elem s = F.mul(p[0], r[5]);
  s = F.sub(s, F.mul(p[1], r[4]));
  s = F.add(s, F.mul(p[2], r[3]));
  s = F.add(s, F.mul(p[3], r[2]));
  s = F.sub(s, F.mul(p[4], r[1]));
  s = F.add(s, F.mul(p[5], r[0]));
  return s;
}

inline bool lines_meet(const Line& a, const Line& b) {
  detail::check_same_field(a.field_ptr(), b.field_ptr());
  return plucker_pairing(a.field(), a.plucker(), b.plucker()).is_zero();
}

inline Plane span_plane(const Line& a, const Line& b) {
  detail::check_same_field(a.field_ptr(), b.field_ptr());
  if (a == b) throw Error(ErrorCode::EqualLines, "span of a line with itself is not a plane");
  if (!lines_meet(a, b)) throw Error(ErrorCode::SkewLines, "skew lines span P^3");
  const Field& F = a.field();
  FMatrix m;
  for (const auto* l : {&a, &b})
    for (int i = 0; i < 2; ++i) m.emplace_back(l->row(i).begin(), l->row(i).end());
  auto ker = nullspace(F, m, 4);
  return Plane::from(F, Vec4{ker[0][0], ker[0][1], ker[0][2], ker[0][3]});
}

// Common point of two distinct meeting lines.
inline Point meet_point(const Line& a, const Line& b) {
  detail::check_same_field(a.field_ptr(), b.field_ptr());
  if (a == b) throw Error(ErrorCode::EqualLines, "coincident lines");
  if (!lines_meet(a, b)) throw Error(ErrorCode::SkewLines, "lines do not meet");
  const Field& F = a.field();
  // Columns a0, a1, b0, b1; a kernel vector (s, t, u, v) gives s a0 + t a1.
  FMatrix m(4, std::vector<Elem>(4));
  for (int r = 0; r < 4; ++r) {
    m[r][0] = a.row(0)[r];
    m[r][1] = a.row(1)[r];
    m[r][2] = b.row(0)[r];
    m[r][3] = b.row(1)[r];
  }
  auto ker = nullspace(F, m, 4);
  Vec4 pt{};
  for (int r = 0; r < 4; ++r) pt[r] = F.add(F.mul(ker[0][0], a.row(0)[r]), F.mul(ker[0][1], a.row(1)[r]));
  return Point::from(F, pt);
}

inline std::uint64_t projective_count(std::uint64_t q, int dim) {
  std::uint64_t n = 0, pw = 1;
  for (int i = 0; i <= dim; ++i) {
    n += pw;
    pw *= q;
  }
  return n;
}

inline std::uint64_t point_count(const Field& F) { return projective_count(F.q(), 3); }

inline std::uint64_t line_count(const Field& F) {
  const std::uint64_t q = F.q();
  return (q * q + 1) * (q * q + q + 1);
}

// i-th point of P^3 in the order of the pivot position, then the packed
// free coordinates.
inline Point point_at(const Field& F, std::uint64_t index) {
  const std::uint64_t q = F.q();
  std::uint64_t block = q * q * q;
  for (int piv = 0; piv < 4; ++piv) {
    if (index < block) {
      Vec4 v{};
      v[piv] = F.one();
      for (int j = 3; j > piv; --j) {
        v[j] = Elem{static_cast<std::uint32_t>(index % q)};
        index /= q;
      }
      return Point{&F, v};
    }
    index -= block;
    block /= q;
  }
  throw Error(ErrorCode::Usage, "point index out of range");
}

inline std::vector<Point> enumerate_points(const Field& F) {
  std::vector<Point> pts;
  const auto n = point_count(F);
  pts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) pts.push_back(point_at(F, i));
  std::sort(pts.begin(), pts.end());
  return pts;
}

// Schubert cells of the Grassmannian: one per RREF pivot pair. The free
// entries of each cell are listed as (row, column).
struct PivotCell {
  std::array<std::uint8_t, 2> pivots;
  std::vector<std::pair<int, int>> free;
};

inline const std::array<PivotCell, 6>& pivot_cells() {
  static const std::array<PivotCell, 6> cells = [] {
    std::array<PivotCell, 6> out{};
    int t = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        PivotCell c;
        c.pivots = {static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)};
        for (int col = i + 1; col < 4; ++col)
          if (col != j) c.free.emplace_back(0, col);
        for (int col = j + 1; col < 4; ++col) c.free.emplace_back(1, col);
        out[t++] = c;
      }
    return out;
  }();
  return cells;
}

// RREF rows of the i-th line in cell order; every line of P^3 has exactly
// one index.
inline void line_rows_at(const Field& F, std::uint64_t index, Vec4& r0, Vec4& r1) {
  const std::uint64_t q = F.q();
  for (const auto& cell : pivot_cells()) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < cell.free.size(); ++i) size *= q;
    if (index < size) {
      r0.fill(F.zero());
      r1.fill(F.zero());
      r0[cell.pivots[0]] = F.one();
      r1[cell.pivots[1]] = F.one();
      for (const auto& [row, col] : cell.free) {
        (row ? r1 : r0)[col] = Elem{static_cast<std::uint32_t>(index % q)};
        index /= q;
      }
      return;
    }
    index -= size;
  }
  throw Error(ErrorCode::Usage, "line index out of range");
}

inline Line line_at(const Field& F, std::uint64_t index) {
  Vec4 r0, r1;
  line_rows_at(F, index, r0, r1);
  return Line::from_rows(F, r0, r1);
}

inline std::vector<Line> enumerate_lines(const Field& F) {
  std::vector<Line> out;
  const auto n = line_count(F);
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(line_at(F, i));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Point> points_on_line(const Line& l) {
  const Field& F = l.field();
  std::vector<Point> pts;
  pts.push_back(Point::from(F, l.row(1)));
  for (std::uint32_t t = 0; t < F.q(); ++t) {
    Vec4 v{};
    for (int j = 0; j < 4; ++j) v[j] = F.add(l.row(0)[j], F.mul(Elem{t}, l.row(1)[j]));
    pts.push_back(Point::from(F, v));
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

inline std::vector<Plane> planes_through_line(const Line& l) {
  const Field& F = l.field();
  FMatrix m{{l.row(0).begin(), l.row(0).end()}, {l.row(1).begin(), l.row(1).end()}};
  auto ker = nullspace(F, m, 4);
  Vec4 u{ker[0][0], ker[0][1], ker[0][2], ker[0][3]}, v{ker[1][0], ker[1][1], ker[1][2], ker[1][3]};
  std::vector<Plane> out;
  out.push_back(Plane::from(F, v));
  for (std::uint32_t t = 0; t < F.q(); ++t) {
    Vec4 w{};
    for (int j = 0; j < 4; ++j) w[j] = F.add(u[j], F.mul(Elem{t}, v[j]));
    out.push_back(Plane::from(F, w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Canonical text: the 8 RREF basis entries, row-major, as digit strings.
inline std::vector<std::string> line_text(const Line& l) {
  std::vector<std::string> out;
  for (int r = 0; r < 2; ++r)
    for (int j = 0; j < 4; ++j) out.push_back(l.field().format(l.row(r)[j]));
  return out;
}

inline std::string line_text_joined(const Line& l) {
  std::string s;
  for (const auto& t : line_text(l)) {
    if (!s.empty()) s.push_back(' ');
    s += t;
  }
  return s;
}

inline std::vector<std::string> vec_text(const Field& F, const Vec4& v) {
  std::vector<std::string> out;
  for (auto e : v) out.push_back(F.format(e));
  return out;
}

// Parses the 8-entry canonical text back to a line.
inline Line parse_line_text(const Field& F, const std::vector<std::string>& entries) {
  if (entries.size() != 8) throw Error(ErrorCode::ParseError, "line text needs 8 entries");
  Vec4 a{}, b{};
  for (int j = 0; j < 4; ++j) {
    a[j] = F.parse(entries[j]);
    b[j] = F.parse(entries[4 + j]);
  }
  return Line::from_rows(F, a, b);
}

}  // namespace surflines
