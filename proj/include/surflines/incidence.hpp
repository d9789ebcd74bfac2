#pragma once

// Intersection data of an enumerated line set: meet table, planes spanned by
// meeting pairs, intersection matrices, plane profiles around a line, and
// the verdicts built from them.

#include <boost/dynamic_bitset.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "surflines/intmat.hpp"
#include "surflines/lines.hpp"

namespace surflines {

using Bitset = boost::dynamic_bitset<>;

struct MeetTable {
  std::vector<Bitset> rows;  // rows[i][j]: i != j and the lines meet

  std::size_t size() const { return rows.size(); }
  bool meets(std::size_t i, std::size_t j) const { return rows[i][j]; }
  std::size_t degree(std::size_t i) const { return rows[i].count(); }
};

inline MeetTable meet_table(const LineSet& ls) {
  const std::size_t n = ls.size();
  MeetTable t;
  t.rows.assign(n, Bitset(n));
  parallel_chunks(n, std::min<std::uint64_t>(n, 64), [&](std::uint64_t b, std::uint64_t e, std::uint64_t) {
    for (std::size_t i = b; i < e; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && lines_meet(ls.lines[i], ls.lines[j])) t.rows[i].set(j);
  });
  return t;
}

// Every plane containing at least two lines of the set, with its members.
using PlaneTable = std::map<Plane, std::vector<std::size_t>>;

inline PlaneTable plane_table(const LineSet& ls, const MeetTable& mt) {
  PlaneTable out;
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = mt.rows[i].find_next(i); j != Bitset::npos; j = mt.rows[i].find_next(j)) {
      auto& members = out[span_plane(ls.lines[i], ls.lines[j])];
      for (std::size_t x : {i, j})
        if (std::find(members.begin(), members.end(), x) == members.end()) members.push_back(x);
    }
  for (auto& [h, m] : out) std::sort(m.begin(), m.end());
  return out;
}

// Planes carrying exactly d lines of the set.
inline std::vector<std::pair<Plane, std::vector<std::size_t>>> full_planes(const PlaneTable& pt, int d) {
  std::vector<std::pair<Plane, std::vector<std::size_t>>> out;
  for (const auto& [h, m] : pt)
    if (static_cast<int>(m.size()) == d) out.emplace_back(h, m);
  return out;
}

struct IntersectionMatrix {
  int d = 0;
  bool has_h = false;
  std::vector<std::vector<long long>> entries;

  std::size_t size() const { return entries.size(); }
  IntMatrix as_int() const { return to_int_matrix(entries); }
};

// Line classes with M^2 = 2 - d and M.M' in {0, 1}; h.M = 1 and h^2 = d.
inline IntersectionMatrix intersection_matrix(const LineSet& ls, const MeetTable& mt, bool include_h,
                                              const std::vector<std::size_t>* subset = nullptr) {
  std::vector<std::size_t> idx;
  if (subset) idx = *subset;
  else
    for (std::size_t i = 0; i < ls.size(); ++i) idx.push_back(i);
  IntersectionMatrix m;
  m.d = ls.degree();
  m.has_h = include_h;
  const std::size_t n = idx.size() + (include_h ? 1 : 0);
  m.entries.assign(n, std::vector<long long>(n, 0));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b)
      m.entries[a][b] = a == b ? 2 - m.d : (mt.meets(idx[a], idx[b]) ? 1 : 0);
  if (include_h) {
    const std::size_t h = idx.size();
    for (std::size_t a = 0; a < h; ++a) m.entries[a][h] = m.entries[h][a] = 1;
    m.entries[h][h] = m.d;
  }
  return m;
}

inline IntersectionMatrix intersection_matrix(const LineSet& ls, bool include_h) {
  return intersection_matrix(ls, meet_table(ls), include_h);
}

// (1 - d)^{m-1} (m - (d - 1)), the determinant of J_m - (d-1) I_m.
inline BigInt block_determinant(long long m, long long d) {
  if (m < 1) throw Error(ErrorCode::Usage, "block size must be >= 1");
  return boost::multiprecision::pow(BigInt(1 - d), static_cast<unsigned>(m - 1)) * BigInt(m - (d - 1));
}

inline BigInt block_determinant_direct(long long m, long long d) {
  IntMatrix a(m, std::vector<BigInt>(m, 1));
  for (long long i = 0; i < m; ++i) a[i][i] = 1 - (d - 1);
  return int_determinant(std::move(a));
}

struct PlaneGroup {
  Plane plane;
  std::vector<std::size_t> others;  // lines of the set in the plane, besides the profiled one
  bool full = false;                // d lines in total
  int m = 0;                        // d - 2 when full, else the number of other lines
};

struct PlaneProfile {
  std::size_t line = 0;
  std::vector<PlaneGroup> planes;
  int r = 0;                 // full planes
  std::size_t meeting = 0;   // lines meeting the profiled one
};

inline PlaneProfile plane_profile(const LineSet& ls, const MeetTable& mt, std::size_t li) {
  const int d = ls.degree();
  PlaneProfile p;
  p.line = li;
  std::map<Plane, std::vector<std::size_t>> groups;
  const Bitset& row = mt.rows[li];
  for (std::size_t j = row.find_first(); j != Bitset::npos; j = row.find_next(j))
    groups[span_plane(ls.lines[li], ls.lines[j])].push_back(j);
  p.meeting = row.count();
  for (auto& [h, others] : groups) {
    PlaneGroup g;
    g.plane = h;
    g.others = others;
    g.full = static_cast<int>(others.size()) + 1 == d;
    g.m = g.full ? d - 2 : static_cast<int>(others.size());
    if (g.full) ++p.r;
    p.planes.push_back(std::move(g));
  }
  return p;
}

inline PlaneProfile plane_profile(const LineSet& ls, const Line& l) {
  auto idx = ls.index_of(l);
  if (!idx) throw Error(ErrorCode::NotOnSurface, "profiled line is not in the line set");
  return plane_profile(ls, meet_table(ls), *idx);
}

struct MaximalVerdict {
  bool pass = false;
  std::size_t count = 0;
  BigInt expected;
  std::vector<int> r_per_line;
  std::string witness;  // first counterexample
};

inline MaximalVerdict verify_maximal_profile(const LineSet& ls, const MeetTable& mt, int d) {
  MaximalVerdict v;
  v.count = ls.size();
  v.expected = bound_table(d).max_lines;
  if (BigInt(v.count) != v.expected) {
    v.witness = "line count " + std::to_string(v.count) + " != " + v.expected.str();
    return v;
  }
  const int want = d * d - 2 * d + 2;
  v.pass = true;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    auto p = plane_profile(ls, mt, i);
    v.r_per_line.push_back(p.r);
    if (!v.pass) continue;
    bool all_full = std::all_of(p.planes.begin(), p.planes.end(), [](const PlaneGroup& g) { return g.full; });
    if (p.r != want || !all_full) {
      v.pass = false;
      v.witness = "line " + line_text_joined(ls.lines[i]) + ": " + std::to_string(p.r) + " full planes of " +
                  std::to_string(p.planes.size()) + ", expected " + std::to_string(want) + " all full";
    }
  }
  return v;
}

inline MaximalVerdict verify_maximal_profile(const LineSet& ls, int d) { return verify_maximal_profile(ls, meet_table(ls), d); }

struct CoplanarityVerdict {
  bool pass = true;
  std::uint64_t triples = 0;
  std::array<std::size_t, 3> witness{};
};

// Pairwise meeting triples must share a plane.
inline CoplanarityVerdict coplanarity_check(const LineSet& ls, const MeetTable& mt) {
  CoplanarityVerdict v;
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = mt.rows[i].find_next(i); j != Bitset::npos; j = mt.rows[i].find_next(j)) {
      Bitset common = mt.rows[i] & mt.rows[j];
      const Plane h = span_plane(ls.lines[i], ls.lines[j]);
      for (std::size_t k = common.find_next(j); k != Bitset::npos; k = common.find_next(k)) {
        ++v.triples;
        if (v.pass && !plane_contains(h, ls.lines[k])) {
          v.pass = false;
          v.witness = {i, j, k};
        }
      }
    }
  return v;
}

inline CoplanarityVerdict coplanarity_check(const LineSet& ls) { return coplanarity_check(ls, meet_table(ls)); }

// The classes L_{i,1..m_i} (first m_i others of each plane), L and h.
struct IndependentSet {
  std::vector<std::size_t> lines;  // ordered plane by plane, then L
  std::vector<int> block_sizes;
  IntersectionMatrix matrix;
  BigInt determinant;
  BigInt block_product;
};

inline IndependentSet independent_set(const LineSet& ls, const MeetTable& mt, std::size_t li) {
  auto prof = plane_profile(ls, mt, li);
  IndependentSet s;
  for (const auto& g : prof.planes) {
    if (g.m <= 0) continue;
    s.block_sizes.push_back(g.m);
    for (int j = 0; j < g.m; ++j) s.lines.push_back(g.others[j]);
  }
  s.lines.push_back(li);
  s.matrix = intersection_matrix(ls, mt, true, &s.lines);
  s.determinant = int_determinant(s.matrix.as_int());
  s.block_product = 1;
  for (int m : s.block_sizes) s.block_product *= block_determinant(m, ls.degree());
  return s;
}

struct MatrixSummary {
  std::size_t size = 0;
  long long diagonal_line = 0;
  std::vector<long long> row_ones;  // off-diagonal ones per line row
  std::size_t rank = 0;
};

inline MatrixSummary summarize(const IntersectionMatrix& m, bool with_rank = true) {
  MatrixSummary s;
  s.size = m.size();
  const std::size_t lines = m.size() - (m.has_h ? 1 : 0);
  if (lines) s.diagonal_line = m.entries[0][0];
  for (std::size_t i = 0; i < lines; ++i) {
    long long ones = 0;
    for (std::size_t j = 0; j < lines; ++j)
      if (i != j && m.entries[i][j] == 1) ++ones;
    s.row_ones.push_back(ones);
  }
  if (with_rank) s.rank = int_rank(m.as_int());
  return s;
}

}  // namespace surflines
