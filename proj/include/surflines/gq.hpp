#pragma once

// Finite incidence structures: the lines/full-planes structure of a surface,
// the points/lines structure, generalized quadrangle axioms, duality, triads
// and 3-regularity.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "surflines/incidence.hpp"

namespace surflines {

struct IncidenceStructure {
  std::size_t points = 0;
  std::vector<std::vector<std::size_t>> block_points;  // sorted
  std::vector<std::vector<std::size_t>> point_blocks;  // sorted
  std::vector<Bitset> collinear;                       // excludes the point itself

  std::size_t blocks() const { return block_points.size(); }
  std::size_t flags() const {
    std::size_t n = 0;
    for (const auto& b : block_points) n += b.size();
    return n;
  }
  bool incident(std::size_t x, std::size_t b) const {
    return std::binary_search(block_points[b].begin(), block_points[b].end(), x);
  }
  bool operator==(const IncidenceStructure& o) const {
    return points == o.points && block_points == o.block_points;
  }
};

// Duplicate incidences collapse; point ids must be < points.
inline IncidenceStructure make_structure(std::size_t points, std::vector<std::vector<std::size_t>> blocks) {
  IncidenceStructure st;
  st.points = points;
  st.point_blocks.assign(points, {});
  st.collinear.assign(points, Bitset(points));
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    auto& pts = blocks[b];
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (std::size_t x : pts) {
      if (x >= points) throw Error(ErrorCode::Usage, "block refers to point " + std::to_string(x));
      st.point_blocks[x].push_back(b);
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        st.collinear[pts[i]].set(pts[j]);
        st.collinear[pts[j]].set(pts[i]);
      }
  }
  st.block_points = std::move(blocks);
  return st;
}

// Drops point x and its flags; later ids shift down by one.
inline IncidenceStructure remove_point(const IncidenceStructure& st, std::size_t x) {
  std::vector<std::vector<std::size_t>> blocks;
  for (const auto& b : st.block_points) {
    std::vector<std::size_t> nb;
    for (std::size_t y : b)
      if (y != x) nb.push_back(y > x ? y - 1 : y);
    blocks.push_back(std::move(nb));
  }
  return make_structure(st.points - 1, std::move(blocks));
}

inline IncidenceStructure dual(const IncidenceStructure& st) { return make_structure(st.blocks(), st.point_blocks); }

// Points are the lines of ls, blocks the planes carrying exactly d of them.
struct LinePlaneStructure {
  IncidenceStructure st;
  std::vector<Plane> planes;  // block order
};

inline LinePlaneStructure build_line_plane_structure(const LineSet& ls, const PlaneTable& pt, int d) {
  LinePlaneStructure out;
  std::vector<std::vector<std::size_t>> blocks;
  for (auto& [h, members] : full_planes(pt, d)) {
    out.planes.push_back(h);
    blocks.push_back(members);
  }
  out.st = make_structure(ls.size(), std::move(blocks));
  return out;
}

inline LinePlaneStructure build_line_plane_structure(const LineSet& ls, int d) {
  const auto mt = meet_table(ls);
  return build_line_plane_structure(ls, plane_table(ls, mt), d);
}

// Points are the rational points of the surface over the search field, blocks
// its lines.
struct PointLineStructure {
  IncidenceStructure st;
  std::vector<Point> points;  // point order
};

inline PointLineStructure build_point_line_structure(const LineSet& ls) {
  PointLineStructure out;
  const Field& E = *ls.field;
  FormEvaluator ev(ls.surface);
  for (const auto& p : enumerate_points(E))
    if (ev.eval(p.coords).is_zero()) out.points.push_back(p);
  std::sort(out.points.begin(), out.points.end());
  std::vector<std::vector<std::size_t>> blocks;
  for (const auto& l : ls.lines) {
    std::vector<std::size_t> pts;
    for (const auto& p : points_on_line(l)) {
      auto it = std::lower_bound(out.points.begin(), out.points.end(), p);
      pts.push_back(static_cast<std::size_t>(it - out.points.begin()));
    }
    blocks.push_back(std::move(pts));
  }
  out.st = make_structure(out.points.size(), std::move(blocks));
  return out;
}

struct GQParams {
  long long s = 0, t = 0;
};

struct GQVerdict {
  bool pass = false;
  int failed_axiom = 0;  // 1..5, 0 on success
  std::vector<std::size_t> witness;
  std::string message;
};

// The five axioms in order; the first violation is reported.
inline GQVerdict verify_gq(const IncidenceStructure& st, GQParams prm) {
  GQVerdict v;
  auto fail = [&](int ax, std::vector<std::size_t> w, std::string msg) {
    v.failed_axiom = ax;
    v.witness = std::move(w);
    v.message = std::move(msg);
    return v;
  };
  if (prm.s < 1 || prm.t < 1) return fail(4, {}, "parameters must be >= 1");

  // (1) two points share at most one block
  for (std::size_t x = 0; x < st.points; ++x) {
    std::map<std::size_t, std::size_t> seen;
    for (std::size_t b : st.point_blocks[x])
      for (std::size_t y : st.block_points[b]) {
        if (y <= x) continue;
        auto [it, fresh] = seen.emplace(y, b);
        if (!fresh)
          return fail(1, {x, y, it->second, b},
                      "points " + std::to_string(x) + ", " + std::to_string(y) + " share two blocks");
      }
  }
  // (2) two blocks share at most one point
  for (std::size_t b = 0; b < st.blocks(); ++b) {
    std::map<std::size_t, std::size_t> seen;
    for (std::size_t x : st.block_points[b])
      for (std::size_t c : st.point_blocks[x]) {
        if (c <= b) continue;
        auto [it, fresh] = seen.emplace(c, x);
        if (!fresh)
          return fail(2, {b, c, it->second, x},
                      "blocks " + std::to_string(b) + ", " + std::to_string(c) + " share two points");
      }
  }
  // (3) a non-incident pair has exactly one connecting flag; with (1), the
  // block through x and x' is then unique
  for (std::size_t x = 0; x < st.points; ++x)
    for (std::size_t b = 0; b < st.blocks(); ++b) {
      const auto& pts = st.block_points[b];
      if (std::binary_search(pts.begin(), pts.end(), x)) continue;
      std::size_t hits = 0, first = 0;
      for (std::size_t y : pts)
        if (st.collinear[x][y] && hits++ == 0) first = y;
      if (hits != 1)
        return fail(3, {x, b, hits ? first : st.points},
                    "point " + std::to_string(x) + " off block " + std::to_string(b) + " sees " +
                        std::to_string(hits) + " of its points");
    }
  // (4) block sizes
  for (std::size_t b = 0; b < st.blocks(); ++b)
    if (static_cast<long long>(st.block_points[b].size()) != prm.s + 1)
      return fail(4, {b}, "block " + std::to_string(b) + " has " + std::to_string(st.block_points[b].size()) +
                              " points, expected " + std::to_string(prm.s + 1));
  // (5) point degrees
  for (std::size_t x = 0; x < st.points; ++x)
    if (static_cast<long long>(st.point_blocks[x].size()) != prm.t + 1)
      return fail(5, {x}, "point " + std::to_string(x) + " is on " + std::to_string(st.point_blocks[x].size()) +
                              " blocks, expected " + std::to_string(prm.t + 1));
  v.pass = true;
  return v;
}

// |P| = (s+1)(st+1) and |B| = (t+1)(st+1).
inline bool gq_counts_hold(const IncidenceStructure& st, GQParams prm) {
  const long long st1 = prm.s * prm.t + 1;
  return static_cast<long long>(st.points) == (prm.s + 1) * st1 &&
         static_cast<long long>(st.blocks()) == (prm.t + 1) * st1;
}

using Triad = std::array<std::size_t, 3>;

inline bool is_triad(const IncidenceStructure& st, const Triad& t) {
  const auto [a, b, c] = t;
  if (a == b || a == c || b == c) return false;
  return !st.collinear[a][b] && !st.collinear[a][c] && !st.collinear[b][c];
}

// Visits every triad a < b < c, restricting the first index to [lo, hi).
template <class Fn>
void for_each_triad(const IncidenceStructure& st, Fn fn, std::size_t lo = 0, std::size_t hi = SIZE_MAX) {
  const std::size_t n = st.points;
  hi = std::min(hi, n);
  for (std::size_t a = lo; a < hi; ++a) {
    Bitset na = ~st.collinear[a];
    na.reset(a);
    for (std::size_t b = na.find_next(a); b != Bitset::npos; b = na.find_next(b)) {
      Bitset nab = na & ~st.collinear[b];
      for (std::size_t c = nab.find_next(b); c != Bitset::npos; c = nab.find_next(c)) fn(Triad{a, b, c});
    }
  }
}

inline std::vector<Triad> triads(const IncidenceStructure& st) {
  std::vector<Triad> out;
  for_each_triad(st, [&](const Triad& t) { out.push_back(t); });
  return out;
}

inline std::uint64_t count_triads(const IncidenceStructure& st) {
  std::vector<std::uint64_t> part(st.points, 0);
  parallel_chunks(st.points, st.points, [&](std::uint64_t b, std::uint64_t e, std::uint64_t) {
    for_each_triad(st, [&](const Triad&) { ++part[b]; }, b, e);
  });
  std::uint64_t n = 0;
  for (auto x : part) n += x;
  return n;
}

struct RegularityVerdict {
  bool pass = false;
  std::vector<std::size_t> perp;         // points collinear with the whole triad
  std::vector<std::size_t> double_perp;  // points collinear with all of perp
  std::vector<std::size_t> extension;    // double_perp minus the triad
  std::optional<std::size_t> offending;  // on failure: a perp element the extension cannot serve
};

inline std::vector<std::size_t> bit_list(const Bitset& b) {
  std::vector<std::size_t> out;
  for (std::size_t i = b.find_first(); i != Bitset::npos; i = b.find_next(i)) out.push_back(i);
  return out;
}

namespace detail {

struct PerpSizes {
  std::size_t perp = 0, double_perp = 0;
};

inline PerpSizes perp_sizes(const IncidenceStructure& st, const Triad& t, Bitset& perp, Bitset& dperp) {
  perp = st.collinear[t[0]] & st.collinear[t[1]] & st.collinear[t[2]];
  dperp.resize(st.points);
  dperp.set();
  for (std::size_t y = perp.find_first(); y != Bitset::npos; y = perp.find_next(y)) dperp &= st.collinear[y];
  return {perp.count(), dperp.count()};
}

}  // namespace detail

inline RegularityVerdict is_3_regular(const IncidenceStructure& st, const Triad& t, long long s) {
  for (std::size_t x : t)
    if (x >= st.points) throw Error(ErrorCode::NotATriad, "triad refers to point " + std::to_string(x));
  if (!is_triad(st, t)) throw Error(ErrorCode::NotATriad, "points are not pairwise non-collinear");
  Bitset perp, dperp;
  const auto sz = detail::perp_sizes(st, t, perp, dperp);
  RegularityVerdict v;
  v.perp = bit_list(perp);
  v.double_perp = bit_list(dperp);
  for (std::size_t z : v.double_perp)
    if (z != t[0] && z != t[1] && z != t[2]) v.extension.push_back(z);
  v.pass = !v.perp.empty() && static_cast<long long>(sz.double_perp) == s + 1;
  if (!v.pass && !v.perp.empty()) v.offending = v.perp.front();
  return v;
}

// (|perp|, |double perp|) histogram over triads.
struct TriadStats {
  std::uint64_t triads = 0;
  std::uint64_t regular = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> histogram;
  std::optional<Triad> first_failure;
  bool sampled = false;
  std::uint64_t seed = 0;

  bool all_regular() const { return regular == triads; }
};

inline void merge_stats(TriadStats& into, const TriadStats& part) {
  into.triads += part.triads;
  into.regular += part.regular;
  for (const auto& [k, n] : part.histogram) into.histogram[k] += n;
  if (part.first_failure && (!into.first_failure || *part.first_failure < *into.first_failure))
    into.first_failure = part.first_failure;
}

inline void record_triad(const IncidenceStructure& st, const Triad& t, long long s, TriadStats& out, Bitset& perp,
                         Bitset& dperp) {
  const auto sz = detail::perp_sizes(st, t, perp, dperp);
  ++out.triads;
  ++out.histogram[{sz.perp, sz.double_perp}];
  if (sz.perp > 0 && static_cast<long long>(sz.double_perp) == s + 1) ++out.regular;
  else if (!out.first_failure) out.first_failure = t;
}

inline TriadStats triad_statistics(const IncidenceStructure& st, long long s) {
  std::vector<TriadStats> parts(st.points);
  parallel_chunks(st.points, st.points, [&](std::uint64_t b, std::uint64_t e, std::uint64_t c) {
    Bitset perp, dperp;
    for_each_triad(st, [&](const Triad& t) { record_triad(st, t, s, parts[c], perp, dperp); }, b, e);
  });
  TriadStats out;
  for (const auto& p : parts) merge_stats(out, p);
  return out;
}

// Seeded sample: a uniform first point, then uniform choices among the points
// non-collinear with those already chosen.
inline TriadStats triad_statistics_sampled(const IncidenceStructure& st, long long s, std::uint64_t samples,
                                           std::uint64_t seed) {
  TriadStats out;
  out.sampled = true;
  out.seed = seed;
  if (st.points < 3) return out;
  std::mt19937_64 rng(seed);
  Bitset perp, dperp;
  std::uint64_t attempts = 0;
  while (out.triads < samples && attempts < 100 * samples + 100) {
    ++attempts;
    const std::size_t a = std::uniform_int_distribution<std::size_t>(0, st.points - 1)(rng);
    Bitset na = ~st.collinear[a];
    na.reset(a);
    auto pick = [&](const Bitset& from) -> std::optional<std::size_t> {
      const std::size_t n = from.count();
      if (!n) return std::nullopt;
      std::size_t r = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
      std::size_t i = from.find_first();
      while (r--) i = from.find_next(i);
      return i;
    };
    auto b = pick(na);
    if (!b) continue;
    Bitset nab = na & ~st.collinear[*b];
    nab.reset(*b);
    auto c = pick(nab);
    if (!c) continue;
    Triad t{a, *b, *c};
    std::sort(t.begin(), t.end());
    record_triad(st, t, s, out, perp, dperp);
  }
  return out;
}

// Degree multisets: block sizes and point degrees.
struct DegreeProfile {
  std::map<std::size_t, std::size_t> block_sizes, point_degrees;
  bool operator==(const DegreeProfile& o) const {
    return block_sizes == o.block_sizes && point_degrees == o.point_degrees;
  }
};

inline DegreeProfile degree_profile(const IncidenceStructure& st) {
  DegreeProfile p;
  for (const auto& b : st.block_points) ++p.block_sizes[b.size()];
  for (const auto& x : st.point_blocks) ++p.point_degrees[x.size()];
  return p;
}

// p -> T_p S from surface points to full planes: bijective and carrying
// "p on L" to "L in T_p S".
struct TangentCorrespondence {
  bool bijective = false;
  bool incidence_preserved = false;
  std::size_t singular_points = 0;
  std::string witness;

  bool pass() const { return bijective && incidence_preserved; }
};

inline TangentCorrespondence tangent_correspondence(const LineSet& ls, const PointLineStructure& pl,
                                                    const LinePlaneStructure& lp) {
  TangentCorrespondence v;
  const Field& E = *ls.field;
  std::array<SparsePoly<4>, 4> grad;
  for (int u = 0; u < 4; ++u) grad[u] = partial_derivative(ls.surface, u);
  std::vector<std::size_t> image(pl.points.size());
  std::vector<char> hit(lp.planes.size(), 0);
  v.bijective = pl.points.size() == lp.planes.size();
  for (std::size_t i = 0; i < pl.points.size(); ++i) {
    Vec4 g;
    for (int u = 0; u < 4; ++u) g[u] = poly_eval(E, grad[u], pl.points[i].coords);
    if (std::all_of(g.begin(), g.end(), [](Elem c) { return c.is_zero(); })) {
      ++v.singular_points;
      v.bijective = false;
      if (v.witness.empty()) v.witness = "singular point " + vec_text(E, pl.points[i].coords)[0];
      continue;
    }
    const Plane h = Plane::from(E, g);
    auto it = std::lower_bound(lp.planes.begin(), lp.planes.end(), h);
    if (it == lp.planes.end() || !(*it == h)) {
      v.bijective = false;
      if (v.witness.empty()) v.witness = "tangent plane at point " + std::to_string(i) + " is not full";
      continue;
    }
    image[i] = static_cast<std::size_t>(it - lp.planes.begin());
    if (hit[image[i]]++) v.bijective = false;
  }
  if (!v.bijective) return v;
  v.incidence_preserved = true;
  for (std::size_t i = 0; i < pl.points.size() && v.incidence_preserved; ++i)
    for (std::size_t l = 0; l < ls.size(); ++l)
      if (pl.st.incident(i, l) != lp.st.incident(l, image[i])) {
        v.incidence_preserved = false;
        v.witness = "point " + std::to_string(i) + ", line " + std::to_string(l);
        break;
      }
  return v;
}

}  // namespace surflines
