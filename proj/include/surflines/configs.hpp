#pragma once

// Certified line configurations: quadric configurations, stars, numerical
// star chord pairs, the normal form they induce, and the extremality test.

#include <set>
#include <string>
#include <vector>

#include "surflines/gq.hpp"

namespace surflines {

// ---- quadric configurations ----

struct QuadricCertificate {
  std::vector<std::size_t> ruling_a;  // contains the seed triple
  std::vector<std::size_t> ruling_b;  // its common transversals
};

struct QuadricResult {
  std::optional<QuadricCertificate> cert;
  std::string reason;  // why none was found
};

// Both rulings pairwise skew, every cross pair meeting, all on the surface;
// recomputed from the line coordinates.
inline bool verify_quadric_certificate(const LineSet& ls, const QuadricCertificate& c) {
  const std::size_t d = static_cast<std::size_t>(ls.degree());
  if (c.ruling_a.size() != d || c.ruling_b.size() != d) return false;
  auto line = [&](std::size_t i) -> const Line& { return ls.lines.at(i); };
  for (const auto* side : {&c.ruling_a, &c.ruling_b}) {
    for (std::size_t i : *side)
      if (!contains_line(ls.surface, line(i))) return false;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if ((*side)[i] == (*side)[j] || lines_meet(line((*side)[i]), line((*side)[j]))) return false;
  }
  for (std::size_t a : c.ruling_a)
    for (std::size_t b : c.ruling_b)
      if (!lines_meet(line(a), line(b))) return false;
  return true;
}

inline QuadricResult find_quadric_configuration(const LineSet& ls, const MeetTable& mt, const Triad& tri) {
  for (std::size_t x : tri)
    if (x >= ls.size()) throw Error(ErrorCode::NotSkewTriple, "triple refers to line " + std::to_string(x));
  if (tri[0] == tri[1] || tri[0] == tri[2] || tri[1] == tri[2] || mt.meets(tri[0], tri[1]) ||
      mt.meets(tri[0], tri[2]) || mt.meets(tri[1], tri[2]))
    throw Error(ErrorCode::NotSkewTriple, "lines are not pairwise skew");
  const std::size_t d = static_cast<std::size_t>(ls.degree());
  QuadricResult r;
  const Bitset b = mt.rows[tri[0]] & mt.rows[tri[1]] & mt.rows[tri[2]];
  if (b.count() != d) {
    r.reason = std::to_string(b.count()) + " common transversals, expected " + std::to_string(d);
    return r;
  }
  auto rb = bit_list(b);
  const Bitset a = mt.rows[rb[0]] & mt.rows[rb[1]] & mt.rows[rb[2]];
  if (a.count() != d) {
    r.reason = "transversals of the transversals number " + std::to_string(a.count());
    return r;
  }
  QuadricCertificate c{bit_list(a), rb};
  for (std::size_t x : tri)
    if (!a[x]) {
      r.reason = "seed line not recovered as a transversal";
      return r;
    }
  if (!verify_quadric_certificate(ls, c)) {
    r.reason = "meet pattern is not complete bipartite with skew sides";
    return r;
  }
  r.cert = std::move(c);
  return r;
}

inline QuadricResult find_quadric_configuration(const LineSet& ls, const std::array<Line, 3>& tri) {
  Triad t{};
  for (int i = 0; i < 3; ++i) {
    auto idx = ls.index_of(tri[i]);
    if (!idx) throw Error(ErrorCode::NotOnSurface, "triple line is not on the surface");
    t[i] = *idx;
  }
  return find_quadric_configuration(ls, meet_table(ls), t);
}

// ---- stars ----

struct Star {
  Plane plane;
  Point point;
  std::vector<std::size_t> lines;
};

inline std::vector<Star> find_stars(const LineSet& ls, const PlaneTable& pt) {
  std::vector<Star> out;
  for (auto& [h, members] : full_planes(pt, ls.degree())) {
    const Point p = meet_point(ls.lines[members[0]], ls.lines[members[1]]);
    if (std::all_of(members.begin(), members.end(), [&](std::size_t i) { return ls.lines[i].contains(p); }))
      out.push_back(Star{h, p, members});
  }
  return out;
}

inline std::vector<Star> find_stars(const LineSet& ls) { return find_stars(ls, plane_table(ls, meet_table(ls))); }

// ---- numerical star chord pairs ----

struct StarChordCertificate {
  std::vector<Plane> planes_h, planes_k;
  std::vector<std::vector<std::size_t>> grid;  // grid[i][j]: H_i cap K_j, as line index

  std::size_t size() const { return planes_h.size(); }
};

struct StarChordCheck {
  bool distinct = false;     // d^2 different grid lines
  bool on_surface = false;   // every grid line restricts to zero
  bool rows_match = false;   // H_i cap K_j is the grid line, and nothing else of ls lies in H_i, K_j
  bool remark_a = false;     // H_i cap H_j and K_i cap K_j are chords, not surface lines
  bool remark_b = false;     // grid lines off a common row and column are skew
  std::string witness;

  bool pass() const { return distinct && on_surface && rows_match && remark_a && remark_b; }
};

inline StarChordCheck verify_star_chord(const LineSet& ls, const StarChordCertificate& c) {
  StarChordCheck v;
  const std::size_t d = c.size();
  auto note = [&](std::string w) {
    if (v.witness.empty()) v.witness = std::move(w);
  };
  if (d != static_cast<std::size_t>(ls.degree()) || c.planes_k.size() != d || c.grid.size() != d) {
    note("certificate has the wrong shape");
    return v;
  }
  std::set<std::size_t> seen;
  for (const auto& row : c.grid) {
    if (row.size() != d) {
      note("ragged grid");
      return v;
    }
    for (std::size_t i : row) {
      if (i >= ls.size()) {
        note("grid index out of range");
        return v;
      }
      seen.insert(i);
    }
  }
  v.distinct = seen.size() == d * d;
  if (!v.distinct) note("grid lines repeat");
  v.on_surface = std::all_of(seen.begin(), seen.end(), [&](std::size_t i) { return contains_line(ls.surface, ls.lines[i]); });
  if (!v.on_surface) note("grid line off the surface");

  v.rows_match = true;
  for (std::size_t i = 0; i < d && v.rows_match; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (!(Line::from_planes(c.planes_h[i], c.planes_k[j]) == ls.lines[c.grid[i][j]])) {
        v.rows_match = false;
        note("grid entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not H_i cap K_j");
        break;
      }
  // no further surface lines in any of the 2d planes
  for (std::size_t l = 0; l < ls.size() && v.rows_match; ++l) {
    if (seen.count(l)) continue;
    for (const auto* fam : {&c.planes_h, &c.planes_k})
      for (const auto& h : *fam)
        if (plane_contains(h, ls.lines[l])) {
          v.rows_match = false;
          note("plane carries the extra line " + line_text_joined(ls.lines[l]));
        }
  }

  v.remark_a = true;
  for (const auto* fam : {&c.planes_h, &c.planes_k})
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        if ((*fam)[i] == (*fam)[j]) {
          v.remark_a = false;
          note("repeated plane");
          continue;
        }
        const Line chord = Line::from_planes((*fam)[i], (*fam)[j]);
        if (contains_line(ls.surface, chord)) {
          v.remark_a = false;
          note("chord " + line_text_joined(chord) + " lies on the surface");
        }
      }

  v.remark_b = true;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n)
          if (i != m && j != n && lines_meet(ls.lines[c.grid[i][j]], ls.lines[c.grid[m][n]])) {
            v.remark_b = false;
            note("grid lines (" + std::to_string(i) + "," + std::to_string(j) + ") and (" + std::to_string(m) +
                 "," + std::to_string(n) + ") meet");
          }
  return v;
}

// Builds the grid from the two plane families; every H_i cap K_j must be a
// line of ls.
inline StarChordCertificate certificate_from_planes(const LineSet& ls, std::vector<Plane> hs, std::vector<Plane> ks) {
  if (hs.size() != ks.size()) throw Error(ErrorCode::Usage, "plane families differ in size");
  StarChordCertificate c;
  c.grid.assign(hs.size(), std::vector<std::size_t>(ks.size()));
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = 0; j < ks.size(); ++j) {
      auto idx = ls.index_of(Line::from_planes(hs[i], ks[j]));
      if (!idx) throw Error(ErrorCode::NotOnSurface, "H_" + std::to_string(i) + " cap K_" + std::to_string(j) + " is not a surface line");
      c.grid[i][j] = *idx;
    }
  c.planes_h = std::move(hs);
  c.planes_k = std::move(ks);
  return c;
}

struct StarChordSearch {
  std::vector<StarChordCertificate> certs;  // canonical order
  std::uint64_t seed_pairs = 0;             // unordered pairs of line-disjoint full planes
  std::uint64_t rejected = 0;               // candidates that failed reconstruction
};

inline StarChordSearch find_star_chord_pairs(const LineSet& ls, const PlaneTable& pt, int d) {
  const auto fp = full_planes(pt, d);
  const std::size_t n = fp.size();
  StarChordSearch out;
  std::vector<Bitset> adj(n, Bitset(n));  // planes sharing a surface line
  {
    std::vector<std::vector<std::size_t>> through(ls.size());
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t l : fp[p].second) through[l].push_back(p);
    for (const auto& ps : through)
      for (std::size_t a : ps)
        for (std::size_t b : ps)
          if (a != b) adj[a].set(b);
  }
  auto independent = [&](const std::vector<std::size_t>& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        if (adj[s[i]][s[j]]) return false;
    return true;
  };
  auto shared_line = [&](std::size_t a, std::size_t b) -> std::optional<std::size_t> {
    std::vector<std::size_t> common;
    std::set_intersection(fp[a].second.begin(), fp[a].second.end(), fp[b].second.begin(), fp[b].second.end(),
                          std::back_inserter(common));
    if (common.size() != 1) return std::nullopt;
    return common[0];
  };
  using Key = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;
  struct Part {
    std::set<Key> keys;
    std::uint64_t seeds = 0, rejected = 0;
  };
  std::vector<Part> parts(std::max<std::size_t>(n, 1));
  const std::size_t dd = static_cast<std::size_t>(d);
  parallel_chunks(n, n, [&](std::uint64_t b, std::uint64_t e, std::uint64_t c) {
    Part& part = parts[c];
    for (std::size_t h1 = b; h1 < e; ++h1)
      for (std::size_t h2 = h1 + 1; h2 < n; ++h2) {
        if (adj[h1][h2]) continue;
        ++part.seeds;
        const Bitset kc = adj[h1] & adj[h2];
        if (kc.count() != dd) continue;
        auto ks = bit_list(kc);
        if (!independent(ks)) {
          ++part.rejected;
          continue;
        }
        auto hs = bit_list(adj[ks[0]] & adj[ks[1]]);
        if (hs.size() != dd || !independent(hs) || !std::binary_search(hs.begin(), hs.end(), h1) ||
            !std::binary_search(hs.begin(), hs.end(), h2)) {
          ++part.rejected;
          continue;
        }
        bool ok = true;
        std::set<std::size_t> lines;
        for (std::size_t i : hs)
          for (std::size_t j : ks) {
            auto l = shared_line(i, j);
            if (!l) ok = false;
            else lines.insert(*l);
          }
        if (!ok || lines.size() != dd * dd) {
          ++part.rejected;
          continue;
        }
        part.keys.insert(hs < ks ? Key{hs, ks} : Key{ks, hs});
      }
  });
  std::set<Key> keys;
  for (auto& p : parts) {
    keys.insert(p.keys.begin(), p.keys.end());
    out.seed_pairs += p.seeds;
    out.rejected += p.rejected;
  }
  for (const auto& [hs, ks] : keys) {
    StarChordCertificate c;
    for (std::size_t i : hs) c.planes_h.push_back(fp[i].first);
    for (std::size_t j : ks) c.planes_k.push_back(fp[j].first);
    c.grid.assign(dd, std::vector<std::size_t>(dd));
    for (std::size_t i = 0; i < dd; ++i)
      for (std::size_t j = 0; j < dd; ++j) c.grid[i][j] = *shared_line(hs[i], ks[j]);
    out.certs.push_back(std::move(c));
  }
  return out;
}

// ---- normal form ----

struct NormalFormData {
  Mat4 transform{};  // new coordinates = transform * old
  Mat4 inverse{};
  SurfaceForm form;  // f(inverse * x)
  std::vector<Vec4> ell, m;  // residual factors, first nonzero coefficient 1
  Elem alpha{}, beta{};      // f = alpha prod l_i + beta prod m_j
  std::array<std::size_t, 4> chosen{};  // H, H, K, K indices sent to w, x, y, z
  bool identity_verified = false;       // form == xw prod ell + yz prod m exactly
  bool round_trip = false;              // form(transform * x) == f
  bool lemma44 = false;                 // every a_i, d_i, f_i, g_i nonzero
  std::string lemma44_witness;
};

namespace detail {

inline SparsePoly<4> product_of_linear(const Field& F, const std::vector<Vec4>& forms) {
  SparsePoly<4> p = SparsePoly<4>::constant(F, F.one());
  for (const auto& l : forms) p = poly_mul(F, p, SparsePoly<4>::linear(F, l));
  return p;
}

// l o M as a covector in the new coordinates.
inline Vec4 pull_back(const Field& F, const Vec4& l, const Mat4& M) {
  Vec4 out;
  for (int v = 0; v < 4; ++v) {
    Elem s = F.zero();
    for (int u = 0; u < 4; ++u) s = F.add(s, F.mul(l[u], M[u][v]));
    out[v] = s;
  }
  return out;
}

inline Elem leading(const Vec4& v) {
  for (Elem x : v)
    if (!x.is_zero()) return x;
  return Elem{0};
}

}  // namespace detail

inline NormalFormData normalize_star_chord(const SurfaceForm& f, const StarChordCertificate& cert) {
  const Field& F = f.field();
  const std::size_t d = cert.size();
  if (static_cast<int>(d) != f.degree() || cert.planes_k.size() != d || d < 2)
    throw Error(ErrorCode::RescaleInconsistent, "certificate size does not match the degree");
  for (const auto& h : cert.planes_h) detail::check_same_field(&F, h.field);
  std::vector<Vec4> ls, ms;
  for (const auto& h : cert.planes_h) ls.push_back(h.covector);
  for (const auto& k : cert.planes_k) ms.push_back(k.covector);

  // f = alpha P + beta M, coefficient by coefficient
  const auto P = detail::product_of_linear(F, ls), M = detail::product_of_linear(F, ms);
  std::set<Exponent<4>> monos;
  for (const auto* p : {&f.poly(), &P, &M})
    for (const auto& [e, c] : p->terms) monos.insert(e);
  std::vector<Exponent<4>> mv(monos.begin(), monos.end());
  std::optional<std::pair<Elem, Elem>> sol;
  for (std::size_t i = 0; i < mv.size() && !sol; ++i)
    for (std::size_t j = i + 1; j < mv.size() && !sol; ++j) {
      const Elem p1 = P.coeff(mv[i]), m1 = M.coeff(mv[i]), p2 = P.coeff(mv[j]), m2 = M.coeff(mv[j]);
      const Elem det = F.sub(F.mul(p1, m2), F.mul(p2, m1));
      if (det.is_zero()) continue;
      const Elem f1 = f.poly().coeff(mv[i]), f2 = f.poly().coeff(mv[j]);
      const Elem a = F.div(F.sub(F.mul(f1, m2), F.mul(f2, m1)), det);
      const Elem b = F.div(F.sub(F.mul(p1, f2), F.mul(p2, f1)), det);
      sol = {a, b};
    }
  if (!sol) throw Error(ErrorCode::RescaleInconsistent, "plane products are proportional");
  const auto [alpha, beta] = *sol;
  for (const auto& e : mv)
    if (F.add(F.mul(alpha, P.coeff(e)), F.mul(beta, M.coeff(e))) != f.poly().coeff(e))
      throw Error(ErrorCode::RescaleInconsistent, "f is not a combination of the two plane products");
  if (alpha.is_zero() || beta.is_zero()) throw Error(ErrorCode::RescaleInconsistent, "a plane product drops out of f");

  // pick l1, l2, m1, m2 with independent covectors
  std::optional<std::array<std::size_t, 4>> pick;
  for (std::size_t i1 = 0; i1 < d && !pick; ++i1)
    for (std::size_t i2 = 0; i2 < d && !pick; ++i2)
      for (std::size_t j1 = 0; j1 < d && !pick; ++j1)
        for (std::size_t j2 = 0; j2 < d && !pick; ++j2) {
          if (i1 == i2 || j1 == j2) continue;
          Mat4 t{ls[i2], ms[j1], ms[j2], ls[i1]};
          if (!determinant4(F, t).is_zero()) pick = std::array<std::size_t, 4>{i1, i2, j1, j2};
        }
  if (!pick) throw Error(ErrorCode::SingularChange, "no four plane covectors are independent");
  const auto [i1, i2, j1, j2] = *pick;
  std::vector<Vec4> lrest, mrest;
  for (std::size_t i = 0; i < d; ++i)
    if (i != i1 && i != i2) lrest.push_back(ls[i]);
  for (std::size_t j = 0; j < d; ++j)
    if (j != j1 && j != j2) mrest.push_back(ms[j]);

  auto scaled = [&](Elem s, const Vec4& v) {
    Vec4 o;
    for (int u = 0; u < 4; ++u) o[u] = F.mul(s, v[u]);
    return o;
  };
  NormalFormData nf;
  nf.form = f;
  nf.alpha = alpha;
  nf.beta = beta;
  nf.chosen = *pick;
  // Two passes: the second absorbs the leading coefficients of the pulled
  // back residual factors into the w and z rows.
  Elem cw = alpha, cz = beta;
  for (int pass = 0; pass < 2; ++pass) {
    nf.transform = Mat4{ls[i2], ms[j1], scaled(cz, ms[j2]), scaled(cw, ls[i1])};
    nf.inverse = inverse4(F, nf.transform);
    Elem lam_l = F.one(), lam_m = F.one();
    nf.ell.clear();
    nf.m.clear();
    for (const auto& l : lrest) {
      Vec4 v = detail::pull_back(F, l, nf.inverse);
      lam_l = F.mul(lam_l, detail::leading(v));
      detail::scale_canonical(F, v);
      nf.ell.push_back(v);
    }
    for (const auto& l : mrest) {
      Vec4 v = detail::pull_back(F, l, nf.inverse);
      lam_m = F.mul(lam_m, detail::leading(v));
      detail::scale_canonical(F, v);
      nf.m.push_back(v);
    }
    cw = F.mul(alpha, lam_l);
    cz = F.mul(beta, lam_m);
  }
  nf.form = substitute(f, nf.inverse);

  SparsePoly<4> expect;
  {
    Exponent<4> xw{1, 0, 0, 1}, yz{0, 1, 1, 0};
    SparsePoly<4> a, b;
    a.add_term(F, xw, F.one());
    b.add_term(F, yz, F.one());
    expect = poly_add(F, poly_mul(F, a, detail::product_of_linear(F, nf.ell)),
                      poly_mul(F, b, detail::product_of_linear(F, nf.m)));
  }
  nf.identity_verified = nf.form.poly() == expect;
  nf.round_trip = substitute(nf.form, nf.transform).poly() == f.poly();

  nf.lemma44 = true;
  for (std::size_t i = 0; i < nf.ell.size(); ++i)
    if (nf.ell[i][0].is_zero() || nf.ell[i][3].is_zero()) {
      nf.lemma44 = false;
      if (nf.lemma44_witness.empty()) nf.lemma44_witness = "a or d vanishes in residual l_" + std::to_string(i + 1);
    }
  for (std::size_t i = 0; i < nf.m.size(); ++i)
    if (nf.m[i][1].is_zero() || nf.m[i][2].is_zero()) {
      nf.lemma44 = false;
      if (nf.lemma44_witness.empty()) nf.lemma44_witness = "f or g vanishes in residual m_" + std::to_string(i + 1);
    }
  return nf;
}

// ---- extremality ----

struct ExtremalVerdict {
  bool pass = false;
  std::uint64_t p = 0;
  unsigned e = 0;
  std::string reason;
  std::optional<Mat4> bilinear;  // f = sum A_uv x_u x_v^q
  std::size_t bilinear_rank = 0;
};

inline ExtremalVerdict is_extremal(const SurfaceForm& f) {
  ExtremalVerdict v;
  const Field& F = f.field();
  const int d = f.degree();
  v.p = F.p();
  auto pe = d >= 3 ? prime_power_decompose(static_cast<std::uint64_t>(d - 1)) : std::nullopt;
  if (!pe || pe->first != F.p()) {
    v.reason = "d-1=" + std::to_string(d - 1) + " != " + std::to_string(F.p()) + "^e";
    return v;
  }
  v.e = pe->second;
  const int q = d - 1;
  Mat4 a{};
  for (auto& row : a) row.fill(F.zero());
  for (const auto& [ex, c] : f.terms()) {
    int big = -1;
    for (int u = 0; u < 4; ++u)
      if (ex[u] >= q) big = u;
    if (big < 0) {
      std::string mono;
      for (int u = 0; u < 4; ++u)
        if (ex[u]) mono += std::string(1, kVarNames[u]) + (ex[u] > 1 ? "^" + std::to_string(ex[u]) : "");
      v.reason = "monomial " + mono + " has no exponent >= " + std::to_string(q);
      return v;
    }
    Exponent<4> rest = ex;
    rest[big] -= q;
    int lin = big;
    for (int u = 0; u < 4; ++u)
      if (rest[u]) lin = u;
    a[lin][big] = c;
  }
  v.pass = true;
  v.bilinear = a;
  FMatrix m;
  for (const auto& row : a) m.emplace_back(row.begin(), row.end());
  v.bilinear_rank = rank(F, m);
  return v;
}

// ---- the extremality argument on a normal form ----

struct PipelineLink {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct PipelineResult {
  std::vector<PipelineLink> links;
  bool pass() const {
    return std::all_of(links.begin(), links.end(), [](const PipelineLink& l) { return l.pass; });
  }
};

// Monomials allowed once the middle F_l vanish in both the (y, w) and (z, w)
// substitutions.
inline bool eight_monomial_form(const SurfaceForm& g) {
  const int d = g.degree();
  const std::set<Exponent<4>> allowed{{1, 0, 0, d - 1},     {d - 1, 0, 0, 1},     {1, d - 2, 0, 1}, {1, 0, d - 2, 1},
                                      {0, 1, d - 1, 0},     {0, d - 1, 1, 0},     {d - 2, 1, 1, 0}, {0, 1, 1, d - 2}};
  return std::all_of(g.terms().begin(), g.terms().end(), [&](const auto& t) { return allowed.count(t.first) > 0; });
}

// x <-> x, y <-> z: the symmetric substitution x = A y, z = B w.
inline SurfaceForm swap_y_z(const SurfaceForm& f) {
  SparsePoly<4> p;
  for (const auto& [e, c] : f.terms()) p.add_term(f.field(), {e[0], e[2], e[1], e[3]}, c);
  return SurfaceForm(f.field_ptr(), p);
}

inline PipelineResult extremality_pipeline(const NormalFormData& nf) {
  PipelineResult r;
  const SurfaceForm& g = nf.form;
  const Field& F = g.field();
  const int d = g.degree();
  auto add = [&](std::string name, bool pass, std::string detail) {
    r.links.push_back({std::move(name), pass, std::move(detail)});
  };
  add("normal_form", nf.identity_verified && nf.round_trip, "xw prod l + yz prod m, inverse substitution restores f");
  add("nonvanishing", nf.lemma44, nf.lemma44 ? "a_i, d_i, f_i, g_i all nonzero" : nf.lemma44_witness);

  const auto fl = f_coefficients(g);
  std::vector<BivariatePoly> inner(fl.begin() + 1, fl.end() - 1);
  const auto zeros = common_zeros(F, inner);
  const std::size_t want = static_cast<std::size_t>((d - 1) * (d - 1));
  add("f_l_zeros", zeros.size() == want,
      std::to_string(zeros.size()) + " common zeros of F_1..F_" + std::to_string(d - 1) + ", expected " +
          std::to_string(want));
  const auto outer = common_zeros(F, {fl[1], fl[d - 1]});
  add("outer_pair_cuts_out", outer.size() == zeros.size(),
      "F_1, F_" + std::to_string(d - 1) + " share " + std::to_string(outer.size()) + " zeros");
  const bool mid = middle_vanishing_check(g) && middle_vanishing_check(swap_y_z(g));
  add("middle_vanishing", mid, "F_l = 0 for 1 < l < d-1 in both substitutions");
  add("eight_monomials", eight_monomial_form(g), "support inside the eight admissible monomials");
  const Elem a2 = g.coeff({1, d - 2, 0, 1}), a3 = g.coeff({1, 0, d - 2, 1}), b1 = g.coeff({d - 2, 1, 1, 0}),
             b4 = g.coeff({0, 1, 1, d - 2});
  add("cross_terms_vanish", a2.is_zero() && a3.is_zero() && b1.is_zero() && b4.is_zero(),
      "coefficients of xy^{d-2}w, xz^{d-2}w, x^{d-2}yz, yzw^{d-2}");
  add("char_divides_d_minus_1", (d - 1) % static_cast<int>(F.p()) == 0,
      "p=" + std::to_string(F.p()) + ", d-1=" + std::to_string(d - 1));
  const auto ext = is_extremal(g);
  add("normal_form_extremal", ext.pass, ext.pass ? "every monomial divisible by a (d-1)-th power" : ext.reason);
  return r;
}

}  // namespace surflines
