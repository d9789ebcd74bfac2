#pragma once

// Lines on a surface over GF(q^m): an exhaustive sweep of the Grassmannian
// cells, an independent sweep of the six affine charts, transversals, and the
// coefficient system F_l of the substitution x = A z, y = B w.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "surflines/bounds.hpp"
#include "surflines/forms.hpp"
#include "surflines/parallel.hpp"

namespace surflines {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000;

enum class EnumAlgo { Sweep, Charts };

inline std::string_view algo_name(EnumAlgo a) { return a == EnumAlgo::Sweep ? "sweep" : "charts"; }

struct LineSet {
  FieldPtr field;  // GF(q^m)
  unsigned ext = 1;
  SurfaceForm base;     // as given
  SurfaceForm surface;  // coefficients embedded in GF(q^m)
  std::vector<Line> lines;
  EnumAlgo algo = EnumAlgo::Sweep;

  std::size_t size() const { return lines.size(); }
  int degree() const { return surface.degree(); }

  std::optional<std::size_t> index_of(const Line& l) const {
    auto it = std::lower_bound(lines.begin(), lines.end(), l);
    if (it == lines.end() || !(*it == l)) return std::nullopt;
    return static_cast<std::size_t>(it - lines.begin());
  }
  bool contains(const Line& l) const { return index_of(l).has_value(); }
};

struct ExtensionChoice {
  unsigned m = 2;
  bool extremal_regime = false;
  std::string caveat;
};

// When d - 1 = p^e, the lines live over GF(p^{2e}); otherwise 2 is a guess.
inline ExtensionChoice default_extension(const SurfaceForm& f) {
  ExtensionChoice c;
  const Field& F = f.field();
  auto pe = f.degree() >= 2 ? prime_power_decompose(static_cast<std::uint64_t>(f.degree() - 1)) : std::nullopt;
  if (pe && pe->first == F.p()) {
    const unsigned need = 2 * pe->second;
    unsigned m = 1;
    while ((F.k() * m) % need != 0) ++m;
    c.m = m;
    c.extremal_regime = true;
    return c;
  }
  c.m = 2;
  c.caveat = "d-1 is not a power of the characteristic; lines defined over larger extensions may exist";
  return c;
}

namespace detail {

inline FieldPtr search_field(const SurfaceForm& f, unsigned m) {
  if (m < 1) throw Error(ErrorCode::Usage, "extension degree must be >= 1");
  return m == 1 ? f.field_ptr() : extension_field(f.field(), m);
}

inline std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
  long double approx = 1;
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    approx *= b;
    r *= b;
  }
  if (approx > 1.8e19L) return UINT64_MAX;
  return r;
}

inline std::uint64_t chunk_count(std::uint64_t n) { return std::clamp<std::uint64_t>(n / 4096, 1, 256); }

}  // namespace detail

inline std::uint64_t sweep_cost(const Field& ext) { return line_count(ext); }
inline std::uint64_t chart_cost(const Field& ext) { return 6 * detail::pow_u64(ext.q(), 4); }

inline LineSet enumerate_lines_on_surface(const SurfaceForm& f, unsigned m, std::uint64_t budget = kDefaultBudget) {
  LineSet ls;
  ls.field = detail::search_field(f, m);
  ls.ext = m;
  ls.base = f;
  ls.surface = f.extend(Embedding(f.field_ptr(), ls.field));
  ls.algo = EnumAlgo::Sweep;
  const Field& E = *ls.field;
  const std::uint64_t n = sweep_cost(E);
  if (n > budget)
    throw Error(ErrorCode::BudgetExceeded,
                "sweep over " + std::to_string(n) + " lines exceeds budget " + std::to_string(budget));
  const SurfaceForm& fe = ls.surface;
  ls.lines = parallel_collect<Line>(n, detail::chunk_count(n), [&](std::uint64_t b, std::uint64_t e) {
    FormEvaluator ev(fe);
    std::vector<Line> found;
    Vec4 r0, r1;
    for (std::uint64_t i = b; i < e; ++i) {
      line_rows_at(E, i, r0, r1);
      if (ev.vanishes_on(r0, r1)) found.push_back(Line::from_rows(E, r0, r1));
    }
    return found;
  });
  std::sort(ls.lines.begin(), ls.lines.end());
  return ls;
}

// Chart (i, j) holds the lines with p_ij != 0, written with the identity in
// columns i, j. A line is counted in the first chart (Pluecker order) where it
// appears, so the charts partition the Grassmannian.
inline LineSet enumerate_via_charts(const SurfaceForm& f, unsigned m, std::uint64_t budget = kDefaultBudget) {
  LineSet ls;
  ls.field = detail::search_field(f, m);
  ls.ext = m;
  ls.base = f;
  ls.surface = f.extend(Embedding(f.field_ptr(), ls.field));
  ls.algo = EnumAlgo::Charts;
  const Field& E = *ls.field;
  const std::uint64_t total = chart_cost(E);
  if (total > budget)
    throw Error(ErrorCode::BudgetExceeded,
                "chart sweep over " + std::to_string(total) + " tuples exceeds budget " + std::to_string(budget));
  static constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  const std::uint64_t Q = E.q(), per_chart = total / 6;
  const SurfaceForm& fe = ls.surface;
  ls.lines = parallel_collect<Line>(total, detail::chunk_count(total), [&](std::uint64_t b, std::uint64_t e) {
    FormEvaluator ev(fe);
    std::vector<Line> found;
    std::vector<Elem> coeffs;
    for (std::uint64_t idx = b; idx < e; ++idx) {
      const int chart = static_cast<int>(idx / per_chart);
      std::uint64_t rest = idx % per_chart;
      const int i = pairs[chart][0], j = pairs[chart][1];
      int others[2], o = 0;
      for (int c = 0; c < 4; ++c)
        if (c != i && c != j) others[o++] = c;
      Elem prm[4];
      for (auto& x : prm) {
        x = Elem{static_cast<std::uint32_t>(rest % Q)};
        rest /= Q;
      }
      Vec4 r0{}, r1{};
      r0.fill(E.zero());
      r1.fill(E.zero());
      r0[i] = E.one();
      r1[j] = E.one();
      r0[others[0]] = prm[0];
      r0[others[1]] = prm[1];
      r1[others[0]] = prm[2];
      r1[others[1]] = prm[3];
      // already counted in an earlier chart?
      auto pk = Line::plucker_of(E, r0, r1);
      bool earlier = false;
      for (int c = 0; c < chart && !earlier; ++c) earlier = !pk[c].is_zero();
      if (earlier) continue;
      ev.restrict(r0, r1, coeffs);
      if (std::all_of(coeffs.begin(), coeffs.end(), [](Elem c) { return c.is_zero(); }))
        found.push_back(Line::from_rows(E, r0, r1));
    }
    return found;
  });
  std::sort(ls.lines.begin(), ls.lines.end());
  return ls;
}

inline LineSet enumerate(const SurfaceForm& f, unsigned m, EnumAlgo algo, std::uint64_t budget = kDefaultBudget) {
  return algo == EnumAlgo::Sweep ? enumerate_lines_on_surface(f, m, budget) : enumerate_via_charts(f, m, budget);
}

// Every member re-restricted from scratch.
inline bool reverify_lines(const LineSet& ls) {
  return std::all_of(ls.lines.begin(), ls.lines.end(), [&](const Line& l) { return contains_line(ls.surface, l); });
}

inline bool same_lines(const LineSet& a, const LineSet& b) {
  if (a.size() != b.size() || !a.field->same_as(*b.field)) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a.lines[i] == b.lines[i])) return false;
  return true;
}

inline Line embed_line(const Line& l, const Embedding& emb) {
  Vec4 a{}, b{};
  for (int j = 0; j < 4; ++j) {
    a[j] = emb(l.row(0)[j]);
    b[j] = emb(l.row(1)[j]);
  }
  return Line::from_rows(emb.target(), a, b);
}

inline std::vector<Line> transversals(const LineSet& ls, const Line& a, const Line& b) {
  if (!ls.contains(a) || !ls.contains(b)) throw Error(ErrorCode::NotOnSurface, "transversal endpoints must lie on the surface");
  if (lines_meet(a, b)) throw Error(ErrorCode::NotSkew, "lines meet");
  std::vector<Line> out;
  for (const auto& l : ls.lines)
    if (lines_meet(l, a) && lines_meet(l, b)) out.push_back(l);
  return out;
}

using BivariatePoly = SparsePoly<2>;

// F[l] for l = 0..d: the coefficient of z^l w^{d-l} after x = A z, y = B w;
// a_{jkmn} lands at A^j B^k in F[j+m].
inline std::vector<BivariatePoly> f_coefficients(const SurfaceForm& f) {
  std::vector<BivariatePoly> out(f.degree() + 1);
  for (const auto& [e, c] : f.terms()) out[e[0] + e[2]].add_term(f.field(), {e[0], e[1]}, c);
  return out;
}

inline std::vector<std::pair<Elem, Elem>> common_zeros(const Field& F, const std::vector<BivariatePoly>& polys) {
  std::vector<std::pair<Elem, Elem>> out;
  for (std::uint32_t a = 0; a < F.q(); ++a)
    for (std::uint32_t b = 0; b < F.q(); ++b) {
      const std::array<Elem, 2> pt{Elem{a}, Elem{b}};
      if (std::all_of(polys.begin(), polys.end(), [&](const BivariatePoly& p) { return poly_eval(F, p, pt).is_zero(); }))
        out.emplace_back(Elem{a}, Elem{b});
    }
  return out;
}

// Every monomial x^j y^k z^m w^n has j + m in {1, d-1}.
inline bool middle_vanishing_check(const SurfaceForm& f) {
  const int d = f.degree();
  for (const auto& [e, c] : f.terms()) {
    const int l = e[0] + e[2];
    if (l != 1 && l != d - 1) return false;
  }
  return true;
}

}  // namespace surflines
