#include <gtest/gtest.h>

#include <random>

#include "surflines/lines.hpp"

using namespace surflines;

namespace {

std::string fixture(const std::string& name) { return std::string(SURFLINES_DATA_DIR) + "/surfaces/" + name; }

LineSet load_lines(const std::string& name, EnumAlgo algo = EnumAlgo::Sweep) {
  auto sf = load_surface_file(fixture(name));
  return enumerate(sf.form, *sf.ext, algo);
}

// Point-evaluation oracle: a line lies on V(f) iff f vanishes at every
// rational point of it, valid when the line has more than d points.
std::vector<Line> lines_by_points(const SurfaceForm& fe) {
  const Field& E = fe.field();
  EXPECT_GT(E.q() + 1, static_cast<std::uint32_t>(fe.degree()));
  std::vector<Line> out;
  for (const auto& l : enumerate_lines(E)) {
    bool all = true;
    for (const auto& p : points_on_line(l))
      if (!evaluate(fe, p.coords).is_zero()) {
        all = false;
        break;
      }
    if (all) out.push_back(l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

BivariatePoly bivariate(const Field& F, std::initializer_list<std::pair<std::array<int, 2>, int>> terms) {
  BivariatePoly p;
  for (const auto& [e, c] : terms) p.add_term(F, {e[0], e[1]}, F.from_int(c));
  return p;
}

}  // namespace

TEST(Enumerate, FermatCubicHas27) {
  auto ls = load_lines("fermat-cubic-c2.surface");
  EXPECT_EQ(ls.size(), 27u);
  EXPECT_EQ(ls.field->q(), 4u);
}

TEST(Enumerate, FermatQuarticChar3Has112) { EXPECT_EQ(load_lines("fermat-q3.surface").size(), 112u); }

TEST(Enumerate, FermatQuarticChar5Has48) { EXPECT_EQ(load_lines("fermat-c5.surface").size(), 48u); }

TEST(Enumerate, FermatQuinticChar2Has325) { EXPECT_EQ(load_lines("fermat-quintic-c2.surface").size(), 325u); }

TEST(Enumerate, PointOracleAgrees) {
  for (const char* name : {"fermat-cubic-c2.surface", "fermat-q3.surface", "fermat-c5.surface", "normal-form-q3.surface"}) {
    auto ls = load_lines(name);
    EXPECT_EQ(ls.lines, lines_by_points(ls.surface)) << name;
  }
}

TEST(Enumerate, ChartOracleAgreesOnAllFixtures) {
  for (const char* name : {"fermat-cubic-c2.surface", "fermat-q3.surface", "fermat-c5.surface", "fermat-quintic-c2.surface",
                           "normal-form-q3.surface", "cone-c5.surface"}) {
    auto a = load_lines(name, EnumAlgo::Sweep);
    auto b = load_lines(name, EnumAlgo::Charts);
    EXPECT_TRUE(same_lines(a, b)) << name << ": " << a.size() << " vs " << b.size();
  }
}

TEST(Enumerate, SortedDistinctAndReverified) {
  auto ls = load_lines("fermat-q3.surface");
  EXPECT_TRUE(std::is_sorted(ls.lines.begin(), ls.lines.end()));
  EXPECT_EQ(std::adjacent_find(ls.lines.begin(), ls.lines.end()), ls.lines.end());
  EXPECT_TRUE(reverify_lines(ls));
  for (const auto& l : ls.lines) EXPECT_TRUE(restrict_to_line(ls.surface, l).is_zero());
}

TEST(Enumerate, RandomDenseQuarticMayBeEmpty) {
  auto F = make_field(3, 2);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::uint32_t> pick(1, F->q() - 1);
  SparsePoly<4> p;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b)
      for (int c = 0; a + b + c <= 4; ++c) p.add_term(*F, {a, b, c, 4 - a - b - c}, Elem{pick(rng)});
  SurfaceForm f(F, p);
  auto a = enumerate_lines_on_surface(f, 1);
  auto b = enumerate_via_charts(f, 1);
  EXPECT_TRUE(same_lines(a, b));
  EXPECT_LE(BigInt(a.size()), bound_table(4).max_lines);
}

TEST(Enumerate, ExtensionMonotone) {
  auto F = make_field(2, 1);
  auto f = parse_form("x^3 + y^3 + z^3 + w^3", F);
  auto small = enumerate_lines_on_surface(f, 1);
  auto big = enumerate_lines_on_surface(f, 2);
  Embedding emb(small.field, big.field);
  for (const auto& l : small.lines) EXPECT_TRUE(big.contains(embed_line(l, emb)));
  EXPECT_LE(small.size(), big.size());
}

TEST(Enumerate, BudgetGuard) {
  auto sf = load_surface_file(fixture("fermat-c5.surface"));
  try {
    enumerate_lines_on_surface(sf.form, 2, 1000);
    FAIL() << "expected BudgetExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
  EXPECT_THROW(enumerate_via_charts(sf.form, 2, 1000), Error);
}

TEST(Enumerate, DefaultExtension) {
  auto F3 = make_field(3, 1);
  auto c = default_extension(parse_form("x^4 + y^4 + z^4 + w^4", F3));
  EXPECT_EQ(c.m, 2u);
  EXPECT_TRUE(c.extremal_regime);
  EXPECT_TRUE(c.caveat.empty());
  auto F5 = make_field(5, 1);
  auto c5 = default_extension(parse_form("x^4 + y^4 + z^4 + w^4", F5));
  EXPECT_FALSE(c5.extremal_regime);
  EXPECT_FALSE(c5.caveat.empty());
  // GF(9) already contains GF(3^2)
  auto F9 = make_field(3, 2);
  EXPECT_EQ(default_extension(parse_form("x^4 + y^4 + z^4 + w^4", F9)).m, 1u);
}

TEST(Transversals, SkewPairCounts) {
  for (auto [name, want] : {std::pair{"fermat-cubic-c2.surface", 5u}, std::pair{"fermat-q3.surface", 10u}}) {
    auto ls = load_lines(name);
    std::size_t checked = 0;
    for (std::size_t i = 1; i < ls.size() && checked < 40; ++i)
      if (!lines_meet(ls.lines[0], ls.lines[i])) {
        EXPECT_EQ(transversals(ls, ls.lines[0], ls.lines[i]).size(), want) << name;
        ++checked;
      }
    EXPECT_GT(checked, 0u);
  }
}

TEST(Transversals, Errors) {
  auto ls = load_lines("fermat-cubic-c2.surface");
  std::size_t j = 1;
  while (!lines_meet(ls.lines[0], ls.lines[j])) ++j;
  try {
    transversals(ls, ls.lines[0], ls.lines[j]);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSkew);
  }
  const Field& E = *ls.field;
  std::uint64_t k = 0;
  while (ls.contains(line_at(E, k))) ++k;
  const Line off = line_at(E, k);
  try {
    transversals(ls, off, ls.lines[0]);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOnSurface);
  }
}

TEST(FCoefficients, NormalFormQuartic) {
  auto F = make_field(3, 2);
  auto f = parse_form("x^3*w + x*w^3 + y^3*z + y*z^3", F);
  auto fl = f_coefficients(f);
  ASSERT_EQ(fl.size(), 5u);
  EXPECT_EQ(fl[3], bivariate(*F, {{{3, 0}, 1}, {{0, 1}, 1}}));
  EXPECT_TRUE(fl[2].is_zero());
  EXPECT_EQ(fl[1], bivariate(*F, {{{1, 0}, 1}, {{0, 3}, 1}}));
  EXPECT_EQ(common_zeros(*F, {fl[1], fl[3]}).size(), 9u);
  EXPECT_EQ(common_zeros(*F, {fl[1], fl[2], fl[3]}).size(), 9u);
}

TEST(FCoefficients, IndexRule) {
  // x^j y^k z^m w^n lands in F_{j+m} at A^j B^k
  auto F = make_field(5, 1);
  auto f = parse_form("2*x^2*y*z*w + 3*y^2*z^3", F);
  auto fl = f_coefficients(f);
  EXPECT_EQ(fl[3].coeff({2, 1}), F->from_int(2));
  EXPECT_EQ(fl[3].coeff({0, 2}), F->from_int(3));
  for (int l : {0, 1, 2, 4, 5}) EXPECT_TRUE(fl[l].is_zero());
}

TEST(MiddleVanishing, Cases) {
  auto F = make_field(3, 2);
  EXPECT_TRUE(middle_vanishing_check(parse_form("x^3*w + x*w^3 + y^3*z + y*z^3", F)));
  EXPECT_FALSE(middle_vanishing_check(parse_form("x^4 + y^4 + z^4 + w^4", F)));
  // xw(x+y)^2 contains x^2*y*w
  EXPECT_FALSE(middle_vanishing_check(parse_form("x*w*(x+y)^2", F)));
  auto F5 = make_field(5, 1);
  EXPECT_FALSE(middle_vanishing_check(parse_form("x*w*(x+y)^3", F5)));
}

TEST(MiddleVanishing, MatchesFCoefficients) {
  auto F = make_field(5, 1);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> var(0, 3), coef(1, 4), nterms(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    SparsePoly<4> p;
    for (int t = nterms(rng); t > 0; --t) {
      Exponent<4> e{};
      for (int i = 0; i < 5; ++i) ++e[var(rng)];
      p.add_term(*F, e, F->from_int(coef(rng)));
    }
    if (p.is_zero()) continue;
    SurfaceForm f(F, p);
    auto fl = f_coefficients(f);
    bool middle_zero = true;
    for (int l = 0; l <= 5; ++l)
      if (l != 1 && l != 4 && !fl[l].is_zero()) middle_zero = false;
    EXPECT_EQ(middle_vanishing_check(f), middle_zero) << f.to_string();
  }
}
