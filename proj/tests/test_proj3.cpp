#include <gtest/gtest.h>

#include <map>
#include <set>

#include "surflines/proj3.hpp"

using namespace surflines;

namespace {

Vec4 v4(const Field& F, std::initializer_list<int> xs) {
  Vec4 v{};
  int i = 0;
  for (int x : xs) v[i++] = F.from_int(x);
  return v;
}

// V(h1, h2) from integer covectors.
Line vline(const Field& F, std::initializer_list<int> h1, std::initializer_list<int> h2) {
  return Line::from_covectors(F, v4(F, h1), v4(F, h2));
}

std::size_t stacked_rank(const Line& a, const Line& b) {
  FMatrix m;
  for (const auto* l : {&a, &b})
    for (int i = 0; i < 2; ++i) m.emplace_back(l->row(i).begin(), l->row(i).end());
  return rank(a.field(), m);
}

}  // namespace

TEST(Points, Counts) {
  EXPECT_EQ(enumerate_points(*make_field(2, 1)).size(), 15u);
  EXPECT_EQ(enumerate_points(*make_field(3, 1)).size(), 40u);
  EXPECT_EQ(enumerate_points(*make_field(2, 2)).size(), 85u);
}

TEST(Points, CanonicalAndDistinct) {
  auto F = make_field(3, 2);
  auto pts = enumerate_points(*F);
  std::set<Vec4> seen;
  for (const auto& p : pts) {
    int first = 0;
    while (p.coords[first].is_zero()) ++first;
    EXPECT_EQ(p.coords[first], F->one());
    EXPECT_TRUE(seen.insert(p.coords).second);
  }
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
}

TEST(Lines, Counts) {
  EXPECT_EQ(enumerate_lines(*make_field(2, 1)).size(), 35u);
  EXPECT_EQ(enumerate_lines(*make_field(3, 1)).size(), 130u);
  EXPECT_EQ(line_count(*make_field(3, 2)), 7462u);
  EXPECT_EQ(enumerate_lines(*make_field(3, 2)).size(), 7462u);
}

TEST(Lines, NoDuplicatesAndPluckerRoundTrip) {
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
    auto F = make_field(p, k);
    auto ls = enumerate_lines(*F);
    EXPECT_EQ(std::adjacent_find(ls.begin(), ls.end()), ls.end());
    std::set<std::array<Elem, 6>> pl;
    for (const auto& l : ls) {
      const auto& pk = l.plucker();
      // Klein quadric
      Elem rel = F->add(F->sub(F->mul(pk[0], pk[5]), F->mul(pk[1], pk[4])), F->mul(pk[2], pk[3]));
      EXPECT_TRUE(rel.is_zero());
      EXPECT_TRUE(pl.insert(pk).second);
      // any two distinct points of the line rebuild the same canonical basis
      auto pts = points_on_line(l);
      EXPECT_EQ(Line::from_points(pts.front(), pts.back()), l);
      EXPECT_EQ(parse_line_text(*F, line_text(l)), l);
    }
  }
}

TEST(Lines, DoubleCounting) {
  for (unsigned p : {2u, 3u}) {
    auto F = make_field(p, 1);
    const std::uint64_t q = p;
    std::map<Vec4, std::uint64_t> through;
    for (const auto& l : enumerate_lines(*F)) {
      auto pts = points_on_line(l);
      EXPECT_EQ(pts.size(), q + 1);
      for (const auto& pt : pts) {
        EXPECT_TRUE(l.contains(pt));
        ++through[pt.coords];
      }
    }
    EXPECT_EQ(through.size(), point_count(*F));
    for (const auto& [pt, n] : through) EXPECT_EQ(n, q * q + q + 1);
  }
}

TEST(Lines, MeetAgreesWithRankOracle) {
  auto F = make_field(2, 1);
  auto ls = enumerate_lines(*F);
  for (const auto& a : ls)
    for (const auto& b : ls) {
      EXPECT_EQ(lines_meet(a, b), stacked_rank(a, b) <= 3);
      EXPECT_EQ(lines_meet(a, b), lines_meet(b, a));
    }
}

TEST(Lines, MeetExamples) {
  auto F = make_field(3, 1);
  Line L = vline(*F, {1, 0, 0, 0}, {0, 1, 0, 0});
  Line M = vline(*F, {0, 0, 1, 0}, {0, 0, 0, 1});
  Line N = vline(*F, {1, 0, 0, 0}, {0, 0, 1, 0});
  EXPECT_FALSE(lines_meet(L, M));
  EXPECT_TRUE(lines_meet(L, N));
  EXPECT_TRUE(lines_meet(L, L));
  EXPECT_EQ(meet_point(L, N).coords, v4(*F, {0, 0, 0, 1}));
}

TEST(Lines, SpanPlane) {
  auto F = make_field(3, 1);
  Line L = vline(*F, {1, 0, 0, 0}, {0, 1, 0, 0});
  Line M = vline(*F, {0, 0, 1, 0}, {0, 0, 0, 1});
  Line N = vline(*F, {1, 0, 0, 0}, {0, 0, 1, 0});
  EXPECT_EQ(span_plane(L, N).covector, v4(*F, {1, 0, 0, 0}));
  try {
    span_plane(L, M);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SkewLines);
  }
  try {
    span_plane(L, L);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EqualLines);
  }
  Line K = vline(*F, {0, 0, 1, 0}, {1, -1, 0, 0});
  EXPECT_EQ(span_plane(M, K).covector, v4(*F, {0, 0, 1, 0}));
}

TEST(Lines, FieldMismatch) {
  auto F = make_field(3, 1), G = make_field(3, 2);
  Line a = line_at(*F, 0), b = line_at(*G, 0);
  EXPECT_THROW(lines_meet(a, b), Error);
}

TEST(Lines, PointsAndPlanesThroughLine) {
  auto F = make_field(3, 1);
  for (const auto& l : enumerate_lines(*F)) {
    auto pts = points_on_line(l);
    auto pls = planes_through_line(l);
    ASSERT_EQ(pts.size(), 4u);
    ASSERT_EQ(pls.size(), 4u);
    EXPECT_EQ(std::set<Point>(pts.begin(), pts.end()).size(), 4u);
    EXPECT_EQ(std::set<Plane>(pls.begin(), pls.end()).size(), 4u);
    for (const auto& h : pls) {
      EXPECT_TRUE(plane_contains(h, l));
      for (const auto& pt : pts) EXPECT_TRUE(plane_contains(h, pt));
    }
  }
}

TEST(Lines, PlaneIntersectionIsTheLine) {
  auto F = make_field(2, 2);
  for (std::uint64_t i = 0; i < line_count(*F); i += 7) {
    Line l = line_at(*F, i);
    auto pls = planes_through_line(l);
    EXPECT_EQ(Line::from_planes(pls[0], pls[1]), l);
  }
}
