#pragma once

// Closed-form counts for smooth degree-d surfaces in P^3, in exact integers.

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <utility>

#include "surflines/error.hpp"

namespace surflines {

using BigInt = boost::multiprecision::cpp_int;

struct BoundTable {
  BigInt d;
  BigInt max_lines;             // d^2 (d^2 - 3d + 3)
  BigInt picard_bound;          // d^3 - 4d^2 + 6d - 2
  BigInt c2;                    // d^3 - 4d^2 + 6d
  BigInt max_meeting;           // d^3 - 3d^2 + 4d - 2
  BigInt full_planes_per_line;  // d^2 - 2d + 2
  BigInt transversal_bound;     // (d-1)^2 + 1
  BigInt gq_s, gq_t;            // (d-1, (d-1)^2)
  BigInt gq_points, gq_blocks;  // (s+1)(st+1), (t+1)(st+1)
};

inline BoundTable bound_table(const BigInt& d) {
  if (d < 3) throw Error(ErrorCode::DegreeTooSmall, "bounds need d >= 3");
  BoundTable b;
  b.d = d;
  const BigInt d2 = d * d, d3 = d2 * d;
  b.max_lines = d2 * (d2 - 3 * d + 3);
  b.picard_bound = d3 - 4 * d2 + 6 * d - 2;
  b.c2 = d3 - 4 * d2 + 6 * d;
  b.max_meeting = d3 - 3 * d2 + 4 * d - 2;
  b.full_planes_per_line = d2 - 2 * d + 2;
  b.transversal_bound = (d - 1) * (d - 1) + 1;
  b.gq_s = d - 1;
  b.gq_t = (d - 1) * (d - 1);
  b.gq_points = (b.gq_s + 1) * (b.gq_s * b.gq_t + 1);
  b.gq_blocks = (b.gq_t + 1) * (b.gq_s * b.gq_t + 1);
  return b;
}

inline BoundTable bound_table(long long d) { return bound_table(BigInt(d)); }

// Skew lines plus meeting lines plus the line itself exhaust the bound.
struct SkewIdentity {
  BigInt skew, meeting, total, max_lines;
  bool holds;
};

inline SkewIdentity skew_bound_check(const BigInt& d) {
  auto b = bound_table(d);
  SkewIdentity s;
  s.skew = boost::multiprecision::pow(BigInt(d - 1), 4);
  s.meeting = b.max_meeting;
  s.total = s.skew + s.meeting + 1;
  s.max_lines = b.max_lines;
  s.holds = s.total == s.max_lines;
  return s;
}

inline SkewIdentity skew_bound_check(long long d) { return skew_bound_check(BigInt(d)); }

// n = p^e with p prime, or nothing.
inline std::optional<std::pair<std::uint64_t, unsigned>> prime_power_decompose(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t c = 2; c * c <= n; ++c)
    if (n % c == 0) {
      p = c;
      break;
    }
  if (!p) return std::pair<std::uint64_t, unsigned>{n, 1};
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  if (n != 1) return std::nullopt;
  return std::pair<std::uint64_t, unsigned>{p, e};
}

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace surflines
