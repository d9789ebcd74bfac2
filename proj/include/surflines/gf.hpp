#pragma once

// Exact arithmetic in GF(p^k).
//
// Elements are packed integers: the coefficient vector (c_0, ..., c_{k-1}) of
// the power basis 1, t, ..., t^{k-1} is stored as sum c_i p^i. The packing is
// canonical, so equality and ordering are integer comparisons. For q <= 2^16
// multiplication goes through exp/log tables; larger fields fall back to
// polynomial arithmetic modulo the defining polynomial.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "surflines/error.hpp"

namespace surflines {

struct Elem {
  std::uint32_t v = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint32_t value) : v(value) {}

  constexpr auto operator<=>(const Elem&) const = default;
  constexpr bool is_zero() const { return v == 0; }
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense polynomials over GF(p), constant term first, no trailing zeros.
using PrimePoly = std::vector<std::uint32_t>;

inline void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// Remainder of a modulo b (b nonzero).
inline PrimePoly poly_rem(PrimePoly a, const PrimePoly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const std::uint64_t c = a.back() * lead_inv % p;
    for (std::size_t i = 0; i <= db; ++i) {
      std::uint64_t sub = c * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

}  // namespace detail

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  std::uint32_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint32_t q() const { return q_; }
  // Monic modulus coefficients c_0..c_k.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool has_tables() const { return !exp_.empty(); }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  // The class of t, i.e. the generator of the power basis. For prime fields,
  // where t is a constant, this is the least primitive root instead.
  Elem generator() const { return k_ == 1 ? primitive_ : Elem{p_}; }
  Elem primitive() const { return primitive_; }

  Elem from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Elem{static_cast<std::uint32_t>(r)};
  }

  bool is_prime_field_elem(Elem a) const { return a.v < p_; }

  std::vector<std::uint32_t> digits(Elem a) const {
    std::vector<std::uint32_t> d(k_);
    std::uint32_t v = a.v;
    for (unsigned i = 0; i < k_; ++i) {
      d[i] = v % p_;
      v /= p_;
    }
    return d;
  }

  Elem from_digits(const std::vector<std::uint32_t>& d) const {
    std::uint64_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + (d[i] % p_);
    return Elem{static_cast<std::uint32_t>(v)};
  }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return Elem{a.v ^ b.v};
    if (!add_.empty()) return Elem{add_[static_cast<std::size_t>(a.v) * q_ + b.v]};
    if (k_ == 1) {
      std::uint32_t s = a.v + b.v;
      return Elem{s >= p_ ? s - p_ : s};
    }
    std::uint32_t out = 0, scale = 1, x = a.v, y = b.v;
    for (unsigned i = 0; i < k_; ++i) {
      std::uint32_t s = x % p_ + y % p_;
      if (s >= p_) s -= p_;
      out += s * scale;
      scale *= p_;
      x /= p_;
      y /= p_;
    }
    return Elem{out};
  }

  Elem neg(Elem a) const {
    if (p_ == 2) return a;
    if (!neg_.empty()) return Elem{neg_[a.v]};
    std::uint32_t out = 0, scale = 1, x = a.v;
    for (unsigned i = 0; i < k_; ++i) {
      std::uint32_t c = x % p_;
      out += (c == 0 ? 0 : p_ - c) * scale;
      scale *= p_;
      x /= p_;
    }
    return Elem{out};
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a.v == 0 || b.v == 0) return Elem{0};
    if (!exp_.empty()) return Elem{exp_[log_[a.v] + log_[b.v]]};
    return mul_slow(a, b);
  }

  Elem inv(Elem a) const {
    if (a.v == 0) throw Error(ErrorCode::SingularMatrix, "inverse of zero field element");
    if (!exp_.empty()) return Elem{exp_[(q_ - 1) - log_[a.v]]};
    return pow(a, q_ - 2);
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t n) const {
    if (n == 0) return one();
    if (a.v == 0) return zero();
    if (!exp_.empty()) {
      std::uint64_t e = (static_cast<std::uint64_t>(log_[a.v]) * (n % (q_ - 1))) % (q_ - 1);
      return Elem{exp_[e]};
    }
    Elem r = one(), b = a;
    while (n) {
      if (n & 1) r = mul_slow(r, b);
      b = mul_slow(b, b);
      n >>= 1;
    }
    return r;
  }

  // x -> x^(p^e).
  Elem frobenius(Elem x, unsigned e) const {
    if (x.v == 0) return x;
    std::uint64_t m = q_ - 1, ex = 1 % m;
    if (m == 1) return x;
    for (unsigned i = 0; i < e; ++i) ex = ex * p_ % m;
    if (ex == 0) ex = m;
    return pow(x, ex);
  }

  // Multiplicative order of a nonzero element.
  std::uint64_t order(Elem a) const {
    std::uint64_t n = q_ - 1;
    for (std::uint64_t r : detail::prime_factors(q_ - 1))
      while (n % r == 0 && pow(a, n / r) == one()) n /= r;
    return n;
  }

  bool same_as(const Field& other) const {
    return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
  }

  // "p^k/c0,...,ck".
  std::string spec() const {
    std::ostringstream os;
    os << p_ << '^' << k_ << '/';
    for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
    return os.str();
  }

  // Base-p digits, constant term first. Single characters 0-9a-z when p <= 36,
  // otherwise decimal digits joined by '.'.
  std::string format(Elem a) const {
    auto d = digits(a);
    std::string s;
    if (p_ <= 36) {
      for (auto c : d) s.push_back(static_cast<char>(c < 10 ? '0' + c : 'a' + (c - 10)));
    } else {
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s.push_back('.');
        s += std::to_string(d[i]);
      }
    }
    return s;
  }

  Elem parse(std::string_view s) const {
    std::vector<std::uint32_t> d;
    auto bad = [&] { return Error(ErrorCode::ParseError, "bad field element '" + std::string(s) + "'"); };
    if (p_ <= 36) {
      for (char c : s) {
        std::uint32_t v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'z') v = 10 + (c - 'a');
        else throw bad();
        if (v >= p_) throw bad();
        d.push_back(v);
      }
    } else {
      std::size_t pos = 0;
      while (pos <= s.size()) {
        std::size_t next = s.find('.', pos);
        if (next == std::string_view::npos) next = s.size();
        auto part = s.substr(pos, next - pos);
        if (part.empty()) throw bad();
        std::uint64_t v = 0;
        for (char c : part) {
          if (c < '0' || c > '9') throw bad();
          v = v * 10 + (c - '0');
          if (v >= p_) throw bad();
        }
        d.push_back(static_cast<std::uint32_t>(v));
        pos = next + 1;
      }
    }
    if (d.empty() || d.size() > k_) throw bad();
    d.resize(k_, 0);
    return from_digits(d);
  }

  friend FieldPtr make_field(std::uint32_t p, unsigned k, std::optional<std::vector<std::uint32_t>> modulus);

 private:
  Field() = default;

  Elem mul_slow(Elem a, Elem b) const {
    auto da = digits(a), db = digits(b);
    std::vector<std::uint64_t> prod(2 * k_ - 1, 0);
    for (unsigned i = 0; i < k_; ++i) {
      if (!da[i]) continue;
      for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(da[i]) * db[j]) % p_;
    }
    // Reduce with the monic modulus.
    for (std::size_t deg = prod.size(); deg-- > k_;) {
      std::uint64_t c = prod[deg];
      if (!c) continue;
      prod[deg] = 0;
      for (unsigned i = 0; i < k_; ++i)
        prod[deg - k_ + i] = (prod[deg - k_ + i] + (p_ - modulus_[i]) * c) % p_;
    }
    std::vector<std::uint32_t> out(k_);
    for (unsigned i = 0; i < k_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return from_digits(out);
  }

  void build_tables();

  std::uint32_t p_ = 2;
  unsigned k_ = 1;
  std::uint32_t q_ = 2;
  std::vector<std::uint32_t> modulus_;
  Elem primitive_{1};
  std::vector<std::uint32_t> exp_, log_, add_, neg_;
};

inline constexpr std::uint32_t kTableLimit = 1u << 16;
inline constexpr std::uint32_t kAddTableLimit = 1024;

inline void Field::build_tables() {
  // Least primitive element by packed value.
  const std::uint64_t n = q_ - 1;
  const auto factors = detail::prime_factors(n);
  for (std::uint32_t v = 1; v < q_; ++v) {
    Elem g{v};
    bool ok = true;
    for (auto r : factors) {
      if (pow(g, n / r) == one()) {
        ok = false;
        break;
      }
    }
    if (ok) {
      primitive_ = g;
      break;
    }
  }
  if (q_ > kTableLimit) return;
  if (q_ <= kAddTableLimit && p_ != 2) {
    std::vector<std::uint32_t> add(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b) add[std::size_t(a) * q_ + b] = this->add(Elem{a}, Elem{b}).v;
    add_ = std::move(add);
  }
  std::vector<std::uint32_t> neg(q_);
  for (std::uint32_t a = 0; a < q_; ++a) neg[a] = this->neg(Elem{a}).v;
  neg_ = std::move(neg);
  std::vector<std::uint32_t> exp(2 * std::size_t(q_), 0), log(q_, 0);
  Elem x = one();
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    exp[i] = x.v;
    log[x.v] = i;
    x = mul_slow(x, primitive_);
  }
  for (std::uint32_t i = q_ - 1; i < 2 * q_; ++i) exp[i] = exp[i - (q_ - 1)];
  exp_ = std::move(exp);
  log_ = std::move(log);
}

// True iff the monic polynomial (c_0..c_k) is irreducible over GF(p), by trial
// division against every monic polynomial of degree 1..k/2.
inline bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
  const unsigned k = static_cast<unsigned>(poly.size() - 1);
  if (k == 1) return true;
  detail::PrimePoly f(poly.begin(), poly.end());
  for (unsigned deg = 1; deg <= k / 2; ++deg) {
    const std::uint64_t count = detail::ipow(p, deg);
    for (std::uint64_t code = 0; code < count; ++code) {
      detail::PrimePoly g(deg + 1);
      std::uint64_t c = code;
      for (unsigned i = 0; i < deg; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[deg] = 1;
      if (detail::poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Least monic irreducible of degree k, ordered by the packed value
// sum_{i<k} c_i p^i of its non-leading coefficients.
inline std::vector<std::uint32_t> least_irreducible(std::uint32_t p, unsigned k) {
  const std::uint64_t count = detail::ipow(p, k);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::uint32_t> poly(k + 1);
    std::uint64_t c = code;
    for (unsigned i = 0; i < k; ++i) {
      poly[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    poly[k] = 1;
    if (poly[0] == 0 && k > 1) continue;
    if (is_irreducible(poly, p)) return poly;
  }
  throw Error(ErrorCode::ReducibleModulus, "no irreducible polynomial found");
}

inline FieldPtr make_field(std::uint32_t p, unsigned k, std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
  if (!detail::is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (k < 1) throw Error(ErrorCode::DegreeMismatch, "extension degree must be >= 1");
  long double qq = 1;
  for (unsigned i = 0; i < k; ++i) qq *= p;
  if (qq > 2147483648.0L) throw Error(ErrorCode::DegreeMismatch, "field too large");
  std::vector<std::uint32_t> mod;
  if (modulus) {
    mod = *modulus;
    if (mod.size() != k + 1) throw Error(ErrorCode::DegreeMismatch, "modulus degree differs from k");
    if (mod.back() != 1) throw Error(ErrorCode::DegreeMismatch, "modulus must be monic");
    for (auto c : mod)
      if (c >= p) throw Error(ErrorCode::DegreeMismatch, "modulus coefficient out of range");
    if (!is_irreducible(mod, p)) throw Error(ErrorCode::ReducibleModulus, "modulus is reducible");
  } else {
    mod = least_irreducible(p, k);
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->k_ = k;
  f->q_ = static_cast<std::uint32_t>(detail::ipow(p, k));
  f->modulus_ = std::move(mod);
  f->build_tables();
  return f;
}

// Parses "p^k", "p" or "p^k/c0,c1,...,ck".
inline FieldPtr parse_field_spec(std::string_view text) {
  auto fail = [&](const std::string& why) {
    return Error(ErrorCode::ParseError, "field spec '" + std::string(text) + "': " + why);
  };
  auto parse_uint = [&](std::string_view s) -> std::uint64_t {
    if (s.empty()) throw fail("expected integer");
    std::uint64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw fail("expected integer");
      v = v * 10 + (c - '0');
      if (v > (1ull << 40)) throw fail("integer too large");
    }
    return v;
  };
  std::string_view head = text, tail;
  bool has_mod = false;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    head = text.substr(0, slash);
    tail = text.substr(slash + 1);
    has_mod = true;
  }
  std::uint64_t p, k = 1;
  if (auto caret = head.find('^'); caret != std::string_view::npos) {
    p = parse_uint(head.substr(0, caret));
    k = parse_uint(head.substr(caret + 1));
  } else {
    p = parse_uint(head);
  }
  if (p > 0xffffffffull || k > 64) throw fail("out of range");
  std::optional<std::vector<std::uint32_t>> mod;
  if (has_mod) {
    std::vector<std::uint32_t> coeffs;
    std::size_t pos = 0;
    while (true) {
      std::size_t next = tail.find(',', pos);
      auto part = tail.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
      coeffs.push_back(static_cast<std::uint32_t>(parse_uint(part)));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
    if (coeffs.back() != 1) throw fail("trailing coefficient must be 1");
    mod = std::move(coeffs);
  }
  return make_field(static_cast<std::uint32_t>(p), static_cast<unsigned>(k), mod);
}

// Ring embedding GF(p^k) -> GF(p^K), k | K, fixed by sending t to the least
// root (by packed value) of the source modulus in the target.
class Embedding {
 public:
  Embedding(FieldPtr src, FieldPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_->p() != dst_->p() || dst_->k() % src_->k() != 0)
      throw Error(ErrorCode::NoEmbedding, "GF(" + std::to_string(src_->q()) + ") does not embed in GF(" +
                                              std::to_string(dst_->q()) + ")");
    if (src_->same_as(*dst_)) {
      image_ = dst_->generator();
      identity_ = true;
      return;
    }
    const auto& mod = src_->modulus();
    bool found = false;
    for (std::uint32_t v = 0; v < dst_->q() && !found; ++v) {
      Elem x{v}, acc = dst_->zero();
      for (std::size_t i = mod.size(); i-- > 0;) acc = dst_->add(dst_->mul(acc, x), dst_->from_int(mod[i]));
      if (acc.is_zero()) {
        image_ = x;
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::NoEmbedding, "source modulus has no root in target");
    if (src_->q() <= kTableLimit) {
      table_.resize(src_->q());
      for (std::uint32_t v = 0; v < src_->q(); ++v) table_[v] = compute(Elem{v});
    }
  }

  const Field& source() const { return *src_; }
  const Field& target() const { return *dst_; }
  const FieldPtr& source_ptr() const { return src_; }
  const FieldPtr& target_ptr() const { return dst_; }
  Elem generator_image() const { return image_; }
  bool is_identity() const { return identity_; }

  Elem operator()(Elem x) const {
    if (identity_) return x;
    if (!table_.empty()) return table_[x.v];
    return compute(x);
  }

 private:
  Elem compute(Elem x) const {
    auto d = src_->digits(x);
    Elem acc = dst_->zero();
    for (std::size_t i = d.size(); i-- > 0;) acc = dst_->add(dst_->mul(acc, image_), dst_->from_int(d[i]));
    return acc;
  }

  FieldPtr src_, dst_;
  Elem image_{};
  bool identity_ = false;
  std::vector<Elem> table_;
};

inline Elem embed(const FieldPtr& src, Elem x, const FieldPtr& target) { return Embedding(src, target)(x); }

// GF(p^{k*m}) with its deterministic modulus.
inline FieldPtr extension_field(const Field& base, unsigned m) { return make_field(base.p(), base.k() * m); }

}  // namespace surflines

template <>
struct std::hash<surflines::Elem> {
  std::size_t operator()(const surflines::Elem& e) const noexcept { return std::hash<std::uint32_t>{}(e.v); }
};
