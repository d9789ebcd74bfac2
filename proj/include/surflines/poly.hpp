#pragma once

// Sparse polynomials in N variables over a finite field. Terms live in an
// ordered map keyed by exponent vectors; zero coefficients are never stored.

#include <array>
#include <map>

#include "surflines/gf.hpp"

namespace surflines {

template <std::size_t N>
using Exponent = std::array<int, N>;

template <std::size_t N>
struct SparsePoly {
  std::map<Exponent<N>, Elem> terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const SparsePoly&) const = default;

  Elem coeff(const Exponent<N>& e) const {
    auto it = terms.find(e);
    return it == terms.end() ? Elem{0} : it->second;
  }

  void add_term(const Field& F, const Exponent<N>& e, Elem c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.emplace(e, c);
    if (!inserted) {
      it->second = F.add(it->second, c);
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  static SparsePoly constant(const Field& F, Elem c) {
    SparsePoly p;
    p.add_term(F, Exponent<N>{}, c);
    return p;
  }

  static SparsePoly variable(const Field& F, std::size_t i) {
    SparsePoly p;
    Exponent<N> e{};
    e[i] = 1;
    p.add_term(F, e, F.one());
    return p;
  }

  // sum_i c_i x_i
  static SparsePoly linear(const Field& F, const std::array<Elem, N>& c) {
    SparsePoly p;
    for (std::size_t i = 0; i < N; ++i) {
      Exponent<N> e{};
      e[i] = 1;
      p.add_term(F, e, c[i]);
    }
    return p;
  }

  // Total degree of the highest term; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  bool is_homogeneous() const {
    int d = -2;
    for (const auto& [e, c] : terms) {
      int s = 0;
      for (int x : e) s += x;
      if (d == -2) d = s;
      else if (s != d) return false;
    }
    return true;
  }
};

template <std::size_t N>
SparsePoly<N> poly_add(const Field& F, const SparsePoly<N>& a, const SparsePoly<N>& b) {
  SparsePoly<N> out = a;
  for (const auto& [e, c] : b.terms) out.add_term(F, e, c);
  return out;
}

template <std::size_t N>
SparsePoly<N> poly_scale(const Field& F, const SparsePoly<N>& a, Elem s) {
  SparsePoly<N> out;
  if (s.is_zero()) return out;
  for (const auto& [e, c] : a.terms) out.terms.emplace(e, F.mul(c, s));
  return out;
}

template <std::size_t N>
SparsePoly<N> poly_sub(const Field& F, const SparsePoly<N>& a, const SparsePoly<N>& b) {
  return poly_add(F, a, poly_scale(F, b, F.neg(F.one())));
}

template <std::size_t N>
SparsePoly<N> poly_mul(const Field& F, const SparsePoly<N>& a, const SparsePoly<N>& b) {
  SparsePoly<N> out;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      Exponent<N> e;
      for (std::size_t i = 0; i < N; ++i) e[i] = ea[i] + eb[i];
      out.add_term(F, e, F.mul(ca, cb));
    }
  return out;
}

template <std::size_t N>
SparsePoly<N> poly_pow(const Field& F, const SparsePoly<N>& a, int n) {
  SparsePoly<N> r = SparsePoly<N>::constant(F, F.one()), b = a;
  while (n > 0) {
    if (n & 1) r = poly_mul(F, r, b);
    n >>= 1;
    if (n) b = poly_mul(F, b, b);
  }
  return r;
}

template <std::size_t N>
Elem poly_eval(const Field& F, const SparsePoly<N>& a, const std::array<Elem, N>& x) {
  Elem s = F.zero();
  for (const auto& [e, c] : a.terms) {
    Elem t = c;
    for (std::size_t i = 0; i < N && !t.is_zero(); ++i)
      if (e[i]) t = F.mul(t, F.pow(x[i], static_cast<std::uint64_t>(e[i])));
    s = F.add(s, t);
  }
  return s;
}

// Substitutes x_i -> images[i] (polynomials in M variables).
template <std::size_t N, std::size_t M>
SparsePoly<M> poly_compose(const Field& F, const SparsePoly<N>& a, const std::array<SparsePoly<M>, N>& images) {
  // Cache powers of each image.
  std::array<std::vector<SparsePoly<M>>, N> powers;
  for (std::size_t i = 0; i < N; ++i) powers[i].push_back(SparsePoly<M>::constant(F, F.one()));
  SparsePoly<M> out;
  for (const auto& [e, c] : a.terms) {
    SparsePoly<M> t = SparsePoly<M>::constant(F, c);
    for (std::size_t i = 0; i < N; ++i) {
      while (static_cast<int>(powers[i].size()) <= e[i]) powers[i].push_back(poly_mul(F, powers[i].back(), images[i]));
      if (e[i]) t = poly_mul(F, t, powers[i][e[i]]);
    }
    out = poly_add(F, out, t);
  }
  return out;
}

template <std::size_t N>
SparsePoly<N> poly_map_coeffs(const SparsePoly<N>& a, const std::function<Elem(Elem)>& f, const Field& F) {
  SparsePoly<N> out;
  for (const auto& [e, c] : a.terms) out.add_term(F, e, f(c));
  return out;
}

}  // namespace surflines
