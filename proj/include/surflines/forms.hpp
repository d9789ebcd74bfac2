#pragma once

// Homogeneous forms in x, y, z, w: parsing, exact restriction to lines and
// planes, linear substitution, and a bounded search for singular points.

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "surflines/gf.hpp"
#include "surflines/linalg.hpp"
#include "surflines/poly.hpp"
#include "surflines/proj3.hpp"

namespace surflines {

inline constexpr char kVarNames[4] = {'x', 'y', 'z', 'w'};

class SurfaceForm {
 public:
  SurfaceForm() = default;

  SurfaceForm(FieldPtr field, SparsePoly<4> poly) : field_(std::move(field)), poly_(std::move(poly)) {
    if (poly_.is_zero()) throw Error(ErrorCode::ParseError, "form is identically zero");
    if (!poly_.is_homogeneous()) throw Error(ErrorCode::InhomogeneousError, "monomials of different degrees");
    degree_ = poly_.degree();
    if (degree_ < 1) throw Error(ErrorCode::InhomogeneousError, "form must have degree >= 1");
  }

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  int degree() const { return degree_; }
  const SparsePoly<4>& poly() const { return poly_; }
  const std::map<Exponent<4>, Elem>& terms() const { return poly_.terms; }
  Elem coeff(const Exponent<4>& e) const { return poly_.coeff(e); }

  SurfaceForm extend(const Embedding& emb) const {
    if (!emb.source().same_as(*field_)) throw Error(ErrorCode::FieldMismatch, "embedding source differs from form field");
    SparsePoly<4> out;
    for (const auto& [e, c] : poly_.terms) out.add_term(emb.target(), e, emb(c));
    return SurfaceForm(emb.target_ptr(), std::move(out));
  }

  bool operator==(const SurfaceForm& o) const { return field_->same_as(*o.field_) && poly_ == o.poly_; }

  std::string to_string() const;

 private:
  FieldPtr field_;
  int degree_ = 0;
  SparsePoly<4> poly_;
};

inline std::string coeff_text(const Field& F, Elem c) {
  if (F.is_prime_field_elem(c)) return std::to_string(c.v);
  return "{" + F.format(c) + "}";
}

template <std::size_t N>
std::string poly_text(const Field& F, const SparsePoly<N>& p, const char* names) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < N; ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono.push_back('*');
      mono.push_back(names[i]);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string term;
    if (mono.empty()) term = coeff_text(F, c);
    else if (c == F.one()) term = mono;
    else term = coeff_text(F, c) + "*" + mono;
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

inline std::string SurfaceForm::to_string() const { return poly_text(*field_, poly_, kVarNames); }

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, const Field& F, const std::map<std::string, Elem>* params)
      : s_(text), F_(F), params_(params) {}

  SparsePoly<4> parse() {
    auto p = parse_sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError, why + " at position " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  SparsePoly<4> parse_sum() {
    SparsePoly<4> acc;
    bool first = true;
    while (true) {
      skip_ws();
      bool negative = false;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        negative = s_[pos_] == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      auto t = parse_product();
      acc = negative ? poly_sub(F_, acc, t) : poly_add(F_, acc, t);
      first = false;
      skip_ws();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
    }
    return acc;
  }

  static bool starts_factor(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '{' || c == '(' || c == '$' || c == 'g' || c == 'x' ||
           c == 'y' || c == 'z' || c == 'w';
  }

  SparsePoly<4> parse_product() {
    auto acc = parse_power();
    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) break;
      if (s_[pos_] == '*') {
        ++pos_;
        acc = poly_mul(F_, acc, parse_power());
      } else if (starts_factor(s_[pos_])) {
        acc = poly_mul(F_, acc, parse_power());
      } else {
        break;
      }
    }
    return acc;
  }

  int parse_exponent() {
    if (!peek('^')) return 1;
    ++pos_;
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected exponent");
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 100000) fail("exponent too large");
    }
    return static_cast<int>(v);
  }

  SparsePoly<4> parse_power() {
    auto base = parse_atom();
    int e = parse_exponent();
    return e == 1 ? base : poly_pow(F_, base, e);
  }

  SparsePoly<4> parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        v = (v * 10 + (s_[pos_++] - '0')) % F_.p();
      return SparsePoly<4>::constant(F_, F_.from_int(static_cast<std::int64_t>(v)));
    }
    if (c == '{') {
      const std::size_t close = s_.find('}', pos_);
      if (close == std::string_view::npos) fail("unterminated field element");
      Elem e = F_.parse(s_.substr(pos_ + 1, close - pos_ - 1));
      pos_ = close + 1;
      return SparsePoly<4>::constant(F_, e);
    }
    if (c == '(') {
      ++pos_;
      auto inner = parse_sum();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '$') {
      std::size_t start = ++pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (!params_ || !params_->count(name)) fail("unbound parameter $" + name);
      return SparsePoly<4>::constant(F_, params_->at(name));
    }
    if (c == 'g') {
      ++pos_;
      return SparsePoly<4>::constant(F_, F_.generator());
    }
    for (std::size_t i = 0; i < 4; ++i) {
      if (c == kVarNames[i]) {
        ++pos_;
        return SparsePoly<4>::variable(F_, i);
      }
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  const Field& F_;
  const std::map<std::string, Elem>* params_;
};

}  // namespace detail

inline SparsePoly<4> parse_polynomial(std::string_view text, const Field& F,
                                      const std::map<std::string, Elem>* params = nullptr) {
  return detail::PolyParser(text, F, params).parse();
}

inline SurfaceForm parse_form(std::string_view text, const FieldPtr& F,
                              const std::map<std::string, Elem>* params = nullptr) {
  return SurfaceForm(F, parse_polynomial(text, *F, params));
}

inline std::string trim_copy(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// Key/value header lines "key: value"; '#' starts a comment.
inline std::map<std::string, std::string> parse_header_lines(std::string_view text,
                                                             std::vector<std::pair<std::string, std::string>>* ordered = nullptr) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto t = trim_copy(line);
    if (t.empty()) continue;
    auto colon = t.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected 'key: value'");
    auto key = trim_copy(std::string_view(t).substr(0, colon));
    auto value = trim_copy(std::string_view(t).substr(colon + 1));
    if (ordered) ordered->emplace_back(key, value);
    if (out.count(key) && key.rfind("param", 0) != 0)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    out[key] = value;
  }
  return out;
}

struct SurfaceFile {
  FieldPtr field;
  std::optional<unsigned> ext;
  SurfaceForm form;
  std::string form_text;
};

inline SurfaceFile parse_surface_file(std::string_view text) {
  auto kv = parse_header_lines(text);
  if (!kv.count("field")) throw Error(ErrorCode::ParseError, "missing 'field:' line");
  if (!kv.count("f")) throw Error(ErrorCode::ParseError, "missing 'f:' line");
  SurfaceFile sf;
  sf.field = parse_field_spec(kv.at("field"));
  if (kv.count("ext")) {
    const auto& e = kv.at("ext");
    if (e.empty() || e.find_first_not_of("0123456789") != std::string::npos || std::stoul(e) < 1)
      throw Error(ErrorCode::ParseError, "ext must be a positive integer");
    sf.ext = static_cast<unsigned>(std::stoul(e));
  }
  sf.form_text = kv.at("f");
  sf.form = parse_form(sf.form_text, sf.field);
  return sf;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SurfaceFile load_surface_file(const std::string& path) { return parse_surface_file(read_text_file(path)); }

// Restriction of f along s*r0 + t*r1: coeffs[i] is the coefficient of s^i t^{d-i}.
struct BinaryForm {
  std::vector<Elem> coeffs;

  bool is_zero() const {
    for (auto c : coeffs)
      if (!c.is_zero()) return false;
    return true;
  }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool operator==(const BinaryForm&) const = default;

  Elem eval(const Field& F, Elem s, Elem t) const {
    Elem acc = F.zero();
    const int d = degree();
    for (int i = 0; i <= d; ++i)
      acc = F.add(acc, F.mul(coeffs[i], F.mul(F.pow(s, i), F.pow(t, d - i))));
    return acc;
  }
};

// Dense evaluator for the hot loops. Holds scratch buffers, so one instance
// per thread.
class FormEvaluator {
 public:
  explicit FormEvaluator(const SurfaceForm& f) : F_(&f.field()), d_(f.degree()) {
    if (d_ > 63) throw Error(ErrorCode::Usage, "degree too large for the dense evaluator");
    for (const auto& [e, c] : f.terms()) terms_.push_back({e, c});
    pow_.assign(4, std::vector<std::vector<Elem>>(d_ + 1));
    acc_.resize(d_ + 1);
    tmp_.resize(d_ + 1);
  }

  int degree() const { return d_; }

  Elem eval(const Vec4& x) const {
    const Field& F = *F_;
    for (int v = 0; v < 4; ++v) {
      auto& pw = point_pow_[v];
      pw[0] = F.one();
      for (int e = 1; e <= d_; ++e) pw[e] = F.mul(pw[e - 1], x[v]);
    }
    Elem s = F.zero();
    for (const auto& t : terms_) {
      Elem m = t.c;
      for (int v = 0; v < 4 && !m.is_zero(); ++v)
        if (t.e[v]) m = F.mul(m, point_pow_[v][t.e[v]]);
      s = F.add(s, m);
    }
    return s;
  }

  // Fills coeffs with the restriction along s*a + t*b.
  void restrict(const Vec4& a, const Vec4& b, std::vector<Elem>& coeffs) const {
    const Field& F = *F_;
    for (int v = 0; v < 4; ++v) {
      auto& pv = pow_[v];
      pv[0].assign(1, F.one());
      for (int e = 1; e <= d_; ++e) {
        // (a_v s + b_v t) * previous; index = power of s
        auto& cur = pv[e];
        const auto& prev = pv[e - 1];
        cur.assign(e + 1, F.zero());
        for (int i = 0; i < e; ++i) {
          if (prev[i].is_zero()) continue;
          cur[i + 1] = F.add(cur[i + 1], F.mul(prev[i], a[v]));
          cur[i] = F.add(cur[i], F.mul(prev[i], b[v]));
        }
      }
    }
    coeffs.assign(d_ + 1, F.zero());
    for (const auto& t : terms_) {
      int deg = 0;
      acc_[0] = t.c;
      for (int v = 0; v < 4; ++v) {
        const int e = t.e[v];
        if (!e) continue;
        const auto& pv = pow_[v][e];
        for (int i = 0; i <= deg + e; ++i) tmp_[i] = F.zero();
        for (int i = 0; i <= deg; ++i) {
          if (acc_[i].is_zero()) continue;
          for (int j = 0; j <= e; ++j) tmp_[i + j] = F.add(tmp_[i + j], F.mul(acc_[i], pv[j]));
        }
        deg += e;
        for (int i = 0; i <= deg; ++i) acc_[i] = tmp_[i];
      }
      for (int i = 0; i <= d_; ++i) coeffs[i] = F.add(coeffs[i], acc_[i]);
    }
  }

  // True iff f vanishes identically on the line through a and b.
  bool vanishes_on(const Vec4& a, const Vec4& b) const {
    if (!eval(a).is_zero() || !eval(b).is_zero()) return false;
    restrict(a, b, scratch_);
    for (auto c : scratch_)
      if (!c.is_zero()) return false;
    return true;
  }

 private:
  struct Term {
    Exponent<4> e;
    Elem c;
  };
  const Field* F_;
  int d_;
  std::vector<Term> terms_;
  mutable std::vector<std::vector<std::vector<Elem>>> pow_;
  mutable std::array<std::array<Elem, 64>, 4> point_pow_{};
  mutable std::vector<Elem> acc_, tmp_, scratch_;
};

inline Elem evaluate(const SurfaceForm& f, const Vec4& x) { return poly_eval(f.field(), f.poly(), x); }

inline void check_line_field(const SurfaceForm& f, const Line& l) {
  if (&f.field() != l.field_ptr() && !f.field().same_as(l.field()))
    throw Error(ErrorCode::FieldMismatch, "line and form live over different fields; extend the form first");
}

inline BinaryForm restrict_to_rows(const SurfaceForm& f, const Vec4& a, const Vec4& b) {
  if (f.degree() > 60) throw Error(ErrorCode::Usage, "degree too large for dense restriction");
  FormEvaluator ev(f);
  BinaryForm out;
  ev.restrict(a, b, out.coeffs);
  return out;
}

inline BinaryForm restrict_to_line(const SurfaceForm& f, const Line& l) {
  check_line_field(f, l);
  return restrict_to_rows(f, l.row(0), l.row(1));
}

inline bool contains_line(const SurfaceForm& f, const Line& l) { return restrict_to_line(f, l).is_zero(); }

// Plane section in the three non-pivot coordinates of the covector, in
// increasing index order: the pivot coordinate x_p is replaced by
// -sum_{v != p} h_v x_v.
struct TernaryForm {
  SparsePoly<3> poly;
  std::array<int, 3> vars{};
  int degree = 0;

  std::string to_string(const Field& F) const {
    char names[3];
    for (int i = 0; i < 3; ++i) names[i] = kVarNames[vars[i]];
    return poly_text(F, poly, names);
  }
};

inline TernaryForm plane_section(const SurfaceForm& f, const Plane& h) {
  if (&f.field() != h.field && !f.field().same_as(*h.field)) throw Error(ErrorCode::FieldMismatch, "plane field differs");
  const Field& F = f.field();
  const std::size_t piv = h.pivot();
  TernaryForm out;
  out.degree = f.degree();
  std::array<SparsePoly<3>, 4> images;
  int slot = 0;
  std::array<Elem, 3> pivot_image{};
  for (int v = 0; v < 4; ++v) {
    if (static_cast<std::size_t>(v) == piv) continue;
    out.vars[slot] = v;
    images[v] = SparsePoly<3>::variable(F, slot);
    pivot_image[slot] = F.neg(h.covector[v]);
    ++slot;
  }
  images[piv] = SparsePoly<3>::linear(F, pivot_image);
  out.poly = poly_compose(F, f.poly(), images);
  return out;
}

// (f o M)(x) = f(M x).
inline SurfaceForm substitute(const SurfaceForm& f, const Mat4& M) {
  const Field& F = f.field();
  if (determinant4(F, M).is_zero()) throw Error(ErrorCode::SingularMatrix, "substitution matrix is singular");
  std::array<SparsePoly<4>, 4> images;
  for (int u = 0; u < 4; ++u) images[u] = SparsePoly<4>::linear(F, M[u]);
  return SurfaceForm(f.field_ptr(), poly_compose(F, f.poly(), images));
}

inline SparsePoly<4> partial_derivative(const SurfaceForm& f, int v) {
  const Field& F = f.field();
  SparsePoly<4> out;
  for (const auto& [e, c] : f.terms()) {
    if (!e[v]) continue;
    Exponent<4> ne = e;
    --ne[v];
    out.add_term(F, ne, F.mul(c, F.from_int(e[v])));
  }
  return out;
}

enum class SmoothnessKind { SingularAt, NoSingularPointFound, SingularEverywhere };

inline std::string_view smoothness_name(SmoothnessKind k) {
  switch (k) {
    case SmoothnessKind::SingularAt: return "SingularAt";
    case SmoothnessKind::NoSingularPointFound: return "NoSingularPointFound";
    case SmoothnessKind::SingularEverywhere: return "SingularEverywhere";
  }
  return "?";
}

struct SmoothnessVerdict {
  SmoothnessKind kind = SmoothnessKind::NoSingularPointFound;
  // Extension degree where the point was found, or the largest fully searched.
  unsigned ext = 0;
  FieldPtr point_field;
  Vec4 point{};
  // Exact argument available (diagonal forms); otherwise a bounded search.
  bool certified = false;
  std::string note;
};

inline constexpr std::uint64_t kDefaultProbeBudget = 20'000'000;

inline SmoothnessVerdict smoothness_probe(const SurfaceForm& f, unsigned max_ext = 4,
                                          std::uint64_t point_budget = kDefaultProbeBudget) {
  const Field& F = f.field();
  const int d = f.degree();
  SmoothnessVerdict out;
  std::array<SparsePoly<4>, 4> grad;
  bool all_zero = true;
  for (int v = 0; v < 4; ++v) {
    grad[v] = partial_derivative(f, v);
    all_zero = all_zero && grad[v].is_zero();
  }
  if (all_zero) {
    out.kind = SmoothnessKind::SingularEverywhere;
    out.certified = true;
    out.note = "every partial derivative vanishes identically";
    return out;
  }
  // Diagonal forms sum c_i x_i^d: the gradient is d*(c_i x_i^{d-1}).
  bool diagonal = true;
  std::array<Elem, 4> diag{};
  for (const auto& [e, c] : f.terms()) {
    int nz = 0, idx = 0;
    for (int v = 0; v < 4; ++v)
      if (e[v]) {
        ++nz;
        idx = v;
      }
    if (nz != 1) {
      diagonal = false;
      break;
    }
    diag[idx] = c;
  }
  if (diagonal && (d % static_cast<int>(F.p())) != 0) {
    for (int v = 0; v < 4; ++v) {
      if (diag[v].is_zero()) {
        out.kind = SmoothnessKind::SingularAt;
        out.ext = 1;
        out.point_field = f.field_ptr();
        out.point = Vec4{F.zero(), F.zero(), F.zero(), F.zero()};
        out.point[v] = F.one();
        out.certified = true;
        out.note = "diagonal form missing a variable: singular at a coordinate point";
        return out;
      }
    }
    out.kind = SmoothnessKind::NoSingularPointFound;
    out.ext = max_ext;
    out.certified = true;
    out.note = "diagonal form with nonzero coefficients and p does not divide d: gradient vanishes only at 0";
    return out;
  }
  for (unsigned m = 1; m <= max_ext; ++m) {
    long double qq = 1;
    for (unsigned i = 0; i < F.k() * m; ++i) qq *= F.p();
    long double pts = qq * qq * qq + qq * qq + qq + 1;
    if (qq > 2147483647.0L || pts > static_cast<long double>(point_budget)) {
      out.kind = SmoothnessKind::NoSingularPointFound;
      out.ext = m - 1;
      out.note = "probed, not certified: search stopped before GF(q^" + std::to_string(m) + ") (point budget)";
      return out;
    }
    auto ext = extension_field(F, m);
    Embedding emb(f.field_ptr(), ext);
    SurfaceForm fe = f.extend(emb);
    std::vector<std::optional<FormEvaluator>> evs;
    std::vector<SurfaceForm> gforms;
    for (int v = 0; v < 4; ++v) {
      if (grad[v].is_zero()) continue;
      SparsePoly<4> ge;
      for (const auto& [e, c] : grad[v].terms) ge.add_term(*ext, e, emb(c));
      if (ge.is_zero()) continue;
      gforms.emplace_back(ext, ge);
    }
    FormEvaluator fev(fe);
    std::vector<FormEvaluator> gev;
    for (const auto& g : gforms) gev.emplace_back(g);
    const std::uint64_t n = point_count(*ext);
    for (std::uint64_t i = 0; i < n; ++i) {
      Point pt = point_at(*ext, i);
      bool singular = true;
      for (const auto& g : gev)
        if (!g.eval(pt.coords).is_zero()) {
          singular = false;
          break;
        }
      if (singular && fev.eval(pt.coords).is_zero()) {
        out.kind = SmoothnessKind::SingularAt;
        out.ext = m;
        out.point_field = ext;
        out.point = pt.coords;
        return out;
      }
    }
  }
  out.kind = SmoothnessKind::NoSingularPointFound;
  out.ext = max_ext;
  out.note = "probed, not certified: no singular point over GF(q^m) for m <= " + std::to_string(max_ext);
  return out;
}

}  // namespace surflines
