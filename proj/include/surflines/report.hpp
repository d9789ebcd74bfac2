#pragma once

// JSON encoding of analysis objects and the plain-text rendering of reports.
// Field elements are written as digit strings so reports can be rechecked
// with independent arithmetic.

#include <json.hpp>
#include <sstream>
#include <string>

#include "surflines/configs.hpp"

namespace surflines {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "report_v1";

inline Json big_json(const BigInt& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

inline Json vec_json(const Field& F, const Vec4& v) { return vec_text(F, v); }

inline Json line_json(const Line& l) {
  return Json::array({vec_json(l.field(), l.row(0)), vec_json(l.field(), l.row(1))});
}

inline Json plane_json(const Plane& h) { return vec_json(*h.field, h.covector); }

inline Json bounds_json(const BoundTable& b) {
  return Json{{"d", big_json(b.d)},
              {"max_lines", big_json(b.max_lines)},
              {"picard_bound", big_json(b.picard_bound)},
              {"c2", big_json(b.c2)},
              {"max_meeting", big_json(b.max_meeting)},
              {"full_planes_per_line", big_json(b.full_planes_per_line)},
              {"transversal_bound", big_json(b.transversal_bound)},
              {"gq_s", big_json(b.gq_s)},
              {"gq_t", big_json(b.gq_t)},
              {"gq_points", big_json(b.gq_points)},
              {"gq_blocks", big_json(b.gq_blocks)}};
}

inline Json index_lines_json(const LineSet& ls, const std::vector<std::size_t>& idx) {
  Json a = Json::array();
  for (std::size_t i : idx) a.push_back(Json{{"index", i}, {"rows", line_json(ls.lines[i])}});
  return a;
}

inline Json gq_verdict_json(const GQVerdict& v, GQParams prm, bool counts) {
  Json j{{"s", prm.s}, {"t", prm.t}, {"pass", v.pass}, {"counting_identities", counts}};
  if (!v.pass) {
    j["failed_axiom"] = v.failed_axiom;
    j["witness"] = v.witness;
    j["message"] = v.message;
  }
  return j;
}

inline Json triad_stats_json(const TriadStats& s) {
  Json h = Json::array();
  for (const auto& [k, n] : s.histogram) h.push_back(Json{{"perp", k.first}, {"double_perp", k.second}, {"triads", n}});
  Json j{{"mode", s.sampled ? "sample" : "all"}, {"triads", s.triads}, {"regular", s.regular},
         {"all_regular", s.all_regular()}, {"histogram", h}};
  if (s.sampled) j["seed"] = s.seed;
  if (s.first_failure) j["first_failure"] = *s.first_failure;
  return j;
}

inline Json star_chord_json(const LineSet& ls, const StarChordCertificate& c, const StarChordCheck& chk) {
  Json hs = Json::array(), ks = Json::array(), grid = Json::array();
  for (const auto& h : c.planes_h) hs.push_back(plane_json(h));
  for (const auto& k : c.planes_k) ks.push_back(plane_json(k));
  for (const auto& row : c.grid) {
    Json r = Json::array();
    for (std::size_t i : row) r.push_back(line_json(ls.lines[i]));
    grid.push_back(r);
  }
  Json j{{"planes_h", hs}, {"planes_k", ks}, {"grid", grid},
         {"check", Json{{"distinct", chk.distinct}, {"on_surface", chk.on_surface}, {"rows_match", chk.rows_match},
                        {"chords_off_surface", chk.remark_a}, {"off_grid_skew", chk.remark_b}}}};
  if (!chk.witness.empty()) j["check"]["witness"] = chk.witness;
  return j;
}

inline Json mat4_json(const Field& F, const Mat4& m) {
  Json a = Json::array();
  for (const auto& row : m) a.push_back(vec_json(F, row));
  return a;
}

inline Json normal_form_json(const NormalFormData& nf) {
  const Field& F = nf.form.field();
  Json ell = Json::array(), m = Json::array();
  for (const auto& v : nf.ell) ell.push_back(vec_json(F, v));
  for (const auto& v : nf.m) m.push_back(vec_json(F, v));
  Json j{{"transform", mat4_json(F, nf.transform)},
         {"inverse", mat4_json(F, nf.inverse)},
         {"form", nf.form.to_string()},
         {"alpha", F.format(nf.alpha)},
         {"beta", F.format(nf.beta)},
         {"chosen_planes", nf.chosen},
         {"ell", ell},
         {"m", m},
         {"identity_verified", nf.identity_verified},
         {"round_trip", nf.round_trip},
         {"nonvanishing", nf.lemma44}};
  if (!nf.lemma44_witness.empty()) j["nonvanishing_witness"] = nf.lemma44_witness;
  return j;
}

inline Json pipeline_json(const PipelineResult& r) {
  Json links = Json::array();
  for (const auto& l : r.links) links.push_back(Json{{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
  return Json{{"pass", r.pass()}, {"links", links}};
}

inline Json extremal_json(const ExtremalVerdict& v, const Field& F) {
  Json j{{"pass", v.pass}, {"p", v.p}};
  if (v.pass) {
    j["e"] = v.e;
    j["bilinear_matrix"] = mat4_json(F, *v.bilinear);
    j["bilinear_rank"] = v.bilinear_rank;
  } else {
    j["reason"] = v.reason;
  }
  return j;
}

inline Json smoothness_json(const SmoothnessVerdict& v) {
  Json j{{"kind", std::string(smoothness_name(v.kind))}, {"certified", v.certified}, {"ext_searched", v.ext},
         {"note", v.note}};
  if (v.kind == SmoothnessKind::SingularAt) {
    j["point_field"] = v.point_field->spec();
    j["point"] = vec_json(*v.point_field, v.point);
  }
  return j;
}

// ---- text rendering ----

namespace detail {

inline std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

inline bool all_scalars(const Json& j) {
  return std::all_of(j.begin(), j.end(), [](const Json& e) { return !e.is_structured(); });
}

inline void render(std::ostream& os, const Json& j, const std::string& indent, std::size_t max_items) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const Json& v = it.value();
    if (v.is_object()) {
      os << indent << key << ":\n";
      render(os, v, indent + "  ", max_items);
    } else if (v.is_array()) {
      if (all_scalars(v) && v.size() <= 16) {
        os << indent << key << ": [";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << scalar_text(v[i]);
        os << "]\n";
      } else {
        os << indent << key << ": " << v.size() << " item" << (v.size() == 1 ? "" : "s") << "\n";
        for (std::size_t i = 0; i < v.size() && i < max_items; ++i) {
          if (v[i].is_object()) {
            os << indent << "  - " << i << ":\n";
            render(os, v[i], indent + "      ", max_items);
          } else {
            os << indent << "  - " << v[i].dump() << "\n";
          }
        }
        if (v.size() > max_items) os << indent << "  ... " << v.size() - max_items << " more\n";
      }
    } else {
      os << indent << key << ": " << scalar_text(v) << "\n";
    }
  }
}

}  // namespace detail

// Summary lines first, then every section as an indented outline.
inline std::string render_text(const Json& report, std::size_t max_items = 6) {
  std::ostringstream os;
  if (report.contains("summary"))
    for (const auto& s : report["summary"]) os << s.get<std::string>() << "\n";
  Json rest = report;
  rest.erase("summary");
  os << "\n";
  detail::render(os, rest, "", max_items);
  return os.str();
}

// The report minus its timing block, for determinism comparisons.
inline Json without_timing(Json report) {
  report.erase("timing");
  return report;
}

}  // namespace surflines
