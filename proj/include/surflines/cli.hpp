#pragma once

// The surflines command line: one verb per analysis, a JSON report
// (report_v1) or its text rendering, and the census driver over families.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>

#include "surflines/report.hpp"

namespace surflines {

struct SurfaceOpts {
  std::string file;
  std::optional<unsigned> ext;
  std::string algo = "sweep";
  std::uint64_t budget = kDefaultBudget;
  std::string format = "text";
  std::string output;
};

// One loaded surface with its enumeration and derived tables, built on
// first use and timed.
class Session {
 public:
  explicit Session(const SurfaceOpts& o) : opts_(o) {
    time("parse", [&] { sf_ = load_surface_file(o.file); });
    const auto choice = default_extension(sf_.form);
    if (o.ext) {
      m_ = *o.ext;
      ext_source_ = "flag";
    } else if (sf_.ext) {
      m_ = *sf_.ext;
      ext_source_ = "file";
    } else {
      m_ = choice.m;
      ext_source_ = "default";
      caveat_ = choice.caveat;
    }
    if (o.algo != "sweep" && o.algo != "charts" && o.algo != "both")
      throw Error(ErrorCode::Usage, "--algo must be sweep, charts or both");
  }

  const SurfaceFile& file() const { return sf_; }
  const SurfaceForm& form() const { return sf_.form; }
  int degree() const { return sf_.form.degree(); }
  unsigned ext() const { return m_; }

  const LineSet& lines() {
    if (!ls_) {
      const EnumAlgo a = opts_.algo == "charts" ? EnumAlgo::Charts : EnumAlgo::Sweep;
      time("enumerate", [&] { ls_ = enumerate(sf_.form, m_, a, opts_.budget); });
      if (opts_.algo == "both") {
        LineSet other;
        time("enumerate_oracle", [&] { other = enumerate_via_charts(sf_.form, m_, opts_.budget); });
        oracle_agrees_ = same_lines(*ls_, other);
      }
    }
    return *ls_;
  }
  const MeetTable& meets() {
    if (!mt_) {
      const auto& ls = lines();
      time("meet_table", [&] { mt_ = meet_table(ls); });
    }
    return *mt_;
  }
  const PlaneTable& planes() {
    if (!pt_) {
      const auto& mt = meets();
      time("plane_table", [&] { pt_ = plane_table(*ls_, mt); });
    }
    return *pt_;
  }
  const LinePlaneStructure& line_planes() {
    if (!lp_) {
      const auto& pt = planes();
      time("structure", [&] { lp_ = build_line_plane_structure(*ls_, pt, degree()); });
    }
    return *lp_;
  }
  std::optional<bool> oracle_agrees() const { return oracle_agrees_; }

  template <class Fn>
  void time(const std::string& phase, Fn fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    timing_[phase] += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  Json surface_json() const {
    Json j{{"file", opts_.file},
           {"field", sf_.field->spec()},
           {"form", sf_.form.to_string()},
           {"degree", degree()},
           {"extension", m_},
           {"extension_source", ext_source_}};
    if (ls_) j["search_field"] = ls_->field->spec();
    if (!caveat_.empty()) j["caveat"] = caveat_;
    return j;
  }
  Json provenance_json() const {
    Json j{{"algorithm", opts_.algo}, {"budget", opts_.budget}};
    if (ls_) {
      j["candidates"] = opts_.algo == "charts" ? chart_cost(*ls_->field) : sweep_cost(*ls_->field);
    }
    return j;
  }
  Json timing_json() const {
    Json ph = Json::object();
    double total = 0;
    for (const auto& [k, v] : timing_) {
      ph[k] = v;
      total += v;
    }
    return Json{{"seconds", total}, {"threads", worker_count()}, {"phases", ph}};
  }

 private:
  SurfaceOpts opts_;
  SurfaceFile sf_;
  unsigned m_ = 1;
  std::string ext_source_, caveat_;
  std::optional<LineSet> ls_;
  std::optional<MeetTable> mt_;
  std::optional<PlaneTable> pt_;
  std::optional<LinePlaneStructure> lp_;
  std::optional<bool> oracle_agrees_;
  std::map<std::string, double> timing_;
};

// ---- sections ----

inline Json lines_section(Session& s, bool list) {
  const auto& ls = s.lines();
  Json j{{"line_count", ls.size()}, {"algorithm", std::string(algo_name(ls.algo))}};
  if (auto a = s.oracle_agrees()) j["oracle_agrees"] = *a;
  if (list) {
    Json arr = Json::array();
    for (const auto& l : ls.lines) arr.push_back(line_json(l));
    j["lines"] = arr;
  }
  return j;
}

struct SampleMode {
  bool all = true;
  std::uint64_t n = 0;
};

inline SampleMode parse_sample_mode(const std::string& s) {
  if (s.empty() || s == "all") return {};
  if (s.rfind("sample=", 0) == 0) {
    const auto num = s.substr(7);
    if (!num.empty() && num.find_first_not_of("0123456789") == std::string::npos) return {false, std::stoull(num)};
  }
  throw Error(ErrorCode::Usage, "expected 'all' or 'sample=N', got '" + s + "'");
}

struct AnalyzeOpts {
  std::string transversals = "all";
  std::uint64_t seed = 1;
  std::string rank = "auto";  // auto, on, off
  bool smoothness = true;
  unsigned probe_ext = 2;
};

struct AnalyzeResult {
  Json json;
  bool maximal = false;
  bool profile = false;
  std::string profile_witness;
};

inline AnalyzeResult analyze_section(Session& s, const AnalyzeOpts& o) {
  AnalyzeResult r;
  const auto& ls = s.lines();
  const auto& mt = s.meets();
  const auto& pt = s.planes();
  const int d = s.degree();
  const auto bt = bound_table(d);
  Json& j = r.json;

  MaximalVerdict mv;
  s.time("profile", [&] { mv = verify_maximal_profile(ls, mt, d); });
  r.maximal = BigInt(ls.size()) == bt.max_lines;
  r.profile = mv.pass;
  r.profile_witness = mv.witness;
  std::map<int, std::size_t> rh;
  std::map<std::size_t, std::size_t> meet_hist;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const auto p = plane_profile(ls, mt, i);
    ++rh[p.r];
    ++meet_hist[p.meeting];
  }
  Json rj = Json::object(), mj = Json::object();
  for (auto [k, n] : rh) rj[std::to_string(k)] = n;
  for (auto [k, n] : meet_hist) mj[std::to_string(k)] = n;
  j["profile"] = Json{{"pass", mv.pass},
                      {"line_count", ls.size()},
                      {"expected_lines", big_json(mv.expected)},
                      {"full_planes_expected_per_line", big_json(bt.full_planes_per_line)},
                      {"full_planes", full_planes(pt, d).size()},
                      {"planes_with_two_or_more_lines", pt.size()},
                      {"full_planes_per_line_histogram", rj},
                      {"meeting_lines_histogram", mj},
                      {"max_meeting_bound", big_json(bt.max_meeting)}};
  if (!mv.witness.empty()) j["profile"]["witness"] = mv.witness;

  CoplanarityVerdict cv;
  s.time("coplanarity", [&] { cv = coplanarity_check(ls, mt); });
  j["coplanarity"] = Json{{"pass", cv.pass}, {"meeting_triples", cv.triples}};
  if (!cv.pass) j["coplanarity"]["witness"] = index_lines_json(ls, {cv.witness[0], cv.witness[1], cv.witness[2]});

  // common transversals of skew pairs
  const auto mode = parse_sample_mode(o.transversals);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t k = i + 1; k < ls.size(); ++k)
      if (!mt.meets(i, k)) pairs.emplace_back(i, k);
  const std::size_t total_pairs = pairs.size();
  if (!mode.all && mode.n < pairs.size()) {
    std::mt19937_64 rng(o.seed);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    pairs.resize(mode.n);
    std::sort(pairs.begin(), pairs.end());
  }
  const long long want = static_cast<long long>(bt.transversal_bound);
  std::map<std::size_t, std::size_t> th;
  std::optional<std::pair<std::size_t, std::size_t>> bad;
  for (auto [a, b] : pairs) {
    const std::size_t c = (mt.rows[a] & mt.rows[b]).count();
    ++th[c];
    if (static_cast<long long>(c) != want && !bad) bad = {a, b};
  }
  Json tj = Json::object();
  for (auto [k, n] : th) tj[std::to_string(k)] = n;
  j["transversals"] = Json{{"mode", mode.all ? "all" : "sample"},  {"skew_pairs", total_pairs},
                           {"checked", pairs.size()},               {"expected", want},
                           {"pass", !bad && !pairs.empty()},         {"histogram", tj}};
  if (!mode.all) j["transversals"]["seed"] = o.seed;
  if (bad) j["transversals"]["witness"] = index_lines_json(ls, {bad->first, bad->second});

  // intersection lattice
  const bool do_rank = o.rank == "on" || (o.rank == "auto" && ls.size() <= 400);
  Json lat;
  {
    const auto m = intersection_matrix(ls, mt, true);
    MatrixSummary sum;
    s.time("lattice", [&] { sum = summarize(m, do_rank); });
    std::map<long long, std::size_t> ones;
    for (auto x : sum.row_ones) ++ones[x];
    Json oj = Json::object();
    for (auto [k, n] : ones) oj[std::to_string(k)] = n;
    lat = Json{{"size", sum.size}, {"line_diagonal", sum.diagonal_line}, {"h_diagonal", d}, {"row_ones_histogram", oj},
               {"picard_bound", big_json(bt.picard_bound)}};
    if (do_rank) {
      lat["rank"] = sum.rank;
      lat["rank_within_bound"] = BigInt(sum.rank) <= bt.picard_bound;
    }
  }
  if (!ls.lines.empty()) {
    IndependentSet is;
    s.time("lattice", [&] { is = independent_set(ls, mt, 0); });
    lat["independent_set"] = Json{{"line", 0},
                                  {"size", is.lines.size()},
                                  {"block_sizes", is.block_sizes},
                                  {"determinant", big_json(is.determinant)},
                                  {"block_product", big_json(is.block_product)},
                                  {"invertible", is.determinant != 0}};
  }
  Json blocks = Json::array();
  for (long long m = 1; m <= std::max(1, d - 2); ++m) {
    const auto f = block_determinant(m, d), dir = block_determinant_direct(m, d);
    blocks.push_back(Json{{"m", m}, {"formula", big_json(f)}, {"direct", big_json(dir)}, {"match", f == dir}});
  }
  lat["block_determinants"] = blocks;
  j["lattice"] = lat;

  if (o.smoothness) {
    SmoothnessVerdict sv;
    s.time("smoothness", [&] { sv = smoothness_probe(s.form(), o.probe_ext); });
    j["smoothness"] = smoothness_json(sv);
  }
  return r;
}

struct GqOpts {
  bool axioms = true;
  std::string regularity = "all";
  std::uint64_t seed = 1;
  bool hermitian = false;
};

struct GqResult {
  Json json;
  bool axioms = false;
  bool regular = false;
};

inline GqResult gq_section(Session& s, const GqOpts& o) {
  GqResult r;
  const auto& ls = s.lines();
  const auto& lp = s.line_planes();
  const int d = s.degree();
  const GQParams prm{d - 1, static_cast<long long>(d - 1) * (d - 1)};
  r.json["structure"] = Json{{"points", lp.st.points}, {"blocks", lp.st.blocks()}, {"flags", lp.st.flags()}};
  if (o.axioms) {
    GQVerdict v;
    s.time("gq_axioms", [&] { v = verify_gq(lp.st, prm); });
    r.axioms = v.pass;
    r.json["axioms"] = gq_verdict_json(v, prm, gq_counts_hold(lp.st, prm));
    auto pe = prime_power_decompose(static_cast<std::uint64_t>(d - 1));
    r.json["axioms"]["d_minus_1_prime_power"] = pe.has_value();
  }
  if (!o.regularity.empty() && o.regularity != "off") {
    const auto mode = parse_sample_mode(o.regularity);
    TriadStats ts;
    s.time("triads", [&] {
      ts = mode.all ? triad_statistics(lp.st, prm.s) : triad_statistics_sampled(lp.st, prm.s, mode.n, o.seed);
    });
    r.regular = ts.triads > 0 && ts.all_regular();
    r.json["regularity"] = triad_stats_json(ts);
    if (ts.first_failure) {
      const auto rv = is_3_regular(lp.st, *ts.first_failure, prm.s);
      r.json["regularity"]["failure_witness"] =
          Json{{"triad", index_lines_json(ls, {(*ts.first_failure)[0], (*ts.first_failure)[1], (*ts.first_failure)[2]})},
               {"perp", rv.perp},
               {"double_perp", rv.double_perp}};
      if (rv.offending) r.json["regularity"]["failure_witness"]["offending"] = *rv.offending;
    }
  }
  if (o.hermitian) {
    Json h;
    PointLineStructure pl;
    s.time("hermitian", [&] { pl = build_point_line_structure(ls); });
    const GQParams dp{prm.t, prm.s};
    const auto dl = dual(lp.st);
    const auto pv = verify_gq(pl.st, dp), dv = verify_gq(dl, dp);
    h["points_lines"] = Json{{"points", pl.st.points}, {"blocks", pl.st.blocks()}, {"gq", gq_verdict_json(pv, dp, gq_counts_hold(pl.st, dp))}};
    h["dual_of_lines_planes"] = Json{{"points", dl.points}, {"blocks", dl.blocks()}, {"gq", gq_verdict_json(dv, dp, gq_counts_hold(dl, dp))}};
    h["degree_profiles_match"] = degree_profile(pl.st) == degree_profile(dl);
    TriadStats a, b;
    s.time("hermitian", [&] {
      a = triad_statistics(pl.st, dp.s);
      b = triad_statistics(dl, dp.s);
    });
    h["triad_statistics_match"] = a.histogram == b.histogram && a.triads == b.triads;
    h["triad_statistics"] = triad_stats_json(a);
    const auto tc = tangent_correspondence(ls, pl, lp);
    h["tangent_plane_map"] = Json{{"bijective", tc.bijective}, {"incidence_preserved", tc.incidence_preserved}};
    if (!tc.witness.empty()) h["tangent_plane_map"]["witness"] = tc.witness;
    r.json["duality"] = h;
  }
  return r;
}

struct ConfigsOpts {
  bool quadric = false, stars = false, star_chords = false, normalize = false, extremal = false;
  bool assert_extremal = false;
  std::size_t max_certs = 3;
};

struct ConfigsResult {
  Json json;
  bool star_chord_found = false;
  bool star_chords_valid = true;
  bool quadric_all = false;
  std::optional<bool> pipeline;
  bool extremal = false;
};

inline ConfigsResult configs_section(Session& s, const ConfigsOpts& o) {
  ConfigsResult r;
  const int d = s.degree();
  if (o.extremal) {
    const auto ev = is_extremal(s.form());
    r.extremal = ev.pass;
    r.json["extremal"] = extremal_json(ev, s.form().field());
  }
  if (!(o.quadric || o.stars || o.star_chords || o.normalize || o.assert_extremal)) return r;
  const auto& ls = s.lines();
  const auto& mt = s.meets();
  const auto& pt = s.planes();
  if (o.quadric) {
    const auto& lp = s.line_planes();
    std::uint64_t triples = 0, found = 0;
    Json first_cert, first_miss;
    s.time("quadric", [&] {
      for_each_triad(lp.st, [&](const Triad& t) {
        ++triples;
        auto q = find_quadric_configuration(ls, mt, t);
        if (q.cert) {
          ++found;
          if (first_cert.is_null())
            first_cert = Json{{"triple", t}, {"ruling_a", index_lines_json(ls, q.cert->ruling_a)},
                              {"ruling_b", index_lines_json(ls, q.cert->ruling_b)}};
        } else if (first_miss.is_null()) {
          first_miss = Json{{"triple", index_lines_json(ls, {t[0], t[1], t[2]})}, {"reason", q.reason}};
        }
      });
    });
    r.quadric_all = triples > 0 && found == triples;
    r.json["quadric"] = Json{{"skew_triples", triples}, {"certified", found}, {"all", r.quadric_all}};
    if (!first_cert.is_null()) r.json["quadric"]["example"] = first_cert;
    if (!first_miss.is_null()) r.json["quadric"]["first_miss"] = first_miss;
  }
  if (o.stars) {
    std::vector<Star> st;
    s.time("stars", [&] { st = find_stars(ls, pt); });
    Json arr = Json::array();
    for (std::size_t i = 0; i < st.size() && i < o.max_certs; ++i)
      arr.push_back(Json{{"plane", plane_json(st[i].plane)},
                         {"point", vec_json(*ls.field, st[i].point.coords)},
                         {"lines", index_lines_json(ls, st[i].lines)}});
    r.json["stars"] = Json{{"count", st.size()}, {"full_planes", full_planes(pt, d).size()}, {"listed", arr}};
  }
  std::optional<StarChordSearch> sc;
  if (o.star_chords || o.normalize || o.assert_extremal) {
    s.time("star_chords", [&] { sc = find_star_chord_pairs(ls, pt, d); });
    std::size_t valid = 0;
    Json arr = Json::array();
    for (std::size_t i = 0; i < sc->certs.size(); ++i) {
      const auto chk = verify_star_chord(ls, sc->certs[i]);
      valid += chk.pass();
      if (i < o.max_certs) arr.push_back(star_chord_json(ls, sc->certs[i], chk));
    }
    r.star_chord_found = !sc->certs.empty();
    r.star_chords_valid = valid == sc->certs.size();
    r.json["star_chords"] = Json{{"count", sc->certs.size()},      {"verified", valid},
                                 {"seed_pairs", sc->seed_pairs},    {"rejected_candidates", sc->rejected},
                                 {"listed", arr}};
  }
  if ((o.normalize || o.assert_extremal) && sc) {
    if (sc->certs.empty()) {
      r.json["normal_form"] = Json{{"available", false}, {"reason", "no star chord certificate on this surface"}};
      if (o.assert_extremal) r.pipeline = false;
    } else {
      NormalFormData nf;
      s.time("normal_form", [&] { nf = normalize_star_chord(ls.surface, sc->certs.front()); });
      r.json["normal_form"] = normal_form_json(nf);
      r.json["normal_form"]["certificate"] = 0;
      if (d > 3) {
        const auto pr = extremality_pipeline(nf);
        r.pipeline = pr.pass();
        r.json["extremality_argument"] = pipeline_json(pr);
      }
    }
  }
  return r;
}

// ---- census ----

struct FamilyParam {
  std::string name;
  std::vector<Elem> values;
};

struct Family {
  std::string id;
  std::string field_text;
  FieldPtr field;
  std::optional<unsigned> ext;
  std::string form_text;
  std::vector<FamilyParam> params;
};

inline Family parse_family(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> ordered;
  auto kv = parse_header_lines(text, &ordered);
  for (const char* key : {"id", "field", "f"})
    if (!kv.count(key)) throw Error(ErrorCode::ParseError, std::string("family file lacks '") + key + ":'");
  Family fam;
  fam.id = kv.at("id");
  fam.field_text = kv.at("field");
  fam.field = parse_field_spec(fam.field_text);
  if (kv.count("ext")) {
    const auto& e = kv.at("ext");
    if (e.empty() || e.find_first_not_of("0123456789") != std::string::npos || std::stoul(e) < 1)
      throw Error(ErrorCode::ParseError, "ext must be a positive integer");
    fam.ext = static_cast<unsigned>(std::stoul(e));
  }
  fam.form_text = kv.at("f");
  const Field& F = *fam.field;
  for (const auto& [key, value] : ordered) {
    if (key != "param") continue;
    const auto eq = value.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "param line needs 'name = values'");
    FamilyParam p;
    p.name = trim_copy(std::string_view(value).substr(0, eq));
    const auto rhs = trim_copy(std::string_view(value).substr(eq + 1));
    if (p.name.empty()) throw Error(ErrorCode::ParseError, "param without a name");
    if (rhs == "all") {
      for (std::uint32_t v = 0; v < F.q(); ++v) p.values.push_back(Elem{v});
    } else if (rhs.size() >= 2 && rhs.front() == '{' && rhs.back() == '}') {
      std::stringstream ss(rhs.substr(1, rhs.size() - 2));
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim_copy(item);
        if (!item.empty()) p.values.push_back(F.parse(item));
      }
    } else {
      throw Error(ErrorCode::ParseError, "param values must be 'all' or '{v1,v2,...}'");
    }
    fam.params.push_back(std::move(p));
  }
  return fam;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline constexpr const char* kCensusHeader = "family_id,params,field,d,line_count,maximal,extremal,elapsed";

struct CensusSummary {
  std::size_t members = 0, written = 0, already_present = 0, skipped_budget = 0, maximal = 0;
};

inline CensusSummary run_census(const std::string& family_path, const std::string& out_path, std::uint64_t budget,
                                std::ostream& log) {
  const Family fam = parse_family(read_text_file(family_path));
  const Field& F = *fam.field;
  std::set<std::pair<std::string, std::string>> done;
  bool has_content = false;
  {
    std::ifstream in(out_path);
    std::string line;
    while (in && std::getline(in, line)) {
      if (line.empty()) continue;
      has_content = true;
      if (line == kCensusHeader) continue;
      auto cols = csv_split(line);
      if (cols.size() >= 2) done.emplace(cols[0], cols[1]);
    }
  }
  std::ofstream out;
  auto open_out = [&] {
    if (out.is_open()) return;
    out.open(out_path, std::ios::app);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + out_path);
    if (!has_content) {
      out << kCensusHeader << "\n";
      has_content = true;
    }
  };
  CensusSummary sum;
  std::vector<std::size_t> idx(fam.params.size(), 0);
  const bool empty = std::any_of(fam.params.begin(), fam.params.end(), [](const FamilyParam& p) { return p.values.empty(); });
  if (!has_content) {
    std::ofstream touch(out_path, std::ios::app);
    if (!touch) throw Error(ErrorCode::IoError, "cannot write " + out_path);
  }
  bool more = !empty;
  while (more) {
    ++sum.members;
    std::map<std::string, Elem> values;
    std::string key;
    for (std::size_t i = 0; i < fam.params.size(); ++i) {
      const Elem v = fam.params[i].values[idx[i]];
      values[fam.params[i].name] = v;
      if (!key.empty()) key += ";";
      key += fam.params[i].name + "=" + F.format(v);
    }
    if (done.count({fam.id, key})) {
      ++sum.already_present;
    } else {
      const auto t0 = std::chrono::steady_clock::now();
      std::string count = "skipped", maximal = "-", extremal = "-";
      int d = 0;
      try {
        const SurfaceForm f = parse_form(fam.form_text, fam.field, &values);
        d = f.degree();
        extremal = is_extremal(f).pass ? "yes" : "no";
        const unsigned m = fam.ext ? *fam.ext : default_extension(f).m;
        try {
          const auto ls = enumerate_lines_on_surface(f, m, budget);
          count = std::to_string(ls.size());
          const bool mx = d >= 3 && BigInt(ls.size()) == bound_table(d).max_lines;
          maximal = mx ? "yes" : "no";
          sum.maximal += mx;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::BudgetExceeded) throw;
          ++sum.skipped_budget;
        }
      } catch (const Error& e) {
        if (count == "skipped" && e.code() != ErrorCode::BudgetExceeded) count = "error:" + std::string(error_name(e.code()));
      }
      const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::ostringstream es;
      es << std::fixed << std::setprecision(3) << el;
      open_out();
      out << csv_field(fam.id) << "," << csv_field(key) << "," << csv_field(fam.field_text) << "," << d << "," << count
          << "," << maximal << "," << extremal << "," << es.str() << "\n";
      out.flush();
      done.emplace(fam.id, key);
      ++sum.written;
      log << fam.id << " " << (key.empty() ? "-" : key) << ": " << count << " lines\n";
    }
    // odometer over the parameter lists
    more = false;
    for (std::size_t i = fam.params.size(); i-- > 0;) {
      if (++idx[i] < fam.params[i].values.size()) {
        more = true;
        break;
      }
      idx[i] = 0;
    }
  }
  return sum;
}

// ---- entry point ----

inline void emit(const Json& report, const SurfaceOpts& o, std::ostream& out) {
  const std::string body = o.format == "json" ? report.dump(2) + "\n" : render_text(report);
  if (o.output.empty()) {
    out << body;
  } else {
    std::ofstream f(o.output);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + o.output);
    f << body;
  }
}

inline Json new_report(const std::string& verb) {
  return Json{{"schema", kReportSchema}, {"verb", verb}, {"summary", Json::array()}};
}

inline void finish_report(Json& rep, Session& s) {
  Json out = Json::object();
  for (auto it = rep.begin(); it != rep.end(); ++it) {
    out[it.key()] = it.value();
    if (it.key() == "summary") {
      out["surface"] = s.surface_json();
      out["provenance"] = s.provenance_json();
    }
  }
  out["timing"] = s.timing_json();
  rep = std::move(out);
}

inline std::string pass_text(bool b) { return b ? "PASS" : "FAIL"; }

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lines on surfaces in P^3 over finite fields"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  SurfaceOpts so;
  auto surface_flags = [&](CLI::App* sub) {
    sub->add_option("file", so.file, "surface file")->required();
    sub->add_option("--ext", so.ext, "extension degree m of the search field GF(q^m)");
    sub->add_option("--algo", so.algo, "sweep, charts, or both (sweep checked against charts)");
    sub->add_option("--budget", so.budget, "maximum candidate lines per enumeration");
  };
  auto output_flags = [&](CLI::App* sub) {
    sub->add_option("--format", so.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("-o,--output", so.output, "write the report to a file");
  };

  // bounds
  auto* bounds = app.add_subcommand("bounds", "closed-form counts for degree d");
  std::string degree_text;
  bool identities = false;
  long long id_from = 3, id_to = 100;
  bounds->add_option("--degree", degree_text, "degree d >= 3 (any size)");
  bounds->add_flag("--identities", identities, "check the counting identities over a range of d");
  bounds->add_option("--from", id_from, "first d for --identities");
  bounds->add_option("--to", id_to, "last d for --identities");
  output_flags(bounds);

  auto* lines = app.add_subcommand("lines", "enumerate the lines on a surface");
  bool list_lines = true;
  surface_flags(lines);
  output_flags(lines);
  lines->add_flag("--list,!--no-list", list_lines, "include the line coordinates");

  AnalyzeOpts ao;
  bool no_smooth = false;
  auto* analyze = app.add_subcommand("analyze", "plane profiles, transversals, intersection lattice");
  surface_flags(analyze);
  output_flags(analyze);
  analyze->add_option("--transversals", ao.transversals, "all or sample=N")->default_val("all");
  analyze->add_option("--seed", ao.seed, "seed for sampled checks");
  analyze->add_option("--rank", ao.rank, "auto, on or off")->check(CLI::IsMember({"auto", "on", "off"}));
  analyze->add_flag("--no-smoothness", no_smooth, "skip the smoothness probe");
  analyze->add_option("--probe-ext", ao.probe_ext, "largest extension searched by the smoothness probe");

  GqOpts go;
  bool check_axioms = false;
  std::string regularity;
  auto* gq = app.add_subcommand("gq", "generalized quadrangle of lines and full planes");
  surface_flags(gq);
  output_flags(gq);
  gq->add_flag("--check-axioms", check_axioms, "verify the five quadrangle axioms");
  gq->add_option("--check-3-regularity", regularity, "all or sample=N");
  gq->add_option("--seed", go.seed, "seed for sampled triads");
  gq->add_flag("--hermitian", go.hermitian, "compare with the points/lines structure and its duality");

  ConfigsOpts co;
  auto* configs = app.add_subcommand("configs", "quadric configurations, stars, star chord pairs, normal form");
  surface_flags(configs);
  output_flags(configs);
  configs->add_flag("--quadric", co.quadric, "certify a quadric configuration for every skew triple");
  configs->add_flag("--stars", co.stars, "full planes whose lines are concurrent");
  configs->add_flag("--star-chords", co.star_chords, "numerical star chord pair configurations");
  configs->add_flag("--normalize", co.normalize, "normal form from the first star chord certificate");
  configs->add_flag("--extremal", co.extremal, "extremality test of the given form");
  configs->add_flag("--assert-extremal", co.assert_extremal, "run the extremality argument; exit 1 unless it holds");
  configs->add_option("--max-certs", co.max_certs, "certificates listed in the report");

  bool assert_maximal = false, assert_all = false;
  AnalyzeOpts vao;
  auto* verify = app.add_subcommand("verify", "the full chain on one surface");
  surface_flags(verify);
  output_flags(verify);
  verify->add_flag("--assert-maximal", assert_maximal, "exit 1 unless the line count is maximal");
  verify->add_flag("--assert-all", assert_all, "exit 1 unless every link passes");
  verify->add_option("--seed", vao.seed, "seed for sampled checks");

  std::string family_file, census_out;
  auto* census = app.add_subcommand("census", "line counts over a parametrized family");
  census->add_option("family", family_file, "family file")->required();
  census->add_option("-o,--output", census_out, "CSV output (appended, resumable)")->required();
  census->add_option("--budget", so.budget, "maximum candidate lines per member");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  }

  try {
    if (bounds->parsed()) {
      Json rep = new_report("bounds");
      if (!degree_text.empty()) {
        if (degree_text.find_first_not_of("0123456789") != std::string::npos)
          throw Error(ErrorCode::Usage, "--degree must be a non-negative integer");
        const BigInt d(degree_text);
        const auto bt = bound_table(d);
        rep["bounds"] = bounds_json(bt);
        const auto sk = skew_bound_check(d);
        rep["skew_identity"] = Json{{"skew", big_json(sk.skew)},  {"meeting", big_json(sk.meeting)},
                                    {"total", big_json(sk.total)}, {"max_lines", big_json(sk.max_lines)},
                                    {"holds", sk.holds}};
        rep["summary"].push_back("d=" + d.str() + ": at most " + bt.max_lines.str() + " lines");
        rep["summary"].push_back(sk.skew.str() + " + " + sk.meeting.str() + " + 1 = " + sk.total.str() +
                                 (sk.holds ? " = " : " != ") + sk.max_lines.str());
        auto pe = d <= BigInt(std::numeric_limits<std::uint64_t>::max())
                      ? prime_power_decompose(static_cast<std::uint64_t>(d - 1))
                      : std::nullopt;
        rep["d_minus_1"] = pe ? Json{{"prime_power", true}, {"p", pe->first}, {"e", pe->second}}
                              : Json{{"prime_power", false}};
      } else if (!identities) {
        throw Error(ErrorCode::Usage, "bounds needs --degree or --identities");
      }
      if (identities) {
        if (id_from < 3 || id_to < id_from) throw Error(ErrorCode::Usage, "--from must be >= 3 and <= --to");
        bool all = true;
        std::optional<long long> bad;
        for (long long d = id_from; d <= id_to; ++d) {
          const auto b = bound_table(d);
          const bool ok = b.max_lines - 1 - b.max_meeting == boost::multiprecision::pow(BigInt(d - 1), 4) &&
                          b.picard_bound == b.c2 - 2 && b.max_lines == b.gq_points;
          if (!ok && !bad) bad = d;
          all = all && ok;
        }
        rep["identities"] = Json{{"from", id_from}, {"to", id_to}, {"pass", all}};
        if (bad) rep["identities"]["first_failure"] = *bad;
        rep["summary"].push_back("identities for " + std::to_string(id_from) + " <= d <= " + std::to_string(id_to) +
                                 ": " + pass_text(all));
      }
      emit(rep, so, out);
      return 0;
    }

    if (census->parsed()) {
      const auto sum = run_census(family_file, census_out, so.budget, err);
      out << "members " << sum.members << ", written " << sum.written << ", already present " << sum.already_present
          << ", over budget " << sum.skipped_budget << ", maximal " << sum.maximal << "\n";
      return 0;
    }

    Session s(so);
    const int d = s.degree();
    if (d < 3) throw Error(ErrorCode::DegreeTooSmall, "surface verbs need degree >= 3");
    const auto bt = bound_table(d);
    int status = 0;
    Json rep;

    if (lines->parsed()) {
      rep = new_report("lines");
      rep["lines"] = lines_section(s, list_lines);
      rep["summary"].push_back(std::to_string(s.lines().size()) + " lines over " + s.lines().field->spec() +
                               " (bound " + bt.max_lines.str() + ")");
      if (auto a = s.oracle_agrees()) rep["summary"].push_back(std::string("chart oracle: ") + (*a ? "agrees" : "DISAGREES"));
    } else if (analyze->parsed()) {
      rep = new_report("analyze");
      ao.smoothness = !no_smooth;
      rep["lines"] = lines_section(s, false);
      rep["bounds"] = bounds_json(bt);
      auto ar = analyze_section(s, ao);
      for (auto it = ar.json.begin(); it != ar.json.end(); ++it) rep[it.key()] = it.value();
      rep["summary"].push_back(std::to_string(s.lines().size()) + " lines, bound " + bt.max_lines.str());
      rep["summary"].push_back("plane profile: " + pass_text(ar.profile) +
                               (ar.profile_witness.empty() ? "" : " (" + ar.profile_witness + ")"));
    } else if (gq->parsed()) {
      rep = new_report("gq");
      go.axioms = check_axioms || regularity.empty();
      go.regularity = regularity.empty() ? (check_axioms ? "off" : (d <= 5 ? "all" : "sample=10000")) : regularity;
      rep["lines"] = lines_section(s, false);
      auto gr = gq_section(s, go);
      for (auto it = gr.json.begin(); it != gr.json.end(); ++it) rep[it.key()] = it.value();
      if (go.axioms) rep["summary"].push_back("GQ(" + std::to_string(d - 1) + "," + std::to_string((d - 1) * (d - 1)) + ") axioms: " + pass_text(gr.axioms));
      if (go.regularity != "off") rep["summary"].push_back("3-regularity: " + pass_text(gr.regular));
    } else if (configs->parsed()) {
      rep = new_report("configs");
      if (co.assert_extremal && d == 3) {
        err << "usage error: the extremality argument needs d > 3; every smooth cubic has 27 lines, and d-1 = 2 "
               "need not be a power of the characteristic\n";
        return 2;
      }
      if (!(co.quadric || co.stars || co.star_chords || co.normalize || co.extremal || co.assert_extremal))
        co.quadric = co.stars = co.star_chords = co.extremal = true;
      if (co.assert_extremal) co.extremal = true;
      rep["lines"] = lines_section(s, false);
      auto cr = configs_section(s, co);
      for (auto it = cr.json.begin(); it != cr.json.end(); ++it) rep[it.key()] = it.value();
      if (co.star_chords || co.normalize || co.assert_extremal)
        rep["summary"].push_back("star chord certificates: " + std::to_string(rep["star_chords"]["count"].get<std::size_t>()));
      if (co.extremal) rep["summary"].push_back(std::string("extremal: ") + (cr.extremal ? "yes" : "no, " + rep["extremal"]["reason"].get<std::string>()));
      if (co.assert_extremal) {
        const bool ok = cr.pipeline.value_or(false) && cr.extremal;
        rep["summary"].push_back("extremality argument: " + pass_text(ok));
        if (!ok) status = 1;
      }
    } else if (verify->parsed()) {
      rep = new_report("verify");
      rep["lines"] = lines_section(s, false);
      rep["bounds"] = bounds_json(bt);
      vao.transversals = "all";
      vao.probe_ext = 2;
      auto ar = analyze_section(s, vao);
      for (auto it = ar.json.begin(); it != ar.json.end(); ++it) rep[it.key()] = it.value();
      GqOpts vg;
      vg.regularity = d <= 5 ? "all" : "sample=10000";
      vg.seed = vao.seed;
      auto gr = gq_section(s, vg);
      rep["gq"] = gr.json;
      ConfigsOpts vc;
      vc.star_chords = vc.extremal = true;
      vc.normalize = d > 3;
      auto cr = configs_section(s, vc);
      for (auto it = cr.json.begin(); it != cr.json.end(); ++it) rep[it.key()] = it.value();

      std::vector<std::pair<std::string, bool>> links{
          {"maximal_count", ar.maximal},
          {"plane_profile", ar.profile},
          {"gq_axioms", gr.axioms},
          {"triads_3_regular", gr.regular},
          {"star_chord_pair", cr.star_chord_found && cr.star_chords_valid},
      };
      if (d > 3) links.emplace_back("extremality_argument", cr.pipeline.value_or(false));
      links.emplace_back("extremal", cr.extremal);
      Json lj = Json::array();
      bool all = true;
      for (const auto& [n, v] : links) {
        lj.push_back(Json{{"link", n}, {"pass", v}});
        all = all && v;
      }
      rep["chain"] = Json{{"links", lj}, {"all_pass", all}};
      const auto n = s.lines().size();
      rep["summary"].push_back(ar.maximal ? std::to_string(n) + " = " + bt.max_lines.str() + ", maximal"
                                          : std::to_string(n) + " < " + bt.max_lines.str() + ", non-maximal");
      rep["summary"].push_back(cr.extremal ? "extremality: d-1=" + std::to_string(d - 1) + " = " +
                                                 std::to_string(s.form().field().p()) + "^" +
                                                 std::to_string(rep["extremal"]["e"].get<unsigned>())
                                           : "extremality: " + rep["extremal"]["reason"].get<std::string>());
      for (const auto& [nm, v] : links) rep["summary"].push_back("  " + nm + ": " + pass_text(v));
      if (assert_all && !all) status = 1;
      if (assert_maximal && !ar.maximal) status = 1;
      if (status == 1) {
        for (const auto& [nm, v] : links)
          if (!v && (assert_all || nm == "maximal_count")) {
            err << "assertion failed: " << nm;
            if (nm == "maximal_count") err << " (" << n << " < " << bt.max_lines.str() << ")";
            if (nm == "plane_profile" && !ar.profile_witness.empty()) err << " (" << ar.profile_witness << ")";
            err << "\n";
            break;
          }
      }
    }
    finish_report(rep, s);
    emit(rep, so, out);
    return status;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace surflines
