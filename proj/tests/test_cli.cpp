#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

#include "surflines/cli.hpp"

using namespace surflines;
namespace fs = std::filesystem;

namespace {

std::string data(const std::string& rel) { return std::string(SURFLINES_DATA_DIR) + "/" + rel; }
std::string surface(const std::string& name) { return data("surfaces/" + name); }

struct Run {
  int status;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "surflines");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int st = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {st, out.str(), err.str()};
}

fs::path temp_dir() {
  auto p = fs::temp_directory_path() / ("surflines_cli_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  std::string l;
  while (std::getline(in, l)) out.push_back(l);
  return out;
}

}  // namespace

TEST(Bounds, TextTable) {
  auto r = run_cli({"bounds", "--degree", "4"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("at most 112 lines"), std::string::npos);
  EXPECT_NE(r.out.find("81 + 30 + 1 = 112"), std::string::npos);
}

TEST(Bounds, JsonAndHugeDegree) {
  auto r = run_cli({"bounds", "--degree", "4", "--format", "json"});
  auto j = r.json();
  EXPECT_EQ(j["schema"], "report_v1");
  EXPECT_EQ(j["bounds"]["max_lines"], 112);
  EXPECT_EQ(j["bounds"]["gq_blocks"], 280);
  auto big = run_cli({"bounds", "--degree", "1000000000000000000000", "--format", "json"}).json();
  EXPECT_TRUE(big["bounds"]["max_lines"].is_string());
  EXPECT_TRUE(big["skew_identity"]["holds"]);
}

TEST(Bounds, Identities) {
  auto j = run_cli({"bounds", "--identities", "--from", "3", "--to", "100", "--format", "json"}).json();
  EXPECT_TRUE(j["identities"]["pass"]);
}

TEST(Bounds, UsageErrors) {
  EXPECT_EQ(run_cli({"bounds"}).status, 2);
  EXPECT_EQ(run_cli({"bounds", "--degree", "2"}).status, 2);
  EXPECT_EQ(run_cli({"bounds", "--degree", "x"}).status, 2);
  EXPECT_EQ(run_cli({}).status, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).status, 2);
}

TEST(Lines, BothOraclesAndCoordinates) {
  auto r = run_cli({"lines", surface("fermat-cubic-c2.surface"), "--algo", "both", "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = r.json();
  EXPECT_EQ(j["lines"]["line_count"], 27);
  EXPECT_TRUE(j["lines"]["oracle_agrees"]);
  // re-check every emitted line against an independently built surface
  auto F = parse_field_spec(j["surface"]["search_field"].get<std::string>());
  auto f = parse_form("x^3 + y^3 + z^3 + w^3", F);
  for (const auto& l : j["lines"]["lines"]) {
    std::vector<std::string> entries;
    for (const auto& row : l)
      for (const auto& e : row) entries.push_back(e.get<std::string>());
    EXPECT_TRUE(contains_line(f, parse_line_text(*F, entries)));
  }
}

TEST(Lines, ExtensionOverrideAndErrors) {
  auto j = run_cli({"lines", surface("fermat-cubic-c2.surface"), "--ext", "1", "--format", "json"}).json();
  EXPECT_EQ(j["surface"]["extension_source"], "flag");
  EXPECT_LT(j["lines"]["line_count"].get<int>(), 27);
  EXPECT_EQ(run_cli({"lines", "/nonexistent.surface"}).status, 2);
  EXPECT_EQ(run_cli({"lines", surface("fermat-cubic-c2.surface"), "--algo", "guess"}).status, 2);
  EXPECT_EQ(run_cli({"lines", surface("fermat-cubic-c2.surface"), "--format", "xml"}).status, 2);
  auto b = run_cli({"lines", surface("fermat-c5.surface"), "--budget", "100"});
  EXPECT_EQ(b.status, 2);
  EXPECT_NE(b.err.find("BudgetExceeded"), std::string::npos);
}

TEST(Analyze, CubicLattice) {
  auto r = run_cli({"analyze", surface("fermat-cubic-c2.surface"), "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = r.json();
  EXPECT_TRUE(j["profile"]["pass"]);
  EXPECT_EQ(j["lattice"]["rank"], 7);
  EXPECT_EQ(j["lattice"]["line_diagonal"], -1);
  EXPECT_EQ(j["lattice"]["row_ones_histogram"]["10"], 27);
  EXPECT_TRUE(j["transversals"]["pass"]);
  EXPECT_EQ(j["transversals"]["histogram"]["5"], j["transversals"]["skew_pairs"]);
  EXPECT_TRUE(j["coplanarity"]["pass"]);
  EXPECT_TRUE(j["lattice"]["independent_set"]["invertible"]);
}

TEST(Analyze, SampledTransversalsSeeded) {
  auto a = run_cli({"analyze", surface("fermat-q3.surface"), "--transversals", "sample=100", "--seed", "5", "--format", "json"});
  auto b = run_cli({"analyze", surface("fermat-q3.surface"), "--transversals", "sample=100", "--seed", "5", "--format", "json"});
  EXPECT_EQ(a.json()["transversals"]["checked"], 100);
  EXPECT_EQ(without_timing(a.json()).dump(), without_timing(b.json()).dump());
  EXPECT_EQ(run_cli({"analyze", surface("fermat-q3.surface"), "--transversals", "some"}).status, 2);
}

TEST(Gq, AxiomsAndRegularity) {
  auto j = run_cli({"gq", surface("fermat-q3.surface"), "--check-axioms", "--check-3-regularity", "all", "--format", "json"}).json();
  EXPECT_TRUE(j["axioms"]["pass"]);
  EXPECT_TRUE(j["regularity"]["all_regular"]);
  EXPECT_EQ(j["regularity"]["triads"], 90720);
  auto n = run_cli({"gq", surface("fermat-c5.surface"), "--check-axioms", "--format", "json"}).json();
  EXPECT_FALSE(n["axioms"]["pass"]);
  EXPECT_TRUE(n["axioms"].contains("witness"));
}

TEST(Gq, HermitianDuality) {
  auto j = run_cli({"gq", surface("fermat-cubic-c2.surface"), "--hermitian", "--format", "json"}).json();
  const auto& h = j["duality"];
  EXPECT_TRUE(h["points_lines"]["gq"]["pass"]);
  EXPECT_TRUE(h["degree_profiles_match"]);
  EXPECT_TRUE(h["triad_statistics_match"]);
  EXPECT_TRUE(h["tangent_plane_map"]["bijective"]);
  EXPECT_TRUE(h["tangent_plane_map"]["incidence_preserved"]);
}

TEST(Configs, DefaultsAndAssertions) {
  auto j = run_cli({"configs", surface("fermat-cubic-c2.surface"), "--format", "json"}).json();
  EXPECT_TRUE(j["quadric"]["all"]);
  EXPECT_EQ(j["stars"]["count"], 45);
  EXPECT_EQ(j["star_chords"]["count"], 120);
  EXPECT_TRUE(j["extremal"]["pass"]);
  auto cubic = run_cli({"configs", surface("fermat-cubic-c2.surface"), "--assert-extremal"});
  EXPECT_EQ(cubic.status, 2);
  EXPECT_NE(cubic.err.find("d > 3"), std::string::npos);
  EXPECT_EQ(run_cli({"configs", surface("fermat-q3.surface"), "--assert-extremal"}).status, 0);
  EXPECT_EQ(run_cli({"configs", surface("fermat-c5.surface"), "--assert-extremal"}).status, 1);
}

TEST(Configs, NormalFormReport) {
  auto j = run_cli({"configs", surface("fermat-q3.surface"), "--normalize", "--format", "json"}).json();
  EXPECT_TRUE(j["normal_form"]["identity_verified"]);
  EXPECT_TRUE(j["normal_form"]["round_trip"]);
  EXPECT_TRUE(j["extremality_argument"]["pass"]);
}

TEST(Verify, MaximalQuartic) {
  auto r = run_cli({"verify", surface("fermat-q3.surface"), "--assert-all", "--format", "json"});
  EXPECT_EQ(r.status, 0) << r.err;
  auto j = r.json();
  EXPECT_TRUE(j["chain"]["all_pass"]);
  for (const auto& l : j["chain"]["links"]) EXPECT_TRUE(l["pass"]) << l["link"];
}

TEST(Verify, NonMaximalQuartic) {
  auto r = run_cli({"verify", surface("fermat-c5.surface")});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("48 < 112, non-maximal"), std::string::npos);
  EXPECT_NE(r.out.find("extremality: d-1=3 != 5^e"), std::string::npos);
  auto m = run_cli({"verify", surface("fermat-c5.surface"), "--assert-maximal"});
  EXPECT_EQ(m.status, 1);
  EXPECT_NE(m.err.find("maximal_count"), std::string::npos);
  auto a = run_cli({"verify", surface("fermat-c5.surface"), "--assert-all", "--format", "json"});
  EXPECT_EQ(a.status, a.json()["chain"]["all_pass"].get<bool>() ? 0 : 1);
}

TEST(Verify, DeterministicModuloTiming) {
  auto a = run_cli({"verify", surface("fermat-cubic-c2.surface"), "--format", "json"});
  auto b = run_cli({"verify", surface("fermat-cubic-c2.surface"), "--format", "json"});
  EXPECT_EQ(without_timing(a.json()).dump(), without_timing(b.json()).dump());
  EXPECT_TRUE(a.json().contains("timing"));
  EXPECT_EQ(a.json()["schema"], "report_v1");
}

TEST(Verify, OutputFile) {
  const auto dir = temp_dir();
  const auto path = (dir / "report.json").string();
  auto r = run_cli({"verify", surface("fermat-cubic-c2.surface"), "--format", "json", "-o", path});
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  EXPECT_EQ(Json::parse(in)["lines"]["line_count"], 27);
  fs::remove_all(dir);
}

TEST(Census, PencilRowsAndIdempotence) {
  const auto dir = temp_dir();
  const auto csv = dir / "pencil.csv";
  fs::remove(csv);
  auto r = run_cli({"census", data("families/fermat-pencil-q9.family"), "-o", csv.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  auto rows = read_lines(csv);
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[0], "family_id,params,field,d,line_count,maximal,extremal,elapsed");
  auto zero = csv_split(rows[1]);
  EXPECT_EQ(zero[1], "lam=00");
  EXPECT_EQ(zero[4], "112");
  EXPECT_EQ(zero[5], "yes");
  run_cli({"census", data("families/fermat-pencil-q9.family"), "-o", csv.string()});
  EXPECT_EQ(read_lines(csv).size(), 10u);
  // resume after losing the tail
  {
    std::ofstream out(csv, std::ios::trunc);
    for (std::size_t i = 0; i < 6; ++i) out << rows[i] << "\n";
  }
  run_cli({"census", data("families/fermat-pencil-q9.family"), "-o", csv.string()});
  auto resumed = read_lines(csv);
  EXPECT_EQ(resumed.size(), 10u);
  std::set<std::string> keys;
  for (std::size_t i = 1; i < resumed.size(); ++i) keys.insert(csv_split(resumed[i])[1]);
  EXPECT_EQ(keys.size(), 9u);
  fs::remove_all(dir);
}

TEST(Census, EmptyFamilyAndBudget) {
  const auto dir = temp_dir();
  const auto csv = dir / "empty.csv";
  auto r = run_cli({"census", data("families/empty.family"), "-o", csv.string()});
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(fs::exists(csv));
  EXPECT_EQ(fs::file_size(csv), 0u);
  const auto over = dir / "over.csv";
  auto b = run_cli({"census", data("families/fermat-pencil-q9.family"), "-o", over.string(), "--budget", "10"});
  EXPECT_EQ(b.status, 0);
  auto rows = read_lines(over);
  ASSERT_EQ(rows.size(), 10u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(csv_split(rows[i])[4], "skipped");
  fs::remove_all(dir);
}

TEST(Census, BadFamilyFile) {
  const auto dir = temp_dir();
  const auto fam = dir / "bad.family";
  std::ofstream(fam) << "field: 3\nf: x^4\n";
  EXPECT_EQ(run_cli({"census", fam.string(), "-o", (dir / "x.csv").string()}).status, 2);
  fs::remove_all(dir);
}

TEST(Census, CsvQuoting) {
  EXPECT_EQ(csv_field("3^2/1,0,1"), "\"3^2/1,0,1\"");
  EXPECT_EQ(csv_split("a,\"3^2/1,0,1\",c"), (std::vector<std::string>{"a", "3^2/1,0,1", "c"}));
  EXPECT_EQ(csv_split(csv_field("say \"hi\", ok")), (std::vector<std::string>{"say \"hi\", ok"}));
}

TEST(Binary, ExitStatuses) {
  const char* bin = std::getenv("SURFLINES_BIN");
  if (!bin) GTEST_SKIP() << "SURFLINES_BIN not set";
  auto status = [&](const std::string& args) {
    const int s = std::system((std::string(bin) + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(status("verify " + surface("fermat-q3.surface")), 0);
  EXPECT_EQ(status("verify " + surface("fermat-c5.surface")), 0);
  EXPECT_EQ(status("verify " + surface("fermat-c5.surface") + " --assert-maximal"), 1);
  EXPECT_EQ(status("bounds"), 2);
  EXPECT_EQ(status("--help"), 0);
}
