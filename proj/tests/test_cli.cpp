#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"

using namespace blowdown;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result lab(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path golden(const std::string& name) { return std::filesystem::path(BLOWDOWN_GOLDEN_DIR) / name; }

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("blowdown-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name, const std::string& body) const {
    auto p = path_ / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(CliGolden, PropP4) {
  for (int i = 0; i < 3; ++i) {
    Result r = lab({"verify", "prop-p", "--p", "4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, slurp(golden("verify_prop_p_4.json")));
  }
}

TEST(CliGolden, ConstructZ40) {
  for (int i = 0; i < 3; ++i) {
    Result r = lab({"construct", "z", "--x", "4", "--k", "0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, slurp(golden("construct_z_4_0.json")));
  }
}

TEST(CliGolden, SweepTable6) {
  for (unsigned threads : {1u, 3u, 0u}) {
    Result r = lab({"sweep", "--x-max", "6", "--table", "-", "--threads", std::to_string(threads)});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, slurp(golden("sweep_6_table.csv")));
  }
}

TEST(CliGolden, ExecutableMatchesInProcess) {
  const std::string cmd = std::string(BLOWDOWN_LAB) + " construct z --x 4 --k 0";
  FILE* f = popen(cmd.c_str(), "r");
  ASSERT_NE(f, nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, f)) out.append(buf, n);
  EXPECT_EQ(pclose(f), 0);
  EXPECT_EQ(out, slurp(golden("construct_z_4_0.json")));
}

TEST(CliDocuments, ConstructZContent) {
  Json d = Json::parse(lab({"construct", "z", "--x", "4", "--k", "0"}).out);
  EXPECT_EQ(d["chi_h"], 4);
  EXPECT_EQ(d["c1_sq"], 1);
  ASSERT_FALSE(d["checks"].empty());
  for (const auto& c : d["checks"]) EXPECT_EQ(c["status"], "verified");
  std::vector<std::string> keys;
  for (auto it = d.begin(); it != d.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "name", "e", "sign", "b_plus", "b_minus", "chi_h",
                                            "c1_sq", "simply_connected", "symplectic", "lattice", "K", "surfaces",
                                            "provenance", "checks"}));
}

TEST(CliDocuments, PropPMatrix) {
  Json d = Json::parse(lab({"verify", "prop-p", "--p", "4"}).out);
  EXPECT_EQ(d["gram"], Json::parse("[[3,1],[1,-1]]"));
  EXPECT_EQ(d["passed"], true);
}

TEST(CliDocuments, RoundTrip) {
  const std::vector<std::vector<std::string>> commands{{"construct", "z", "--x", "4", "--k", "0"},
                                                       {"construct", "xp", "--p", "5"},
                                                       {"construct", "xp-prime", "--p", "6"},
                                                       {"construct", "xpk", "--p", "4", "--k", "7"},
                                                       {"construct", "xpk", "--p", "5", "--k", "2", "--odd"},
                                                       {"construct", "z", "--x", "7", "--k", "11"}};
  for (const auto& cmd : commands) {
    Result r = lab(cmd);
    ASSERT_EQ(r.code, 0) << r.err;
    Json d = Json::parse(r.out);
    LedgerDocument doc = parse_ledger_document(d);
    EXPECT_EQ(ledger_document(doc.ledger, doc.checks), d);
    EXPECT_EQ(checks_to_json(doc.checks), d["checks"]);
  }
}

TEST(CliDocuments, RoundTripWithLattice) {
  RationalSurface r = build_R(5);
  Json d = ledger_document(r.ledger, {});
  LedgerDocument doc = parse_ledger_document(Json::parse(d.dump()));
  EXPECT_TRUE(same_invariants(doc.ledger, r.ledger));
  EXPECT_EQ(ledger_document(doc.ledger, {}), d);
}

TEST(CliDocuments, TamperedDocumentsAreRejected) {
  Json d = Json::parse(lab({"construct", "xp", "--p", "4"}).out);
  Json bad = d;
  bad["c1_sq"] = 2;
  EXPECT_THROW(parse_ledger_document(bad), ConsistencyError);
  bad = d;
  bad["e"] = 48;
  EXPECT_THROW(parse_ledger_document(bad), DomainError);
  bad = d;
  bad["schema_version"] = "2";
  EXPECT_THROW(parse_ledger_document(bad), DomainError);
  Json lat = ledger_document(build_R(4).ledger, {});
  lat["surfaces"][0]["genus"] = 5;
  EXPECT_THROW(parse_ledger_document(lat), ConsistencyError);
}

TEST(CliDocuments, BigIntegersAsStrings) {
  EXPECT_EQ(to_json(Integer(42)), Json(42));
  Integer big("123456789012345678901234567890");
  EXPECT_EQ(to_json(big), Json("123456789012345678901234567890"));
  EXPECT_EQ(integer_from_json(to_json(big)), big);
  EXPECT_EQ(integer_from_json(to_json(-big)), -big);
  Integer edge("9007199254740992");  // 2^53
  EXPECT_TRUE(to_json(edge).is_string());
  EXPECT_TRUE(to_json(edge - 1).is_number());
}

TEST(CliExitCodes, Matrix) {
  struct Case {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Case> cases{
      {{"construct", "xp", "--p", "4"}, 0},
      {{"construct", "xp", "--p", "3"}, 1},
      {{"construct", "xp-prime", "--p", "4"}, 1},
      {{"construct", "xpk", "--p", "4", "--k", "8"}, 1},
      {{"construct", "xpk", "--p", "5", "--k", "8", "--odd"}, 0},
      {{"construct", "z", "--x", "4", "--k", "8"}, 1},
      {{"verify", "prop-p", "--p", "4"}, 0},
      {{"verify", "prop-p", "--p", "2"}, 1},
      {{"verify", "prop-p-prime", "--p", "5"}, 0},
      {{"verify", "horizontal-fiber", "--q", "3"}, 0},
      {{"verify", "horizontal-fiber", "--q", "2"}, 1},
      {{"verify", "e-fibersum", "--x", "3"}, 0},
      {{"verify", "e-fibersum", "--x", "1"}, 1},
      {{"basic-classes", "--x", "4", "--k", "2", "--filter"}, 0},
      {{"basic-classes", "--x", "1", "--k", "0"}, 1},
      {{"geography", "--x", "4", "--c", "9"}, 1},
      {{"geography", "--x", "6", "--c", "5"}, 0},
      {{"sweep", "--x-max", "3"}, 1},
      {{"sweep"}, 64},
      {{"construct", "xp"}, 64},
      {{"construct", "xp", "--p", "four"}, 64},
      {{"construct", "xp", "--p", "4", "--bogus"}, 64},
      {{"frobnicate"}, 64},
      {{}, 64},
      {{"--help"}, 0},
      {{"lattice", "pair", "--input", "/nonexistent/lattice.json"}, 1},
  };
  for (const auto& c : cases) {
    Result r = lab(c.args);
    std::string joined;
    for (const auto& a : c.args) joined += a + " ";
    EXPECT_EQ(r.code, c.code) << joined << "\n" << r.err;
    if (c.code != 0) {
      EXPECT_FALSE(r.err.empty()) << joined;
    }
  }
}

TEST(CliExitCodes, GeographyMessageNamesInequality) {
  Result r = lab({"geography", "--x", "4", "--c", "9"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("c <= (5x-4)/2"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(CliCommands, Geography) {
  Result r = lab({"geography", "--x", "9", "--c", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json d = Json::parse(r.out);
  EXPECT_EQ(d["recipe"]["route"], "construction2");
  EXPECT_EQ(d["recipe"]["k"], 14);
  EXPECT_EQ(d["ledger"]["chi_h"], 9);
  EXPECT_EQ(d["ledger"]["c1_sq"], 20);
  EXPECT_EQ(d["alternate"]["recipe"]["route"], "construction1_odd");
  EXPECT_EQ(d["alternate"]["ledger"]["c1_sq"], 20);
  EXPECT_EQ(d["position"]["theorem_TT"], true);
  EXPECT_EQ(d["position"]["theorem_T"], false);
}

TEST(CliCommands, BasicClasses) {
  Json d = Json::parse(lab({"basic-classes", "--x", "4", "--k", "2", "--filter"}).out);
  EXPECT_EQ(d["count"], 12);
  EXPECT_EQ(d["classes"].size(), 12u);
  EXPECT_EQ(d["survivors"], Json::parse(R"j(["beta(-2;-1,-1)", "beta(2;+1,+1)"])j"));
  Json big = Json::parse(lab({"basic-classes", "--x", "10", "--k", "60"}).out);
  EXPECT_EQ(big["count"], "10376293541461622784");
  EXPECT_TRUE(big["classes"].is_null());
}

TEST(CliCommands, SweepFilesAndTimestamps) {
  TempDir t;
  const std::string svg = t.path("g.svg"), csv = t.path("g.csv");
  Result r = lab({"sweep", "--x-max", "6", "--svg", svg, "--table", csv, "--width", "400", "--height", "300"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json d = Json::parse(r.out);
  EXPECT_EQ(d["failures"], 0);
  EXPECT_EQ(d["points"].size(), 28u);
  EXPECT_EQ(slurp(csv), slurp(golden("sweep_6_table.csv")));
  const std::string s = slurp(svg);
  EXPECT_NE(s.find("width=\"400\" height=\"300\""), std::string::npos);
  for (const char* id : {"half-noether", "noether", "upper"}) {
    EXPECT_NE(s.find(std::string("id=\"") + id + "\""), std::string::npos) << id;
  }
  std::size_t circles = 0;
  for (std::size_t pos = 0; (pos = s.find("<circle", pos)) != std::string::npos; ++pos) ++circles;
  EXPECT_EQ(circles, 28u);
  EXPECT_EQ(lab({"sweep", "--x-max", "4", "--svg", svg, "--width", "100"}).code, 1);

  Json ts = Json::parse(lab({"--timestamps", "verify", "e-fibersum", "--x", "3"}).out);
  EXPECT_TRUE(ts.contains("generated_at"));
  Json plain = Json::parse(lab({"verify", "e-fibersum", "--x", "3"}).out);
  EXPECT_FALSE(plain.contains("generated_at"));
}

TEST(CliCommands, LatticeUtilities) {
  TempDir t;
  const std::string in = t.file("l.json", R"({"labels": ["H", "E1", "E2"],
      "gram": [[1, 0, 0], [0, -1, 0], [0, 0, -1]],
      "classes": [{"coeffs": [1, -1, -1]}, {"coeffs": [2, 0, 0]}]})");
  Json p = Json::parse(lab({"lattice", "pair", "--input", in}).out);
  EXPECT_EQ(p["pair"], 2);
  Json s = Json::parse(lab({"lattice", "square", "--input", in}).out);
  EXPECT_EQ(s["squares"], Json::parse("[-1, 4]"));
  Json g = Json::parse(lab({"lattice", "gram", "--input", in}).out);
  EXPECT_EQ(g["gram"], Json::parse("[[-1, 2], [2, 4]]"));
  Json c = Json::parse(lab({"lattice", "complement", "--input", in}).out);
  EXPECT_EQ(c["basis"].size(), 1u);  // rank 3 minus span rank 2
  auto L = IntLattice::diagonal({"H", "E1", "E2"}, {1, -1, -1});
  HomClass v = class_from_json(L, c["basis"][0]);
  EXPECT_EQ(pair(v, HomClass::of(L, {{"H", 1}, {"E1", -1}, {"E2", -1}})), 0);
  EXPECT_EQ(pair(v, HomClass::basis(L, "H")), 0);

  const std::string bad = t.file("bad.json", R"({"labels": ["a", "b"], "gram": [[1, 2], [3, 1]]})");
  EXPECT_EQ(lab({"lattice", "gram", "--input", bad}).code, 1);
  const std::string junk = t.file("junk.json", "{not json");
  EXPECT_EQ(lab({"lattice", "gram", "--input", junk}).code, 1);
  const std::string one = t.file("one.json", R"({"labels": ["a"], "gram": [[2]], "classes": [[1]]})");
  EXPECT_EQ(lab({"lattice", "pair", "--input", one}).code, 1);
}
