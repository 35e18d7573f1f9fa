#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bousfield/cli.hpp"
#include "bousfield/serialize.hpp"
#include "support.hpp"

using namespace bousfield;
using namespace testsupport;

namespace {

struct CliRun {
  int code = -1;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class Files : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("bousfield-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  void write(const std::string& p, const std::string& text) const { std::ofstream(p) << text; }

 private:
  std::filesystem::path dir_;
};

}  // namespace

TEST(Cli, Help) {
  CliRun r = cli({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
  EXPECT_EQ(cli({"lattice", "random", "--help"}).code, kExitOk);
}

TEST(Cli, UsageErrors) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"frobnicate"},
           {"verify", "S99"},
           {"--window", "0-8", "verify", "S8"},
           {"--window", "a:b", "homology", "unit"},
           {"--format", "xml", "verify", "S8"},
           {"--no-such-flag", "verify"},
           {"catalog"},
           {"catalog", "show"},
           {"lattice", "random", "--size", "11"},
           {"homology", "cone(q)"},
           {"homology", "restrict_g(unit)"},
       }) {
    CliRun r = cli(args);
    EXPECT_EQ(r.code, kExitUsage) << ::testing::PrintToString(args);
    EXPECT_TRUE(r.out.empty()) << ::testing::PrintToString(args);
    EXPECT_FALSE(r.err.empty()) << ::testing::PrintToString(args);
  }
}

TEST(Cli, ConfigErrors) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--prime", "4", "verify", "S2"},
           {"--cutoff", "0", "homology", "unit"},
           {"--cap", "0", "catalog", "build"},
           {"--window", "9:1", "verify", "S8"},
           {"--config", "/nonexistent/config.json", "verify", "S2"},
       }) {
    CliRun r = cli(args);
    EXPECT_EQ(r.code, kExitConfig) << ::testing::PrintToString(args);
    EXPECT_TRUE(r.out.empty());
    EXPECT_FALSE(r.err.empty());
  }
}

TEST(Cli, VerifyExitCodes) {
  CliRun ok = cli({"verify", "S8"});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_TRUE(ok.err.empty());
  const Json j = ok.json();
  ASSERT_EQ(j["reports"].size(), 1u);
  EXPECT_EQ(j["reports"][0]["verdict"], "Pass");
  EXPECT_EQ(j["exit_code"], 0);

  CliRun narrow = cli({"--window", "0:1", "verify", "S8", "S11"});
  EXPECT_EQ(narrow.code, kExitInconclusive);
  EXPECT_EQ(narrow.json()["reports"][0]["verdict"], "Inconclusive");

  CliRun corrupted = cli({"verify", "S1", "--corrupt-differential"});
  EXPECT_EQ(corrupted.code, kExitFail);
  EXPECT_EQ(corrupted.json()["reports"][0]["verdict"], "Fail");

  CliRun table = cli({"--format", "table", "verify", "S12"});
  EXPECT_EQ(table.code, kExitOk);
  EXPECT_EQ(table.out.rfind("S12 Exploratory", 0), 0u);
}

TEST(Cli, VerifyIsReproducible) {
  CliRun a = cli({"--seed", "5", "verify", "S2", "S11"});
  CliRun b = cli({"--seed", "5", "verify", "S2", "S11"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(Files, ConfigPrecedence) {
  const std::string cfg = path("config.json");
  write(cfg, R"({"prime": 2, "seed": 11, "window": {"lo": 0, "hi": 40}})");
  CliRun file = cli({"--config", cfg, "verify", "S12"});
  ASSERT_EQ(file.code, kExitOk) << file.err;
  EXPECT_EQ(file.json()["config"]["prime"], 2);
  EXPECT_EQ(file.json()["config"]["seed"], 11);
  EXPECT_EQ(file.json()["config"]["window"]["hi"], 40);
  EXPECT_EQ(file.json()["config"]["window"]["c_lo"], -8);

  CliRun flag = cli({"--config", cfg, "--prime", "3", "--window", "-4:20", "verify", "S12"});
  ASSERT_EQ(flag.code, kExitOk) << flag.err;
  EXPECT_EQ(flag.json()["config"]["prime"], 3);
  EXPECT_EQ(flag.json()["config"]["seed"], 11);
  EXPECT_EQ(flag.json()["config"]["window"]["lo"], -4);

  write(cfg, R"({"prime": 2, "colour": "blue"})");
  EXPECT_EQ(cli({"--config", cfg, "verify", "S12"}).code, kExitConfig);
  write(cfg, "{ not json");
  EXPECT_EQ(cli({"--config", cfg, "verify", "S12"}).code, kExitConfig);
}

TEST_F(Files, OutWritesDocument) {
  const std::string out = path("report.json");
  CliRun r = cli({"--out", out, "verify", "S12"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(Json::parse(slurp(out))["reports"][0]["id"], "S12");
}

TEST_F(Files, CatalogRoundTrip) {
  const std::string built = path("catalog.json");
  CliRun b = cli({"--out", built, "catalog", "build"});
  ASSERT_EQ(b.code, kExitOk) << b.err;
  const Json doc = Json::parse(slurp(built));
  EXPECT_EQ(doc["format"], "bousfield-catalog/1");
  ASSERT_GE(doc["objects"].size(), 9u);
  EXPECT_EQ(doc["objects"][3]["expression"], "cone(p, unit)");
  EXPECT_EQ(doc["objects"][4]["expression"], "telescope(p, unit)");

  CliRun show = cli({"catalog", "show", "--catalog", built});
  EXPECT_EQ(show.code, kExitOk);
  EXPECT_EQ(show.out, slurp(built));

  CliRun listing = cli({"--format", "table", "catalog", "show", "--catalog", built});
  EXPECT_NE(listing.out.find("fiber_telescope(p, unit)"), std::string::npos);
  EXPECT_NE(listing.out.find("tensor(cone(x1, unit), cone(p, unit))"), std::string::npos);

  const std::string extended = path("extended.json");
  CliRun e = cli({"--out", extended, "--format", "table", "catalog", "extend", "--catalog", built, "cone(x2)"});
  ASSERT_EQ(e.code, kExitOk) << e.err;
  const int fresh = static_cast<int>(doc["objects"].size());
  EXPECT_EQ(e.out.rfind("added " + std::to_string(fresh) + "  cone(x2, unit)", 0), 0u);
  const Json ext = Json::parse(slurp(extended));
  EXPECT_EQ(ext["objects"][fresh]["expression"], "cone(x2, unit)");
  EXPECT_NE(ext["hash"], doc["hash"]);
  EXPECT_EQ(cli({"catalog", "show", "--catalog", extended}).out, slurp(extended));

  CliRun again = cli({"--format", "table", "catalog", "extend", "--catalog", extended, "cone(x2, unit)"});
  EXPECT_EQ(again.out.rfind("present " + std::to_string(fresh), 0), 0u);

  Json tampered = doc;
  tampered["objects"][1]["expression"] = "shift(2, unit)";
  const std::string bad = path("tampered.json");
  write(bad, tampered.dump(2));
  CliRun t = cli({"catalog", "show", "--catalog", bad});
  EXPECT_EQ(t.code, kExitUsage);
  EXPECT_TRUE(t.out.empty());
}

TEST_F(Files, LatticeCommands) {
  const std::string built = path("catalog.json");
  ASSERT_EQ(cli({"--out", built, "catalog", "build"}).code, kExitOk);

  CliRun a = cli({"lattice", "analyze", "--catalog", built});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  const Json j = a.json();
  EXPECT_TRUE(j["valid"].get<bool>());
  EXPECT_EQ(j["dl"].size(), 4u);
  EXPECT_EQ(j["ba"].size(), 4u);
  EXPECT_TRUE(j["square_zero"].empty());
  EXPECT_EQ(j["complements"]["cone(p, unit)"], "telescope(p, unit)");
  EXPECT_EQ(j["complemented_pairs"].size(), 2u);

  CliRun q = cli({"lattice", "quotient", "--catalog", built, "--by", "telescope(p, unit)"});
  ASSERT_EQ(q.code, kExitOk) << q.err;
  EXPECT_EQ(q.json()["classes"].size(), 2u);
  EXPECT_TRUE(q.json()["certificate"]["order_isomorphism"].get<bool>());
  EXPECT_EQ(q.json()["certificate"]["up_set"], Json::parse(R"J(["unit", "telescope(p, unit)"])J"));
  EXPECT_EQ(cli({"lattice", "quotient", "--catalog", built, "--by", "nothing"}).code, kExitUsage);

  const std::string l1 = path("l1.json"), l2 = path("l2.json");
  ASSERT_EQ(cli({"--seed", "3", "--out", l1, "lattice", "random", "--size", "6"}).code, kExitOk);
  ASSERT_EQ(cli({"--seed", "3", "--out", l2, "lattice", "random", "--size", "6"}).code, kExitOk);
  EXPECT_EQ(slurp(l1), slurp(l2));
  EXPECT_LE(Json::parse(slurp(l1))["elements"].size(), 6u);

  CliRun p = cli({"lattice", "product", "--lattice", l1, "--lattice", built});
  ASSERT_EQ(p.code, kExitOk) << p.err;
  EXPECT_EQ(p.json()["product"]["elements"].size(), Json::parse(slurp(l1))["elements"].size() * 4);
  EXPECT_TRUE(p.json()["certificate"]["quotient_isomorphism"].get<bool>());

  // A hand-written chain 0 < s < z < Max with s∧s = 0.
  const std::string chain = path("chain.json");
  write(chain, R"({"elements": ["0", "s", "z", "Max"],
                   "order": [[1,1,1,1],[0,1,1,1],[0,0,1,1],[0,0,0,1]],
                   "tensor": [["0","0","0","0"],["0","0","s","s"],["0","s","z","z"],["0","s","z","Max"]]})");
  CliRun c = cli({"lattice", "analyze", "--lattice", chain});
  ASSERT_EQ(c.code, kExitOk) << c.err;
  EXPECT_EQ(c.json()["square_zero"], Json::parse(R"(["s"])"));
  EXPECT_FALSE(c.json()["separated"].get<bool>());
  EXPECT_EQ(c.json()["complements"]["z"], "0");
  CliRun cq = cli({"lattice", "quotient", "--lattice", chain, "--by", "1"});
  EXPECT_EQ(cq.json()["by"], "s");
  EXPECT_EQ(cq.json()["classes"].size(), 3u);

  write(chain, R"({"elements": ["0", "Max"], "order": [[1,1],[0,1]], "tensor": [[0,1],[1,1]]})");
  EXPECT_EQ(cli({"lattice", "analyze", "--lattice", chain}).code, kExitFail);
}

TEST(Cli, HomologyMatchesCounts) {
  for (std::uint32_t p : {2u, 3u}) {
    CliRun r = cli({"--prime", std::to_string(p), "--window", "0:40", "--chain-window", "-2:2", "homology", "cone(p)"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::map<long, long> copies;
    const Json doc = r.json();
    for (const auto& e : doc["table"]["entries"]) {
      EXPECT_EQ(e["chain"], 0);
      EXPECT_EQ(e["module"]["free_rank"], 0);
      for (const auto& t : e["module"]["torsion"]) {
        EXPECT_EQ(t, 1);
        ++copies[e["internal"].get<long>()];
      }
    }
    for (long d = 0; d <= 40; ++d) EXPECT_EQ(copies[d], brute_count(d, 2)) << "degree " << d;
  }

  CliRun unit = cli({"--window", "0:40", "homology", "unit"});
  const Json unit_doc = unit.json();
  for (const auto& e : unit_doc["table"]["entries"]) {
    EXPECT_EQ(e["module"]["free_rank"].get<long>(), brute_count(e["internal"].get<long>(), 2));
  }
  EXPECT_EQ(unit.json()["table"]["entries"][0]["internal"], 0);

  CliRun id = cli({"homology", "cone(1)"});
  EXPECT_EQ(id.code, kExitOk);
  EXPECT_TRUE(id.json()["table"]["entries"].empty());

  CliRun fp = cli({"--window", "0:6", "--format", "table", "homology", "restrict_g(unit_Fp)"});
  EXPECT_EQ(fp.code, kExitOk);
  EXPECT_NE(fp.out.find("(0,0)"), std::string::npos);
}
