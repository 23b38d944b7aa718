#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <daolab/dsl.hpp>
#include <daolab/report.hpp>

#include "cli.hpp"

using namespace daolab;
namespace fs = std::filesystem;

namespace {

std::string fixture(const std::string& rel) { return std::string(DAOLAB_SOURCE_DIR) + "/sessions/" + rel; }

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "daolab_test_dsl_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string write_scratch(const std::string& name, const std::string& text) {
  auto p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

ParseError parse_error(const std::string& text) {
  try {
    dsl::parse_session(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for: " << text;
  return ParseError("", 0, 0);
}

}  // namespace

TEST(Parse, ThreeStatements) {
  auto s = dsl::parse_session("ring R = F32003[x,y]; ideal I = (x^2, y^2); compute dao;");
  ASSERT_EQ(s.statements.size(), 3u);
  const auto* R = s.ring("R");
  ASSERT_NE(R, nullptr);
  EXPECT_EQ(R->vars, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(R->field.prime, 32003u);
  EXPECT_FALSE(R->mode.has_value());
  EXPECT_EQ(s.ideal("I")->gens, (std::vector<std::string>{"x^2", "y^2"}));
  EXPECT_EQ(s.ideal("I")->ring, "R");
  EXPECT_EQ(std::get<dsl::Command>(s.statements[2]).verb, "compute");
}

TEST(Parse, QuotientRingWithMode) {
  auto s = dsl::parse_session("ring R = Q[x,y,z]/(z^2 - x*y) graded;");
  const auto* R = s.ring("R");
  ASSERT_NE(R, nullptr);
  EXPECT_TRUE(R->field.rational);
  ASSERT_EQ(R->relations.size(), 1u);
  EXPECT_EQ(R->relations[0], "-x*y + z^2");
  EXPECT_EQ(R->mode, RingMode::Graded);
}

TEST(Parse, DefaultFieldAndComments) {
  auto s = dsl::parse_session("# plane\nring P = [x,y] local; # trailing\n");
  EXPECT_EQ(s.ring("P")->field.name(), "F32003");
  EXPECT_EQ(s.ring("P")->mode, RingMode::Local);
}

TEST(Parse, UnterminatedIdealHasCaret) {
  std::string text = "ideal I = (x^2,";
  auto e = parse_error("ring R = F32003[x]; " + text);
  EXPECT_EQ(e.line(), 1u);
  auto d = dsl::diagnostic(e, "ring R = F32003[x]; " + text, "s.dl");
  EXPECT_EQ(d.rfind("s.dl:1:", 0), 0u) << d;
  EXPECT_NE(d.find("error:"), std::string::npos);
  EXPECT_NE(d.find("^"), std::string::npos);
  auto caret_line = d.substr(d.rfind('\n', d.size() - 2) + 1);
  EXPECT_EQ(caret_line.find('^'), e.column() + 1) << d;
}

TEST(Parse, CaretOnLaterLine) {
  std::string text = "ring R = F7[x,y];\nideal I = (x, q);\n";
  auto e = parse_error(text);
  EXPECT_EQ(e.line(), 2u);
  auto d = dsl::diagnostic(e, text);
  EXPECT_NE(d.find("  ideal I = (x, q);\n"), std::string::npos) << d;
}

TEST(Parse, Rejections) {
  EXPECT_NE(std::string(parse_error("ring R = F32004[x];").what()).find("composite modulus"), std::string::npos);
  EXPECT_NE(std::string(parse_error("ring R = F1[x];").what()).find("composite"), std::string::npos);
  EXPECT_NE(std::string(parse_error("ring R = G7[x];").what()).find("unknown field"), std::string::npos);
  EXPECT_NE(std::string(parse_error("ideal I = (x);").what()).find("before any ring"), std::string::npos);
  EXPECT_NE(std::string(parse_error("ring R = [x,x];").what()).find("repeated variable"), std::string::npos);
  EXPECT_NE(std::string(parse_error("ring R = [x]; ring R = [y];").what()).find("duplicate"), std::string::npos);
  EXPECT_NE(std::string(parse_error("ring R = [x]; compute J;").what()).find("undeclared identifier"),
            std::string::npos);
  EXPECT_NE(std::string(parse_error("ring R = [x]; frobnicate;").what()).find("unknown statement"),
            std::string::npos);
  EXPECT_NE(std::string(parse_error("ring R = [x] ideal I = (x);").what()).find("';'"), std::string::npos);
}

TEST(Parse, IdealsBindToMostRecentRing) {
  auto s = dsl::parse_session("ring A = [x]; ideal I = (x); ring B = Q[y]; ideal J = (y/2);");
  EXPECT_EQ(s.ideal("I")->ring, "A");
  EXPECT_EQ(s.ideal("J")->ring, "B");
  EXPECT_EQ(s.ideal("J")->gens[0], "1/2*y");
}

TEST(Print, IdempotentOnFixtures) {
  for (const char* f : {"xa_ya.dl", "quadric.dl", "identity.dl", "regular.dl", "local7.dl", "explore_ci.dl",
                        "explore_hyper.dl", "failing/cap_limited.dl"}) {
    auto text = cli::read_file(fixture(f));
    auto once = dsl::parse_session(text);
    auto printed = dsl::print_session(once);
    auto twice = dsl::parse_session(printed);
    EXPECT_EQ(once, twice) << f;
    EXPECT_EQ(printed, dsl::print_session(twice)) << f;
  }
}

TEST(Print, IdempotentOnRandomSessions) {
  std::mt19937_64 rng(3);
  const char* vars[] = {"x", "y", "z"};
  for (int t = 0; t < 40; ++t) {
    std::ostringstream src;
    bool rational = rng() % 2;
    src << "ring R = " << (rational ? "Q" : "F101") << "[x,y,z]";
    if (rng() % 2) src << "/(x*y - " << (rng() % 7) << "*z^2)";
    src << (rng() % 2 ? " local" : "") << ";\n";
    int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) {
      src << "ideal I" << i << " = (";
      int g = 1 + static_cast<int>(rng() % 3);
      for (int j = 0; j < g; ++j) {
        if (j) src << ", ";
        int terms = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < terms; ++k) {
          if (k) src << (rng() % 2 ? " + " : " - ");
          src << (1 + rng() % 50) << (rational && rng() % 3 == 0 ? "/3" : "") << "*" << vars[rng() % 3] << "^"
              << (1 + rng() % 3) << "*" << vars[rng() % 3];
        }
      }
      src << ");\n";
    }
    src << "compute dao I0;\nverify identity I0;\nresolve gr I0;\n";
    auto once = dsl::parse_session(src.str());
    EXPECT_EQ(once, dsl::parse_session(dsl::print_session(once))) << src.str();
  }
}

TEST(Cli, ComputeJsonHasCertifiedD3) {
  auto r = run({"compute", fixture("xa_ya.dl"), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = report::Json::parse(r.out);
  const auto& d3 = j["results"][0]["report"]["d3"];
  EXPECT_EQ(d3["value"], 1);
  EXPECT_EQ(d3["certificate"], "certified");
  EXPECT_EQ(j["defaults"]["field"], "F32003");
  EXPECT_EQ(j["defaults"]["mode"], "graded");
  EXPECT_EQ(j["defaults"]["trials"], 8);
  EXPECT_EQ(j["defaults"]["cap"], 12);
}

TEST(Cli, VerifyIdentityQuadric) {
  auto r = run({"verify", "identity", fixture("quadric.dl")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1 = max(1, 0)"), std::string::npos) << r.out;
}

TEST(Cli, BrokenFileIsUsageError) {
  auto r = run({"compute", fixture("failing/broken.dl")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":3:13: error: undeclared identifier 'K'"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("  compute dao K;\n"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"verify", "monotonicity", fixture("failing/double_line_monotonicity.dl")}).code, 1);
  EXPECT_EQ(run({"--cap", "1", "compute", "--certified", fixture("failing/cap_limited.dl")}).code, 3);
  EXPECT_EQ(run({"--cap", "1", "compute", fixture("failing/cap_limited.dl")}).code, 0);
  EXPECT_EQ(run({"resolve", fixture("failing/local_resolve.dl")}).code, 2);
  EXPECT_EQ(run({"verify", "nonsense", fixture("xa_ya.dl")}).code, 2);
  EXPECT_EQ(run({"verify", "identity"}).code, 2);
  EXPECT_EQ(run({"compute", fixture("no_such_file.dl")}).code, 2);
  EXPECT_EQ(run({"--format", "yaml", "compute", fixture("xa_ya.dl")}).code, 2);
  EXPECT_EQ(run({"--trials", "0", "compute", fixture("xa_ya.dl")}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, IdentityOnNonReductionIsUsageError) {
  // (x^2, y^2) is not a reduction of m: the identity scenario's hypothesis fails.
  auto r = run({"verify", "identity", fixture("xa_ya.dl")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("reduction"), std::string::npos) << r.err;
}

TEST(Cli, ExploreRejectsBadOptions) {
  auto p = write_scratch("bad_explore.dl", "explore family=hypersurface colour=red;");
  EXPECT_EQ(run({"explore", p}).code, 2);
  p = write_scratch("bad_range.dl", "explore vars=3..x;");
  EXPECT_EQ(run({"explore", p}).code, 2);
  p = write_scratch("no_explore.dl", "ring R = [x];");
  EXPECT_EQ(run({"explore", p}).code, 2);
}

TEST(Cli, ExploreFlagsOverrideConfig) {
  auto r = run({"--trials", "2", "--seed", "9", "--format", "json", "explore", fixture("explore_hyper.dl")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = report::Json::parse(r.out);
  int cases = 0;
  for (const auto& in : j["results"][0]["result"]["inputs"]) {
    if (in["name"] == "seed") {
      EXPECT_EQ(in["value"], "9");
    }
    if (in["name"] == "cases") cases = std::stoi(in["value"].get<std::string>());
  }
  EXPECT_EQ(cases, 2);
}

TEST(Cli, ExploreFieldOverride) {
  auto r = run({"--trials", "2", "explore", fixture("explore_hyper.dl"), "--field", "Q"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("field: Q"), std::string::npos);
  EXPECT_EQ(run({"explore", fixture("explore_hyper.dl"), "--field", "F9"}).code, 2);
}

TEST(Cli, ResolvePrintsBettiTable) {
  auto p = write_scratch("koszul.dl", "ring S = [x,y]; ideal I = (x, y); resolve I;");
  auto r = run({"resolve", p});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("total: 1 2 1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("regularity 0"), std::string::npos);
  EXPECT_NE(r.out.find("hilbert series check pass"), std::string::npos);
}

TEST(Cli, OutWritesFileAndNothingToStdout) {
  auto path = scratch("report.json");
  fs::remove(path);
  auto r = run({"--format", "json", "--out", path.string(), "compute", fixture("quadric.dl")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  auto j = report::Json::parse(cli::read_file(path.string()));
  EXPECT_EQ(j["results"][0]["report"]["reduction"]["r_I"], 1);
  EXPECT_FALSE(fs::exists(path.string() + ".tmp"));
  EXPECT_EQ(run({"--out", "/nonexistent_dir/x.json", "compute", fixture("quadric.dl")}).code, 2);
}

TEST(Cli, ByteIdenticalReruns) {
  for (const std::vector<std::string>& cmd :
       {std::vector<std::string>{"--format", "json", "compute", fixture("xa_ya.dl")},
        std::vector<std::string>{"--format", "json", "--seed", "17", "verify", "regular", fixture("regular.dl")},
        std::vector<std::string>{"--format", "json", "explore", fixture("explore_hyper.dl")},
        std::vector<std::string>{"compute", fixture("local7.dl")}}) {
    auto a = run(cmd), b = run(cmd);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, SeedChangesWitnessesOnly) {
  auto a = report::Json::parse(run({"--format", "json", "compute", fixture("xa_ya.dl")}).out);
  auto b = report::Json::parse(run({"--format", "json", "--seed", "99", "compute", fixture("xa_ya.dl")}).out);
  for (std::size_t i = 0; i < a["results"].size(); ++i)
    for (const char* k : {"d1", "d2", "d3", "s_of_m"})
      EXPECT_EQ(a["results"][i]["report"][k]["value"], b["results"][i]["report"][k]["value"]) << k;
}

TEST(Cli, AnomalyLogIsJsonLines) {
  // Monomial quotients are evidence-only; a log is created only when anomalies occur.
  auto log = scratch("anomalies.jsonl");
  fs::remove(log);
  auto r = run({"explore", fixture("explore_hyper.dl"), "--log", log.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_FALSE(fs::exists(log));
  std::vector<AnomalyRecord> recs{{"R", "I", 2, 1, 1, 5, 3, "daolab explore x.dl --seed 5"}};
  report::append_anomaly_log(log.string(), recs);
  report::append_anomaly_log(log.string(), recs);
  std::ifstream in(log);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    auto j = report::Json::parse(line);
    EXPECT_EQ(j["d3"], 2);
    ++n;
  }
  EXPECT_EQ(n, 2);
}
