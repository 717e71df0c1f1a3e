#include "cli_app.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>

using namespace conefaces;
using conefaces::io::json;
using testing_support::int_matrix;
using ratmath::Rational;
using ratmath::RatVector;

namespace {

struct Outcome {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("conefaces_cli_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

int count(const std::string& text, const std::regex& re) {
  return static_cast<int>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

} // namespace

TEST(Parse, TextAndJsonMatrices) {
  EXPECT_EQ(io::parse_matrix("0 1\n0 0\n"), int_matrix({{0, 1}, {0, 0}}));
  auto m = io::parse_matrix(R"({"n": 2, "entries": [["1/3", "0"], ["0.25", "2"]]})");
  EXPECT_EQ(m(0, 0), Rational(1, 3));
  EXPECT_EQ(m(1, 0), Rational(1, 4));
  EXPECT_EQ(io::parse_matrix("\n 0.25 1\n\n 0 0 \n")(0, 0), Rational(1, 4));
}

TEST(Parse, DiagnosticsCarryLocations) {
  auto message = [](const std::string& text) {
    try {
      io::parse_matrix(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message("0 1\n0 0 0\n").find("row 2"), std::string::npos);
  EXPECT_NE(message("0 1\n0 x\n").find("row 2, column 2"), std::string::npos);
  EXPECT_NE(message(R"({"entries": [["0", "1"], ["0", "a"]]})").find("row 2, column 2"), std::string::npos);
  EXPECT_NE(message("0 1 2\n0 0 0\n").find("not square"), std::string::npos);
  EXPECT_THROW(io::parse_matrix(R"({"n": 3, "entries": [["0"]]})"), InputError);
  EXPECT_THROW(io::parse_matrix("{broken"), InputError);
  try {
    io::require_nonnegative(int_matrix({{0, 1}, {-1, 0}}));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2, column 1"), std::string::npos);
  }
}

TEST(Parse, VectorsIndexSetsAndCones) {
  EXPECT_EQ(io::parse_vector("1,1/2,0.5"), (RatVector{Rational(1), Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(io::parse_index_set("3,1", 3), (IndexSet{0, 2}));
  EXPECT_TRUE(io::parse_index_set("", 3).empty());
  EXPECT_THROW(io::parse_index_set("4", 3), InputError);
  EXPECT_THROW(io::parse_index_set("1x", 3), InputError);
  auto K = io::parse_cone(R"({"n": 3, "generators": [["1","0","1"],["-1","0","1"],["0","1","1"],["0","-1","1"]]})");
  EXPECT_EQ(K.facet_count(), 4);
  EXPECT_THROW(io::parse_cone(R"({"n": 2, "generators": [["1"],["0","1"]]})"), InputError);
}

TEST(Cli, ClassesOfExample) {
  auto r = run({"classes", "--fixture", "ex7.3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.report();
  EXPECT_EQ(j["schema_version"], 1);
  std::vector<std::vector<int>> sets;
  for (const auto& c : j["result"]["classes"]) sets.push_back(c["indices"].get<std::vector<int>>());
  EXPECT_EQ(sets, (std::vector<std::vector<int>>{{1}, {2, 3}, {4}}));
  EXPECT_TRUE(j["result"]["classes"][1]["basic"].get<bool>());
}

TEST(Cli, SimpleEigenvectorVerdicts) {
  auto r = run({"check", "--theorem", "7.2", "--lambda", "1", "--fixture", "sec7-3x3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto res = r.report()["result"];
  EXPECT_EQ(res["a"]["value"], true);
  EXPECT_EQ(res["f"]["value"], false);
}

TEST(Cli, SpectralPairOfVector) {
  auto r = run({"spectral-pair", "--vector", "1,1", "--fixture", "sec4-2x2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto sp = r.report()["result"]["spectral_pair"];
  EXPECT_EQ(sp["radius"]["value"], "1");
  EXPECT_EQ(sp["radius"]["exact"], true);
  EXPECT_EQ(sp["order"], 1);
}

TEST(Cli, InexactValuesCarryErrorBounds) {
  auto path = temp_file("golden.txt", "1 1\n1 2\n");
  auto r = run({"classes", "--input", path});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rho = r.report()["result"]["spectral_radius"];
  EXPECT_EQ(rho["exact"], false);
  EXPECT_GT(rho["error_bound"].get<double>(), 0.0);
  EXPECT_NEAR(rho["approx"].get<double>(), (3 + std::sqrt(5.0)) / 2, 1e-10);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"nonsense"}).code, 1);
  EXPECT_EQ(run({"classes", "--bogus-flag"}).code, 1);
  EXPECT_EQ(run({"classes", "--fixture", "no-such"}).code, 1);
  EXPECT_EQ(run({"classes", "--input", temp_file("ragged.txt", "0 1\n0\n")}).code, 1);
  EXPECT_EQ(run({"classes", "--input", temp_file("negative.txt", "0 -1\n0 0\n")}).code, 1);
  auto irr = temp_file("irrational.txt", "1 1\n1 2\n");
  EXPECT_EQ(run({"check", "--theorem", "6.1", "--input", irr}).code, 2);
  EXPECT_EQ(run({"nonneg-basis", "--lambda", "rho", "--input", irr}).code, 2);
  EXPECT_EQ(run({"faces", "--fixture", "sec7-3x3", "--cap", "3"}).code, 3);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DeterministicAndRoundTrip) {
  for (const auto& f : fixtures::all()) {
    std::vector<std::string> args{"faces", "--fixture", f.name};
    auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    auto echoed = a.report()["input"]["matrix"].dump();
    EXPECT_EQ(io::parse_matrix(echoed), f.matrix);
  }
}

TEST(Cli, DotDiagrams) {
  const std::regex node(R"(f\d+ \[label)"), edge(R"(f\d+ -> f\d+)");
  auto path = run({"dot", "--what", "faces", "--fixture", "ex7.3"});
  ASSERT_EQ(path.code, 0) << path.err;
  EXPECT_EQ(count(path.out, node), 4);
  EXPECT_EQ(count(path.out, edge), 3);

  auto diamond = run({"dot", "--what", "faces", "--fixture", "sec7-3x3"});
  EXPECT_EQ(count(diamond.out, node), 5);
  EXPECT_EQ(count(diamond.out, edge), 5);

  auto tiny = run({"dot", "--what", "faces", "--input", temp_file("zero.txt", "0\n")});
  EXPECT_EQ(count(tiny.out, node), 2);

  auto cls = run({"classes", "--fixture", "ex7.3", "--format", "dot"});
  EXPECT_NE(cls.out.find("[B]"), std::string::npos);
  EXPECT_EQ(count(cls.out, std::regex(R"(c\d+ -> c\d+)")), 2);
}

TEST(Cli, ConeCommands) {
  auto cone = temp_file("square.json",
                        R"({"n": 3, "generators": [["1","0","1"],["-1","0","1"],["0","1","1"],["0","-1","1"]]})");
  auto id = temp_file("identity3.txt", "1 0 0\n0 1 0\n0 0 1\n");
  auto faces = run({"faces", "--input", id, "--cone", cone});
  ASSERT_EQ(faces.code, 0) << faces.err;
  EXPECT_EQ(faces.report()["result"]["faces"].size(), 10u);
  EXPECT_EQ(run({"classes", "--input", id, "--cone", cone}).code, 1);

  auto chain = run({"rothblum-chain", "--lambda", "0", "--fixture", "sec7-4x4-nilpotent"});
  ASSERT_EQ(chain.code, 0) << chain.err;
  EXPECT_EQ(chain.report()["result"]["m_lambda"], 3);
  EXPECT_EQ(chain.report()["result"]["chain"].size(), 3u);

  auto rank1 = run({"rank-one", "--y", "1,0", "--z", "0,1"});
  ASSERT_EQ(rank1.code, 0) << rank1.err;
  auto res = rank1.report()["result"];
  EXPECT_TRUE(res["a"].get<bool>() && res["b"].get<bool>() && res["c"].get<bool>());

  auto dual = run({"check", "--theorem", "6.1", "--input", temp_file("jordan.txt", "0 1\n0 0\n")});
  ASSERT_EQ(dual.code, 0) << dual.err;
  EXPECT_EQ(dual.report()["result"]["a"], true);
}

TEST(Cli, RemainingCommandsRun) {
  const std::vector<std::vector<std::string>> commands{
      {"initial-subsets", "--fixture", "sec7-3x3"},
      {"classify", "--face", "1,2", "--fixture", "sec7-3x3"},
      {"spectral-pair", "--face", "2", "--fixture", "sec7-3x3"},
      {"frobenius-victory", "--class", "1", "--fixture", "sec7-3x3"},
      {"frobenius-victory", "--lambda", "1", "--mode", "numeric", "--fixture", "sec7-3x3"},
      {"nonneg-basis", "--lambda", "0", "--fixture", "sec7-4x4-nilpotent"},
      {"sublevel", "--lambda", "1", "--k", "1", "--fixture", "ex7.3"},
      {"sublevel", "--lambda", "1", "--k", "0", "--fixture", "ex7.3"},
      {"m-lambda", "--lambda", "0", "--fixture", "ex7.3"},
      {"check", "--theorem", "7.1", "--lambda", "0", "--fixture", "ex7.3"},
      {"check", "--theorem", "6.4", "--fixture", "sec7-3x3"},
      {"check", "--theorem", "B", "--fixture", "ex7.3"},
      {"check", "--theorem", "C", "--fixture", "ex7.3"},
      {"fixture", "--name", "sec4-2x2"},
      {"classes", "--fixture", "sec4-2x2", "--format", "text"},
  };
  for (const auto& c : commands) {
    auto r = run(c);
    EXPECT_EQ(r.code, 0) << c[0] << ": " << r.err;
  }
  auto init = run({"initial-subsets", "--fixture", "sec7-3x3"});
  EXPECT_EQ(init.report()["result"]["count"], 5);
  auto strict = run({"sublevel", "--lambda", "1", "--k", "0", "--fixture", "ex7.3"});
  EXPECT_EQ(strict.report()["result"]["face"], json::parse("[4]"));
  auto c = run({"check", "--theorem", "C", "--fixture", "sec7-4x4-nilpotent"});
  EXPECT_EQ(c.report()["result"]["agree"], true);
  EXPECT_EQ(c.report()["result"]["index"], 3);
}
