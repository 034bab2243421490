#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "revpeb/io.hpp"

using namespace revpeb;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("revpeb_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Outcome run(const std::string& args) const {
    const std::string cmd = "cd '" + dir_.string() + "' && " + REVPEB_CLI + " " + args + " 2>/dev/null";
    Outcome r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  std::vector<std::vector<std::string>> csv(const std::string& text) const {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      std::vector<std::string> cells;
      std::string cell;
      std::istringstream ls(line);
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      if (!line.empty() && line.back() == ',') cells.emplace_back();
      rows.push_back(cells);
    }
    return rows;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenPyramidDimacs) {
  Outcome r = run("gen --family pyramid --height 2 --dimacs");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "p cnf 6 7\n1 0\n2 0\n3 0\n-1 -2 4 0\n-2 -3 5 0\n-4 -5 6 0\n-6 0\n");

  Outcome both = run("gen --family pyramid --height 2 --out pyr2.json --dimacs pyr2.cnf");
  EXPECT_EQ(both.code, 0);
  EXPECT_EQ(read_file(path("pyr2.cnf")), r.out);
  EXPECT_EQ(load_graph(path("pyr2.json")).size(), 6u);
}

TEST_F(Cli, GenFamilies) {
  Outcome br = run("gen --family bit-reversal --n 16");
  ASSERT_EQ(br.code, 0);
  EXPECT_EQ(graph_from_json(parse_json(br.out, "stdout")).size(), 32u);

  Outcome cs = run("gen --family cs --c 2 --r 2 --single-sink 1");
  ASSERT_EQ(cs.code, 0);
  EXPECT_EQ(graph_from_json(parse_json(cs.out, "stdout")).size(), 14u);

  Outcome full = run("gen --family cs --c 2 --r 2");
  ASSERT_EQ(full.code, 0);
  EXPECT_EQ(graph_from_json(parse_json(full.out, "stdout")).size(), 18u);
}

TEST_F(Cli, InvalidInput) {
  EXPECT_EQ(run("gen --family pyramid --bogus 3").code, 1);
  EXPECT_EQ(run("gen --family circle").code, 1);
  EXPECT_EQ(run("gen --family bit-reversal --n 6").code, 1);
  EXPECT_EQ(run("gen --family cs --c 2 --r 2 --single-sink 3").code, 1);
  EXPECT_EQ(run("solve missing.json").code, 1);
  EXPECT_EQ(run("").code, 1);
}

TEST_F(Cli, SolveMinSpace) {
  ASSERT_EQ(run("gen --family line --n 3 --out line3.json").code, 0);
  Outcome r = run("solve --game reversible --mode min-space line3.json --witness w.json");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("space 2\n", 0), 0u) << r.out;
  Dag g = load_graph(path("line3.json"));
  EXPECT_EQ(verify_strategy(g, strategy_from_json(g, parse_json(read_file(path("w.json")), "w"))).space, 2u);

  ASSERT_EQ(run("gen --family cs --c 2 --r 1 --single-sink 1 --out cs21.json").code, 0);
  Outcome s = run("solve --game standard --mode min-space cs21.json");
  EXPECT_EQ(s.out.rfind("space 3\n", 0), 0u) << s.out;
}

TEST_F(Cli, SolveInfeasibleAndTooLarge) {
  ASSERT_EQ(run("gen --family line --n 3 --out line3.json").code, 0);
  EXPECT_EQ(run("solve --mode min-time --space 1 line3.json").code, 2);
  EXPECT_EQ(run("solve --mode min-time line3.json").code, 1);
  EXPECT_EQ(run("--state-budget 2 solve --mode min-space line3.json").code, 2);
  ASSERT_EQ(run("gen --family line --n 70 --out line70.json").code, 0);
  EXPECT_EQ(run("solve line70.json").code, 2);
}

TEST_F(Cli, SolvePareto) {
  ASSERT_EQ(run("gen --family pyramid --height 2 --out pyr2.json").code, 0);
  Outcome r = run("solve --mode pareto --smax 6 pyr2.json");
  ASSERT_EQ(r.code, 0);
  auto rows = csv(r.out);
  ASSERT_GE(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"space", "time", "witness_file"}));
  Dag g = load_graph(path("pyr2.json"));
  std::size_t prev = SIZE_MAX;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::size_t t = std::stoul(rows[i][1]);
    EXPECT_LE(t, prev);
    prev = t;
    auto m = verify_strategy(g, strategy_from_json(g, parse_json(read_file(path(rows[i][2])), "w")));
    EXPECT_EQ(m.time, t);
    EXPECT_LE(m.space, std::stoul(rows[i][0]));
  }
}

TEST_F(Cli, CertificatePipeline) {
  ASSERT_EQ(run("gen --family line --n 2 --out line2.json").code, 0);
  ASSERT_EQ(run("solve --mode min-time --space 2 line2.json --witness strat.json").code, 0);
  Outcome c = run("cert compile --field 2 line2.json strat.json --out cert.json");
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out, "size 5\ndegree 2\n");

  Outcome v = run("cert verify --field 5 line2.json cert.json");
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, "field F5\nvalid true\nsize 5\ndegree 2\n");

  Outcome e = run("cert extract line2.json cert.json --out back.json");
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.out, "time 4\nspace 2\n");
  Dag g = load_graph(path("line2.json"));
  EXPECT_EQ(verify_strategy(g, strategy_from_json(g, parse_json(read_file(path("back.json")), "b"))).time, 4u);

  Outcome m = run("cert multilinearize line2.json cert.json --out ml.json");
  EXPECT_EQ(m.code, 0);
  EXPECT_EQ(m.out, "size 5\ndegree 2\n");
  EXPECT_EQ(run("cert verify line2.json ml.json").code, 0);
}

TEST_F(Cli, CertificateErrors) {
  ASSERT_EQ(run("gen --family line --n 2 --out line2.json").code, 0);
  write_file(path("bad.json"),
             R"({"field":{"prime":3},"mode":"multilinear","multipliers":[{"axiom":"vertex:v1","poly":[{"coeff":"1","vars":[]}]}]})");
  Outcome v = run("cert verify line2.json bad.json");
  EXPECT_EQ(v.code, 1);
  EXPECT_NE(v.out.find("valid false"), std::string::npos);
  EXPECT_EQ(run("cert extract line2.json bad.json").code, 1);
  EXPECT_EQ(run("cert multilinearize line2.json bad.json").code, 1);
  write_file(path("s.json"), R"({"moves":[{"op":"place","v":"v2"}]})");
  EXPECT_EQ(run("cert compile line2.json s.json").code, 1);
  EXPECT_EQ(run("cert verify --field 4 line2.json bad.json").code, 1);
}

TEST_F(Cli, TradeoffCarlsonSavage) {
  Outcome r = run("tradeoff --family cs --c 4 --r 1 --game standard");
  ASSERT_EQ(r.code, 0);
  auto rows = csv(r.out);
  ASSERT_GE(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"space", "optimal_time", "theorem_bound", "strategy_upper_time",
                                               "cert_size", "cert_degree"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 6u);
    if (!rows[i][2].empty()) {
      EXPECT_GE(std::stoul(rows[i][1]), std::stoul(rows[i][2]));
    }
    EXPECT_TRUE(rows[i][4].empty());
  }
}

TEST_F(Cli, TradeoffBitReversalCertColumns) {
  Outcome r = run("tradeoff --family bit-reversal --n 8 --game reversible");
  ASSERT_EQ(r.code, 0);
  auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(std::stoul(rows[i][4]), std::stoul(rows[i][1]) + 1);
    EXPECT_EQ(rows[i][5], rows[i][0]);
    if (!rows[i][3].empty()) {
      EXPECT_GE(std::stoul(rows[i][3]), std::stoul(rows[i][1]));
    }
  }
}

TEST_F(Cli, TradeoffLineStartsAtClosedForm) {
  Outcome r = run("tradeoff --family line --n 9");
  ASSERT_EQ(r.code, 0);
  auto rows = csv(r.out);
  ASSERT_GE(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "4");
}
