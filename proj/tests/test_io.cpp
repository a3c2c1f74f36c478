#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "l1embed/io.hpp"
#include "l1embed/oracle.hpp"
#include "support.hpp"

using namespace l1embed;
using l1test::P;
using l1test::S;
namespace fs = std::filesystem;

namespace {

Instance parse(const std::string& text) {
  std::istringstream in(text);
  return read_instance(in);
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("l1embed_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string slurp(const std::string& name) const {
    std::ifstream in(dir_ / name);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  int run(const std::string& args) {
    const std::string cmd = std::string(L1EMBED_CLI) + " " + args + " > " + path("stdout") + " 2> " + path("stderr");
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  }

  fs::path dir_;
};

const char* kSquare = "4\n0 4 6 2\n4 0 2 6\n6 2 0 4\n2 6 4 0\n";

std::string star_text(std::size_t k) {
  std::ostringstream os;
  write_instance(os, star_metric(k));
  return os.str();
}

}  // namespace

TEST(ReadInstance, PlainAndLabeled) {
  const Instance a = parse("# comment\n\n2\n0 1/2\n0.5 0\n");
  EXPECT_FALSE(a.labeled);
  EXPECT_EQ(a.table[0][1], S("1/2"));
  EXPECT_EQ(a.table[1][0], S("1/2"));
  EXPECT_EQ(a.labels, (std::vector<std::string>{"0", "1"}));

  const Instance b = parse("labeled 2\nu 0 3\nv 3 0\n");
  EXPECT_TRUE(b.labeled);
  EXPECT_EQ(b.labels, (std::vector<std::string>{"u", "v"}));
  EXPECT_EQ(parse("labeled\n2\nu 0 3\nv 3 0\n").labels, b.labels);
}

TEST(ReadInstance, ErrorsCarryTheLine) {
  try {
    parse("2\n0 1\n1 x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("2\n0 1\n"), ParseError);
  EXPECT_THROW(parse("2\n0 1 2\n1 0\n"), ParseError);
  EXPECT_THROW(parse("2\n0 1\n1 0\n5\n"), ParseError);
  EXPECT_THROW(parse("labeled 2\nu 0 1\nu 1 0\n"), ParseError);
  EXPECT_THROW(parse("-1\n"), ParseError);
}

TEST(WriteInstance, RoundTrips) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MetricSpace m = random_planar_instance(1 + seed % 9, seed, 7).metric;
    for (bool labeled : {false, true}) {
      std::ostringstream os;
      write_instance(os, m, labeled);
      const Instance back = parse(os.str());
      EXPECT_EQ(back.table, m.table());
      EXPECT_EQ(back.labeled, labeled);
    }
  }
}

TEST(Coordinates, RoundTrip) {
  const Embedding e{P("1/2", "-3"), P(0, 7)};
  std::ostringstream os;
  write_coordinates(os, e, {"a", "b"});
  EXPECT_EQ(os.str(), "a 1/2 -3\nb 0 7\n");
  std::istringstream in(os.str());
  const auto pts = read_coordinates(in);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0].label, "a");
  EXPECT_EQ(pts[0].point, e[0]);
  std::istringstream bad("a 1\n");
  EXPECT_THROW(read_coordinates(bad), ParseError);
}

TEST(ResultJson, ReparsesWithExactStrings) {
  const MetricSpace m = MetricSpace::from_points({P("1/2", "0"), P("3", "-1/3")});
  const EmbedResult r = embed(m);
  const auto doc = nlohmann::json::parse(result_json(r, m, 1.5));
  EXPECT_TRUE(doc["embeddable"].get<bool>());
  ASSERT_EQ(doc["points"].size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    const PlanePoint p{S(doc["points"][i]["x"].get<std::string>().c_str()),
                       S(doc["points"][i]["y"].get<std::string>().c_str())};
    EXPECT_EQ(p, r.points[i]);
  }
  EXPECT_EQ(doc["stats"]["n"].get<int>(), 2);

  const auto no = nlohmann::json::parse(result_json(embed(star_metric(5)), star_metric(5), 0));
  EXPECT_FALSE(no["embeddable"].get<bool>());
}

TEST(RenderSvg, DeterministicWithOneMarkPerPoint) {
  const auto inst = random_planar_instance(9, 3, 20);
  const EmbedResult r = embed(inst.metric);
  ASSERT_TRUE(r.embeddable);
  const std::string a = render_svg(r.points, inst.metric), b = render_svg(r.points, inst.metric);
  EXPECT_EQ(a, b);
  EXPECT_EQ(count(a, "<circle"), 9u);
  EXPECT_NE(a.find("<svg"), std::string::npos);
}

TEST_F(Cli, EmbedExitCodes) {
  EXPECT_EQ(run("embed " + file("sq.txt", kSquare)), 0);
  EXPECT_EQ(nlohmann::json::parse(slurp("stdout"))["points"][2]["x"], "4");
  EXPECT_EQ(run("embed " + file("star.txt", star_text(5))), 1);
  EXPECT_EQ(run("embed " + file("asym.txt", "2\n0 1\n2 0\n")), 2);
  EXPECT_NE(slurp("stderr").find("NotSymmetric"), std::string::npos);
  EXPECT_EQ(run("embed " + file("tri.txt", "3\n0 1 3\n1 0 1\n3 1 0\n")), 2);
  EXPECT_NE(slurp("stderr").find("TriangleViolation"), std::string::npos);
  EXPECT_EQ(run("embed " + path("missing.txt")), 2);
}

TEST_F(Cli, EmbedWritesJsonAndSvg) {
  EXPECT_EQ(run("embed " + file("sq.txt", kSquare) + " --json " + path("out.json") + " --svg " + path("out.svg")), 0);
  EXPECT_TRUE(nlohmann::json::parse(slurp("out.json"))["embeddable"].get<bool>());
  EXPECT_EQ(count(slurp("out.svg"), "<circle"), 4u);
}

TEST_F(Cli, Batch) {
  fs::create_directories(dir_ / "in");
  file("in/a.txt", kSquare);
  file("in/b.txt", star_text(5));
  EXPECT_EQ(run("embed --batch " + path("in")), 0);
  EXPECT_TRUE(fs::exists(dir_ / "in" / "a.txt.json"));
  EXPECT_FALSE(nlohmann::json::parse(slurp("in/b.txt.json"))["embeddable"].get<bool>());
  file("in/c.txt", "2\n0 1\n");
  EXPECT_EQ(run("embed --batch " + path("in")), 2);
}

TEST_F(Cli, Verify) {
  const std::string inst = file("sq.txt", kSquare);
  EXPECT_EQ(run("verify " + inst + " " + file("ok.coords", "0 0 0\n1 4 0\n2 4 2\n3 0 2\n")), 0);
  EXPECT_EQ(run("verify " + inst + " " + file("bad.coords", "0 0 0\n1 4 0\n2 5 2\n3 0 2\n")), 1);
  EXPECT_EQ(run("verify " + inst + " " + file("lab.coords", "0 0 0\n1 4 0\n2 4 2\nq 0 2\n")), 2);
}

TEST_F(Cli, Oracle) {
  EXPECT_EQ(run("oracle " + file("sq.txt", kSquare)), 0);
  EXPECT_EQ(run("oracle " + file("star.txt", star_text(5))), 1);
  EXPECT_EQ(run("oracle " + file("seven.txt", star_text(6))), 2);
}

TEST_F(Cli, GenIsDeterministicAndEmbeds) {
  EXPECT_EQ(run("gen 12 --seed 4 --bound 9 -o " + path("g1.txt")), 0);
  EXPECT_EQ(run("gen 12 --seed 4 --bound 9 -o " + path("g2.txt")), 0);
  EXPECT_EQ(slurp("g1.txt"), slurp("g2.txt"));
  EXPECT_TRUE(fs::exists(dir_ / "g1.txt.coords"));
  EXPECT_EQ(run("verify " + path("g1.txt") + " " + path("g1.txt.coords")), 0);
  EXPECT_EQ(run("embed " + path("g1.txt")), 0);
  EXPECT_EQ(run("gen 5 --seed 1 --perturb 0 1 1/2 -o " + path("p.txt")), 0);
  EXPECT_FALSE(fs::exists(dir_ / "p.txt.coords"));
}
