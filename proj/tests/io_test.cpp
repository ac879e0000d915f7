#include "ldp/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "ldp/builders.hpp"
#include "ldp/errors.hpp"
#include "support/testutil.hpp"

namespace ldp {
namespace {

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("ldp_io_" + std::to_string(::testing::UnitTest::GetInstance()
                                           ->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()
                      ->current_test_info()
                      ->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    const std::string p = path(name);
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }

  std::filesystem::path dir_;
};

const char* kFiniteSpace = R"({
  "kind": "finite",
  "elements": ["0", "1", "2", "3"],
  "dataset_metric": {"type": "abs-diff"},
  "query": {"values": {"0": 0, "1": 1, "2": 2, "3": 3}},
  "value_metric": "abs-diff"
})";

TEST_F(IoTest, LoadsFiniteSpaces) {
  const std::string p = write("space.json", kFiniteSpace);
  EXPECT_EQ(probe_space_file(p), SpaceFileKind::finite);
  const LoadedSpace ls = load_space_file(p);
  EXPECT_EQ(ls.spaces->datasets.size(), 4);
  EXPECT_DOUBLE_EQ(ls.spaces->datasets.dist(0, 3), 3.0);
  EXPECT_EQ(ls.spaces->values.size(), 4);
  EXPECT_EQ(ls.query(2), 2);
}

TEST_F(IoTest, LoadsExplicitMatrixSpaces) {
  const std::string p = write("m.json", R"({
    "kind": "finite",
    "elements": ["a", "b"],
    "dataset_metric": {"type": "matrix", "matrix": [[0, 2], [2, 0]]},
    "query": {"values": {"a": 1.5, "b": 4}},
    "value_metric": "abs-diff"
  })");
  const LoadedSpace ls = load_space_file(p);
  EXPECT_DOUBLE_EQ(ls.spaces->datasets.dist(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(ls.spaces->values.point(ls.query(0)), 1.5);
}

TEST_F(IoTest, RejectsMalformedSpaces) {
  EXPECT_THROW(load_space_file(path("absent.json")), InputError);
  EXPECT_THROW(load_space_file(write("t.json", "{ not json")), InputError);
  EXPECT_THROW(load_space_file(write("u.json", R"({"x": 1})")), InputError);
  EXPECT_THROW(load_space_file(write("v.json", R"({
    "kind": "finite", "elements": [],
    "dataset_metric": {"type": "abs-diff"},
    "query": {"values": {}}, "value_metric": "abs-diff"
  })")),
               InputError);
  EXPECT_THROW(load_space_file(write("w.json", R"({
    "kind": "finite", "elements": ["0", "1"],
    "dataset_metric": {"type": "abs-diff"},
    "query": {"values": {"0": 0, "oops": 1}}, "value_metric": "abs-diff"
  })")),
               InputError);
  EXPECT_THROW(load_space_file(write("x.json", R"({
    "kind": "finite", "elements": ["0", "1"],
    "dataset_metric": {"type": "abs-diff"},
    "query": {"values": {"0": 0, "1": 1}}, "value_metric": "euclid"
  })")),
               InputError);
  // Metric violations inside a well-formed file still mean bad input.
  EXPECT_THROW(load_space_file(write("y.json", R"({
    "kind": "finite", "elements": ["a", "b"],
    "dataset_metric": {"type": "matrix", "matrix": [[0, 1], [2, 0]]},
    "query": {"values": {"a": 0, "b": 1}}, "value_metric": "abs-diff"
  })")),
               InputError);
  // Ids must parse as numbers under the abs-diff dataset metric.
  EXPECT_THROW(load_space_file(write("z.json", R"({
    "kind": "finite", "elements": ["a", "b"],
    "dataset_metric": {"type": "abs-diff"},
    "query": {"values": {"a": 0, "b": 1}}, "value_metric": "abs-diff"
  })")),
               InputError);
}

TEST_F(IoTest, GraphCacheRoundTrip) {
  const GraphUniverse u = enumerate_graphs(4);
  const std::string p = path("g4.json");
  save_graph_cache(p, u);
  EXPECT_EQ(probe_space_file(p), SpaceFileKind::graph_cache);
  const GraphUniverse back = load_graph_cache_file(p);
  ASSERT_EQ(back.size(), u.size());
  for (int i = 0; i < u.size(); ++i) {
    EXPECT_EQ(back.classes[i].edges, u.classes[i].edges);
    EXPECT_EQ(back.classes[i].triangles, u.classes[i].triangles);
  }
  EXPECT_EQ(back.dist, u.dist);
  const LoadedSpace ls = load_space_file(p);
  EXPECT_EQ(ls.spaces->datasets.size(), 11);
}

TEST_F(IoTest, GraphCacheValidation) {
  const GraphUniverse u = enumerate_graphs(4);
  const std::string p = path("g4.json");
  save_graph_cache(p, u);
  std::string text = slurp(p);

  // Corrupt a cached triangle count.
  const std::string good = "\"triangles\": 4";
  const auto pos = text.find(good);
  ASSERT_NE(pos, std::string::npos);
  std::string bad = text;
  bad.replace(pos, good.size(), "\"triangles\": 40");
  EXPECT_THROW(load_graph_cache_file(write("bad.json", bad)), InputError);

  EXPECT_THROW(load_graph_cache_file(write("huge.json", R"({
    "n": 9, "classes": [{"edges": [], "triangles": 0}], "dist": [[0]]
  })")),
               CapacityError);
}

TEST_F(IoTest, MechanismRoundTrip) {
  const auto toy = test::toy_line();
  InitialValues init = build_purest(toy.query, *toy.spaces);
  init.extras[1] = {{2, test::set_of({3}, 4)}};
  const std::string p = path("mech.json");
  save_mechanism_file(p, init, 0.75, *toy.spaces);
  const MechanismFile back = load_mechanism_file(p, *toy.spaces);
  EXPECT_DOUBLE_EQ(back.epsilon, 0.75);
  EXPECT_EQ(back.init.layer0, init.layer0);
  ASSERT_EQ(back.init.extras[1].size(), 1u);
  EXPECT_EQ(back.init.extras[1][0].first, 2);
  EXPECT_EQ(back.init.extras[1][0].second, init.extras[1][0].second);
}

TEST_F(IoTest, MechanismValidation) {
  const auto toy = test::toy_line();
  EXPECT_THROW(load_mechanism_file(write("a.json", R"({
    "epsilon": 0, "initial": {}
  })"),
                                   *toy.spaces),
               InputError);
  EXPECT_THROW(load_mechanism_file(write("b.json", R"({
    "epsilon": 1,
    "initial": {"0": {"layer0": [0]}, "1": {"layer0": [1]}, "2": {"layer0": [2]}}
  })"),
                                   *toy.spaces),
               InputError);  // dataset "3" missing
  EXPECT_THROW(load_mechanism_file(write("c.json", R"({
    "epsilon": 1,
    "initial": {"0": {"layer0": [9]}, "1": {"layer0": [1]},
                "2": {"layer0": [2]}, "3": {"layer0": [3]}}
  })"),
                                   *toy.spaces),
               InputError);  // 9 outside the support
}

TEST_F(IoTest, LinearSpecFile) {
  const std::string p = write("lin.json", R"({
    "V": [[0, 1], [10, 11]], "delta": 2.5, "epsilon": 1.25
  })");
  EXPECT_EQ(probe_space_file(p), SpaceFileKind::linear);
  const LinearSpecFile f = load_linear_spec_file(p);
  EXPECT_DOUBLE_EQ(f.spec.delta_f, 11.0);
  EXPECT_DOUBLE_EQ(f.delta, 2.5);
  EXPECT_DOUBLE_EQ(f.epsilon, 1.25);
  EXPECT_THROW(load_linear_spec_file(write("neg.json", R"({
    "V": [[-1, 1]], "delta": 0, "epsilon": 1
  })")),
               InputError);
  EXPECT_THROW(load_linear_spec_file(write("gap.json", R"({
    "V": [[1, 2]], "delta": 0, "epsilon": 1
  })")),
               InputError);
}

TEST_F(IoTest, ReportSerialization) {
  CheckReport finite_rep;
  finite_rep.check = "example";
  finite_rep.pass = true;
  finite_rep.epsilon_effective = 0.5;
  finite_rep.margin = 0.1;
  finite_rep.witness = {0, 1, 2, "detail text"};
  CheckReport infinite_rep;
  infinite_rep.check = "unbounded";
  infinite_rep.epsilon_effective = std::numeric_limits<double>::infinity();
  const auto toy = test::toy_line();
  const std::string p = path("report.json");
  save_reports(p, {finite_rep, infinite_rep}, toy.spaces.get());
  const std::string text = slurp(p);
  EXPECT_NE(text.find("\"example\""), std::string::npos);
  EXPECT_NE(text.find("detail text"), std::string::npos);
  // Nonfinite ratios serialize as null, keeping the file valid JSON.
  EXPECT_NE(text.find("\"epsilon_effective\": null"), std::string::npos);
  EXPECT_EQ(text.find("inf"), std::string::npos);
}

TEST_F(IoTest, NumberFormattingIsStable) {
  EXPECT_EQ(format_number(0.7333333333333333), "0.733333333333");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(-3.0), "-3");
  EXPECT_EQ(format_number(1e-15), "1e-15");
}

TEST_F(IoTest, DeterministicBytes) {
  const auto toy = test::toy_line();
  const InitialValues init = build_purest(toy.query, *toy.spaces);
  const std::string p1 = path("m1.json");
  const std::string p2 = path("m2.json");
  save_mechanism_file(p1, init, 1.0, *toy.spaces);
  save_mechanism_file(p2, init, 1.0, *toy.spaces);
  EXPECT_EQ(slurp(p1), slurp(p2));

  const GraphUniverse u = enumerate_graphs(4);
  const std::string g1 = path("g1.json");
  const std::string g2 = path("g2.json");
  save_graph_cache(g1, u);
  save_graph_cache(g2, u);
  EXPECT_EQ(slurp(g1), slurp(g2));

  const std::string c1 = path("c1.csv");
  const std::string c2 = path("c2.csv");
  write_csv(c1, "a,b", {{"1", "2"}, {"3", "4"}});
  write_csv(c2, "a,b", {{"1", "2"}, {"3", "4"}});
  EXPECT_EQ(slurp(c1), slurp(c2));
  EXPECT_EQ(slurp(c1), "a,b\n1,2\n3,4\n");
}

}  // namespace
}  // namespace ldp
