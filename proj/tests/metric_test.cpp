#include "ldp/metric.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "ldp/errors.hpp"
#include "support/testutil.hpp"

namespace ldp {
namespace {

TEST(BandIndex, BoundaryClassification) {
  EXPECT_EQ(band_index(0.0), 0);
  EXPECT_EQ(band_index(1e-12), 0);
  EXPECT_EQ(band_index(1e-11), 1);
  EXPECT_EQ(band_index(0.5), 1);
  EXPECT_EQ(band_index(1.0), 1);
  EXPECT_EQ(band_index(1.0 + 5e-13), 1);  // within the boundary tolerance
  EXPECT_EQ(band_index(1.1), 2);
  EXPECT_EQ(band_index(2.0), 2);
  EXPECT_EQ(band_index(7.3), 8);
}

TEST(DatasetSpace, RejectsInvalidMetrics) {
  const std::vector<std::string> ids{"a", "b"};
  EXPECT_THROW(DatasetSpace(ids, {0, 1, 2, 0}), ConstraintError);      // asymmetric
  EXPECT_THROW(DatasetSpace(ids, {1, 1, 1, 0}), ConstraintError);      // diagonal
  EXPECT_THROW(DatasetSpace(ids, {0, -1, -1, 0}), ConstraintError);    // negative
  EXPECT_THROW(DatasetSpace(ids, {0, 0, 0, 0}), ConstraintError);      // indiscrete
  EXPECT_THROW(DatasetSpace({"a", "a"}, {0, 1, 1, 0}), ConstraintError);
  EXPECT_THROW(
      DatasetSpace({"a", "b", "c"}, {0, 1, 5, 1, 0, 1, 5, 1, 0}),
      ConstraintError);  // 5 > 1 + 1
}

TEST(DatasetSpace, IndexAndDistances) {
  const auto toy = test::toy_line();
  const DatasetSpace& d = toy.spaces->datasets;
  EXPECT_EQ(d.size(), 4);
  EXPECT_EQ(d.index_of("2"), 2);
  EXPECT_EQ(d.index_of("missing"), -1);
  EXPECT_DOUBLE_EQ(d.dist(0, 3), 3.0);
  EXPECT_DOUBLE_EQ(d.dist(3, 0), 3.0);
}

TEST(DatasetSpace, GeodesicProperty) {
  EXPECT_TRUE(test::toy_line().spaces->datasets.geodesic_property());
  const DatasetSpace gap({"a", "b"}, {0, 2.5, 2.5, 0});
  EXPECT_FALSE(gap.geodesic_property());
}

TEST(ValueSpace, IndexLookup) {
  const ValueSpace v({0.0, 1.5, 10.0});
  EXPECT_EQ(v.index_of(1.5), 1);
  EXPECT_EQ(v.index_of(1.5 + 1e-10), 1);
  EXPECT_EQ(v.index_of(2.0), -1);
  EXPECT_DOUBLE_EQ(v.dist(0, 2), 10.0);
  EXPECT_THROW(ValueSpace({1.0, 1.0}), ConstraintError);
  EXPECT_THROW(ValueSpace({}), ConstraintError);
}

TEST(QueryFunction, ValidatesShape) {
  const auto toy = test::toy_line();
  EXPECT_THROW(QueryFunction({0, 1}, *toy.spaces), ConstraintError);
  EXPECT_THROW(QueryFunction({0, 1, 2, 9}, *toy.spaces), ConstraintError);
  const QueryFunction f({3, 2, 1, 0}, *toy.spaces);
  EXPECT_EQ(f(0), 3);
}

TEST(Neighborhoods, BandsAndBalls) {
  const auto toy = test::toy_line();
  EXPECT_EQ(neighborhood_band(*toy.spaces, 0, 0), (std::vector<int>{0}));
  EXPECT_EQ(neighborhood_band(*toy.spaces, 0, 1), (std::vector<int>{1}));
  EXPECT_EQ(neighborhood_band(*toy.spaces, 2, 1), (std::vector<int>{1, 3}));
  EXPECT_EQ(neighborhood_band(*toy.spaces, 0, 3), (std::vector<int>{3}));
  EXPECT_EQ(closed_ball(*toy.spaces, 1, 1), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(closed_ball(*toy.spaces, 0, 3), (std::vector<int>{0, 1, 2, 3}));
}

TEST(Neighborhoods, BallIsUnionOfBands) {
  const auto toy = test::toy_line();
  for (int x = 0; x < 4; ++x)
    for (int i = 0; i <= 3; ++i) {
      std::vector<int> from_bands;
      for (int j = 0; j <= i; ++j)
        for (int y : neighborhood_band(*toy.spaces, x, j)) from_bands.push_back(y);
      std::sort(from_bands.begin(), from_bands.end());
      EXPECT_EQ(closed_ball(*toy.spaces, x, i), from_bands);
    }
}

TEST(Sensitivity, LineValues) {
  const auto toy = test::toy_line();
  EXPECT_DOUBLE_EQ(global_sensitivity(toy.query, *toy.spaces), 1.0);
  EXPECT_DOUBLE_EQ(local_sensitivity(toy.query, *toy.spaces, 0), 1.0);
  const auto skewed = test::make_query_space(
      {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, {0, 5, 6}, {0, 5, 6});
  EXPECT_DOUBLE_EQ(global_sensitivity(skewed.query, *skewed.spaces), 5.0);
  EXPECT_DOUBLE_EQ(local_sensitivity(skewed.query, *skewed.spaces, 0), 5.0);
  EXPECT_DOUBLE_EQ(local_sensitivity(skewed.query, *skewed.spaces, 2), 1.0);
}

TEST(Sensitivity, IsolatedUniverseRefused) {
  const auto gap = test::make_query_space({{0, 2.5}, {2.5, 0}}, {0, 1}, {0, 1});
  EXPECT_THROW(global_sensitivity(gap.query, *gap.spaces), ConstraintError);
  EXPECT_DOUBLE_EQ(local_sensitivity(gap.query, *gap.spaces, 0), 0.0);
}

TEST(Monotonicity, IdentityOnLineIsMonotonic) {
  const auto toy = test::toy_line();
  EXPECT_TRUE(is_strictly_monotonic(toy.query, *toy.spaces));
}

TEST(Monotonicity, ViolationProducesWitness) {
  // f crosses back: d(0,1) < d(0,2) but |f(0)-f(1)| > |f(0)-f(2)|.
  const auto qs = test::make_query_space(
      {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, {0, 1, 5}, {0, 5, 1});
  std::optional<std::array<int, 3>> w;
  EXPECT_FALSE(is_strictly_monotonic(qs.query, *qs.spaces, &w));
  ASSERT_TRUE(w.has_value());
  const auto [x, y, z] = *w;
  EXPECT_LT(qs.spaces->datasets.dist(x, y), qs.spaces->datasets.dist(x, z));
  EXPECT_GE(qs.spaces->values.dist(qs.query(x), qs.query(y)),
            qs.spaces->values.dist(qs.query(x), qs.query(z)));
}

}  // namespace
}  // namespace ldp
