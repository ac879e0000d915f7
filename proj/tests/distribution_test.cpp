#include "ldp/distribution.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "ldp/builders.hpp"
#include "ldp/errors.hpp"
#include "support/testutil.hpp"

namespace ldp {
namespace {

LayeredDistribution purest_toy_distribution(double eps) {
  const auto toy = test::toy_line();
  const InitialValues init = build_purest(toy.query, *toy.spaces);
  return LayeredDistribution(reconstruct(init, *toy.spaces, eps), toy.spaces);
}

TEST(LayeredDistribution, FrozenGeometricWeights) {
  const LayeredDistribution dist = purest_toy_distribution(std::log(2.0));
  EXPECT_NEAR(dist.alpha(0), 1.875, 1e-15);  // 1 + 1/2 + 1/4 + 1/8
  EXPECT_NEAR(dist.weight(0, 0), 8 / 15.0, 1e-15);
  EXPECT_NEAR(dist.weight(0, 1), 4 / 15.0, 1e-15);
  EXPECT_NEAR(dist.weight(0, 2), 2 / 15.0, 1e-15);
  EXPECT_NEAR(dist.weight(0, 3), 1 / 15.0, 1e-15);
  double total = 0.0;
  for (int r = 0; r < 4; ++r) total += dist.weight(2, r);
  EXPECT_NEAR(total, 1.0, 1e-15);
}

TEST(LayeredDistribution, RejectsNonPartition) {
  const auto toy = test::toy_line();
  LayerSequence seq =
      reconstruct(build_purest(toy.query, *toy.spaces), *toy.spaces, 1.0);
  seq.layers[0][1].reset(1);
  EXPECT_THROW(LayeredDistribution(seq, toy.spaces), ConstraintError);
}

TEST(ExpectedDistortion, FrozenLineValues) {
  const LayeredDistribution dist = purest_toy_distribution(std::log(2.0));
  const auto toy = test::toy_line();
  // (0*8 + 1*4 + 2*2 + 3*1)/15 = 11/15.
  EXPECT_NEAR(expected_distortion(dist, 0, toy.query), 11 / 15.0, 1e-15);
  EXPECT_NEAR(expected_distortion(dist, 1, toy.query), 10 / 15.0, 1e-15);
  EXPECT_NEAR(expected_utility(dist, toy.query, Prior::uniform(4)), 0.7, 1e-15);
}

TEST(ExpectedDistortion, DensityPathAgrees) {
  const LayeredDistribution dist = purest_toy_distribution(0.8);
  const auto toy = test::toy_line();
  DensityTable p(4, std::vector<double>(4, 0.0));
  for (int x = 0; x < 4; ++x)
    for (int r = 0; r < 4; ++r) p[x][r] = dist.weight(x, r);
  for (int x = 0; x < 4; ++x)
    EXPECT_NEAR(expected_distortion(dist, x, toy.query),
                expected_distortion_density(p, *toy.spaces, x, toy.query), 1e-14);
}

TEST(Sampling, DeterministicPerSeedAndDataset) {
  const LayeredDistribution dist = purest_toy_distribution(std::log(2.0));
  for (int x = 0; x < 4; ++x) {
    EXPECT_DOUBLE_EQ(sample(dist, x, 99), sample(dist, x, 99));
  }
  // Streams for different datasets under one seed are not the same stream.
  bool any_difference = false;
  for (std::uint64_t seed = 0; seed < 16 && !any_difference; ++seed)
    any_difference = sample(dist, 0, seed) != sample(dist, 3, seed);
  EXPECT_TRUE(any_difference);
}

TEST(Sampling, FrequenciesMatchWeights) {
  const LayeredDistribution dist = purest_toy_distribution(std::log(2.0));
  const int draws = 60000;
  std::map<double, int> freq;
  for (int i = 0; i < draws; ++i)
    ++freq[sample(dist, 0, 1000 + static_cast<std::uint64_t>(i))];
  const double expected[4] = {8 / 15.0, 4 / 15.0, 2 / 15.0, 1 / 15.0};
  double chi2 = 0.0;
  for (int r = 0; r < 4; ++r) {
    const double e = expected[r] * draws;
    const double o = freq[static_cast<double>(r)];
    chi2 += (o - e) * (o - e) / e;
    EXPECT_NEAR(o, e, 3.0 * std::sqrt(e * (1.0 - expected[r])) + 1.0)
        << "value " << r;
  }
  // 3 degrees of freedom; 16.27 is the 0.1% quantile.
  EXPECT_LT(chi2, 16.27);
}

TEST(Prior, ValidatesWeights) {
  EXPECT_THROW(Prior({0.5, 0.6}), InputError);
  EXPECT_THROW(Prior({-0.1, 1.1}), InputError);
  EXPECT_THROW(Prior::uniform(0), InputError);
  const Prior p = Prior::uniform(5);
  EXPECT_DOUBLE_EQ(p(3), 0.2);
}

TEST(Pareto, AllVerdicts) {
  EXPECT_EQ(pareto_compare({1, 2}, {1, 2}), ParetoVerdict::equal);
  EXPECT_EQ(pareto_compare({1, 2}, {1, 2 + 1e-13}), ParetoVerdict::equal);
  EXPECT_EQ(pareto_compare({1, 1.5}, {1, 2}), ParetoVerdict::dominates);
  EXPECT_EQ(pareto_compare({1, 2.5}, {1, 2}), ParetoVerdict::dominated);
  EXPECT_EQ(pareto_compare({0, 3}, {1, 2}), ParetoVerdict::incomparable);
  EXPECT_THROW(pareto_compare({1}, {1, 2}), InputError);
}

}  // namespace
}  // namespace ldp
