#ifndef LDP_DISTRIBUTION_HPP
#define LDP_DISTRIBUTION_HPP

#include <cstdint>
#include <vector>

#include "ldp/layer.hpp"
#include "ldp/metric.hpp"

namespace ldp {

// Normalized per-dataset weights exp(-i*eps)/alpha_x derived from a layer
// sequence over a finite value support.
class LayeredDistribution {
 public:
  LayeredDistribution(LayerSequence seq, SpacePtr spaces);

  const LayerSequence& sequence() const { return seq_; }
  const SpacePair& spaces() const { return *spaces_; }
  SpacePtr spaces_ptr() const { return spaces_; }
  double epsilon() const { return seq_.epsilon; }
  double alpha(int x) const { return alpha_[x]; }

  // exp(-layer_of(x,r)*eps)/alpha_x.
  double weight(int x, int r) const;

 private:
  LayerSequence seq_;
  SpacePtr spaces_;
  std::vector<double> alpha_;
};

LayeredDistribution to_distribution(LayerSequence seq, SpacePtr spaces);

// Deterministic draw from dataset x's distribution. The stream is derived
// from (seed, x), so the same pair always yields the same value.
double sample(const LayeredDistribution& dist, int x, std::uint64_t seed);

// Expected distance from f(x) to the output at dataset x, summed layer by
// layer in canonical order.
double expected_distortion(const LayeredDistribution& dist, int x,
                           const QueryFunction& f);

// Same expectation taken directly against a raw density table.
double expected_distortion_density(const DensityTable& p, const SpacePair& spaces,
                                   int x, const QueryFunction& f);

// Probability weights over datasets.
class Prior {
 public:
  Prior(std::vector<double> weights);
  static Prior uniform(int n);
  double operator()(int x) const { return w_[x]; }
  int size() const { return static_cast<int>(w_.size()); }

 private:
  std::vector<double> w_;
};

// Prior-weighted mean of per-dataset expected distortions.
double expected_utility(const LayeredDistribution& dist, const QueryFunction& f,
                        const Prior& prior);

enum class ParetoVerdict { equal, dominates, dominated, incomparable };

// Componentwise comparison of per-dataset distortions (smaller is better),
// with ties at 1e-12.
ParetoVerdict pareto_compare(const std::vector<double>& u1,
                             const std::vector<double>& u2);

}  // namespace ldp

#endif  // LDP_DISTRIBUTION_HPP
