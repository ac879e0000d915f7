#include "ldp/distribution.hpp"

#include <cmath>
#include <cstdlib>

#include "ldp/errors.hpp"
#include "ldp/rng.hpp"

namespace ldp {

LayeredDistribution::LayeredDistribution(LayerSequence seq, SpacePtr spaces)
    : seq_(std::move(seq)), spaces_(std::move(spaces)) {
  if (seq_.support_size <= 0) throw InputError("empty value support");
  if (seq_.support_size != spaces_->values.size() ||
      static_cast<int>(seq_.layers.size()) != spaces_->datasets.size())
    throw InputError("layer sequence does not match the space");
  if (!is_partition(seq_))
    throw ConstraintError("layers do not partition the value support");
  const int n = spaces_->datasets.size();
  alpha_.resize(n);
  for (int x = 0; x < n; ++x) {
    double a = 0.0;
    for (int i = 0; i < seq_.layer_count(x); ++i)
      a += std::exp(-static_cast<double>(i) * seq_.epsilon) * seq_.layers[x][i].count();
    alpha_[x] = a;
    if (!(a > 0.0)) throw ConstraintError("normalizer is not positive");
  }
}

double LayeredDistribution::weight(int x, int r) const {
  const int i = layer_of(seq_, x, r);
  return std::exp(-static_cast<double>(i) * seq_.epsilon) / alpha_[x];
}

LayeredDistribution to_distribution(LayerSequence seq, SpacePtr spaces) {
  return LayeredDistribution(std::move(seq), std::move(spaces));
}

double sample(const LayeredDistribution& dist, int x, std::uint64_t seed) {
  SplitMix64 g(mix64(seed, static_cast<std::uint64_t>(x)));
  const double u = g.next_double();
  const int m = dist.sequence().support_size;
  double acc = 0.0;
  for (int r = 0; r < m; ++r) {
    acc += dist.weight(x, r);
    if (u < acc) return dist.spaces().values.point(r);
  }
  // Float underflow of the cumulative sum near 1: return the last point.
  return dist.spaces().values.point(m - 1);
}

double expected_distortion(const LayeredDistribution& dist, int x,
                           const QueryFunction& f) {
  const auto& seq = dist.sequence();
  const auto& values = dist.spaces().values;
  const int fx = f(x);
  double num = 0.0;
  for (int i = 0; i < seq.layer_count(x); ++i) {
    double layer_sum = 0.0;
    for (int r : seq.layers[x][i].elements()) layer_sum += values.dist(fx, r);
    num += std::exp(-static_cast<double>(i) * seq.epsilon) * layer_sum;
  }
  return num / dist.alpha(x);
}

double expected_distortion_density(const DensityTable& p, const SpacePair& spaces,
                                   int x, const QueryFunction& f) {
  const int m = spaces.values.size();
  const int fx = f(x);
  double total = 0.0, acc = 0.0;
  for (int r = 0; r < m; ++r) {
    total += p[x][r];
    acc += p[x][r] * spaces.values.dist(fx, r);
  }
  if (!(total > 0.0)) throw InputError("density row has no mass");
  return acc / total;
}

Prior::Prior(std::vector<double> weights) : w_(std::move(weights)) {
  double s = 0.0;
  for (double v : w_) {
    if (!(v >= 0.0)) throw InputError("prior weights must be nonnegative");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-12) throw InputError("prior weights must sum to 1");
}

Prior Prior::uniform(int n) {
  if (n <= 0) throw InputError("prior over an empty universe");
  return Prior(std::vector<double>(n, 1.0 / n));
}

double expected_utility(const LayeredDistribution& dist, const QueryFunction& f,
                        const Prior& prior) {
  const int n = dist.spaces().datasets.size();
  if (prior.size() != n) throw InputError("prior does not match the dataset universe");
  double acc = 0.0;
  for (int x = 0; x < n; ++x) acc += prior(x) * expected_distortion(dist, x, f);
  return acc;
}

ParetoVerdict pareto_compare(const std::vector<double>& u1,
                             const std::vector<double>& u2) {
  if (u1.size() != u2.size()) throw InputError("utility maps over different universes");
  bool u1_better = false, u2_better = false;
  for (std::size_t x = 0; x < u1.size(); ++x) {
    const double d = u1[x] - u2[x];
    if (d < -1e-12) u1_better = true;
    if (d > 1e-12) u2_better = true;
  }
  if (u1_better && u2_better) return ParetoVerdict::incomparable;
  if (u1_better) return ParetoVerdict::dominates;
  if (u2_better) return ParetoVerdict::dominated;
  return ParetoVerdict::equal;
}

}  // namespace ldp
