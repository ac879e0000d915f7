#ifndef LDP_BUILDERS_HPP
#define LDP_BUILDERS_HPP

#include <vector>

#include "ldp/distribution.hpp"
#include "ldp/layer.hpp"
#include "ldp/metric.hpp"

namespace ldp {

// layer0 = {f(x)} everywhere, no extras.
InitialValues build_purest(const QueryFunction& f, const SpacePair& spaces);

// layer0 = {assign[x]} (value indices), no extras.
InitialValues build_atomic(const std::vector<int>& assign, const SpacePair& spaces);

// layer0 = closed radius-delta[x] ball around f(x) in the value metric.
InitialValues build_delta_neighborhood(const QueryFunction& f,
                                       const std::vector<double>& delta,
                                       const SpacePair& spaces);

// Purest initial values of g used as a mechanism for f. Datasets where f(x)
// falls outside the layer-0 set make it a proper approximation.
struct ApproximateResult {
  InitialValues init;
  std::vector<int> approximated_at;  // datasets with f(x) not in layer0
  bool is_approximation() const { return !approximated_at.empty(); }
};

ApproximateResult approximate_via(const QueryFunction& g, const QueryFunction& f,
                                  const SpacePair& spaces);

// Single-point migration: adds value r0 to dataset x0's initial set at index
// i0 (0 = layer0, otherwise the extra at i0, created when absent).
//
// predicted_r0_layer[x] = min{band(x0,x) + i0, old layer of r0 at x}; all
// other covered points keep their layers. On mechanisms with a completion
// layer the predictions extend the same arrival calculus exactly (the
// completion index is recomputed), so they always match a scratch rebuild.
//
// Throws ConstraintError when r0 is already in the target set or when the
// edited initial values fail the membership check.
struct MigrationResult {
  InitialValues init;
  std::vector<int> predicted_r0_layer;
  std::vector<std::vector<int>> predicted_layers;  // full (dataset x value) table
};

MigrationResult migrate(const InitialValues& init, int x0, int i0, int r0,
                        const SpacePair& spaces);

enum class UtilityChange { improves, worsens, unchanged };

// Mediant test for the effect of lowering r0's layer at dataset x to
// new_layer: compares the expected distortion of everything except r0
// against d(f(x), r0). Ties within 1e-12 report unchanged.
UtilityChange predict_utility_change(const LayeredDistribution& dist, int x,
                                     const QueryFunction& f, int r0, int new_layer);

enum class MediantOrder { increasing, decreasing };

// Monotonicity of (a0 + a1*t)/(b0 + b1*t) in t >= 0: increasing iff
// a0/b0 < a1/b1.
MediantOrder mediant_monotone(double a0, double b0, double a1, double b1);

// Product mechanism of two layered distributions over the same dataset
// universe and equal epsilon: support is the pair support with summed
// distances, layer indices add, weights multiply.
struct ComposeResult {
  SpacePtr spaces;
  LayeredDistribution dist;
  std::vector<std::pair<int, int>> components;  // product index -> factor indices
};

ComposeResult compose(const LayeredDistribution& m1, const LayeredDistribution& m2);

}  // namespace ldp

#endif  // LDP_BUILDERS_HPP
