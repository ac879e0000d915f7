#ifndef LDP_LAYER_HPP
#define LDP_LAYER_HPP

#include <string>
#include <utility>
#include <vector>

#include "ldp/index_set.hpp"
#include "ldp/metric.hpp"

namespace ldp {

// Per-dataset probability table over the finite value support. Row x is the
// density of the mechanism's output on dataset x.
using DensityTable = std::vector<std::vector<double>>;

// Finite-support layer sequence: for every dataset a partition of the value
// support into indexed sets whose weights fall off as exp(-i * epsilon).
// Trailing layers are stored up to the last nonempty index per dataset;
// intermediate empty layers are kept.
struct LayerSequence {
  double epsilon = 0.0;
  int support_size = 0;
  // layers[x][i] is the i-th layer of dataset x.
  std::vector<std::vector<IndexSet>> layers;
  // Set when some support point had no deriving rule or positive density and
  // was appended to a final per-dataset layer to keep the partition total.
  bool coverage_completed = false;

  int layer_count(int x) const { return static_cast<int>(layers[x].size()); }
};

// Layer index of value r under dataset x; -1 when r is in no layer.
int layer_of(const LayerSequence& seq, int x, int r);

// Union of layers 0..i of dataset x (full support once i passes the end).
IndexSet cumulative(const LayerSequence& seq, int x, int i);

// True when, for every dataset, the layers are pairwise disjoint and union to
// the full support.
bool is_partition(const LayerSequence& seq);

struct DiscretizationContext {
  double max_density = 0.0;  // global maximum M of the input density
  double epsilon = 0.0;
};

struct DiscretizeOptions {
  // Classify ratios against the per-dataset maximum instead of the global
  // one. Exploratory variant; nothing in the verification suite depends on it.
  bool per_dataset_max = false;
};

struct DiscretizeResult {
  LayerSequence seq;
  DiscretizationContext context;
};

// Geometric discretization of a density table: value r of dataset x lands in
// layer i = ceil(ln(M / p) / epsilon - 1e-12), clamped at 0. Zero-density
// points are appended as a final per-dataset layer and flagged through
// coverage_completed. Throws on nonfinite input or an all-zero row.
DiscretizeResult discretize(const DensityTable& p, const SpacePair& spaces,
                            double epsilon, const DiscretizeOptions& opts = {});

// Initial values: layer-0 set plus indexed extra sets per dataset. The
// minimal data from which a layer sequence is rebuilt.
struct InitialValues {
  std::vector<IndexSet> layer0;
  // extras[x]: (index, set) pairs with strictly increasing indices >= 1.
  std::vector<std::vector<std::pair<int, IndexSet>>> extras;

  bool basic() const {
    for (const auto& e : extras)
      if (!e.empty()) return false;
    return true;
  }
};

// Checks InitialValues shape against a space: nonempty layer-0 everywhere,
// strictly increasing nonempty extras. Throws ConstraintError on violation.
void check_initial_shape(const InitialValues& init, const SpacePair& spaces);

// Extracts initial values from a layer sequence: layer-0 verbatim, and for
// i >= 1 the extra set is what the construction rule does not derive from
// lower-index information (layer-0 sets of the band plus already-extracted
// extras of other datasets arriving at band offset).
InitialValues extract_initial_values(const LayerSequence& seq, const SpacePair& spaces);

// Arrival index marking a point no source reaches.
inline constexpr int kNoArrival = 2147483647;

// Least arrival index over sources for every (dataset, value): a source
// (y, j) reaches dataset x at j + band(d(y,x)). kNoArrival when unreached.
std::vector<std::vector<int>> source_arrivals(const InitialValues& init,
                                              const SpacePair& spaces);

// Rebuilds the full layer sequence from initial values: every point lands at
// its least arrival index. Support points with no source at all are appended
// as a final per-dataset layer and flagged.
LayerSequence reconstruct(const InitialValues& init, const SpacePair& spaces,
                          double epsilon);

// Verdict of the membership check for the universe of reconstructible
// sequences: every extra set must be disjoint from the rule-generated part of
// its layer and from all earlier cumulative sets.
struct MembershipVerdict {
  bool ok = true;
  int dataset = -1;
  int index = -1;
  std::vector<int> offending;  // value indices
  std::string reason;
};

MembershipVerdict validate_membership_C(const InitialValues& init,
                                        const SpacePair& spaces);

}  // namespace ldp

#endif  // LDP_LAYER_HPP
