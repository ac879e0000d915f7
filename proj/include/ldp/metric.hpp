#ifndef LDP_METRIC_HPP
#define LDP_METRIC_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ldp/index_set.hpp"

namespace ldp {

// Absolute tolerance used when classifying a distance against integer band
// boundaries. Distances within this tolerance of a boundary land in the band
// whose closed edge they touch.
inline constexpr double kBandTol = 1e-12;

// Band index of a distance d: 0 for d <= tol, otherwise the integer i with
// i-1 < d <= i (up to the tolerance).
int band_index(double d);

// Finite universe of datasets with a validated metric. Immutable after
// construction; all operations are reads.
class DatasetSpace {
 public:
  // Validates symmetry, zero diagonal, positivity off the diagonal, and the
  // triangle inequality (exhaustively up to 2000 elements, sampled beyond).
  DatasetSpace(std::vector<std::string> ids, std::vector<double> dist_matrix);

  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(int x) const { return ids_[x]; }
  double dist(int x, int y) const { return dist_[static_cast<std::size_t>(x) * ids_.size() + y]; }
  const std::vector<double>& matrix() const { return dist_; }

  // Index of an element id; -1 when absent.
  int index_of(const std::string& id) const;

  // Whether every pair at band distance i >= 2 has a unit-step predecessor:
  // for d(x,y) banded to i there is x' with d(x,x') banded to 1 and d(x',y)
  // banded to i-1. Required before asserting chained group-privacy bounds.
  // Computed on first use and cached.
  bool geodesic_property() const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> dist_;
  std::unordered_map<std::string, int> index_;
  mutable int geodesic_cache_ = -1;  // -1 unknown, else 0/1
};

// Finite ordered value support with a metric and the counting measure.
// The distance is |a-b| on the stored points unless an explicit matrix is
// supplied (used for product supports built by composition).
class ValueSpace {
 public:
  explicit ValueSpace(std::vector<double> points);
  ValueSpace(std::vector<double> points, std::vector<double> dist_matrix);

  int size() const { return static_cast<int>(points_.size()); }
  double point(int r) const { return points_[r]; }
  const std::vector<double>& points() const { return points_; }
  double dist(int r, int s) const;
  bool has_matrix() const { return !matrix_.empty(); }

  // Index of a value, matched exactly and then within 1e-9; -1 when absent.
  int index_of(double value) const;

 private:
  std::vector<double> points_;
  std::vector<double> matrix_;  // empty => |a-b|
};

// A dataset universe and value universe bound together. Mechanisms, layer
// sequences, and verification all run against one SpacePair.
struct SpacePair {
  DatasetSpace datasets;
  ValueSpace values;
};

using SpacePtr = std::shared_ptr<const SpacePair>;

// Query f: dataset index -> value-support index.
class QueryFunction {
 public:
  QueryFunction() = default;
  QueryFunction(std::vector<int> value_index, const SpacePair& spaces);

  int operator()(int x) const { return value_index_[x]; }
  int size() const { return static_cast<int>(value_index_.size()); }
  const std::vector<int>& indices() const { return value_index_; }

 private:
  std::vector<int> value_index_;
};

// A space pair together with a query on it, however it was produced.
struct QuerySpace {
  SpacePtr spaces;
  QueryFunction query;
};

// Datasets y with i-1 < d(x,y) <= i (band 0 is {y : d(x,y) <= tol}).
std::vector<int> neighborhood_band(const SpacePair& spaces, int x, int i);

// Datasets y with d(x,y) <= i (band classification, so the ball of band
// radius i is the union of bands 0..i).
std::vector<int> closed_ball(const SpacePair& spaces, int x, int i);

// max |f(x) - f(y)| over pairs with band distance exactly 1.
// Throws ConstraintError when no such pair exists.
double global_sensitivity(const QueryFunction& f, const SpacePair& spaces);

// max |f(x) - f(y)| over y in band distance 1 of x (0 when x is isolated).
double local_sensitivity(const QueryFunction& f, const SpacePair& spaces, int x);

// Whether d(x,y) < d(x,z) implies dist(f(x),f(y)) < dist(f(x),f(z)) for all
// triples. Returns the first violating triple through `witness` when given.
bool is_strictly_monotonic(const QueryFunction& f, const SpacePair& spaces,
                           std::optional<std::array<int, 3>>* witness = nullptr);

}  // namespace ldp

#endif  // LDP_METRIC_HPP
