#include "ldp/metric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "ldp/errors.hpp"
#include "ldp/rng.hpp"

namespace ldp {

int band_index(double d) {
  if (d <= kBandTol) return 0;
  return static_cast<int>(std::ceil(d - kBandTol));
}

namespace {

void validate_metric(const std::vector<std::string>& ids,
                     const std::vector<double>& m) {
  const std::size_t n = ids.size();
  if (n == 0) throw ConstraintError("dataset space has no elements");
  if (m.size() != n * n)
    throw ConstraintError("distance matrix size does not match element count");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = m[i * n + j];
      if (!std::isfinite(d)) throw ConstraintError("nonfinite distance");
      if (i == j) {
        if (d != 0.0) throw ConstraintError("nonzero diagonal distance");
      } else {
        if (d <= 0.0)
          throw ConstraintError("nonpositive distance between distinct elements");
        if (std::abs(d - m[j * n + i]) > kBandTol)
          throw ConstraintError("asymmetric distance matrix");
      }
    }
  }
  // Triangle inequality: exhaustive up to 2000 elements, sampled beyond.
  auto check = [&](std::size_t i, std::size_t j, std::size_t k) {
    if (m[i * n + k] > m[i * n + j] + m[j * n + k] + kBandTol)
      throw ConstraintError("triangle inequality violated");
  };
  if (n <= 2000) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) check(i, j, k);
  } else {
    SplitMix64 g(0x7261636b6574ULL);
    for (int t = 0; t < 4'000'000; ++t) {
      std::size_t i = g.next_below(n), j = g.next_below(n), k = g.next_below(n);
      check(i, j, k);
    }
  }
}

}  // namespace

DatasetSpace::DatasetSpace(std::vector<std::string> ids,
                           std::vector<double> dist_matrix)
    : ids_(std::move(ids)), dist_(std::move(dist_matrix)) {
  validate_metric(ids_, dist_);
  for (int i = 0; i < static_cast<int>(ids_.size()); ++i) {
    if (!index_.emplace(ids_[i], i).second)
      throw ConstraintError("duplicate dataset id: " + ids_[i]);
  }
}

int DatasetSpace::index_of(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

bool DatasetSpace::geodesic_property() const {
  if (geodesic_cache_ >= 0) return geodesic_cache_ == 1;
  const int n = size();
  bool ok = true;
  for (int x = 0; x < n && ok; ++x) {
    for (int y = 0; y < n && ok; ++y) {
      const int i = band_index(dist(x, y));
      if (i < 2) continue;
      bool found = false;
      for (int z = 0; z < n; ++z) {
        if (band_index(dist(x, z)) == 1 && band_index(dist(z, y)) == i - 1) {
          found = true;
          break;
        }
      }
      ok = found;
    }
  }
  geodesic_cache_ = ok ? 1 : 0;
  return ok;
}

ValueSpace::ValueSpace(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw ConstraintError("value support is empty");
  for (double v : points_)
    if (!std::isfinite(v)) throw ConstraintError("nonfinite support value");
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      if (points_[i] == points_[j])
        throw ConstraintError("duplicate support value");
}

ValueSpace::ValueSpace(std::vector<double> points, std::vector<double> dist_matrix)
    : points_(std::move(points)), matrix_(std::move(dist_matrix)) {
  if (points_.empty()) throw ConstraintError("value support is empty");
  if (matrix_.size() != points_.size() * points_.size())
    throw ConstraintError("value metric matrix size mismatch");
}

double ValueSpace::dist(int r, int s) const {
  if (matrix_.empty()) return std::abs(points_[r] - points_[s]);
  return matrix_[static_cast<std::size_t>(r) * points_.size() + s];
}

int ValueSpace::index_of(double value) const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i] == value) return static_cast<int>(i);
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (std::abs(points_[i] - value) <= 1e-9) return static_cast<int>(i);
  return -1;
}

QueryFunction::QueryFunction(std::vector<int> value_index, const SpacePair& spaces)
    : value_index_(std::move(value_index)) {
  if (static_cast<int>(value_index_.size()) != spaces.datasets.size())
    throw ConstraintError("query does not cover every dataset");
  for (int r : value_index_)
    if (r < 0 || r >= spaces.values.size())
      throw ConstraintError("query image outside the value support");
}

std::vector<int> neighborhood_band(const SpacePair& spaces, int x, int i) {
  std::vector<int> out;
  const int n = spaces.datasets.size();
  for (int y = 0; y < n; ++y)
    if (band_index(spaces.datasets.dist(x, y)) == i) out.push_back(y);
  return out;
}

std::vector<int> closed_ball(const SpacePair& spaces, int x, int i) {
  std::vector<int> out;
  const int n = spaces.datasets.size();
  for (int y = 0; y < n; ++y)
    if (band_index(spaces.datasets.dist(x, y)) <= i) out.push_back(y);
  return out;
}

double global_sensitivity(const QueryFunction& f, const SpacePair& spaces) {
  const int n = spaces.datasets.size();
  double best = -1.0;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (band_index(spaces.datasets.dist(x, y)) == 1)
        best = std::max(best, spaces.values.dist(f(x), f(y)));
  if (best < 0.0)
    throw ConstraintError("isolated universe: no pair at band distance 1");
  return best;
}

double local_sensitivity(const QueryFunction& f, const SpacePair& spaces, int x) {
  const int n = spaces.datasets.size();
  double best = 0.0;
  for (int y = 0; y < n; ++y)
    if (y != x && band_index(spaces.datasets.dist(x, y)) == 1)
      best = std::max(best, spaces.values.dist(f(x), f(y)));
  return best;
}

bool is_strictly_monotonic(const QueryFunction& f, const SpacePair& spaces,
                           std::optional<std::array<int, 3>>* witness) {
  const int n = spaces.datasets.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        if (spaces.datasets.dist(x, y) < spaces.datasets.dist(x, z) &&
            !(spaces.values.dist(f(x), f(y)) < spaces.values.dist(f(x), f(z)))) {
          if (witness) *witness = std::array<int, 3>{x, y, z};
          return false;
        }
      }
  return true;
}

}  // namespace ldp
