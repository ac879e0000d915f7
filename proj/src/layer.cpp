#include "ldp/layer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ldp/errors.hpp"

namespace ldp {

namespace {

constexpr int kUnreached = kNoArrival;

// band[y][x] for dataset pairs, precomputed once per call.
std::vector<std::vector<int>> dataset_bands(const SpacePair& spaces) {
  const int n = spaces.datasets.size();
  std::vector<std::vector<int>> band(n, std::vector<int>(n, 0));
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) band[y][x] = band_index(spaces.datasets.dist(y, x));
  return band;
}

std::string describe_point(const SpacePair& spaces, int r) {
  std::ostringstream os;
  os << spaces.values.point(r);
  return os.str();
}

// Shape rules shared by the throwing check and the verdict-returning one.
MembershipVerdict shape_verdict(const InitialValues& init, const SpacePair& spaces) {
  MembershipVerdict v;
  const int n = spaces.datasets.size();
  const int m = spaces.values.size();
  if (static_cast<int>(init.layer0.size()) != n ||
      static_cast<int>(init.extras.size()) != n) {
    v.ok = false;
    v.reason = "initial values must carry one entry per dataset";
    return v;
  }
  for (int x = 0; x < n; ++x) {
    if (init.layer0[x].universe_size() != m) {
      v.ok = false;
      v.dataset = x;
      v.reason = "layer-0 set over the wrong value universe";
      return v;
    }
    int prev = 0;
    for (const auto& [i, s] : init.extras[x]) {
      if (i < 1) {
        v.ok = false;
        v.dataset = x;
        v.index = i;
        v.reason = "extra set index must be at least 1";
        return v;
      }
      if (i <= prev) {
        v.ok = false;
        v.dataset = x;
        v.index = i;
        v.reason = "extra set indices must be strictly increasing";
        return v;
      }
      if (s.universe_size() != m) {
        v.ok = false;
        v.dataset = x;
        v.index = i;
        v.reason = "extra set over the wrong value universe";
        return v;
      }
      if (s.empty()) {
        v.ok = false;
        v.dataset = x;
        v.index = i;
        v.reason = "extra set is empty";
        return v;
      }
      prev = i;
    }
  }
  // Layer-0 sets may be empty per dataset (discretizations against the
  // global maximum empty every non-peak dataset's top layer), but something
  // must seed the reconstruction.
  bool any_source = false;
  for (int x = 0; x < n && !any_source; ++x)
    any_source = !init.layer0[x].empty() || !init.extras[x].empty();
  if (!any_source) {
    v.ok = false;
    v.reason = "initial values contain no points";
  }
  return v;
}

}  // namespace

int layer_of(const LayerSequence& seq, int x, int r) {
  const auto& ls = seq.layers[x];
  for (int i = 0; i < static_cast<int>(ls.size()); ++i)
    if (ls[i].test(r)) return i;
  return -1;
}

IndexSet cumulative(const LayerSequence& seq, int x, int i) {
  IndexSet acc(seq.support_size);
  const auto& ls = seq.layers[x];
  const int top = std::min<int>(i, static_cast<int>(ls.size()) - 1);
  for (int k = 0; k <= top; ++k) acc |= ls[k];
  return acc;
}

bool is_partition(const LayerSequence& seq) {
  for (const auto& ls : seq.layers) {
    IndexSet acc(seq.support_size);
    int total = 0;
    for (const auto& s : ls) {
      total += s.count();
      acc |= s;
    }
    if (total != seq.support_size || acc.count() != seq.support_size) return false;
  }
  return true;
}

DiscretizeResult discretize(const DensityTable& p, const SpacePair& spaces,
                            double epsilon, const DiscretizeOptions& opts) {
  const int n = spaces.datasets.size();
  const int m = spaces.values.size();
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InputError("epsilon must be a positive finite number");
  if (static_cast<int>(p.size()) != n)
    throw InputError("density table must have one row per dataset");

  double global_max = 0.0;
  std::vector<double> row_max(n, 0.0);
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(p[x].size()) != m)
      throw InputError("density row has wrong width");
    for (double v : p[x]) {
      if (!std::isfinite(v) || v < 0.0)
        throw InputError("densities must be finite and nonnegative");
      row_max[x] = std::max(row_max[x], v);
    }
    if (row_max[x] <= 0.0)
      throw InputError("density row " + spaces.datasets.id(x) + " has no mass");
    global_max = std::max(global_max, row_max[x]);
  }

  DiscretizeResult out;
  out.context.max_density = global_max;
  out.context.epsilon = epsilon;
  out.seq.epsilon = epsilon;
  out.seq.support_size = m;
  out.seq.layers.resize(n);

  for (int x = 0; x < n; ++x) {
    const double mx = opts.per_dataset_max ? row_max[x] : global_max;
    std::vector<int> idx(m, -1);
    int top = 0;
    for (int r = 0; r < m; ++r) {
      if (p[x][r] <= 0.0) continue;
      const double raw = std::log(mx / p[x][r]) / epsilon;
      int i = static_cast<int>(std::ceil(raw - kBandTol));
      if (i < 0) i = 0;
      idx[r] = i;
      top = std::max(top, i);
    }
    bool has_zero = false;
    for (int r = 0; r < m; ++r)
      if (idx[r] < 0) {
        // No positive density: park the point past every weighted layer so
        // the partition stays total.
        idx[r] = top + 1;
        has_zero = true;
      }
    if (has_zero) out.seq.coverage_completed = true;
    const int count = has_zero ? top + 2 : top + 1;
    out.seq.layers[x].assign(count, IndexSet(m));
    for (int r = 0; r < m; ++r) out.seq.layers[x][idx[r]].set(r);
  }
  return out;
}

void check_initial_shape(const InitialValues& init, const SpacePair& spaces) {
  MembershipVerdict v = shape_verdict(init, spaces);
  if (!v.ok) {
    std::string where;
    if (v.dataset >= 0) {
      where = " (dataset " + spaces.datasets.id(v.dataset);
      if (v.index >= 0) where += ", index " + std::to_string(v.index);
      where += ")";
    }
    throw ConstraintError(v.reason + where);
  }
}

std::vector<std::vector<int>> source_arrivals(const InitialValues& init,
                                              const SpacePair& spaces) {
  const int n = spaces.datasets.size();
  const int m = spaces.values.size();
  const auto band = dataset_bands(spaces);
  std::vector<std::vector<int>> arrival(n, std::vector<int>(m, kUnreached));
  auto feed = [&](int y, int j, const IndexSet& s) {
    const auto pts = s.elements();
    for (int x = 0; x < n; ++x) {
      const int at = j + band[y][x];
      for (int r : pts)
        if (at < arrival[x][r]) arrival[x][r] = at;
    }
  };
  for (int y = 0; y < n; ++y) {
    feed(y, 0, init.layer0[y]);
    for (const auto& [j, s] : init.extras[y]) feed(y, j, s);
  }
  return arrival;
}

LayerSequence reconstruct(const InitialValues& init, const SpacePair& spaces,
                          double epsilon) {
  check_initial_shape(init, spaces);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InputError("epsilon must be a positive finite number");

  const int n = spaces.datasets.size();
  const int m = spaces.values.size();
  std::vector<std::vector<int>> arrival = source_arrivals(init, spaces);

  LayerSequence seq;
  seq.epsilon = epsilon;
  seq.support_size = m;
  seq.layers.resize(n);
  for (int x = 0; x < n; ++x) {
    int top = 0;
    bool uncovered = false;
    for (int r = 0; r < m; ++r) {
      if (arrival[x][r] == kUnreached)
        uncovered = true;
      else
        top = std::max(top, arrival[x][r]);
    }
    if (uncovered) {
      // Points no source reaches are parked one past the last derived layer.
      for (int r = 0; r < m; ++r)
        if (arrival[x][r] == kUnreached) arrival[x][r] = top + 1;
      seq.coverage_completed = true;
      top += 1;
    }
    seq.layers[x].assign(top + 1, IndexSet(m));
    for (int r = 0; r < m; ++r) seq.layers[x][arrival[x][r]].set(r);
  }
  return seq;
}

InitialValues extract_initial_values(const LayerSequence& seq, const SpacePair& spaces) {
  const int n = spaces.datasets.size();
  const int m = seq.support_size;
  if (static_cast<int>(seq.layers.size()) != n)
    throw InputError("layer sequence does not match the dataset universe");
  if (m != spaces.values.size())
    throw InputError("layer sequence does not match the value support");
  const auto band = dataset_bands(spaces);

  InitialValues init;
  init.layer0.resize(n, IndexSet(m));
  init.extras.resize(n);

  // arrival[x][r]: least index reachable from items extracted so far.
  std::vector<std::vector<int>> arrival(n, std::vector<int>(m, kUnreached));
  auto feed = [&](int y, int j, const IndexSet& s) {
    const auto pts = s.elements();
    for (int x = 0; x < n; ++x) {
      const int at = j + band[y][x];
      for (int r : pts)
        if (at < arrival[x][r]) arrival[x][r] = at;
    }
  };

  int max_layers = 0;
  for (int x = 0; x < n; ++x) {
    if (!seq.layers[x].empty()) init.layer0[x] = seq.layers[x][0];
    max_layers = std::max(max_layers, static_cast<int>(seq.layers[x].size()));
  }
  for (int x = 0; x < n; ++x) feed(x, 0, init.layer0[x]);

  // Level i extras feed arrivals at indices > i only (off-dataset bands are
  // at least 1), so extracting level by level is well founded.
  for (int i = 1; i < max_layers; ++i) {
    std::vector<std::pair<int, IndexSet>> fresh;
    for (int x = 0; x < n; ++x) {
      if (i >= static_cast<int>(seq.layers[x].size())) continue;
      IndexSet extra = seq.layers[x][i];
      for (int r : seq.layers[x][i].elements())
        if (arrival[x][r] <= i) extra.reset(r);
      if (!extra.empty()) {
        init.extras[x].emplace_back(i, extra);
        fresh.emplace_back(x, extra);
      }
    }
    for (const auto& [x, s] : fresh) feed(x, i, s);
  }
  return init;
}

MembershipVerdict validate_membership_C(const InitialValues& init,
                                        const SpacePair& spaces) {
  MembershipVerdict v = shape_verdict(init, spaces);
  if (!v.ok) return v;

  const int n = spaces.datasets.size();
  const int m = spaces.values.size();
  const auto band = dataset_bands(spaces);

  // All sources per point: (dataset, index) pairs whose set contains it.
  std::vector<std::vector<std::pair<int, int>>> sources_of(m);
  for (int y = 0; y < n; ++y) {
    for (int r : init.layer0[y].elements()) sources_of[r].emplace_back(y, 0);
    for (const auto& [j, s] : init.extras[y])
      for (int r : s.elements()) sources_of[r].emplace_back(y, j);
  }

  for (int x = 0; x < n; ++x) {
    for (const auto& [i, s] : init.extras[x]) {
      IndexSet offending(m);
      for (int r : s.elements()) {
        int best = kUnreached;
        for (const auto& [y, j] : sources_of[r]) {
          if (y == x && j == i) continue;
          best = std::min(best, j + band[y][x]);
        }
        if (best <= i) offending.set(r);
      }
      if (!offending.empty()) {
        v.ok = false;
        v.dataset = x;
        v.index = i;
        v.offending = offending.elements();
        v.reason = "extra set at dataset " + spaces.datasets.id(x) + ", index " +
                   std::to_string(i) + " contains values already derivable at " +
                   "or below that index (first: " +
                   describe_point(spaces, v.offending.front()) + ")";
        return v;
      }
    }
  }
  return v;
}

}  // namespace ldp
