#include "ldp/builders.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ldp/errors.hpp"

namespace ldp {

namespace {

InitialValues empty_init(const SpacePair& spaces) {
  InitialValues init;
  const int n = spaces.datasets.size();
  const int m = spaces.values.size();
  init.layer0.assign(n, IndexSet(m));
  init.extras.resize(n);
  return init;
}

void require_query_fits(const QueryFunction& f, const SpacePair& spaces,
                        const char* role) {
  if (f.size() != spaces.datasets.size())
    throw InputError(std::string(role) + " query does not match the dataset universe");
  for (int x = 0; x < f.size(); ++x)
    if (f(x) < 0 || f(x) >= spaces.values.size())
      throw InputError(std::string(role) + " query maps outside the value support");
}

}  // namespace

InitialValues build_purest(const QueryFunction& f, const SpacePair& spaces) {
  require_query_fits(f, spaces, "purest");
  InitialValues init = empty_init(spaces);
  for (int x = 0; x < spaces.datasets.size(); ++x) init.layer0[x].set(f(x));
  return init;
}

InitialValues build_atomic(const std::vector<int>& assign, const SpacePair& spaces) {
  if (static_cast<int>(assign.size()) != spaces.datasets.size())
    throw InputError("atomic assignment does not match the dataset universe");
  InitialValues init = empty_init(spaces);
  for (int x = 0; x < spaces.datasets.size(); ++x) {
    if (assign[x] < 0 || assign[x] >= spaces.values.size())
      throw InputError("atomic assignment maps outside the value support");
    init.layer0[x].set(assign[x]);
  }
  return init;
}

InitialValues build_delta_neighborhood(const QueryFunction& f,
                                       const std::vector<double>& delta,
                                       const SpacePair& spaces) {
  require_query_fits(f, spaces, "neighborhood");
  if (static_cast<int>(delta.size()) != spaces.datasets.size())
    throw InputError("radius list does not match the dataset universe");
  InitialValues init = empty_init(spaces);
  for (int x = 0; x < spaces.datasets.size(); ++x) {
    const double dx = delta[x];
    if (!std::isfinite(dx) || dx < 0.0)
      throw InputError("neighborhood radius must be finite and nonnegative");
    for (int r = 0; r < spaces.values.size(); ++r)
      if (spaces.values.dist(f(x), r) <= dx + kBandTol) init.layer0[x].set(r);
  }
  return init;
}

ApproximateResult approximate_via(const QueryFunction& g, const QueryFunction& f,
                                  const SpacePair& spaces) {
  require_query_fits(f, spaces, "target");
  ApproximateResult out{build_purest(g, spaces), {}};
  for (int x = 0; x < spaces.datasets.size(); ++x)
    if (!out.init.layer0[x].test(f(x))) out.approximated_at.push_back(x);
  return out;
}

MigrationResult migrate(const InitialValues& init, int x0, int i0, int r0,
                        const SpacePair& spaces) {
  check_initial_shape(init, spaces);
  const int n = spaces.datasets.size();
  const int m = spaces.values.size();
  if (x0 < 0 || x0 >= n) throw InputError("migration dataset out of range");
  if (r0 < 0 || r0 >= m) throw InputError("migration value out of range");
  if (i0 < 0) throw InputError("migration index must be nonnegative");

  if (init.layer0[x0].test(r0))
    throw ConstraintError("value " + std::to_string(spaces.values.point(r0)) +
                          " already sits in layer 0 of dataset " +
                          spaces.datasets.id(x0));
  for (const auto& [j, s] : init.extras[x0])
    if (s.test(r0))
      throw ConstraintError("value " + std::to_string(spaces.values.point(r0)) +
                            " already sits in the extra set at index " +
                            std::to_string(j) + " of dataset " +
                            spaces.datasets.id(x0));

  MigrationResult out;
  out.init = init;
  if (i0 == 0) {
    out.init.layer0[x0].set(r0);
  } else {
    auto& ex = out.init.extras[x0];
    auto it = std::find_if(ex.begin(), ex.end(),
                           [i0](const auto& p) { return p.first >= i0; });
    if (it != ex.end() && it->first == i0) {
      it->second.set(r0);
    } else {
      IndexSet s(m);
      s.set(r0);
      ex.emplace(it, i0, s);
    }
  }

  MembershipVerdict v = validate_membership_C(out.init, spaces);
  if (!v.ok) throw ConstraintError("migration rejected: " + v.reason);

  // Exact predictions: adding one source only lowers r0's arrivals, so the
  // new table is the old one with min{old, i0 + band(x0, x)} at r0. Layer
  // conversion mirrors reconstruction, including the completion layer for
  // points no source reaches.
  std::vector<std::vector<int>> arrival = source_arrivals(init, spaces);
  out.predicted_r0_layer.assign(n, 0);
  out.predicted_layers.assign(n, std::vector<int>(m, 0));
  for (int x = 0; x < n; ++x) {
    const int via = i0 + band_index(spaces.datasets.dist(x0, x));
    arrival[x][r0] = std::min(arrival[x][r0], via);
    int top = 0;
    for (int r = 0; r < m; ++r)
      if (arrival[x][r] != kNoArrival) top = std::max(top, arrival[x][r]);
    for (int r = 0; r < m; ++r)
      out.predicted_layers[x][r] =
          (arrival[x][r] == kNoArrival) ? top + 1 : arrival[x][r];
    out.predicted_r0_layer[x] = out.predicted_layers[x][r0];
  }
  return out;
}

UtilityChange predict_utility_change(const LayeredDistribution& dist, int x,
                                     const QueryFunction& f, int r0, int new_layer) {
  const SpacePair& spaces = dist.spaces();
  require_query_fits(f, spaces, "utility");
  if (x < 0 || x >= spaces.datasets.size())
    throw InputError("dataset out of range");
  if (r0 < 0 || r0 >= spaces.values.size())
    throw InputError("value out of range");

  const LayerSequence& seq = dist.sequence();
  const int k = layer_of(seq, x, r0);
  if (k < 0) throw ConstraintError("value is in no layer of the dataset");
  if (new_layer < 0 || new_layer >= k)
    throw ConstraintError("prediction covers lowering a value's layer only");

  const double eps = dist.epsilon();
  const double d0 = spaces.values.dist(f(x), r0);
  double num = 0.0;
  for (int i = 0; i < seq.layer_count(x); ++i) {
    const double w = std::exp(-static_cast<double>(i) * eps);
    for (int r : seq.layers[x][i].elements()) num += w * spaces.values.dist(f(x), r);
  }
  const double ek = std::exp(-static_cast<double>(k) * eps);
  const double a = num - ek * d0;       // distortion mass of everything else
  const double b = dist.alpha(x) - ek;  // weight mass of everything else
  if (b <= 0.0)
    throw ConstraintError("prediction undefined: the value carries the whole mass");

  const double diff = a / b - d0;
  if (std::abs(diff) <= 1e-12) return UtilityChange::unchanged;
  return diff > 0.0 ? UtilityChange::improves : UtilityChange::worsens;
}

MediantOrder mediant_monotone(double a0, double b0, double a1, double b1) {
  if (!(b0 > 0.0) || !(b1 > 0.0))
    throw InputError("mediant comparison requires positive denominators");
  return a0 * b1 < a1 * b0 ? MediantOrder::increasing : MediantOrder::decreasing;
}

ComposeResult compose(const LayeredDistribution& m1, const LayeredDistribution& m2) {
  const SpacePair& s1 = m1.spaces();
  const SpacePair& s2 = m2.spaces();
  const int n = s1.datasets.size();
  if (s2.datasets.size() != n || s1.datasets.ids() != s2.datasets.ids())
    throw ConstraintError("composition requires the same dataset universe");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (std::abs(s1.datasets.dist(x, y) - s2.datasets.dist(x, y)) > 1e-12)
        throw ConstraintError("composition requires the same dataset metric");
  if (std::abs(m1.epsilon() - m2.epsilon()) > 1e-12)
    throw ConstraintError("composition requires equal epsilon");

  const int ma = s1.values.size();
  const int mb = s2.values.size();
  const int mp = ma * mb;
  std::vector<double> points(mp);
  for (int k = 0; k < mp; ++k) points[k] = static_cast<double>(k);
  std::vector<double> matrix(static_cast<std::size_t>(mp) * mp, 0.0);
  std::vector<std::pair<int, int>> components(mp);
  for (int i = 0; i < ma; ++i)
    for (int j = 0; j < mb; ++j) components[i * mb + j] = {i, j};
  for (int k = 0; k < mp; ++k)
    for (int l = 0; l < mp; ++l)
      matrix[static_cast<std::size_t>(k) * mp + l] =
          s1.values.dist(components[k].first, components[l].first) +
          s2.values.dist(components[k].second, components[l].second);

  auto spaces = std::make_shared<const SpacePair>(
      SpacePair{DatasetSpace(s1.datasets.ids(), s1.datasets.matrix()),
                ValueSpace(std::move(points), std::move(matrix))});

  const LayerSequence& q1 = m1.sequence();
  const LayerSequence& q2 = m2.sequence();
  LayerSequence seq;
  seq.epsilon = m1.epsilon();
  seq.support_size = mp;
  seq.coverage_completed = q1.coverage_completed || q2.coverage_completed;
  seq.layers.resize(n);
  for (int x = 0; x < n; ++x) {
    std::vector<int> l1(ma, 0), l2(mb, 0);
    for (int i = 0; i < q1.layer_count(x); ++i)
      for (int r : q1.layers[x][i].elements()) l1[r] = i;
    for (int i = 0; i < q2.layer_count(x); ++i)
      for (int r : q2.layers[x][i].elements()) l2[r] = i;
    int top = 0;
    for (int k = 0; k < mp; ++k)
      top = std::max(top, l1[components[k].first] + l2[components[k].second]);
    seq.layers[x].assign(top + 1, IndexSet(mp));
    for (int k = 0; k < mp; ++k)
      seq.layers[x][l1[components[k].first] + l2[components[k].second]].set(k);
  }
  return ComposeResult{spaces, LayeredDistribution(std::move(seq), spaces),
                       std::move(components)};
}

}  // namespace ldp
