#include "ldp/verify.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ldp/errors.hpp"

namespace ldp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string pair_detail(const SpacePair& spaces, int x, int y, int r) {
  std::ostringstream os;
  os << "datasets (" << spaces.datasets.id(x) << ", " << spaces.datasets.id(y)
     << ") at value " << spaces.values.point(r);
  return os.str();
}

// Max ln-ratio over the given dataset pairs; +inf on zero-vs-positive mass.
template <typename WeightFn>
EffectiveEpsilon scan_pairs(const SpacePair& spaces, int band_at_most,
                            WeightFn&& weight) {
  const int n = spaces.datasets.size();
  const int m = spaces.values.size();
  EffectiveEpsilon out;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      const int b = band_index(spaces.datasets.dist(x, y));
      if (b > band_at_most) continue;
      for (int r = 0; r < m; ++r) {
        const double wx = weight(x, r), wy = weight(y, r);
        double ratio;
        if (wx <= 0.0 && wy <= 0.0) continue;
        if (wy <= 0.0) {
          ratio = kInf;
        } else if (wx <= 0.0) {
          continue;  // covered from the (y, x) direction
        } else {
          ratio = std::log(wx / wy);
        }
        if (ratio > out.value || (std::isinf(ratio) && out.finite)) {
          out.value = ratio;
          out.finite = std::isfinite(ratio);
          out.witness = {x, y, r, pair_detail(spaces, x, y, r)};
          if (!out.finite) return out;
        }
      }
    }
  }
  return out;
}

}  // namespace

EffectiveEpsilon effective_epsilon(const LayeredDistribution& dist) {
  return scan_pairs(dist.spaces(), 1,
                    [&](int x, int r) { return dist.weight(x, r); });
}

EffectiveEpsilon effective_epsilon(const DensityTable& p, const SpacePair& spaces) {
  // Normalize rows so the scan compares probabilities, not raw weights.
  const int n = spaces.datasets.size();
  std::vector<double> total(n, 0.0);
  for (int x = 0; x < n; ++x)
    for (double v : p[x]) total[x] += v;
  return scan_pairs(spaces, 1,
                    [&](int x, int r) { return p[x][r] / total[x]; });
}

CheckReport check_discretization_bounds(const DensityTable& p,
                                        const DiscretizeResult& disc,
                                        SpacePtr spaces, const QueryFunction& f,
                                        double eps) {
  CheckReport rep;
  rep.check = "discretization-bounds";
  const double tol = 1e-9;

  const EffectiveEpsilon ep = effective_epsilon(p, *spaces);
  if (!ep.finite || ep.value > eps + tol) {
    rep.pass = false;
    rep.epsilon_effective = ep.value;
    rep.margin = eps - ep.value;
    rep.witness = ep.witness;
    rep.witness.detail += " (input density exceeds the claimed epsilon)";
    return rep;
  }

  LayeredDistribution q(disc.seq, spaces);
  const EffectiveEpsilon eq = effective_epsilon(q);
  rep.epsilon_effective = eq.value;
  rep.margin = 2.0 * eps - eq.value;
  rep.witness = eq.witness;
  if (!eq.finite || eq.value > 2.0 * eps + tol) {
    rep.pass = false;
    rep.witness.detail += " (discretization exceeds twice the claimed epsilon)";
    return rep;
  }

  // Per-dataset sandwich exp(-eps) <= E_p/E_q <= exp(eps), on the log scale.
  const int n = spaces->datasets.size();
  for (int x = 0; x < n; ++x) {
    const double up = expected_distortion_density(p, *spaces, x, f);
    const double uq = expected_distortion(q, x, f);
    if (up <= 1e-15 && uq <= 1e-15) continue;
    const double gap = (up <= 1e-15 || uq <= 1e-15) ? kInf
                                                    : std::abs(std::log(up / uq));
    if (gap > eps + tol) {
      rep.pass = false;
      rep.witness = {x, -1, -1,
                     "utility sandwich violated at dataset " +
                         spaces->datasets.id(x)};
      rep.margin = eps - gap;
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

CheckReport check_layer_adjacency(const LayerSequence& seq, const SpacePair& spaces) {
  CheckReport rep;
  rep.check = "layer-adjacency";
  const int n = spaces.datasets.size();
  const int m = seq.support_size;
  int worst = 0;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (band_index(spaces.datasets.dist(x, y)) != 1) continue;
      for (int r = 0; r < m; ++r) {
        const int jump = std::abs(layer_of(seq, x, r) - layer_of(seq, y, r));
        if (jump > worst) {
          worst = jump;
          rep.witness = {x, y, r, pair_detail(spaces, x, y, r)};
        }
      }
    }
  }
  rep.pass = worst <= 1;
  rep.epsilon_effective = static_cast<double>(worst) * seq.epsilon;
  rep.margin = 1.0 - worst;
  if (!rep.pass)
    rep.witness.detail += " (layer indices jump by " + std::to_string(worst) + ")";
  return rep;
}

BasicVerdict check_basic(const LayerSequence& seq, const SpacePair& spaces) {
  const InitialValues init = extract_initial_values(seq, spaces);
  BasicVerdict v;
  for (int x = 0; x < static_cast<int>(init.extras.size()); ++x) {
    if (!init.extras[x].empty()) {
      v.basic = false;
      v.dataset = x;
      v.index = init.extras[x].front().first;
      return v;
    }
  }
  return v;
}

CheckReport check_group_privacy(const LayeredDistribution& dist, int k) {
  CheckReport rep;
  rep.check = "group-privacy";
  const SpacePair& spaces = dist.spaces();
  if (!spaces.datasets.geodesic_property()) {
    rep.refused = true;
    rep.witness.detail =
        "dataset metric lacks unit-step chains; the chained bound does not apply";
    return rep;
  }
  const double unit = effective_epsilon(dist).value;
  rep.epsilon_effective = unit;
  const double tol = 1e-9;
  const int n = spaces.datasets.size();
  const int m = spaces.values.size();
  double worst_excess = -kInf;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      const int b = band_index(spaces.datasets.dist(x, y));
      if (b < 1 || b > k) continue;
      for (int r = 0; r < m; ++r) {
        const double ratio = std::log(dist.weight(x, r) / dist.weight(y, r));
        const double excess = ratio - b * unit;
        if (excess > worst_excess) {
          worst_excess = excess;
          rep.witness = {x, y, r, pair_detail(spaces, x, y, r)};
          rep.margin = -excess;
        }
      }
    }
  }
  rep.pass = worst_excess <= tol;
  return rep;
}

}  // namespace ldp
