#ifndef LDP_VERIFY_HPP
#define LDP_VERIFY_HPP

#include <string>

#include "ldp/distribution.hpp"
#include "ldp/layer.hpp"
#include "ldp/metric.hpp"

namespace ldp {

// Location of the worst ratio / first violation found by a check.
struct Witness {
  int x = -1;  // dataset index
  int y = -1;  // second dataset index, when the check scans pairs
  int r = -1;  // value index
  std::string detail;
};

// Structured result of one verification check. `refused` marks a check whose
// precondition does not hold (reported, never counted as a failure).
struct CheckReport {
  std::string check;
  bool pass = false;
  bool refused = false;
  double epsilon_effective = 0.0;  // +inf when some ratio is unbounded
  double margin = 0.0;             // asserted bound minus measured value
  Witness witness;
};

// Largest ln(q^x(r)/q^y(r)) over neighbor pairs (band distance 1) and
// support points. Densities determine all event ratios on a discrete
// support, so singleton events certify the full definition.
struct EffectiveEpsilon {
  double value = 0.0;  // +inf when a point has mass under one neighbor only
  bool finite = true;
  Witness witness;
};

EffectiveEpsilon effective_epsilon(const LayeredDistribution& dist);
EffectiveEpsilon effective_epsilon(const DensityTable& p, const SpacePair& spaces);

// Certifies the discretization guarantees for q = discretize(p, eps):
// p itself is eps-private, q is within 2*eps, and per-dataset expected
// distortions of p and q agree within a factor exp(+-eps), all at 1e-9.
CheckReport check_discretization_bounds(const DensityTable& p,
                                        const DiscretizeResult& disc,
                                        SpacePtr spaces, const QueryFunction& f,
                                        double eps);

// Layer indices of neighbor datasets differ by at most 1 at every point.
CheckReport check_layer_adjacency(const LayerSequence& seq, const SpacePair& spaces);

// Whether the sequence is generated by its layer-0 sets alone.
struct BasicVerdict {
  bool basic = true;
  int dataset = -1;  // first dataset with a nonempty extra
  int index = -1;    // its layer index
};

BasicVerdict check_basic(const LayerSequence& seq, const SpacePair& spaces);

// For every pair at band distance i <= k, the max ln-ratio is bounded by
// i times the measured neighbor-level epsilon. Refuses (not fails) when the
// dataset space lacks the unit-step chain property the bound relies on.
CheckReport check_group_privacy(const LayeredDistribution& dist, int k);

}  // namespace ldp

#endif  // LDP_VERIFY_HPP
