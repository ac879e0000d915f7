#ifndef LDP_BASELINES_HPP
#define LDP_BASELINES_HPP

#include <vector>

#include "ldp/graphs.hpp"
#include "ldp/layer.hpp"
#include "ldp/metric.hpp"

namespace ldp {

// Density proportional to exp(-d(f(x), r) * eps / delta_f) on the value
// support, normalized per dataset. Throws ConstraintError when the global
// sensitivity is zero or undefined.
DensityTable laplace_discrete(const QueryFunction& f, const SpacePair& spaces,
                              double eps);

// Exponential mechanism: weights exp(eps * score / (2 * delta_s)) per
// dataset, normalized. score[x][r] must be finite; delta_s is the caller's
// score sensitivity bound.
DensityTable exponential_mech(const std::vector<std::vector<double>>& score,
                              double delta_s, double eps);

// Ladder-quality mechanism over the distinct triangle counts: the rung of r
// at x is the least t whose cumulative local-sensitivity budget covers
// |r - triangles(x)|, weighted exp(-eps * t) (the exponential mechanism at
// parameter 2*eps with the rung as score, sensitivity 1).
DensityTable ladder_mech(const GraphUniverse& u, double eps);

// Expected |noise| of the staircase density with width parameter gamma.
double staircase_expected_abs(double delta_f, double eps, double gamma);

// Expected |noise| at the optimal gamma (golden-section search to 1e-10).
double staircase_utility(double delta_f, double eps);

}  // namespace ldp

#endif  // LDP_BASELINES_HPP
