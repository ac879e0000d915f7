#ifndef LDP_TESTS_ORACLES_HPP
#define LDP_TESTS_ORACLES_HPP

#include <cstdint>

#include "ldp/intervals.hpp"

namespace ldp::test {

// Number of graph isomorphism classes on n nodes by scanning every edge mask
// and canonicalizing with a row-major encoding (deliberately different from
// the library's packed-pair layout). Practical for n <= 6.
long long brute_force_class_count(int n);

// Grid dilation at resolution h: measure of the i-th band of the i-fold
// signed Minkowski sum of V around {0}.
double grid_band_measure(const IntervalUnion& v, int i, double h);

// Expected |output| of the whole layered mechanism on a grid: layers from
// repeated grid dilation of [-delta, delta], weights exp(-i * eps), `bands`
// dilation rounds before truncation.
double grid_linear_utility(const IntervalUnion& v, double delta, double eps,
                           double h, int bands);

// Expected |noise| of the staircase density from its pointwise band
// classification (k = 0 inside [0, gamma*delta_f), then unit steps), summed
// band by band until the geometric tail is negligible.
double staircase_expected_abs_oracle(double delta_f, double eps, double gamma);

// Geometric layer classification of a density value by upward scan with
// multiplicative comparisons (no logarithms).
int layer_oracle(double p, double max_density, double eps);

}  // namespace ldp::test

#endif  // LDP_TESTS_ORACLES_HPP
