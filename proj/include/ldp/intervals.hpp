#ifndef LDP_INTERVALS_HPP
#define LDP_INTERVALS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "ldp/verify.hpp"

namespace ldp {

// Finite union of closed real intervals, kept sorted, disjoint, and merged.
// Boundary points are tracked only up to measure zero: pieces that touch
// within 1e-12 merge, and set differences keep closed remnants. Every
// quantity read off a union (measure, integrals, containment) is insensitive
// to that convention.
class IntervalUnion {
 public:
  IntervalUnion() = default;  // empty set
  IntervalUnion(double a, double b);
  explicit IntervalUnion(std::vector<std::pair<double, double>> parts);

  bool empty() const { return pieces_.empty(); }
  int piece_count() const { return static_cast<int>(pieces_.size()); }
  const std::vector<std::pair<double, double>>& pieces() const { return pieces_; }

  double measure() const;
  double min() const;  // throws InputError on the empty set
  double max() const;
  double integral_abs() const;  // integral of |r| dr over the set

  bool contains(double t, double tol = 1e-9) const;
  bool contains(const IntervalUnion& other, double tol = 1e-9) const;
  bool approx_equal(const IntervalUnion& other, double tol = 1e-9) const;

  IntervalUnion unite(const IntervalUnion& other) const;
  IntervalUnion subtract(const IntervalUnion& other) const;
  IntervalUnion minkowski(const IntervalUnion& other) const;
  IntervalUnion reflect() const;  // pointwise negation
  IntervalUnion translate(double t) const;

 private:
  std::vector<std::pair<double, double>> pieces_;
};

// A linear query described by its neighboring set V (one-sided; the signed
// set is derived). The global sensitivity is the right endpoint of V.
struct LinearQuerySpec {
  IntervalUnion V;
  double delta_f = 0.0;
};

// Validates V: nonempty, within [0, inf), containing 0, positive right end.
LinearQuerySpec make_linear_spec(const IntervalUnion& v);

// The i-th band around 0 at delta = 0: the i-fold signed Minkowski sum of V
// minus the earlier bands (band 0 is the point {0}). Requires i >= 1.
IntervalUnion minkowski_band(const LinearQuerySpec& spec, int i);

// 0-centered layer sequence of the delta-neighborhood mechanism; every
// dataset shares it by translation. layers[0] = [-delta, delta].
struct LinearLayers {
  double delta = 0.0;
  double delta_f = 0.0;
  std::vector<IntervalUnion> layers;
  bool converged = false;
  int n = -1;      // first index of the periodic tail pattern
  double a_n = 0;  // tail offset: layer n = a_n +- [0, delta_f]
};

struct LinearLayerOptions {
  int max_iterations = 5000;
};

// Builds layers until the periodic tail appears. Throws ConstraintError when
// the iteration cap passes without convergence.
LinearLayers layers_linear(const LinearQuerySpec& spec, double delta,
                           const LinearLayerOptions& opts = {});

struct Convergence {
  bool converged = false;
  double a_n = 0.0;
  int n = -1;
};

// First n with layer n = a +- [0, delta_f] and layer n+1 = a +- [delta_f,
// 2*delta_f]; from there on layers extend periodically.
Convergence detect_convergence(const std::vector<IntervalUnion>& layers,
                               double delta_f);

// Expected |output - f(x)| under the length measure: exact per-layer
// integrals over the materialized head plus the analytically summed tail.
double utility_linear(const LinearQuerySpec& spec, double delta, double eps,
                      int max_iterations = 5000);

// Normalizer alpha (shared by every dataset), head plus analytic tail.
double interval_alpha(const LinearQuerySpec& spec, double delta, double eps,
                      int max_iterations = 5000);

// Privacy certificate: checks A_i (+) W inside A_{i+1} on the materialized
// head with independent interval arithmetic; past convergence the layers
// widen by delta_f per step and W lies within [-delta_f, delta_f], so the
// containment extends to the tail. On pass the mechanism's effective epsilon
// is the construction epsilon exactly (normalizers agree by translation).
CheckReport certify_interval_epsilon(const LinearQuerySpec& spec, double delta,
                                     double eps);

// Deterministic draw centered at f(x) = center: layer by inverse CDF (head
// walk, geometric tail), then uniform within the layer.
double sample_linear(const LinearQuerySpec& spec, double delta, double eps,
                     double center, std::uint64_t seed);

}  // namespace ldp

#endif  // LDP_INTERVALS_HPP
