#include "ldp/intervals.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "ldp/errors.hpp"
#include "ldp/rng.hpp"

namespace ldp {

namespace {

constexpr double kTouchTol = 1e-12;
constexpr double kPatternTol = 1e-9;

std::vector<std::pair<double, double>> normalized(
    std::vector<std::pair<double, double>> parts) {
  for (const auto& [a, b] : parts) {
    if (!std::isfinite(a) || !std::isfinite(b))
      throw InputError("interval endpoints must be finite");
    if (b < a) throw InputError("interval upper endpoint below the lower one");
  }
  for (auto& [a, b] : parts) {
    if (a == 0.0) a = 0.0;  // flush negative zero
    if (b == 0.0) b = 0.0;
  }
  std::sort(parts.begin(), parts.end());
  std::vector<std::pair<double, double>> out;
  for (const auto& [a, b] : parts) {
    if (!out.empty() && a <= out.back().second + kTouchTol)
      out.back().second = std::max(out.back().second, b);
    else
      out.emplace_back(a, b);
  }
  return out;
}

IntervalUnion signed_set(const LinearQuerySpec& spec) {
  return spec.V.unite(spec.V.reflect());
}

// layer n = a +- [0, df] up to tolerance; reports a through `a_out`.
bool rim_layer(const IntervalUnion& layer, double df, double* a_out) {
  if (layer.piece_count() == 1) {
    const auto& p = layer.pieces()[0];
    if (std::abs(p.first + df) > kPatternTol || std::abs(p.second - df) > kPatternTol)
      return false;
    *a_out = 0.0;
    return true;
  }
  if (layer.piece_count() != 2) return false;
  const auto& l = layer.pieces()[0];
  const auto& r = layer.pieces()[1];
  const double a = r.first;
  if (a < -kPatternTol) return false;
  if (std::abs(r.second - (a + df)) > kPatternTol) return false;
  if (std::abs(l.first + (a + df)) > kPatternTol ||
      std::abs(l.second + a) > kPatternTol)
    return false;
  *a_out = a;
  return true;
}

// layer n+1 = a +- [df, 2*df] up to tolerance.
bool next_rim_layer(const IntervalUnion& layer, double a, double df) {
  if (layer.piece_count() != 2) return false;
  const auto& l = layer.pieces()[0];
  const auto& r = layer.pieces()[1];
  return std::abs(r.first - (a + df)) <= kPatternTol &&
         std::abs(r.second - (a + 2 * df)) <= kPatternTol &&
         std::abs(l.first + (a + 2 * df)) <= kPatternTol &&
         std::abs(l.second + (a + df)) <= kPatternTol;
}

// One solid interval [-(a + 2*df), a + 2*df]. With the cumulative set solid
// and the signed neighboring set inside [-df, df] containing 0, every later
// sum widens the interval by exactly df per step, so the rim pattern is
// guaranteed to continue; this closes the periodicity claim constructively.
bool solid_through(const IntervalUnion& cumulative, double a, double df) {
  if (cumulative.piece_count() != 1) return false;
  const auto& p = cumulative.pieces()[0];
  return std::abs(p.first + (a + 2 * df)) <= kPatternTol &&
         std::abs(p.second - (a + 2 * df)) <= kPatternTol;
}

bool pattern_at(const std::vector<IntervalUnion>& layers, int n,
                const IntervalUnion& cumulative_through_n1, double df,
                double* a_out) {
  double a = 0.0;
  if (!rim_layer(layers[n], df, &a)) return false;
  if (!next_rim_layer(layers[n + 1], a, df)) return false;
  if (!solid_through(cumulative_through_n1, a, df)) return false;
  *a_out = a;
  return true;
}

struct HeadTail {
  LinearLayers shape;
  double alpha = 0.0;
  double num = 0.0;  // integral of |r| against the unnormalized weights
};

HeadTail head_and_tail(const LinearQuerySpec& spec, double delta, double eps,
                       int max_iterations) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw InputError("epsilon must be a positive finite number");
  HeadTail out;
  out.shape = layers_linear(spec, delta, LinearLayerOptions{max_iterations});
  const LinearLayers& L = out.shape;
  const double q = std::exp(-eps);
  for (int i = 0; i <= L.n; ++i) {
    const double w = std::exp(-static_cast<double>(i) * eps);
    out.alpha += w * L.layers[i].measure();
    out.num += w * L.layers[i].integral_abs();
  }
  // Layers past n are a +- [k*df, (k+1)*df]: measure 2*df and |r|-integral
  // (2*a + (2k+1)*df)*df, summed in closed form.
  const double a = L.a_n;
  const double df = L.delta_f;
  const double qn = std::exp(-static_cast<double>(L.n) * eps);
  const double g1 = q / (1.0 - q);
  const double g2 = q / ((1.0 - q) * (1.0 - q));
  out.alpha += qn * 2.0 * df * g1;
  out.num += qn * ((2.0 * a * df + df * df) * g1 + 2.0 * df * df * g2);
  return out;
}

}  // namespace

IntervalUnion::IntervalUnion(double a, double b) : pieces_(normalized({{a, b}})) {}

IntervalUnion::IntervalUnion(std::vector<std::pair<double, double>> parts)
    : pieces_(normalized(std::move(parts))) {}

double IntervalUnion::measure() const {
  double total = 0.0;
  for (const auto& [a, b] : pieces_) total += b - a;
  return total;
}

double IntervalUnion::min() const {
  if (pieces_.empty()) throw InputError("empty interval union has no endpoints");
  return pieces_.front().first;
}

double IntervalUnion::max() const {
  if (pieces_.empty()) throw InputError("empty interval union has no endpoints");
  return pieces_.back().second;
}

double IntervalUnion::integral_abs() const {
  auto antiderivative = [](double t) { return t * std::abs(t) / 2.0; };
  double total = 0.0;
  for (const auto& [a, b] : pieces_) total += antiderivative(b) - antiderivative(a);
  return total;
}

bool IntervalUnion::contains(double t, double tol) const {
  for (const auto& [a, b] : pieces_)
    if (t >= a - tol && t <= b + tol) return true;
  return false;
}

bool IntervalUnion::contains(const IntervalUnion& other, double tol) const {
  for (const auto& [a, b] : other.pieces_) {
    bool covered = false;
    for (const auto& [c, d] : pieces_)
      if (a >= c - tol && b <= d + tol) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

bool IntervalUnion::approx_equal(const IntervalUnion& other, double tol) const {
  if (pieces_.size() != other.pieces_.size()) return false;
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (std::abs(pieces_[i].first - other.pieces_[i].first) > tol ||
        std::abs(pieces_[i].second - other.pieces_[i].second) > tol)
      return false;
  return true;
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& other) const {
  auto parts = pieces_;
  parts.insert(parts.end(), other.pieces_.begin(), other.pieces_.end());
  return IntervalUnion(std::move(parts));
}

IntervalUnion IntervalUnion::subtract(const IntervalUnion& other) const {
  std::vector<std::pair<double, double>> out;
  for (const auto& [a, b] : pieces_) {
    double cursor = a;
    for (const auto& [c, d] : other.pieces_) {
      if (d < cursor) continue;
      if (c > b) break;
      if (c > cursor && c - cursor > kTouchTol) out.emplace_back(cursor, std::min(c, b));
      cursor = std::max(cursor, d);
      if (cursor >= b) break;
    }
    if (b - cursor > kTouchTol) out.emplace_back(cursor, b);
  }
  IntervalUnion result;
  result.pieces_ = normalized(std::move(out));
  return result;
}

IntervalUnion IntervalUnion::minkowski(const IntervalUnion& other) const {
  if (pieces_.empty() || other.pieces_.empty()) return IntervalUnion();
  std::vector<std::pair<double, double>> out;
  out.reserve(pieces_.size() * other.pieces_.size());
  for (const auto& [a, b] : pieces_)
    for (const auto& [c, d] : other.pieces_) out.emplace_back(a + c, b + d);
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::reflect() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(pieces_.size());
  for (const auto& [a, b] : pieces_) out.emplace_back(-b, -a);
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::translate(double t) const {
  std::vector<std::pair<double, double>> out;
  out.reserve(pieces_.size());
  for (const auto& [a, b] : pieces_) out.emplace_back(a + t, b + t);
  return IntervalUnion(std::move(out));
}

LinearQuerySpec make_linear_spec(const IntervalUnion& v) {
  if (v.empty()) throw ConstraintError("the neighboring set is empty");
  if (v.min() < -kTouchTol)
    throw ConstraintError("the neighboring set must lie within [0, inf)");
  if (!v.contains(0.0, kTouchTol))
    throw ConstraintError(
        "the neighboring set must contain 0 so the cumulative sums nest");
  LinearQuerySpec spec;
  spec.V = v;
  spec.delta_f = v.max();
  if (spec.delta_f <= kTouchTol)
    throw ConstraintError("the neighboring set must have positive width");
  return spec;
}

IntervalUnion minkowski_band(const LinearQuerySpec& spec, int i) {
  if (i < 1) throw InputError("band index must be at least 1");
  const IntervalUnion W = signed_set(spec);
  IntervalUnion prev(0.0, 0.0);
  for (int k = 1; k <= i; ++k) {
    IntervalUnion cur = prev.minkowski(W);
    if (k == i) return cur.subtract(prev);
    prev = std::move(cur);
  }
  return IntervalUnion();  // unreachable
}

LinearLayers layers_linear(const LinearQuerySpec& spec, double delta,
                           const LinearLayerOptions& opts) {
  if (!std::isfinite(delta) || delta < 0.0)
    throw InputError("delta must be finite and nonnegative");
  if (opts.max_iterations < 2) throw InputError("iteration cap must be at least 2");

  const IntervalUnion W = signed_set(spec);
  LinearLayers out;
  out.delta = delta;
  out.delta_f = spec.delta_f;
  IntervalUnion cumulative(-delta, delta);
  out.layers.push_back(cumulative);

  for (int i = 1; i <= opts.max_iterations; ++i) {
    IntervalUnion next = cumulative.minkowski(W);
    out.layers.push_back(next.subtract(cumulative));
    cumulative = std::move(next);
    double a = 0.0;
    if (pattern_at(out.layers, i - 1, cumulative, out.delta_f, &a)) {
      out.converged = true;
      out.n = i - 1;
      out.a_n = a;
      return out;
    }
  }
  throw ConstraintError("layer construction passed " +
                        std::to_string(opts.max_iterations) +
                        " iterations without converging");
}

Convergence detect_convergence(const std::vector<IntervalUnion>& layers,
                               double delta_f) {
  Convergence out;
  if (layers.size() < 2) return out;
  IntervalUnion cumulative = layers[0];
  for (int n = 0; n + 1 < static_cast<int>(layers.size()); ++n) {
    cumulative = cumulative.unite(layers[n + 1]);
    double a = 0.0;
    if (pattern_at(layers, n, cumulative, delta_f, &a)) {
      out.converged = true;
      out.a_n = a;
      out.n = n;
      return out;
    }
  }
  return out;
}

double utility_linear(const LinearQuerySpec& spec, double delta, double eps,
                      int max_iterations) {
  const HeadTail ht = head_and_tail(spec, delta, eps, max_iterations);
  return ht.num / ht.alpha;
}

double interval_alpha(const LinearQuerySpec& spec, double delta, double eps,
                      int max_iterations) {
  return head_and_tail(spec, delta, eps, max_iterations).alpha;
}

CheckReport certify_interval_epsilon(const LinearQuerySpec& spec, double delta,
                                     double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw InputError("epsilon must be a positive finite number");
  CheckReport report;
  report.check = "interval-epsilon";
  const LinearLayers L = layers_linear(spec, delta, LinearLayerOptions{});
  const IntervalUnion W = signed_set(spec);

  IntervalUnion cumulative = L.layers[0];
  for (int i = 0; i <= L.n; ++i) {
    if (!L.layers[i].approx_equal(L.layers[i].reflect(), kPatternTol)) {
      report.pass = false;
      report.witness.detail =
          "layer " + std::to_string(i) + " is not symmetric about 0";
      return report;
    }
    const IntervalUnion next = cumulative.unite(L.layers[i + 1]);
    if (!next.contains(cumulative.minkowski(W), kPatternTol)) {
      report.pass = false;
      report.witness.detail = "cumulative set at index " + std::to_string(i) +
                              " shifted by the neighboring set escapes index " +
                              std::to_string(i + 1);
      return report;
    }
    cumulative = next;
  }
  // Past the converged head the cumulative set is one solid interval widening
  // by delta_f per step while the signed neighboring set stays inside
  // [-delta_f, delta_f], so the one-step containment holds forever: the layer
  // index is 1-Lipschitz under every neighbor shift, and the normalizers of
  // all datasets agree by translation. The density ratio across neighbors is
  // then at most exp(eps).
  report.pass = true;
  report.epsilon_effective = eps;
  report.margin = 0.0;
  return report;
}

double sample_linear(const LinearQuerySpec& spec, double delta, double eps,
                     double center, std::uint64_t seed) {
  const HeadTail ht = head_and_tail(spec, delta, eps, 5000);
  const LinearLayers& L = ht.shape;
  const double q = std::exp(-eps);

  SplitMix64 gen(mix64(seed, std::bit_cast<std::uint64_t>(center)));
  double target = gen.next_double() * ht.alpha;

  auto within = [&](const IntervalUnion& layer, double frac) {
    double offset = frac * layer.measure();
    for (const auto& [a, b] : layer.pieces()) {
      if (offset <= b - a) return a + offset;
      offset -= b - a;
    }
    return layer.pieces().back().second;
  };

  for (int i = 0; i <= L.n; ++i) {
    const double mass = std::exp(-static_cast<double>(i) * eps) * L.layers[i].measure();
    if (target < mass && mass > 0.0)
      return center + within(L.layers[i], target / mass);
    target -= mass;
  }

  // Geometric tail: pick k >= 1 with weight q^(k-1)(1-q), then a uniform
  // point of a_n +- [k*df, (k+1)*df].
  const double qn = std::exp(-static_cast<double>(L.n) * eps);
  const double tail_mass = qn * 2.0 * L.delta_f * q / (1.0 - q);
  double v = tail_mass > 0.0 ? target / tail_mass : 0.0;
  v = std::clamp(v, 1e-300, 1.0 - 1e-16);
  const int k = 1 + static_cast<int>(std::floor(std::log(v) / std::log(q)));
  const double lo = L.a_n + static_cast<double>(k) * L.delta_f;
  const IntervalUnion layer({{-lo - L.delta_f, -lo}, {lo, lo + L.delta_f}});
  return center + within(layer, gen.next_double());
}

}  // namespace ldp
