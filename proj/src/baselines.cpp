#include "ldp/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "ldp/errors.hpp"

namespace ldp {

namespace {

void require_epsilon(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw InputError("epsilon must be a positive finite number");
}

void normalize_rows(DensityTable& p) {
  for (auto& row : p) {
    double total = 0.0;
    for (double v : row) total += v;
    for (double& v : row) v /= total;
  }
}

}  // namespace

DensityTable laplace_discrete(const QueryFunction& f, const SpacePair& spaces,
                              double eps) {
  require_epsilon(eps);
  const double df = global_sensitivity(f, spaces);
  if (df <= 0.0)
    throw ConstraintError("the query has zero global sensitivity");
  const int n = spaces.datasets.size();
  const int m = spaces.values.size();
  DensityTable p(n, std::vector<double>(m, 0.0));
  for (int x = 0; x < n; ++x)
    for (int r = 0; r < m; ++r)
      p[x][r] = std::exp(-spaces.values.dist(f(x), r) * eps / df);
  normalize_rows(p);
  return p;
}

DensityTable exponential_mech(const std::vector<std::vector<double>>& score,
                              double delta_s, double eps) {
  require_epsilon(eps);
  if (!(delta_s > 0.0) || !std::isfinite(delta_s))
    throw InputError("score sensitivity must be a positive finite number");
  if (score.empty() || score.front().empty())
    throw InputError("score table is empty");
  const std::size_t width = score.front().size();
  DensityTable p(score.size(), std::vector<double>(width, 0.0));
  for (std::size_t x = 0; x < score.size(); ++x) {
    if (score[x].size() != width) throw InputError("score table is ragged");
    double best = score[x].front();
    for (double s : score[x]) {
      if (!std::isfinite(s)) throw InputError("scores must be finite");
      best = std::max(best, s);
    }
    // Shift by the row maximum so the largest weight is exactly 1.
    for (std::size_t r = 0; r < width; ++r)
      p[x][r] = std::exp(eps * (score[x][r] - best) / (2.0 * delta_s));
  }
  normalize_rows(p);
  return p;
}

DensityTable ladder_mech(const GraphUniverse& u, double eps) {
  require_epsilon(eps);
  const int count = u.size();
  if (count == 0) throw InputError("empty graph universe");

  std::vector<int> support;
  for (const auto& g : u.classes) support.push_back(g.triangles);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  const int m = static_cast<int>(support.size());

  // Local sensitivity of triangle counting per class.
  std::vector<int> ls(count, 0);
  for (int y = 0; y < count; ++y)
    for (int z = 0; z < count; ++z)
      if (u.dist[y][z] == 1)
        ls[y] = std::max(ls[y], std::abs(u.classes[y].triangles - u.classes[z].triangles));

  int diameter = 0;
  for (const auto& row : u.dist)
    for (int d : row) diameter = std::max(diameter, d);

  DensityTable p(count, std::vector<double>(m, 0.0));
  for (int x = 0; x < count; ++x) {
    // ladder[s] = max local sensitivity within distance s of x.
    std::vector<int> ladder(diameter + 1, 0);
    for (int y = 0; y < count; ++y)
      ladder[u.dist[x][y]] = std::max(ladder[u.dist[x][y]], ls[y]);
    for (int s = 1; s <= diameter; ++s) ladder[s] = std::max(ladder[s], ladder[s - 1]);

    const int fx = u.classes[x].triangles;
    int span = 0;
    for (int r : support) span = std::max(span, std::abs(r - fx));

    // Cumulative budgets C_t; past the diameter the ladder is the global
    // sensitivity, so coverage always terminates unless that is zero.
    std::vector<long long> budget{0};
    while (budget.back() < span) {
      const int s = static_cast<int>(budget.size()) - 1;
      const int step = ladder[std::min(s, diameter)];
      if (step == 0 && s >= diameter)
        throw ConstraintError("ladder budget cannot cover the value support");
      budget.push_back(budget.back() + step);
    }

    for (int r = 0; r < m; ++r) {
      const int need = std::abs(support[r] - fx);
      int t = 0;
      while (budget[t] < need) ++t;
      p[x][r] = std::exp(-eps * static_cast<double>(t));
    }
  }
  normalize_rows(p);
  return p;
}

double staircase_expected_abs(double delta_f, double eps, double gamma) {
  if (!(delta_f > 0.0) || !std::isfinite(delta_f))
    throw InputError("sensitivity must be a positive finite number");
  require_epsilon(eps);
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw InputError("the staircase width parameter lies strictly inside (0, 1)");
  const double q = std::exp(-eps);
  const double a = (1.0 - q) / (2.0 * delta_f * (gamma + (1.0 - gamma) * q));
  const double s0 = 1.0 / (1.0 - q);
  const double s1 = q / ((1.0 - q) * (1.0 - q));
  return a * delta_f * delta_f *
         (gamma * gamma * s0 + 2.0 * gamma * s1 +
          q * ((1.0 - gamma * gamma) * s0 + 2.0 * (1.0 - gamma) * s1));
}

double staircase_utility(double delta_f, double eps) {
  // E|noise| is unimodal in gamma; golden-section to 1e-10.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 1e-9, hi = 1.0 - 1e-9;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = staircase_expected_abs(delta_f, eps, c);
  double fd = staircase_expected_abs(delta_f, eps, d);
  while (hi - lo > 1e-10) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = staircase_expected_abs(delta_f, eps, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = staircase_expected_abs(delta_f, eps, d);
    }
  }
  return staircase_expected_abs(delta_f, eps, (lo + hi) / 2.0);
}

}  // namespace ldp
