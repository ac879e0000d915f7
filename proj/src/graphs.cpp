#include "ldp/graphs.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_map>

#include "ldp/errors.hpp"

namespace ldp {

namespace {

constexpr int kMaxNodes = 7;

void require_nodes(int n) {
  if (n < 1 || n > kMaxNodes)
    throw CapacityError("graph universes are supported for 1 to 7 nodes");
}

// Bit position of the pair with lexicographic index k: the first pair takes
// the most significant bit, so lexicographically smaller edge sets pack to
// numerically larger masks.
int pair_slot(int n, int u, int v) {
  const int k = u * (2 * n - u - 1) / 2 + (v - u - 1);
  return pair_count(n) - 1 - k;
}

const std::vector<std::array<int, kMaxNodes>>& permutations_of(int n) {
  static std::vector<std::array<int, kMaxNodes>> cache[kMaxNodes + 1];
  auto& entry = cache[n];
  if (entry.empty()) {
    std::array<int, kMaxNodes> p{};
    std::iota(p.begin(), p.begin() + n, 0);
    do {
      entry.push_back(p);
    } while (std::next_permutation(p.begin(), p.begin() + n));
  }
  return entry;
}

}  // namespace

int pair_count(int n) { return n * (n - 1) / 2; }

std::uint32_t edges_to_mask(int n, const std::vector<std::pair<int, int>>& edges) {
  require_nodes(n);
  std::uint32_t mask = 0;
  for (auto [u, v] : edges) {
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n || u == v) throw InputError("edge endpoint out of range");
    mask |= 1u << pair_slot(n, u, v);
  }
  return mask;
}

std::vector<std::pair<int, int>> mask_to_edges(int n, std::uint32_t mask) {
  require_nodes(n);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (mask & (1u << pair_slot(n, u, v))) edges.emplace_back(u, v);
  return edges;
}

std::uint32_t canonical_code(int n, std::uint32_t mask) {
  require_nodes(n);
  const auto edges = mask_to_edges(n, mask);
  std::uint32_t best = 0;
  for (const auto& p : permutations_of(n)) {
    std::uint32_t code = 0;
    for (auto [u, v] : edges) {
      int a = p[u], b = p[v];
      if (a > b) std::swap(a, b);
      code |= 1u << pair_slot(n, a, b);
    }
    best = std::max(best, code);
  }
  return best;
}

int triangle_count(int n, std::uint32_t mask) {
  require_nodes(n);
  int count = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (!(mask & (1u << pair_slot(n, u, v)))) continue;
      for (int w = v + 1; w < n; ++w)
        if ((mask & (1u << pair_slot(n, u, w))) &&
            (mask & (1u << pair_slot(n, v, w))))
          ++count;
    }
  return count;
}

int triangle_count(const GraphClass& g) {
  return triangle_count(g.n, edges_to_mask(g.n, g.edges));
}

GraphUniverse enumerate_graphs(int n) {
  require_nodes(n);

  // Vertex extension: every class on k nodes is some class on k-1 nodes plus
  // one node wired to a subset of them, so extending all classes by all
  // subsets and deduplicating canonically is exhaustive.
  std::vector<std::uint32_t> codes{0};  // the one-node universe
  for (int k = 2; k <= n; ++k) {
    std::vector<std::uint32_t> next;
    std::unordered_map<std::uint32_t, bool> seen;
    for (std::uint32_t base : codes) {
      auto edges = mask_to_edges(k - 1, base);
      const std::size_t fixed = edges.size();
      for (int subset = 0; subset < (1 << (k - 1)); ++subset) {
        edges.resize(fixed);
        for (int u = 0; u < k - 1; ++u)
          if (subset & (1 << u)) edges.emplace_back(u, k - 1);
        const std::uint32_t code = canonical_code(k, edges_to_mask(k, edges));
        if (seen.emplace(code, true).second) next.push_back(code);
      }
    }
    codes = std::move(next);
  }

  std::sort(codes.begin(), codes.end(), [](std::uint32_t a, std::uint32_t b) {
    const int ca = std::popcount(a), cb = std::popcount(b);
    return ca != cb ? ca < cb : a < b;
  });

  GraphUniverse u;
  u.n = n;
  u.classes.reserve(codes.size());
  for (std::uint32_t code : codes) {
    GraphClass g;
    g.n = n;
    g.code = code;
    g.edges = mask_to_edges(n, code);
    g.triangles = triangle_count(n, code);
    u.classes.push_back(std::move(g));
  }
  u.dist = flip_metric(u);
  return u;
}

std::vector<std::vector<int>> flip_metric(const GraphUniverse& u) {
  const int n = u.n;
  const int count = u.size();
  std::unordered_map<std::uint32_t, int> index;
  for (int i = 0; i < count; ++i) index.emplace(u.classes[i].code, i);

  std::vector<std::vector<int>> adj(count);
  for (int i = 0; i < count; ++i) {
    const std::uint32_t mask = u.classes[i].code;
    for (int b = 0; b < pair_count(n); ++b) {
      const int j = index.at(canonical_code(n, mask ^ (1u << b)));
      if (j != i) adj[i].push_back(j);
    }
    std::sort(adj[i].begin(), adj[i].end());
    adj[i].erase(std::unique(adj[i].begin(), adj[i].end()), adj[i].end());
  }

  std::vector<std::vector<int>> dist(count, std::vector<int>(count, -1));
  for (int s = 0; s < count; ++s) {
    auto& d = dist[s];
    d[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      for (int y : adj[x])
        if (d[y] < 0) {
          d[y] = d[x] + 1;
          q.push(y);
        }
    }
  }
  // Removing edges one by one reaches the empty graph, so the flip graph is
  // connected and every distance is finite.
  for (const auto& row : dist)
    for (int v : row)
      if (v < 0) throw ConstraintError("flip graph is unexpectedly disconnected");
  return dist;
}

int ladder_local_sensitivity(const GraphUniverse& u, int x, int t) {
  if (x < 0 || x >= u.size()) throw InputError("graph class index out of range");
  if (t < 0) throw InputError("ladder radius must be nonnegative");
  int worst = 0;
  for (int y = 0; y < u.size(); ++y) {
    if (u.dist[x][y] > t) continue;
    for (int z = 0; z < u.size(); ++z)
      if (u.dist[y][z] == 1)
        worst = std::max(worst, std::abs(u.classes[y].triangles - u.classes[z].triangles));
  }
  return worst;
}

GraphQuerySpace graph_space(const GraphUniverse& u) {
  const int count = u.size();
  std::vector<std::string> ids(count);
  std::vector<double> matrix(static_cast<std::size_t>(count) * count, 0.0);
  for (int i = 0; i < count; ++i) {
    ids[i] = std::to_string(i);
    for (int j = 0; j < count; ++j)
      matrix[static_cast<std::size_t>(i) * count + j] = u.dist[i][j];
  }

  std::vector<double> support;
  for (const auto& g : u.classes) support.push_back(g.triangles);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  auto spaces = std::make_shared<const SpacePair>(
      SpacePair{DatasetSpace(std::move(ids), std::move(matrix)), ValueSpace(support)});

  std::vector<int> value_index(count);
  for (int i = 0; i < count; ++i)
    value_index[i] = spaces->values.index_of(u.classes[i].triangles);
  return GraphQuerySpace{spaces, QueryFunction(std::move(value_index), *spaces)};
}

}  // namespace ldp
