#ifndef LDP_GRAPHS_HPP
#define LDP_GRAPHS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "ldp/metric.hpp"

namespace ldp {

// One isomorphism class of simple graphs, held by its canonical
// representative: the lexicographically minimal edge set over all node
// permutations. `code` is the packed-mask form of that edge set (pair k of
// the lexicographic pair order sits at bit E-1-k, E = n(n-1)/2), so the
// minimal edge set carries the numerically maximal code.
struct GraphClass {
  int n = 0;
  std::uint32_t code = 0;
  std::vector<std::pair<int, int>> edges;  // canonical, ascending
  int triangles = 0;
};

// All isomorphism classes on n nodes in canonical order (edge count, then
// code), with the geodesic distance matrix of the single-edge-flip relation.
struct GraphUniverse {
  int n = 0;
  std::vector<GraphClass> classes;
  std::vector<std::vector<int>> dist;

  int size() const { return static_cast<int>(classes.size()); }
};

int pair_count(int n);
std::uint32_t edges_to_mask(int n, const std::vector<std::pair<int, int>>& edges);
std::vector<std::pair<int, int>> mask_to_edges(int n, std::uint32_t mask);

// Maximal packed mask over all n! node permutations (idempotent).
std::uint32_t canonical_code(int n, std::uint32_t mask);

// Number of 3-cliques.
int triangle_count(int n, std::uint32_t mask);
int triangle_count(const GraphClass& g);

// Every isomorphism class on n nodes (1..7; larger universes are refused
// with CapacityError). The distance matrix is filled via flip_metric.
GraphUniverse enumerate_graphs(int n);

// BFS shortest-path distances in the flip-adjacency graph of the classes.
// Unit distance is exactly "differ in one edge up to isomorphism"; longer
// distances extend that relation geodesically.
std::vector<std::vector<int>> flip_metric(const GraphUniverse& u);

// max over y with d(x,y) <= t of the local sensitivity of triangle counting
// at y. Radii past the diameter clamp to the whole universe.
int ladder_local_sensitivity(const GraphUniverse& u, int x, int t);

// The universe as a dataset space (ids "0".."N-1", flip distances) with the
// triangle-count query into the support of distinct counts.
using GraphQuerySpace = QuerySpace;

GraphQuerySpace graph_space(const GraphUniverse& u);

}  // namespace ldp

#endif  // LDP_GRAPHS_HPP
