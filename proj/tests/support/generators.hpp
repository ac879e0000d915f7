#ifndef LDP_TESTS_GENERATORS_HPP
#define LDP_TESTS_GENERATORS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ldp/layer.hpp"
#include "ldp/metric.hpp"

namespace ldp::test {

// Random connected graph on n nodes (spanning tree plus extra edges) with
// BFS shortest-path distances. Integer-valued and geodesic by construction.
std::vector<std::vector<double>> random_graph_metric(int n, std::uint64_t seed);

// A random instance: graph-metric datasets, m anchor datasets defining the
// value support {0..m-1} (|a-b| metric), query = nearest anchor index.
struct RandomInstance {
  QuerySpace qs;
  std::vector<int> anchors;  // dataset index of each support value
};

RandomInstance random_instance(int n, int m, std::uint64_t seed);

// Density p^x(r) proportional to exp(-eps/2 * band(x, anchor_r)): the
// exponential mechanism on anchor scores that are 1-Lipschitz in the band
// metric, so the halved exponent makes each row pair eps-private.
DensityTable anchor_density(const RandomInstance& inst, double eps);

// Random initial values passing the shape and membership checks: random
// nonempty layer-0 sets plus up to `extra_rounds` accepted random extras.
InitialValues random_init(const SpacePair& spaces, std::uint64_t seed,
                          int extra_rounds);

struct MigrationCase {
  int x0 = -1;
  int i0 = -1;
  int r0 = -1;
};

// A migration the membership check can accept: r0 is not yet a source at x0
// and i0 is below both r0's current arrival there and max_index. nullopt
// when the initial values leave no room.
std::optional<MigrationCase> random_migration(const InitialValues& init,
                                              const SpacePair& spaces,
                                              std::uint64_t seed,
                                              int max_index = 8);

}  // namespace ldp::test

#endif  // LDP_TESTS_GENERATORS_HPP
