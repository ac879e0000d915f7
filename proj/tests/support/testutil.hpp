#ifndef LDP_TESTS_TESTUTIL_HPP
#define LDP_TESTS_TESTUTIL_HPP

#include <memory>
#include <string>
#include <vector>

#include "ldp/index_set.hpp"
#include "ldp/metric.hpp"

namespace ldp::test {

// Generic small-space assembly: ids "0".."n-1", explicit dataset matrix,
// value support with |a-b|, query given by value (not index).
inline QuerySpace make_query_space(const std::vector<std::vector<double>>& d,
                                   const std::vector<double>& support,
                                   const std::vector<double>& f_values) {
  const int n = static_cast<int>(d.size());
  std::vector<std::string> ids;
  std::vector<double> flat;
  for (int x = 0; x < n; ++x) {
    ids.push_back(std::to_string(x));
    for (int y = 0; y < n; ++y) flat.push_back(d[x][y]);
  }
  auto spaces = std::make_shared<SpacePair>(
      SpacePair{DatasetSpace(std::move(ids), std::move(flat)), ValueSpace(support)});
  std::vector<int> fi;
  for (double v : f_values) fi.push_back(spaces->values.index_of(v));
  return {spaces, QueryFunction(std::move(fi), *spaces)};
}

// Four datasets on a line with |x-y|, identity query into {0,1,2,3}.
inline QuerySpace toy_line() {
  std::vector<std::vector<double>> d(4, std::vector<double>(4, 0.0));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) d[x][y] = std::abs(x - y);
  return make_query_space(d, {0, 1, 2, 3}, {0, 1, 2, 3});
}

inline IndexSet set_of(const std::vector<int>& values, int size) {
  IndexSet s(size);
  for (int v : values) s.set(v);
  return s;
}

}  // namespace ldp::test

#endif  // LDP_TESTS_TESTUTIL_HPP
