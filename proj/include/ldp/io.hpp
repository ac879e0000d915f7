#ifndef LDP_IO_HPP
#define LDP_IO_HPP

#include <string>
#include <vector>

#include "ldp/graphs.hpp"
#include "ldp/intervals.hpp"
#include "ldp/layer.hpp"
#include "ldp/metric.hpp"
#include "ldp/verify.hpp"

namespace ldp {

// All loaders throw InputError on unreadable, unparsable, or semantically
// invalid space-like files (a bad file is bad input, whichever layer catches
// it). Mechanism files are the exception: shape or membership violations in
// otherwise well-formed files surface as ConstraintError so the caller can
// distinguish "cannot read" from "reads fine but is rejected".

using LoadedSpace = QuerySpace;

enum class SpaceFileKind { finite, graph_cache, linear };

// Classifies a JSON file by its top-level keys: "kind" (finite space),
// "classes" (graph cache), "V" (linear query spec).
SpaceFileKind probe_space_file(const std::string& path);

// Finite space files or graph caches; both yield a dataset/value pair and
// the query. Graph caches go through graph_space().
LoadedSpace load_space_file(const std::string& path);

GraphUniverse load_graph_cache_file(const std::string& path);
void save_graph_cache(const std::string& path, const GraphUniverse& u);

struct MechanismFile {
  double epsilon = 0.0;
  InitialValues init;
};

MechanismFile load_mechanism_file(const std::string& path, const SpacePair& spaces);
void save_mechanism_file(const std::string& path, const InitialValues& init,
                         double epsilon, const SpacePair& spaces);

struct LinearSpecFile {
  LinearQuerySpec spec;
  double delta = 0.0;
  double epsilon = 0.0;
};

LinearSpecFile load_linear_spec_file(const std::string& path);
void save_linear_layers(const std::string& path, const LinearLayers& layers);

// Check reports as a JSON array; witness dataset indices resolve to ids when
// a space is supplied.
void save_reports(const std::string& path, const std::vector<CheckReport>& reports,
                  const SpacePair* spaces);

// Locale-independent %.12g.
std::string format_number(double v);

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace ldp

#endif  // LDP_IO_HPP
