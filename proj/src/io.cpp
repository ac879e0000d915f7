#include "ldp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "ldp/errors.hpp"

namespace ldp {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw InputError("invalid JSON in " + path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << text;
  if (!out) throw InputError("write failed: " + path);
}

double number_field(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw InputError(where + ": missing or non-numeric \"" + key + "\"");
  return j.at(key).get<double>();
}

double parse_numeric_id(const std::string& id, const std::string& where) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), v);
  if (ec != std::errc() || ptr != id.data() + id.size())
    throw InputError(where + ": element id \"" + id +
                     "\" is not numeric, as the abs-diff metric requires");
  return v;
}

LoadedSpace finite_space_from_json(const json& j, const std::string& path) {
  if (!j.contains("elements") || !j.at("elements").is_array() ||
      j.at("elements").empty())
    throw InputError(path + ": \"elements\" must be a nonempty array of ids");
  std::vector<std::string> ids;
  for (const auto& e : j.at("elements")) {
    if (!e.is_string()) throw InputError(path + ": element ids must be strings");
    ids.push_back(e.get<std::string>());
  }
  const int n = static_cast<int>(ids.size());

  if (!j.contains("dataset_metric") || !j.at("dataset_metric").is_object())
    throw InputError(path + ": missing \"dataset_metric\"");
  const json& dm = j.at("dataset_metric");
  const std::string type = dm.value("type", "");
  std::vector<double> matrix(static_cast<std::size_t>(n) * n, 0.0);
  if (type == "matrix") {
    if (!dm.contains("matrix") || !dm.at("matrix").is_array() ||
        static_cast<int>(dm.at("matrix").size()) != n)
      throw InputError(path + ": metric matrix must have one row per element");
    for (int x = 0; x < n; ++x) {
      const json& row = dm.at("matrix").at(x);
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw InputError(path + ": metric matrix row has wrong width");
      for (int y = 0; y < n; ++y) {
        if (!row.at(y).is_number())
          throw InputError(path + ": metric entries must be numbers");
        matrix[static_cast<std::size_t>(x) * n + y] = row.at(y).get<double>();
      }
    }
  } else if (type == "abs-diff") {
    std::vector<double> pos;
    for (const auto& id : ids) pos.push_back(parse_numeric_id(id, path));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        matrix[static_cast<std::size_t>(x) * n + y] = std::abs(pos[x] - pos[y]);
  } else {
    throw InputError(path + ": dataset_metric type must be \"matrix\" or \"abs-diff\"");
  }

  if (!j.contains("query") || !j.at("query").is_object() ||
      !j.at("query").contains("values") || !j.at("query").at("values").is_object())
    throw InputError(path + ": missing \"query\" with a \"values\" map");
  if (j.value("value_metric", "") != "abs-diff")
    throw InputError(path + ": value_metric must be \"abs-diff\"");
  const json& qv = j.at("query").at("values");
  std::vector<double> fvals(n, 0.0);
  for (int x = 0; x < n; ++x) {
    if (!qv.contains(ids[x]) || !qv.at(ids[x]).is_number())
      throw InputError(path + ": query value missing for element \"" + ids[x] + "\"");
    fvals[x] = qv.at(ids[x]).get<double>();
  }
  for (const auto& [key, _] : qv.items())
    if (std::find(ids.begin(), ids.end(), key) == ids.end())
      throw InputError(path + ": query names unknown element \"" + key + "\"");

  std::vector<double> support = fvals;
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  try {
    auto spaces = std::make_shared<const SpacePair>(
        SpacePair{DatasetSpace(std::move(ids), std::move(matrix)), ValueSpace(support)});
    std::vector<int> value_index(n);
    for (int x = 0; x < n; ++x) value_index[x] = spaces->values.index_of(fvals[x]);
    return LoadedSpace{spaces, QueryFunction(std::move(value_index), *spaces)};
  } catch (const ConstraintError& e) {
    throw InputError(path + ": " + e.what());
  }
}

GraphUniverse graph_cache_from_json(const json& j, const std::string& path) {
  if (!j.contains("n") || !j.at("n").is_number_integer())
    throw InputError(path + ": missing integer \"n\"");
  const int n = j.at("n").get<int>();
  if (n < 1) throw InputError(path + ": node count must be positive");
  if (n > 7) throw CapacityError("graph universes are supported for 1 to 7 nodes");

  if (!j.contains("classes") || !j.at("classes").is_array() || j.at("classes").empty())
    throw InputError(path + ": \"classes\" must be a nonempty array");
  GraphUniverse u;
  u.n = n;
  for (const auto& c : j.at("classes")) {
    if (!c.is_object() || !c.contains("edges") || !c.at("edges").is_array() ||
        !c.contains("triangles") || !c.at("triangles").is_number_integer())
      throw InputError(path + ": each class needs \"edges\" and \"triangles\"");
    GraphClass g;
    g.n = n;
    for (const auto& e : c.at("edges")) {
      if (!e.is_array() || e.size() != 2 || !e.at(0).is_number_integer() ||
          !e.at(1).is_number_integer())
        throw InputError(path + ": edges must be [u, v] integer pairs");
      g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
    try {
      g.code = edges_to_mask(n, g.edges);
    } catch (const InputError& e) {
      throw InputError(path + ": " + e.what());
    }
    g.triangles = c.at("triangles").get<int>();
    if (g.triangles != triangle_count(n, g.code))
      throw InputError(path + ": cached triangle count does not match the edges");
    u.classes.push_back(std::move(g));
  }
  for (std::size_t i = 1; i < u.classes.size(); ++i) {
    const auto& a = u.classes[i - 1];
    const auto& b = u.classes[i];
    if (a.edges.size() > b.edges.size() ||
        (a.edges.size() == b.edges.size() && a.code >= b.code))
      throw InputError(path + ": classes are not in canonical order");
  }

  const int count = u.size();
  if (!j.contains("dist") || !j.at("dist").is_array() ||
      static_cast<int>(j.at("dist").size()) != count)
    throw InputError(path + ": \"dist\" must be a square matrix over the classes");
  u.dist.assign(count, std::vector<int>(count, 0));
  for (int x = 0; x < count; ++x) {
    const json& row = j.at("dist").at(x);
    if (!row.is_array() || static_cast<int>(row.size()) != count)
      throw InputError(path + ": distance row has wrong width");
    for (int y = 0; y < count; ++y) {
      if (!row.at(y).is_number_integer())
        throw InputError(path + ": distances must be integers");
      u.dist[x][y] = row.at(y).get<int>();
    }
  }
  for (int x = 0; x < count; ++x) {
    if (u.dist[x][x] != 0) throw InputError(path + ": nonzero diagonal distance");
    for (int y = 0; y < count; ++y)
      if (u.dist[x][y] != u.dist[y][x] || u.dist[x][y] < 0 ||
          (x != y && u.dist[x][y] == 0))
        throw InputError(path + ": distance matrix is not a metric over classes");
  }
  return u;
}

}  // namespace

SpaceFileKind probe_space_file(const std::string& path) {
  const json j = parse_file(path);
  if (!j.is_object()) throw InputError(path + ": expected a JSON object");
  if (j.contains("kind")) return SpaceFileKind::finite;
  if (j.contains("classes")) return SpaceFileKind::graph_cache;
  if (j.contains("V")) return SpaceFileKind::linear;
  throw InputError(path + ": unrecognized space file (no kind/classes/V key)");
}

LoadedSpace load_space_file(const std::string& path) {
  const json j = parse_file(path);
  if (!j.is_object()) throw InputError(path + ": expected a JSON object");
  if (j.contains("kind")) {
    if (j.at("kind") != "finite")
      throw InputError(path + ": only \"finite\" spaces are supported here");
    return finite_space_from_json(j, path);
  }
  if (j.contains("classes")) {
    try {
      return graph_space(graph_cache_from_json(j, path));
    } catch (const ConstraintError& e) {
      throw InputError(path + ": " + e.what());
    }
  }
  throw InputError(path + ": not a finite space or graph cache");
}

GraphUniverse load_graph_cache_file(const std::string& path) {
  return graph_cache_from_json(parse_file(path), path);
}

void save_graph_cache(const std::string& path, const GraphUniverse& u) {
  json j;
  j["n"] = u.n;
  json classes = json::array();
  for (const auto& g : u.classes) {
    json edges = json::array();
    for (const auto& [a, b] : g.edges) edges.push_back(json::array({a, b}));
    classes.push_back(json{{"edges", std::move(edges)}, {"triangles", g.triangles}});
  }
  j["classes"] = std::move(classes);
  j["dist"] = u.dist;
  write_text(path, j.dump(2) + "\n");
}

MechanismFile load_mechanism_file(const std::string& path, const SpacePair& spaces) {
  const json j = parse_file(path);
  if (!j.is_object()) throw InputError(path + ": expected a JSON object");
  MechanismFile out;
  out.epsilon = number_field(j, "epsilon", path);
  if (!(out.epsilon > 0.0) || !std::isfinite(out.epsilon))
    throw InputError(path + ": epsilon must be a positive finite number");
  if (!j.contains("initial") || !j.at("initial").is_object())
    throw InputError(path + ": missing \"initial\" map");

  const int n = spaces.datasets.size();
  const int m = spaces.values.size();
  out.init.layer0.assign(n, IndexSet(m));
  out.init.extras.resize(n);

  const json& initial = j.at("initial");
  for (const auto& [key, _] : initial.items())
    if (spaces.datasets.index_of(key) < 0)
      throw InputError(path + ": initial values name unknown dataset \"" + key + "\"");

  auto value_index = [&](const json& v) {
    if (!v.is_number()) throw InputError(path + ": initial values must be numbers");
    const int r = spaces.values.index_of(v.get<double>());
    if (r < 0)
      throw InputError(path + ": value " + v.dump() + " is not in the support");
    return r;
  };

  for (int x = 0; x < n; ++x) {
    const std::string& id = spaces.datasets.id(x);
    if (!initial.contains(id))
      throw InputError(path + ": no initial values for dataset \"" + id + "\"");
    const json& entry = initial.at(id);
    if (!entry.is_object() || !entry.contains("layer0") ||
        !entry.at("layer0").is_array())
      throw InputError(path + ": dataset \"" + id + "\" needs a \"layer0\" array");
    for (const auto& v : entry.at("layer0")) out.init.layer0[x].set(value_index(v));
    if (!entry.contains("extras")) continue;
    if (!entry.at("extras").is_array())
      throw InputError(path + ": \"extras\" must be an array");
    for (const auto& e : entry.at("extras")) {
      if (!e.is_object() || !e.contains("i") || !e.at("i").is_number_integer() ||
          !e.contains("set") || !e.at("set").is_array())
        throw InputError(path + ": each extra needs an integer \"i\" and a \"set\"");
      IndexSet s(m);
      for (const auto& v : e.at("set")) s.set(value_index(v));
      out.init.extras[x].emplace_back(e.at("i").get<int>(), std::move(s));
    }
  }
  return out;
}

void save_mechanism_file(const std::string& path, const InitialValues& init,
                         double epsilon, const SpacePair& spaces) {
  json initial;
  for (int x = 0; x < spaces.datasets.size(); ++x) {
    json entry;
    json layer0 = json::array();
    for (int r : init.layer0[x].elements()) layer0.push_back(spaces.values.point(r));
    entry["layer0"] = std::move(layer0);
    json extras = json::array();
    for (const auto& [i, s] : init.extras[x]) {
      json set = json::array();
      for (int r : s.elements()) set.push_back(spaces.values.point(r));
      extras.push_back(json{{"i", i}, {"set", std::move(set)}});
    }
    entry["extras"] = std::move(extras);
    initial[spaces.datasets.id(x)] = std::move(entry);
  }
  json j;
  j["epsilon"] = epsilon;
  j["initial"] = std::move(initial);
  write_text(path, j.dump(2) + "\n");
}

LinearSpecFile load_linear_spec_file(const std::string& path) {
  const json j = parse_file(path);
  if (!j.is_object() || !j.contains("V") || !j.at("V").is_array())
    throw InputError(path + ": expected an object with a \"V\" interval list");
  std::vector<std::pair<double, double>> parts;
  for (const auto& p : j.at("V")) {
    if (!p.is_array() || p.size() != 2 || !p.at(0).is_number() || !p.at(1).is_number())
      throw InputError(path + ": intervals must be [a, b] number pairs");
    parts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  }
  LinearSpecFile out;
  try {
    out.spec = make_linear_spec(IntervalUnion(std::move(parts)));
  } catch (const ConstraintError& e) {
    throw InputError(path + ": " + e.what());
  }
  out.delta = number_field(j, "delta", path);
  if (!std::isfinite(out.delta) || out.delta < 0.0)
    throw InputError(path + ": delta must be finite and nonnegative");
  out.epsilon = number_field(j, "epsilon", path);
  if (!(out.epsilon > 0.0) || !std::isfinite(out.epsilon))
    throw InputError(path + ": epsilon must be a positive finite number");
  return out;
}

void save_linear_layers(const std::string& path, const LinearLayers& layers) {
  json j;
  j["a_n"] = layers.a_n;
  j["converged"] = layers.converged;
  j["delta"] = layers.delta;
  j["delta_f"] = layers.delta_f;
  j["n"] = layers.n;
  json ls = json::array();
  for (const auto& layer : layers.layers) {
    json pieces = json::array();
    for (const auto& [a, b] : layer.pieces()) pieces.push_back(json::array({a, b}));
    ls.push_back(std::move(pieces));
  }
  j["layers"] = std::move(ls);
  write_text(path, j.dump(2) + "\n");
}

void save_reports(const std::string& path, const std::vector<CheckReport>& reports,
                  const SpacePair* spaces) {
  json arr = json::array();
  for (const auto& r : reports) {
    json w;
    w["detail"] = r.witness.detail;
    if (spaces && r.witness.x >= 0)
      w["x"] = spaces->datasets.id(r.witness.x);
    else
      w["x"] = nullptr;
    if (spaces && r.witness.y >= 0)
      w["y"] = spaces->datasets.id(r.witness.y);
    else
      w["y"] = nullptr;
    if (spaces && r.witness.r >= 0)
      w["r"] = spaces->values.point(r.witness.r);
    else
      w["r"] = nullptr;
    json entry;
    entry["check"] = r.check;
    entry["pass"] = r.pass;
    if (r.refused) entry["refused"] = true;
    if (std::isfinite(r.epsilon_effective))
      entry["epsilon_effective"] = r.epsilon_effective;
    else
      entry["epsilon_effective"] = nullptr;
    entry["margin"] = r.margin;
    entry["witness"] = std::move(w);
    arr.push_back(std::move(entry));
  }
  write_text(path, arr.dump(2) + "\n");
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::string text = header + "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) text += ',';
      text += row[i];
    }
    text += '\n';
  }
  write_text(path, text);
}

}  // namespace ldp
