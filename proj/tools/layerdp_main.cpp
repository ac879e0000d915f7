#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ldp/baselines.hpp"
#include "ldp/builders.hpp"
#include "ldp/distribution.hpp"
#include "ldp/errors.hpp"
#include "ldp/graphs.hpp"
#include "ldp/intervals.hpp"
#include "ldp/io.hpp"
#include "ldp/layer.hpp"
#include "ldp/verify.hpp"

namespace {

using namespace ldp;

std::vector<double> parse_grid(const std::string& text) {
  double a = 0.0, b = 0.0, step = 0.0;
  char colon1 = 0, colon2 = 0;
  std::istringstream in(text);
  in >> a >> colon1 >> b >> colon2 >> step;
  if (!in || colon1 != ':' || colon2 != ':' || !(in >> std::ws).eof())
    throw InputError("grid must look like a:b:step, got \"" + text + "\"");
  if (!(step > 0.0) || b < a) throw InputError("grid needs b >= a and step > 0");
  std::vector<double> out;
  for (double v = a; v <= b + 1e-9; v += step) {
    out.push_back(v);
    if (out.size() > 100000) throw CapacityError("grid has too many points");
  }
  return out;
}

// Query-shaped map file {"values":{id:number}} resolved against the support.
std::vector<int> load_value_map(const std::string& path, const SpacePair& spaces) {
  nlohmann::json j;
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file: " + path);
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw InputError("invalid JSON in " + path + ": " + e.what());
    }
  }
  if (!j.is_object() || !j.contains("values") || !j.at("values").is_object())
    throw InputError(path + ": expected {\"values\": {id: number}}");
  const auto& values = j.at("values");
  std::vector<int> out(spaces.datasets.size(), -1);
  for (int x = 0; x < spaces.datasets.size(); ++x) {
    const std::string& id = spaces.datasets.id(x);
    if (!values.contains(id) || !values.at(id).is_number())
      throw InputError(path + ": missing numeric value for dataset \"" + id + "\"");
    out[x] = spaces.values.index_of(values.at(id).get<double>());
    if (out[x] < 0)
      throw InputError(path + ": value for dataset \"" + id +
                       "\" is not in the support");
  }
  return out;
}

struct SpaceGraphsOptions {
  int nodes = 0;
  std::string out;
};

void run_space_graphs(const SpaceGraphsOptions& o) {
  const GraphUniverse u = enumerate_graphs(o.nodes);
  save_graph_cache(o.out, u);
  std::cout << "classes: " << u.size() << "\n";
}

struct SpaceLinearOptions {
  std::string spec;
  std::string out;
};

void run_space_linear(const SpaceLinearOptions& o) {
  const LinearSpecFile f = load_linear_spec_file(o.spec);
  const LinearLayers layers = layers_linear(f.spec, f.delta);
  save_linear_layers(o.out, layers);
  std::cout << "converged: n=" << layers.n << " a_n=" << format_number(layers.a_n)
            << "\n";
}

struct MechBuildOptions {
  std::string space;
  std::string kind;
  std::string out;
  std::string assign;
  std::string via;
  double eps = 0.0;
  double delta = 0.0;
  bool delta_given = false;
  int delta_head = -1;
};

void run_mech_build(const MechBuildOptions& o) {
  if (probe_space_file(o.space) == SpaceFileKind::linear)
    throw InputError(
        "linear query specs have no mechanism file; use `space linear`, "
        "`utility`, or `compare` on them directly");
  const LoadedSpace ls = load_space_file(o.space);
  if (!(o.eps > 0.0) || !std::isfinite(o.eps))
    throw InputError("--eps must be a positive finite number");

  InitialValues init;
  if (o.kind == "purest") {
    init = build_purest(ls.query, *ls.spaces);
  } else if (o.kind == "atomic") {
    if (o.assign.empty()) throw InputError("--kind atomic needs --assign FILE");
    init = build_atomic(load_value_map(o.assign, *ls.spaces), *ls.spaces);
  } else if (o.kind == "delta") {
    if (!o.delta_given) throw InputError("--kind delta needs --delta");
    std::vector<double> deltas(ls.spaces->datasets.size(), o.delta);
    if (o.delta_head >= 0)
      for (int x = o.delta_head; x < static_cast<int>(deltas.size()); ++x)
        deltas[x] = 0.0;
    init = build_delta_neighborhood(ls.query, deltas, *ls.spaces);
  } else if (o.kind == "approx") {
    if (o.via.empty()) throw InputError("--kind approx needs --via FILE");
    QueryFunction g(load_value_map(o.via, *ls.spaces), *ls.spaces);
    const ApproximateResult res = approximate_via(g, ls.query, *ls.spaces);
    init = res.init;
    std::cout << "approximated datasets: " << res.approximated_at.size() << "\n";
  } else {
    throw InputError("--kind must be purest, atomic, delta, or approx");
  }

  save_mechanism_file(o.out, init, o.eps, *ls.spaces);
  std::cout << "mechanism written: " << o.out << "\n";
}

struct MechVerifyOptions {
  std::string mech;
  std::string space;
  std::string report;
  double eps = 0.0;
  bool eps_given = false;
};

void run_mech_verify(const MechVerifyOptions& o) {
  const LoadedSpace ls = load_space_file(o.space);
  const MechanismFile mf = load_mechanism_file(o.mech, *ls.spaces);
  const double eps = o.eps_given ? o.eps : mf.epsilon;
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw InputError("--eps must be a positive finite number");

  std::vector<CheckReport> reports;
  auto emit = [&](const CheckReport& r) {
    reports.push_back(r);
    std::cout << r.check << ": " << (r.pass ? "pass" : "FAIL") << "\n";
  };

  const MembershipVerdict mv = validate_membership_C(mf.init, *ls.spaces);
  CheckReport membership;
  membership.check = "membership";
  membership.pass = mv.ok;
  if (!mv.ok) {
    membership.witness.x = mv.dataset;
    membership.witness.r = mv.offending.empty() ? -1 : mv.offending.front();
    membership.witness.detail = mv.reason;
  }
  emit(membership);
  if (!mv.ok) {
    save_reports(o.report, reports, ls.spaces.get());
    throw ConstraintError("initial values rejected: " + mv.reason);
  }

  const LayerSequence seq = reconstruct(mf.init, *ls.spaces, eps);
  emit(check_layer_adjacency(seq, *ls.spaces));

  const LayeredDistribution dist(seq, ls.spaces);
  const EffectiveEpsilon eff = effective_epsilon(dist);
  CheckReport ee;
  ee.check = "effective-epsilon";
  ee.epsilon_effective = eff.finite
                             ? eff.value
                             : std::numeric_limits<double>::infinity();
  ee.pass = eff.finite && eff.value <= 2.0 * eps + 1e-9;
  ee.margin = 2.0 * eps - ee.epsilon_effective;
  ee.witness = eff.witness;
  emit(ee);

  const BasicVerdict bv = check_basic(seq, *ls.spaces);
  CheckReport basic;
  basic.check = "basic";
  basic.pass = true;
  basic.witness.detail =
      bv.basic ? "initial values are basic"
               : "extra sets present (first at dataset " +
                     ls.spaces->datasets.id(bv.dataset) + ", index " +
                     std::to_string(bv.index) + ")";
  emit(basic);

  save_reports(o.report, reports, ls.spaces.get());
  for (const auto& r : reports)
    if (!r.pass) throw ConstraintError("verification failed: " + r.check);
}

struct UtilityOptions {
  std::string mech;
  std::string space;
  std::string out;
  std::string prior = "uniform";
  double eps = 0.0;
  bool eps_given = false;
};

void run_utility(const UtilityOptions& o) {
  if (o.prior != "uniform") throw InputError("--prior supports only \"uniform\"");

  if (probe_space_file(o.space) == SpaceFileKind::linear) {
    const LinearSpecFile f = load_linear_spec_file(o.space);
    const double eps = o.eps_given ? o.eps : f.epsilon;
    const double p_bar = utility_linear(f.spec, f.delta, eps);
    write_csv(o.out, "x,epsilon,p_bar",
              {{"0", format_number(eps), format_number(p_bar)}});
    std::cout << "expected utility: " << format_number(p_bar) << "\n";
    return;
  }

  if (o.mech.empty()) throw InputError("--mech is required for finite spaces");
  const LoadedSpace ls = load_space_file(o.space);
  const MechanismFile mf = load_mechanism_file(o.mech, *ls.spaces);
  const double eps = o.eps_given ? o.eps : mf.epsilon;
  const LayerSequence seq = reconstruct(mf.init, *ls.spaces, eps);
  const LayeredDistribution dist(seq, ls.spaces);

  std::vector<std::vector<std::string>> rows;
  for (int x = 0; x < ls.spaces->datasets.size(); ++x)
    rows.push_back({ls.spaces->datasets.id(x), format_number(eps),
                    format_number(expected_distortion(dist, x, ls.query))});
  write_csv(o.out, "x,epsilon,p_bar", rows);
  const double total = expected_utility(
      dist, ls.query, Prior::uniform(ls.spaces->datasets.size()));
  std::cout << "expected utility: " << format_number(total) << "\n";
}

struct CompareOptions {
  std::string space;
  std::string ours;
  std::string baseline;
  std::string eps_grid;
  std::string delta_grid;
  std::string out;
  std::string audit;
  double delta = 0.0;
  bool delta_given = false;
  int delta_head = -1;
};

void compare_linear(const CompareOptions& o, const std::vector<double>& eps_grid) {
  if (o.ours != "delta")
    throw InputError("linear comparisons support --ours delta only");
  if (o.baseline != "staircase")
    throw InputError("linear comparisons support --baseline staircase only");
  const LinearSpecFile f = load_linear_spec_file(o.space);
  std::vector<double> deltas;
  if (!o.delta_grid.empty())
    deltas = parse_grid(o.delta_grid);
  else
    deltas.push_back(o.delta_given ? o.delta : f.delta);

  std::vector<CheckReport> audits;
  std::vector<std::vector<std::string>> rows;
  for (double d : deltas) {
    CheckReport cert = certify_interval_epsilon(f.spec, d, eps_grid.front());
    cert.witness.detail += (cert.witness.detail.empty() ? "" : "; ");
    cert.witness.detail += "delta=" + format_number(d) +
                           "; the certificate is structural and covers every "
                           "epsilon on the grid";
    audits.push_back(cert);
    for (double e : eps_grid) {
      const double ours = utility_linear(f.spec, d, e);
      const double base = staircase_utility(f.spec.delta_f, e);
      rows.push_back({format_number(d), format_number(e), format_number(ours / base)});
    }
  }
  write_csv(o.out, "delta,epsilon,ratio", rows);
  const std::string audit_path = o.audit.empty() ? o.out + ".audit.json" : o.audit;
  save_reports(audit_path, audits, nullptr);
  std::cout << "rows: " << rows.size() << "\naudit: " << audit_path << "\n";
  for (const auto& r : audits)
    if (!r.pass)
      throw ConstraintError("privacy certification failed; see " + audit_path);
}

void run_compare(const CompareOptions& o) {
  const std::vector<double> eps_grid = parse_grid(o.eps_grid);
  const SpaceFileKind kind = probe_space_file(o.space);
  if (kind == SpaceFileKind::linear) {
    compare_linear(o, eps_grid);
    return;
  }

  if (o.baseline == "staircase")
    throw InputError("--baseline staircase runs on linear query specs");
  if (o.baseline == "ladder" && kind != SpaceFileKind::graph_cache)
    throw InputError("--baseline ladder needs a graph cache space");

  GraphUniverse universe;
  LoadedSpace ls;
  if (kind == SpaceFileKind::graph_cache) {
    universe = load_graph_cache_file(o.space);
    ls = [&] {
      try {
        return graph_space(universe);
      } catch (const ConstraintError& e) {
        throw InputError(o.space + ": " + std::string(e.what()));
      }
    }();
  } else {
    ls = load_space_file(o.space);
  }
  const SpacePair& spaces = *ls.spaces;
  const int n = spaces.datasets.size();

  InitialValues init;
  if (o.ours == "purest") {
    init = build_purest(ls.query, spaces);
  } else if (o.ours == "delta") {
    if (!o.delta_given) throw InputError("--ours delta needs --delta");
    std::vector<double> deltas(n, o.delta);
    if (o.delta_head >= 0)
      for (int x = o.delta_head; x < n; ++x) deltas[x] = 0.0;
    init = build_delta_neighborhood(ls.query, deltas, spaces);
  } else {
    throw InputError("--ours must be purest or delta");
  }

  // The layer structure is epsilon-free; only the weights change with eps.
  LayerSequence seq = reconstruct(init, spaces, 1.0);

  std::vector<double> exp_scores_sensitivity;
  std::vector<std::vector<double>> scores;
  if (o.baseline == "exponential") {
    scores.assign(n, std::vector<double>(spaces.values.size(), 0.0));
    for (int x = 0; x < n; ++x)
      for (int r = 0; r < spaces.values.size(); ++r)
        scores[x][r] = -spaces.values.dist(ls.query(x), r);
  }

  std::vector<CheckReport> audits;
  std::vector<std::vector<std::string>> rows;
  bool certified = true;
  for (double e : eps_grid) {
    seq.epsilon = e;
    const LayeredDistribution ours(seq, ls.spaces);

    DensityTable base;
    double base_bound = 2.0 * e;
    if (o.baseline == "ladder") {
      base = ladder_mech(universe, e);
    } else if (o.baseline == "laplace") {
      base = laplace_discrete(ls.query, spaces, e);
    } else if (o.baseline == "exponential") {
      base = exponential_mech(scores, global_sensitivity(ls.query, spaces), e);
      base_bound = e;
    } else {
      throw InputError("--baseline must be ladder, staircase, laplace, or exponential");
    }

    const EffectiveEpsilon eff_ours = effective_epsilon(ours);
    CheckReport ours_report;
    ours_report.check = "ours-effective-epsilon";
    ours_report.epsilon_effective =
        eff_ours.finite ? eff_ours.value : std::numeric_limits<double>::infinity();
    ours_report.pass = eff_ours.finite && eff_ours.value <= 2.0 * e + 1e-9;
    ours_report.margin = 2.0 * e - ours_report.epsilon_effective;
    ours_report.witness = eff_ours.witness;
    ours_report.witness.detail += (ours_report.witness.detail.empty() ? "" : "; ");
    ours_report.witness.detail += "epsilon=" + format_number(e);
    audits.push_back(ours_report);

    const EffectiveEpsilon eff_base = effective_epsilon(base, spaces);
    CheckReport base_report;
    base_report.check = "baseline-effective-epsilon";
    base_report.epsilon_effective =
        eff_base.finite ? eff_base.value : std::numeric_limits<double>::infinity();
    base_report.pass = eff_base.finite && eff_base.value <= base_bound + 1e-9;
    base_report.margin = base_bound - base_report.epsilon_effective;
    base_report.witness = eff_base.witness;
    base_report.witness.detail += (base_report.witness.detail.empty() ? "" : "; ");
    base_report.witness.detail += "epsilon=" + format_number(e);
    audits.push_back(base_report);
    certified = certified && ours_report.pass && base_report.pass;

    for (int x = 0; x < n; ++x) {
      const double pu = expected_distortion(ours, x, ls.query);
      const double pb = expected_distortion_density(base, spaces, x, ls.query);
      const double ratio = pb > 0.0 ? pu / pb : 1.0;
      rows.push_back({spaces.datasets.id(x), format_number(e), format_number(ratio)});
    }
  }

  write_csv(o.out, "graph_index,epsilon,ratio", rows);
  const std::string audit_path = o.audit.empty() ? o.out + ".audit.json" : o.audit;
  save_reports(audit_path, audits, ls.spaces.get());
  std::cout << "rows: " << rows.size() << "\naudit: " << audit_path << "\n";
  if (!certified)
    throw ConstraintError("privacy certification failed; see " + audit_path);
}

struct SampleOptions {
  std::string mech;
  std::string space;
  std::string x;
  int n = 1;
  std::uint64_t seed = 0;
};

void run_sample(const SampleOptions& o) {
  if (o.n < 1) throw InputError("--n must be at least 1");

  if (probe_space_file(o.space) == SpaceFileKind::linear) {
    const LinearSpecFile f = load_linear_spec_file(o.space);
    double center = 0.0;
    try {
      std::size_t pos = 0;
      center = std::stod(o.x, &pos);
      if (pos != o.x.size()) throw std::invalid_argument(o.x);
    } catch (const std::exception&) {
      throw InputError("--x must be a numeric center for linear specs");
    }
    for (int i = 0; i < o.n; ++i)
      std::cout << format_number(sample_linear(f.spec, f.delta, f.epsilon, center,
                                               o.seed + static_cast<std::uint64_t>(i)))
                << "\n";
    return;
  }

  if (o.mech.empty()) throw InputError("--mech is required for finite spaces");
  const LoadedSpace ls = load_space_file(o.space);
  const MechanismFile mf = load_mechanism_file(o.mech, *ls.spaces);
  const int x = ls.spaces->datasets.index_of(o.x);
  if (x < 0) throw InputError("unknown dataset id \"" + o.x + "\"");
  const LayerSequence seq = reconstruct(mf.init, *ls.spaces, mf.epsilon);
  const LayeredDistribution dist(seq, ls.spaces);
  for (int i = 0; i < o.n; ++i)
    std::cout << format_number(
                     sample(dist, x, o.seed + static_cast<std::uint64_t>(i)))
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"layered differentially private mechanisms over metric spaces"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI file");

  SpaceGraphsOptions sg;
  SpaceLinearOptions sl;
  MechBuildOptions mb;
  MechVerifyOptions mv;
  UtilityOptions ut;
  CompareOptions cp;
  SampleOptions sp;

  auto* space = app.add_subcommand("space", "build dataset/value spaces");
  space->require_subcommand(1);
  auto* graphs = space->add_subcommand("graphs", "enumerate graph classes");
  graphs->add_option("--nodes", sg.nodes, "node count")->required();
  graphs->add_option("--out", sg.out, "cache file to write")->required();
  graphs->callback([&] { run_space_graphs(sg); });

  auto* linear = space->add_subcommand("linear", "materialize linear query layers");
  linear->add_option("--spec", sl.spec, "linear query spec file")->required();
  linear->add_option("--out", sl.out, "layer dump to write")->required();
  linear->callback([&] { run_space_linear(sl); });

  auto* mech = app.add_subcommand("mech", "build and verify mechanisms");
  mech->require_subcommand(1);
  auto* build = mech->add_subcommand("build", "construct initial values");
  build->add_option("--space", mb.space, "space file")->required();
  build->add_option("--kind", mb.kind, "purest|atomic|delta|approx")->required();
  build->add_option("--eps", mb.eps, "privacy parameter")->required();
  build->add_option("--out", mb.out, "mechanism file to write")->required();
  build->add_option("--assign", mb.assign, "value map for --kind atomic");
  build->add_option("--via", mb.via, "substitute query map for --kind approx");
  auto* build_delta = build->add_option("--delta", mb.delta, "neighborhood radius");
  build->add_option("--delta-head", mb.delta_head,
                    "apply --delta to the first N datasets only");
  build->callback([&] {
    mb.delta_given = build_delta->count() > 0;
    run_mech_build(mb);
  });

  auto* verify = mech->add_subcommand("verify", "check a mechanism file");
  verify->add_option("--mech", mv.mech, "mechanism file")->required();
  verify->add_option("--space", mv.space, "space file")->required();
  auto* verify_eps = verify->add_option("--eps", mv.eps, "claimed epsilon");
  verify->add_option("--report", mv.report, "report file to write")->required();
  verify->callback([&] {
    mv.eps_given = verify_eps->count() > 0;
    run_mech_verify(mv);
  });

  auto* utility = app.add_subcommand("utility", "per-dataset expected distortion");
  utility->add_option("--mech", ut.mech, "mechanism file");
  utility->add_option("--space", ut.space, "space file")->required();
  auto* utility_eps = utility->add_option("--eps", ut.eps, "privacy parameter");
  utility->add_option("--prior", ut.prior, "dataset prior (uniform)");
  utility->add_option("--out", ut.out, "CSV file to write")->required();
  utility->callback([&] {
    ut.eps_given = utility_eps->count() > 0;
    run_utility(ut);
  });

  auto* compare = app.add_subcommand("compare", "utility ratios against a baseline");
  compare->add_option("--space", cp.space, "space or spec file")->required();
  compare->add_option("--ours", cp.ours, "purest|delta")->required();
  compare->add_option("--baseline", cp.baseline,
                      "ladder|staircase|laplace|exponential")
      ->required();
  compare->add_option("--eps-grid", cp.eps_grid, "a:b:step")->required();
  compare->add_option("--delta-grid", cp.delta_grid, "a:b:step (linear specs)");
  auto* compare_delta = compare->add_option("--delta", cp.delta, "neighborhood radius");
  compare->add_option("--delta-head", cp.delta_head,
                      "apply --delta to the first N datasets only");
  compare->add_option("--out", cp.out, "CSV file to write")->required();
  compare->add_option("--audit", cp.audit,
                      "certification report (default: OUT.audit.json)");
  compare->callback([&] {
    cp.delta_given = compare_delta->count() > 0;
    run_compare(cp);
  });

  auto* sample_cmd = app.add_subcommand("sample", "deterministic draws");
  sample_cmd->add_option("--mech", sp.mech, "mechanism file");
  sample_cmd->add_option("--space", sp.space, "space file")->required();
  sample_cmd->add_option("--x", sp.x, "dataset id (or center for linear specs)")
      ->required();
  sample_cmd->add_option("--n", sp.n, "number of draws");
  sample_cmd->add_option("--seed", sp.seed, "RNG seed");
  sample_cmd->callback([&] { run_sample(sp); });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConstraintError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
