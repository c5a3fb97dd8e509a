#include "cli.hpp"

#include <CLI11.hpp>

#include <graphlp/certificate.hpp>
#include <graphlp/experiments.hpp>
#include <graphlp/parallel.hpp>
#include <graphlp/polytope.hpp>
#include <graphlp/rigidity.hpp>
#include <graphlp/serialize.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace graphlp::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Graph load_graph(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return parse_graph(text);
  } catch (const GraphError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Json run_header(const std::string& command, Json config) {
  return {{"tool", "graphlp"}, {"version", kVersion}, {"command", command}, {"config", std::move(config)}};
}

struct Common {
  unsigned threads = 0;
  std::string out_path;
};

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + c.out_path + "'");
  f << text;
}

std::string probe_summary(const RigidityReport& rep) {
  std::ostringstream os;
  os << rep.found << "/" << rep.samples << " samples realized; ranks";
  for (const auto& [rank, count] : rep.ranks) os << " " << rank << ":" << count;
  os << "; expected rank " << rep.expected_rank << "; verdict " << verdict_name(rep.verdict);
  return os.str();
}

CertifyOptions certify_options(int seeds, std::uint64_t seed, bool probe) {
  CertifyOptions opts;
  if (probe) {
    opts.regularity_probe = [seeds, seed](const Graph& block) {
      ProbeOptions po;
      po.master_seed = seed;
      const RigidityReport rep = regularity_probe(block, seeds, po);
      return RegularityEvidence{rep.verdict == Verdict::RegularAtAllSamples, probe_summary(rep)};
    };
  }
  return opts;
}

// ------------------------------------------------------------------ analyze

Json analyze(const std::string& path, const Graph& g, int seeds, std::uint64_t seed) {
  Json out;
  out["run"] = run_header("analyze", {{"graph", path}, {"seeds", seeds}, {"seed", seed}});
  out["graph"] = to_json(g);
  out["is_tree"] = is_tree(g);
  out["is_bipartite"] = is_bipartite(g);
  const auto dec = contract_pendant_trees(g);
  Json forest = Json::array();
  for (const auto& t : dec.pendant_forest) forest.push_back({{"root", t.root}, {"vertices", t.vertices}});
  out["two_core"] = {{"vertices", dec.core_vertices}, {"graph", to_json(dec.core)}, {"pendant_trees", forest}};
  Json blocks = Json::array();
  Json probes = Json::array();
  if (!dec.is_tree && dec.core.vertex_count() > 1) {
    const auto bd = block_decomposition(dec.core);
    for (const auto& b : bd.blocks) {
      std::vector<int> ids;
      for (int v : b.vertices) ids.push_back(dec.core_vertices[static_cast<std::size_t>(v - 1)]);
      std::string kind = b.graph.vertex_count() == 2 ? "edge" : (b.graph.vertex_count() == 3 && is_complete(b.graph) ? "triangle" : "general");
      blocks.push_back({{"vertices", ids}, {"edges", b.graph.edge_count()}, {"kind", kind}});
      ProbeOptions po;
      po.master_seed = seed;
      const RigidityReport rep = regularity_probe(b.graph, seeds, po);
      probes.push_back({{"block", ids}, {"summary", probe_summary(rep)}, {"verdict", verdict_name(rep.verdict)}});
    }
    std::vector<int> cuts;
    for (int c : bd.cut_vertices) cuts.push_back(dec.core_vertices[static_cast<std::size_t>(c - 1)]);
    out["cut_vertices"] = cuts;
  } else {
    out["cut_vertices"] = Json::array();
  }
  out["blocks"] = blocks;
  out["probes"] = probes;
  return out;
}

// ------------------------------------------------------------------ polytope

ExponentVector parse_point(const std::vector<std::string>& parts) {
  RationalVector v;
  for (const auto& p : parts) {
    try {
      v.push_back(parse_rational(p));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--check: ") + e.what());
    }
  }
  try {
    return ExponentVector(std::move(v));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--check: ") + e.what());
  }
}

Json polytope_report(const std::string& kind_name, int d, const std::vector<std::string>& check) {
  CaseStudy kind;
  try {
    kind = parse_case_study(kind_name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (d < 2) throw UsageError("--d must be at least 2");
  Json out;
  Json cfg{{"kind", kind_name}, {"d", d}};
  if (!check.empty()) cfg["check"] = check;
  out["run"] = run_header("polytope", cfg);
  const HalfspaceSystem nec = necessary_halfspaces(kind, d);
  out["necessary"] = to_json(nec);
  if (d != 2) {
    out["note"] = "sufficient regions are only available for the circle (d = 2)";
    if (!check.empty()) {
      const auto x = parse_point(check);
      if (x.size() != 3) throw UsageError("--check takes three exponents");
      out["check"] = {{"point", to_json(x)}, {"necessary", to_json(halfspace_membership(nec, x), nec)}};
    }
    return out;
  }
  const VertexPolytope suff = sufficient_vertices(kind);
  out["sufficient"] = to_json(suff);
  out["sufficient_vs_necessary"] = to_json(region_compare(suff, nec), suff);
  std::optional<VertexPolytope> built;
  if (kind == CaseStudy::Chain3) {
    built = chain3_constructed_region(d);
    out["constructed"] = to_json(*built);
    out["constructed_vs_necessary"] = to_json(region_compare(*built, nec), *built);
    const RegionReport gap = region_compare(*built, suff);
    out["constructed_vs_sufficient"] = to_json(gap, *built);
    if (!gap.contained) {
      out["discrepancy"] = {
          {"flagged", true},
          {"message",
           "the constructed region reaches beyond the listed sufficient polygon: (2/3, 2/3, 1/3) is constructed "
           "but not listed; it is the midpoint of the endpoints (1/2, 5/6, 1/3) and (5/6, 1/2, 1/3) named as missing"},
          {"missing_endpoints", Json::array({Json::array({"1/2", "5/6", "1/3"}), Json::array({"5/6", "1/2", "1/3"})})}};
    } else {
      out["discrepancy"] = {{"flagged", false}};
    }
  }
  if (!check.empty()) {
    const auto x = parse_point(check);
    if (x.size() != 3) throw UsageError("--check takes three exponents");
    Json c{{"point", to_json(x)}, {"necessary", to_json(halfspace_membership(nec, x), nec)},
           {"sufficient", to_json(hull_membership(suff, x))}};
    if (built) {
      const HullCheck inb = hull_membership(*built, x);
      c["constructed"] = to_json(inb);
      const bool flag = inb.inside && !hull_membership(suff, x).inside;
      c["discrepancy"] = flag;
      if (flag) {
        c["message"] = "point lies in the constructed region but outside the listed sufficient polygon; "
                       "compare the endpoints (1/2, 5/6, 1/3) and (5/6, 1/2, 1/3) named as missing";
      }
    }
    out["check"] = c;
  }
  return out;
}

// ------------------------------------------------------------------ realize

std::vector<Realization> load_realizations(const std::string& path) {
  const Json j = read_json(path);
  try {
    if (j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty() && j[0][0].is_array()) {
      std::vector<Realization> all;
      for (const auto& r : j) all.push_back(realization_from_json(r));
      return all;
    }
    return {realization_from_json(j)};
  } catch (const SerializeError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// ------------------------------------------------------------------ estimate

EpsilonPolicy epsilon_from(const Json& j) {
  EpsilonPolicy p;
  if (j.is_null()) return p;
  const std::string mode = j.value("mode", "coupled");
  if (mode == "coupled") {
    p.mode = EpsilonPolicy::Mode::Coupled;
    p.factor = j.value("factor", 0.25);
  } else if (mode == "fixed") {
    p.mode = EpsilonPolicy::Mode::Fixed;
    p.value = j.value("value", 0.125);
  } else {
    throw UsageError("epsilon_policy.mode must be 'coupled' or 'fixed'");
  }
  return p;
}

Json epsilon_json(const EpsilonPolicy& p) {
  if (p.mode == EpsilonPolicy::Mode::Coupled) return {{"mode", "coupled"}, {"factor", p.factor}};
  return {{"mode", "fixed"}, {"value", p.value}};
}

GridGeometry grid_from(const Json& j) {
  if (!j.is_object() || !j.contains("L")) throw UsageError("config needs grid: {L, h} or {L, K}");
  const double L = j.at("L").get<double>();
  if (j.contains("K")) return GridGeometry::with_nodes(L, j.at("K").get<int>());
  if (j.contains("h")) return GridGeometry::with_spacing(L, j.at("h").get<double>());
  throw UsageError("grid needs h or K");
}

struct EstimateOutput {
  Json json;
  std::string csv;
};

EstimateOutput estimate(const std::string& config_path) {
  const Json cfg = read_json(config_path);
  const std::string experiment = cfg.value("experiment", "scaling");
  Json resolved = cfg;
  EstimateOutput out;
  try {
    const EpsilonPolicy eps = epsilon_from(cfg.value("epsilon_policy", Json()));
    resolved["epsilon_policy"] = epsilon_json(eps);
    if (experiment == "scaling") {
      ScalingConfig sc;
      const Json& gj = cfg.at("graph");
      if (gj.is_string()) {
        std::filesystem::path p = gj.get<std::string>();
        if (p.is_relative() && !std::filesystem::exists(p)) p = std::filesystem::path(config_path).parent_path() / p;
        sc.graph = load_graph(p.string());
      } else {
        sc.graph = graph_from_json(gj);
      }
      for (const auto& a : cfg.at("assignment")) sc.assignment.push_back(parse_family(a.get<std::string>()));
      sc.params = cfg.at("params").get<std::vector<double>>();
      sc.epsilon = eps;
      sc.grid = grid_from(cfg.at("grid"));
      const Json q = cfg.value("quadrature", Json::object());
      sc.angular_nodes = q.value("M", 0);
      sc.radial_nodes = q.value("R", 8);
      sc.method = parse_method(cfg.value("method", "auto"));
      sc.seed = cfg.value("seed", static_cast<std::uint64_t>(1));
      sc.norm_p = cfg.value("norm_p", 1.0);
      const int M = sc.angular_nodes > 0 ? sc.angular_nodes : default_angular_nodes(sc.grid.h);
      resolved["grid"] = {{"L", sc.grid.L}, {"h", sc.grid.h}, {"K", sc.grid.K}};
      resolved["quadrature"] = {{"M", M}, {"R", sc.radial_nodes}};
      resolved["method"] = method_name(sc.method);
      resolved["seed"] = sc.seed;
      const ScalingResult r = scaling_experiment(sc);
      out.json["result"] = to_json(r);
      out.csv = scaling_csv(r);
    } else if (experiment == "ratio") {
      RatioConfig rc;
      rc.p = cfg.at("p").get<double>();
      rc.q = cfg.at("q").get<double>();
      rc.family = parse_family(cfg.value("family", "annulus"));
      rc.params = cfg.at("params").get<std::vector<double>>();
      rc.epsilon = eps;
      rc.grid = grid_from(cfg.at("grid"));
      const Json q = cfg.value("quadrature", Json::object());
      rc.angular_nodes = q.value("M", 0);
      rc.radial_nodes = q.value("R", 8);
      resolved["grid"] = {{"L", rc.grid.L}, {"h", rc.grid.h}, {"K", rc.grid.K}};
      const auto rows = ratio_experiment(rc);
      out.json["result"] = to_json(rows);
      out.csv = ratio_csv(rows);
    } else if (experiment == "decay") {
      const double e = cfg.at("epsilon").get<double>();
      const Json q = cfg.value("quadrature", Json::object());
      const auto k = make_kernel(e, q.value("M", 512), q.value("R", 8));
      DecayOptions opts;
      opts.h = cfg.value("h", 0.0);
      opts.directions = cfg.value("directions", 4);
      const auto rows = kernel_decay_check(k, cfg.at("frequencies").get<std::vector<double>>(), opts);
      out.json["result"] = to_json(rows);
      std::ostringstream os;
      os << "xi,transform,normalized\n" << std::setprecision(17);
      for (const auto& r : rows) os << r.xi << ',' << r.transform << ',' << r.normalized << '\n';
      out.csv = os.str();
    } else {
      throw UsageError("experiment must be scaling, ratio or decay");
    }
  } catch (const Json::exception& e) {
    throw UsageError(config_path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(config_path + ": " + e.what());
  }
  resolved["experiment"] = experiment;
  out.json["run"] = run_header("estimate", resolved);
  out.json["csv"] = out.csv;
  return out;
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"graph multilinear form toolkit", "graphlp"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--threads", common.threads, "worker thread cap (0 = all cores)");
  app.add_option("--out", common.out_path, "write the artifact to this file");
  app.set_version_flag("--version", kVersion);

  std::string graph_path;
  int seeds = 20;
  std::uint64_t seed = 1;

  auto* an = app.add_subcommand("analyze", "structural report for a graph");
  an->add_option("graph", graph_path, "graph file")->required();
  an->add_option("--seeds", seeds, "rigidity probe seeds per block");
  an->add_option("--seed", seed, "master seed");

  std::string verify_path;
  bool no_probe = false;
  auto* ce = app.add_subcommand("certify", "emit or verify an improving certificate");
  ce->add_option("graph", graph_path, "graph file");
  ce->add_option("--verify", verify_path, "replay a certificate JSON file");
  ce->add_option("--seeds", seeds, "rigidity probe seeds for general blocks");
  ce->add_option("--seed", seed, "master seed");
  ce->add_flag("--no-probe", no_probe, "do not probe general blocks for regularity");

  std::string kind;
  int dim = 2;
  std::vector<std::string> check;
  auto* po = app.add_subcommand("polytope", "necessary and sufficient exponent regions");
  po->add_option("--kind", kind, "triangle or chain3")->required();
  po->add_option("--d", dim, "ambient dimension");
  po->add_option("--check", check, "exponents u1 u2 u3")->expected(3);

  bool near_collinear = false;
  std::string at_path;
  int realize_seeds = 100;
  auto* re = app.add_subcommand("realize", "unit-distance realizations and rank report");
  re->add_option("graph", graph_path, "graph file")->required();
  re->add_option("--seeds", realize_seeds, "number of seeds");
  re->add_option("--seed", seed, "master seed");
  re->add_flag("--seed-near-collinear", near_collinear, "start near the folded configuration");
  re->add_option("--at", at_path, "JSON realization(s) to rank instead of solving");

  std::string config_path, csv_path;
  auto* es = app.add_subcommand("estimate", "scaling, ratio and decay experiments");
  es->add_option("--config", config_path, "experiment config JSON")->required();
  es->add_option("--csv", csv_path, "also write the CSV table here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream echo;
    for (const auto& a : args) echo << ' ' << a;
    err << "usage error: " << e.what() << "\n  in: graphlp" << echo.str() << "\n";
    return kExitUsage;
  }

  set_thread_limit(common.threads);
  try {
    if (*an) {
      const Graph g = load_graph(graph_path);
      emit(common, out, dump(analyze(graph_path, g, seeds, seed)));
      return kExitOk;
    }
    if (*ce) {
      if (!verify_path.empty()) {
        Certificate c;
        try {
          c = certificate_from_json(read_json(verify_path));
        } catch (const SerializeError& e) {
          throw UsageError(verify_path + ": " + e.what());
        }
        const ReplayResult r = replay(c);
        Json j{{"run", run_header("certify", {{"verify", verify_path}})}, {"ok", r.ok}, {"message", r.message}};
        j["failed_step"] = r.failed_step ? Json(*r.failed_step) : Json(nullptr);
        emit(common, out, dump(j));
        if (!r.ok) err << verify_path << ": replay failed: " << r.message << "\n";
        return r.ok ? kExitOk : kExitFailure;
      }
      if (graph_path.empty()) throw UsageError("certify needs a graph file or --verify");
      const Graph g = load_graph(graph_path);
      const Certificate c = certify(g, certify_options(seeds, seed, !no_probe));
      Json j = to_json(c);
      j["run"] = run_header("certify", {{"graph", graph_path}, {"seeds", seeds}, {"seed", seed}, {"probe", !no_probe}});
      emit(common, out, dump(j));
      return kExitOk;
    }
    if (*po) {
      emit(common, out, dump(polytope_report(kind, dim, check)));
      return kExitOk;
    }
    if (*re) {
      const Graph g = load_graph(graph_path);
      RigidityReport rep;
      Json cfg{{"graph", graph_path}};
      if (!at_path.empty()) {
        cfg["at"] = at_path;
        rep = rank_report(g, load_realizations(at_path));
      } else {
        ProbeOptions popts;
        popts.master_seed = seed;
        popts.near_collinear = near_collinear;
        cfg["seeds"] = realize_seeds;
        cfg["seed"] = seed;
        cfg["near_collinear"] = near_collinear;
        rep = regularity_probe(g, realize_seeds, popts);
      }
      Json j = to_json(rep);
      j["run"] = run_header("realize", cfg);
      emit(common, out, dump(j));
      if (rep.verdict == Verdict::NoRealizationFound) {
        err << graph_path << ": no unit-distance realization found (best residual " << rep.best_failed_residual << ")\n";
        return kExitFailure;
      }
      return kExitOk;
    }
    if (*es) {
      const EstimateOutput r = estimate(config_path);
      if (!csv_path.empty()) {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) throw UsageError("cannot write '" + csv_path + "'");
        f << r.csv;
      }
      emit(common, out, dump(r.json));
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace graphlp::cli
