#include "graphlp/serialize.hpp"

namespace graphlp {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Json rationals(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

RationalVector rationals_from(const Json& j) {
  RationalVector out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SerializeError(std::string("missing field '") + key + "'");
  return j.at(key);
}

const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::LessEq: return "<=";
    case Relation::GreaterEq: return ">=";
    case Relation::Equal: return "=";
  }
  return "=";
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SerializeError(e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw SerializeError("rational must be a \"num/den\" string, got " + j.dump());
}

Json to_json(const ExponentVector& x) { return rationals(x.entries()); }

Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) { return parse_graph(j.dump()); }

Json to_json(const ImprovingProfile& p) {
  Json pts = Json::array();
  for (const auto& bp : p.breakpoints()) pts.push_back({to_json(bp.u), to_json(bp.v)});
  return {{"d", p.dimension()}, {"breakpoints", pts}};
}

ImprovingProfile profile_from_json(const Json& j) {
  std::vector<ProfilePoint> pts;
  for (const auto& e : field(j, "breakpoints")) {
    if (!e.is_array() || e.size() != 2) throw SerializeError("profile breakpoints are [u, v] pairs");
    pts.push_back({rational_from_json(e[0]), rational_from_json(e[1])});
  }
  return ImprovingProfile(std::move(pts), field(j, "d").get<int>());
}

Json to_json(const DerivationStep& step) {
  return std::visit(
      Overloaded{
          [](const TreeRecursionStep& s) -> Json {
            return {{"kind", "tree-recursion"}, {"root", s.root}, {"budget", to_json(s.budget)}, {"vertices", s.vertices}};
          },
          [](const HolderSplitStep& s) -> Json {
            Json parts = Json::array();
            for (const auto& [child, share] : s.parts) parts.push_back({{"child", child}, {"share", to_json(share)}});
            return {{"kind", "holder-split"}, {"vertex", s.vertex}, {"budget", to_json(s.budget)}, {"self", to_json(s.self)}, {"parts", parts}};
          },
          [](const ImprovingStep& s) -> Json {
            return {{"kind", "improving"}, {"parent", s.parent}, {"child", s.child}, {"output", to_json(s.output)}, {"input", to_json(s.input)}};
          },
          [](const ContractionStep& s) -> Json {
            return {{"kind", "contraction"}, {"root", s.root}, {"budget", to_json(s.budget)}, {"tree_vertices", s.tree_vertices}};
          },
          [](const CaseStudyVertexStep& s) -> Json {
            return {{"kind", "case-study-vertex"}, {"block", s.block}, {"polytope", block_polytope_name(s.polytope)},
                    {"point", to_json(s.point)}, {"weights", rationals(s.weights)}};
          },
          [](const JoinStep& s) -> Json {
            return {{"kind", "join"}, {"cut", s.cut}, {"parent_exponent", to_json(s.parent_exponent)}, {"to_block", to_json(s.to_block)},
                    {"kept", to_json(s.kept)}, {"block_step", s.block_step}};
          }},
      step);
}

DerivationStep step_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "tree-recursion") {
    return TreeRecursionStep{field(j, "root").get<int>(), rational_from_json(field(j, "budget")),
                             field(j, "vertices").get<std::vector<int>>()};
  }
  if (kind == "holder-split") {
    HolderSplitStep s{field(j, "vertex").get<int>(), rational_from_json(field(j, "budget")), rational_from_json(field(j, "self")), {}};
    for (const auto& p : field(j, "parts")) s.parts.emplace_back(field(p, "child").get<int>(), rational_from_json(field(p, "share")));
    return s;
  }
  if (kind == "improving") {
    return ImprovingStep{field(j, "parent").get<int>(), field(j, "child").get<int>(), rational_from_json(field(j, "output")),
                         rational_from_json(field(j, "input"))};
  }
  if (kind == "contraction") {
    return ContractionStep{field(j, "root").get<int>(), rational_from_json(field(j, "budget")),
                           field(j, "tree_vertices").get<std::vector<int>>()};
  }
  if (kind == "case-study-vertex") {
    try {
      return CaseStudyVertexStep{field(j, "block").get<std::vector<int>>(),
                                 parse_block_polytope(field(j, "polytope").get<std::string>()),
                                 ExponentVector(rationals_from(field(j, "point"))), rationals_from(field(j, "weights"))};
    } catch (const std::invalid_argument& e) {
      throw SerializeError(e.what());
    }
  }
  if (kind == "join") {
    return JoinStep{field(j, "cut").get<int>(), rational_from_json(field(j, "parent_exponent")),
                    rational_from_json(field(j, "to_block")), rational_from_json(field(j, "kept")),
                    field(j, "block_step").get<std::size_t>()};
  }
  throw SerializeError("unknown derivation step kind '" + kind + "'");
}

Json to_json(const Certificate& c) {
  Json steps = Json::array();
  for (const auto& s : c.derivation) steps.push_back(to_json(s));
  return {{"graph", to_json(c.graph)},
          {"vertex_ids", c.vertex_ids},
          {"profile", to_json(c.profile)},
          {"status", status_name(c.status)},
          {"witness", to_json(c.witness)},
          {"sum", to_json(c.sum)},
          {"derivation", steps},
          {"assumptions", c.assumptions},
          {"notes", c.notes}};
}

Certificate certificate_from_json(const Json& j) {
  const Json& body = j.contains("certificate") ? j.at("certificate") : j;
  Certificate c;
  try {
    c.graph = graph_from_json(field(body, "graph"));
    c.vertex_ids = body.contains("vertex_ids") ? body.at("vertex_ids").get<std::vector<int>>() : identity_labels(c.graph.vertex_count());
    if (body.contains("profile")) c.profile = profile_from_json(body.at("profile"));
    c.status = parse_status(field(body, "status").get<std::string>());
    c.witness = ExponentVector(rationals_from(field(body, "witness")));
    c.sum = rational_from_json(field(body, "sum"));
    for (const auto& s : field(body, "derivation")) c.derivation.push_back(step_from_json(s));
    if (body.contains("assumptions")) c.assumptions = body.at("assumptions").get<std::vector<std::string>>();
    if (body.contains("notes")) c.notes = body.at("notes").get<std::vector<std::string>>();
  } catch (const Json::exception& e) {
    throw SerializeError(std::string("malformed certificate: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SerializeError(std::string("malformed certificate: ") + e.what());
  } catch (const GraphError& e) {
    throw SerializeError(std::string("malformed certificate: ") + e.what());
  }
  return c;
}

Json to_json(const HalfspaceSystem& sys) {
  Json rows = Json::array();
  for (const auto& r : sys.rows) {
    rows.push_back({{"condition", r.condition}, {"label", r.label}, {"coeffs", rationals(r.coeffs)},
                    {"relation", relation_symbol(r.relation)}, {"rhs", to_json(r.rhs)}});
  }
  return {{"label", sys.label}, {"d", sys.ambient_dimension}, {"dimension", sys.dimension}, {"rows", rows}};
}

Json to_json(const VertexPolytope& poly) {
  Json verts = Json::array();
  for (const auto& v : poly.vertices) verts.push_back(to_json(v));
  return {{"label", poly.label}, {"vertices", verts}};
}

Json to_json(const HalfspaceCheck& check, const HalfspaceSystem& sys) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < sys.rows.size() && k < check.lhs.size(); ++k) {
    rows.push_back({{"condition", sys.rows[k].condition}, {"lhs", to_json(check.lhs[k])},
                    {"relation", relation_symbol(sys.rows[k].relation)}, {"rhs", to_json(sys.rows[k].rhs)}});
  }
  return {{"satisfied", check.satisfied}, {"violated", check.violated}, {"tight", check.tight}, {"rows", rows}};
}

Json to_json(const HullCheck& check) {
  Json out{{"inside", check.inside}};
  if (check.inside) out["weights"] = rationals(check.weights);
  return out;
}

Json to_json(const RegionReport& report, const VertexPolytope& inner) {
  Json off = Json::array();
  for (const auto& o : report.offending) {
    off.push_back({{"vertex", to_json(inner.vertices.at(o.vertex))}, {"row", o.row}});
  }
  return {{"contained", report.contained}, {"inner", inner.label}, {"offending", off}};
}

Json to_json(const Realization& x) {
  Json out = Json::array();
  for (const auto& p : x.points) out.push_back({p.x(), p.y()});
  return out;
}

Realization realization_from_json(const Json& j) {
  Realization x;
  if (!j.is_array()) throw SerializeError("a realization is an array of [x, y] pairs");
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw SerializeError("a realization is an array of [x, y] pairs, got " + p.dump());
    }
    x.points.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return x;
}

Json to_json(const RigidityReport& report) {
  Json ranks = Json::object();
  for (const auto& [rank, count] : report.ranks) ranks[std::to_string(rank)] = count;
  Json details = Json::array();
  for (const auto& s : report.details) {
    details.push_back({{"origin", s.origin}, {"rank", s.rank}, {"residual", s.residual},
                       {"singular_values", s.singular_values}, {"realization", to_json(s.realization)}});
  }
  Json out{{"graph", to_json(report.graph)},
           {"samples", report.samples},
           {"found", report.found},
           {"ranks", ranks},
           {"expected_rank", report.expected_rank},
           {"manifold_dim", report.manifold_dim},
           {"verdict", verdict_name(report.verdict)},
           {"details", details},
           {"note", report.note}};
  if (report.found < report.samples) out["best_failed_residual"] = report.best_failed_residual;
  // Singular values of the first sample at the top level, as in the report schema.
  out["singular_values"] = report.details.empty() ? Json::array() : Json(report.details.front().singular_values);
  return out;
}

Json to_json(const ScalingResult& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json entry{{"param", row.param}, {"lambda", row.lambda}, {"norms", row.norms}};
    entry["slope_running"] = std::isnan(row.slope_running) ? Json(nullptr) : Json(row.slope_running);
    rows.push_back(entry);
  }
  return {{"rows", rows}, {"slope", r.fit.slope}, {"intercept", r.fit.intercept}, {"residual", r.fit.residual}, {"points", r.fit.points}};
}

Json to_json(const std::vector<RatioRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back({{"param", r.param}, {"norm_in", r.norm_in}, {"norm_out", r.norm_out}, {"ratio", r.ratio}});
  return out;
}

Json to_json(const std::vector<DecayRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back({{"xi", r.xi}, {"transform", r.transform}, {"normalized", r.normalized}});
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace graphlp
