#include "graphlp/certificate.hpp"
#include "graphlp/simplex.hpp"
#include "tree_dp.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace graphlp {

namespace {

using detail::ConcavePL;
using detail::TreeAllocation;
using detail::TreeDP;

Certificate unknown_certificate(const Graph& g, const ImprovingProfile& profile, std::string note) {
  Certificate c;
  c.graph = g;
  c.vertex_ids = identity_labels(g.vertex_count());
  c.profile = profile;
  c.status = CertStatus::Unknown;
  c.notes.push_back(std::move(note));
  return c;
}

// Appends the recursion steps of one tree allocation; `labels` maps local
// tree indices to certificate labels.
void append_tree_steps(std::vector<DerivationStep>& out, const TreeAllocation& alloc, const std::vector<int>& labels,
                       const ImprovingProfile& profile) {
  auto L = [&](int local) { return labels[static_cast<std::size_t>(local - 1)]; };
  for (const auto& node : alloc.nodes) {
    HolderSplitStep split{L(node.vertex), node.budget, node.self, {}};
    for (const auto& [child, share] : node.parts) split.parts.emplace_back(L(child), share);
    out.emplace_back(std::move(split));
    for (const auto& [child, share] : node.parts) {
      out.emplace_back(ImprovingStep{L(node.vertex), L(child), share, profile.value(share)});
    }
  }
}

bool better(const Rational& sum_a, const RationalVector& a, const Rational& sum_b, const RationalVector& b) {
  if (sum_a != sum_b) return sum_a > sum_b;
  return a > b;
}

}  // namespace

Certificate certify_tree(const Graph& g, const ImprovingProfile& profile, int exhaustive_root_limit) {
  if (!is_tree(g)) throw CertificateError("certify_tree: graph is not a tree");
  const int n = g.vertex_count();
  if (n == 1) {
    return unknown_certificate(g, profile, "a single vertex carries no kernel; no exponent sum exceeds 1");
  }
  std::vector<int> roots;
  if (n <= exhaustive_root_limit) {
    for (int r = 1; r <= n; ++r) roots.push_back(r);
  } else {
    roots.push_back(detail::tree_centroid(g));
  }

  int best_root = 0;
  TreeAllocation best;
  Rational best_sum = -1;
  for (int r : roots) {
    TreeDP dp(g, r, profile);
    auto alloc = dp.allocate(1);
    Rational s = sum(alloc.u);
    if (best_root == 0 || better(s, alloc.u, best_sum, best.u)) {
      best_root = r;
      best_sum = s;
      best = std::move(alloc);
    }
  }

  Certificate c;
  c.graph = g;
  c.vertex_ids = identity_labels(n);
  c.profile = profile;
  c.witness = ExponentVector(best.u);
  c.sum = best_sum;
  c.status = best_sum > 1 ? CertStatus::Proven : CertStatus::Unknown;
  std::vector<int> all = identity_labels(n);
  c.derivation.emplace_back(TreeRecursionStep{best_root, 1, all});
  append_tree_steps(c.derivation, best, c.vertex_ids, profile);
  if (best.repaired) c.notes.push_back("a minimum share was imposed on some children to keep every improving step strict");
  if (c.status == CertStatus::Unknown) {
    c.witness = ExponentVector();
    c.sum = 0;
    c.derivation.clear();
    c.notes.push_back("the tree allocation did not exceed exponent sum 1");
  }
  return c;
}

Certificate certify_contraction(const Graph& gPrime, const Certificate& coreCert) {
  if (coreCert.status == CertStatus::Unknown) throw CertificateError("core certificate unknown");
  auto dec = contract_pendant_trees(gPrime);
  if (dec.is_tree || !(dec.core == coreCert.graph) || dec.core_vertices != coreCert.vertex_ids) {
    throw CertificateError("core mismatch");
  }
  if (dec.pendant_forest.empty()) return coreCert;

  Certificate c;
  c.graph = gPrime;
  c.vertex_ids = identity_labels(gPrime.vertex_count());
  c.profile = coreCert.profile;
  c.status = coreCert.status;
  c.assumptions = coreCert.assumptions;
  c.notes = coreCert.notes;
  c.derivation = coreCert.derivation;

  RationalVector u(static_cast<std::size_t>(gPrime.vertex_count()), 0);
  std::map<int, Rational> core_exponent;
  for (std::size_t k = 0; k < coreCert.vertex_ids.size(); ++k) {
    core_exponent[coreCert.vertex_ids[k]] = coreCert.witness[k];
    u[static_cast<std::size_t>(coreCert.vertex_ids[k] - 1)] = coreCert.witness[k];
  }
  for (const auto& pt : dec.pendant_forest) {
    const Rational budget = core_exponent.at(pt.root);
    if (budget <= 0) {
      throw CertificateError("core exponent at pendant root " + std::to_string(pt.root) +
                             " is zero; the pendant tree cannot be attached with a strict improvement");
    }
    TreeDP dp(pt.tree, 1, c.profile);
    auto alloc = dp.allocate(budget);
    std::vector<int> tree_only(pt.vertices.begin() + 1, pt.vertices.end());
    c.derivation.emplace_back(ContractionStep{pt.root, budget, tree_only});
    c.derivation.emplace_back(TreeRecursionStep{pt.root, budget, pt.vertices});
    append_tree_steps(c.derivation, alloc, pt.vertices, c.profile);
    for (std::size_t k = 0; k < pt.vertices.size(); ++k) u[static_cast<std::size_t>(pt.vertices[k] - 1)] = alloc.u[k];
    if (alloc.repaired) c.notes.push_back("minimum shares imposed inside the tree at root " + std::to_string(pt.root));
  }
  c.witness = ExponentVector(u);
  c.sum = c.witness.sum();
  return c;
}

namespace {

const CaseStudyVertexStep& single_block(const Certificate& c) {
  if (c.derivation.size() != 1 || !std::holds_alternative<CaseStudyVertexStep>(c.derivation.front())) {
    throw CertificateError("the joined certificate must certify a single block");
  }
  return std::get<CaseStudyVertexStep>(c.derivation.front());
}

std::size_t index_of(const std::vector<int>& labels, int v) {
  auto it = std::find(labels.begin(), labels.end(), v);
  return static_cast<std::size_t>(it - labels.begin());
}

Certificate block_certificate(const Graph& block, const std::vector<int>& labels, BlockPolytope kind,
                              const ImprovingProfile& profile, const PolytopeOptimum& opt,
                              const std::vector<std::string>& assumptions) {
  Certificate c;
  c.graph = block;
  c.vertex_ids = labels;
  c.profile = profile;
  c.witness = opt.point;
  c.sum = opt.point.sum();
  c.status = kind == BlockPolytope::RegularHull ? CertStatus::Conditional : CertStatus::Proven;
  c.assumptions = assumptions;
  c.derivation.emplace_back(CaseStudyVertexStep{labels, kind, opt.point, opt.weights});
  return c;
}

std::string regular_hull_assumption(const std::vector<int>& labels, const std::string& evidence) {
  std::string ids;
  for (std::size_t i = 0; i < labels.size(); ++i) ids += (i ? "," : "") + std::to_string(labels[i]);
  return "block {" + ids + "} uses the regularly-realizable hull; the uniform improving bound is taken to supply the "
         "universal improvement needed at its cut vertices (regular realizability evidence: " + evidence + ")";
}

}  // namespace

Certificate certify_join(int cut, const Certificate& certA, const Certificate& certB) {
  if (certA.status == CertStatus::Unknown || certB.status == CertStatus::Unknown) {
    throw CertificateError("cannot join an unknown certificate");
  }
  std::set<int> la(certA.vertex_ids.begin(), certA.vertex_ids.end());
  std::vector<int> shared;
  for (int v : certB.vertex_ids) {
    if (la.count(v)) shared.push_back(v);
  }
  if (shared.size() != 1) {
    throw CertificateError("certificates share " + std::to_string(shared.size()) + " vertices; a join needs exactly one");
  }
  if (shared.front() != cut) throw CertificateError("the shared vertex is " + std::to_string(shared.front()) + ", not " + std::to_string(cut));

  const std::size_t ia = index_of(certA.vertex_ids, cut);
  if (!certA.witness.is_nontrivial_at(ia)) throw CertificateError("missing non-trivial estimate at the cut");
  const Rational a = certA.witness[ia];

  const auto& blk = single_block(certB);
  const std::size_t ib = index_of(certB.vertex_ids, cut);
  ExponentVector point = certB.witness;
  RationalVector weights = blk.weights;
  if (!(1 - point[ib] > 0 && 1 - point[ib] <= a)) {
    auto poly = block_polytope_vertices(blk.polytope, certB.graph, certB.profile);
    PolytopeOptimum opt;
    std::vector<CoordinateBound> bounds{{ib, Relation::GreaterEq, 1 - a}, {ib, Relation::LessEq, 1 - a / 2}};
    if (!maximize_over_polytope(poly, bounds, opt)) throw CertificateError("block polytope admits no compatible point");
    point = opt.point;
    weights = opt.weights;
  }
  const Rational s = 1 - point[ib];
  const Rational t = a - s;

  std::set<int> all(la);
  all.insert(certB.vertex_ids.begin(), certB.vertex_ids.end());
  std::vector<int> labels(all.begin(), all.end());
  std::map<int, int> local;
  for (std::size_t k = 0; k < labels.size(); ++k) local[labels[k]] = static_cast<int>(k + 1);
  std::vector<Edge> edges;
  for (const Certificate* part : {&certA, &certB}) {
    for (const auto& e : part->graph.edges()) {
      edges.push_back({local[part->vertex_ids[static_cast<std::size_t>(e.u - 1)]],
                       local[part->vertex_ids[static_cast<std::size_t>(e.v - 1)]]});
    }
  }

  Certificate c;
  c.graph = Graph(static_cast<int>(labels.size()), std::move(edges));
  c.vertex_ids = labels;
  c.profile = certA.profile;
  RationalVector u(labels.size(), 0);
  for (std::size_t k = 0; k < certA.vertex_ids.size(); ++k) u[static_cast<std::size_t>(local[certA.vertex_ids[k]] - 1)] = certA.witness[k];
  for (std::size_t k = 0; k < certB.vertex_ids.size(); ++k) {
    if (certB.vertex_ids[k] != cut) u[static_cast<std::size_t>(local[certB.vertex_ids[k]] - 1)] = point[k];
  }
  u[static_cast<std::size_t>(local[cut] - 1)] = t;
  c.witness = ExponentVector(u);
  c.sum = c.witness.sum();
  c.derivation = certA.derivation;
  c.derivation.emplace_back(CaseStudyVertexStep{certB.vertex_ids, blk.polytope, point, weights});
  c.derivation.emplace_back(JoinStep{cut, a, s, t, c.derivation.size() - 1});
  c.assumptions = certA.assumptions;
  for (const auto& as : certB.assumptions) {
    if (std::find(c.assumptions.begin(), c.assumptions.end(), as) == c.assumptions.end()) c.assumptions.push_back(as);
  }
  c.notes = certA.notes;
  c.status = (certA.status == CertStatus::Proven && certB.status == CertStatus::Proven) ? CertStatus::Proven
                                                                                       : CertStatus::Conditional;
  if (c.status == CertStatus::Conditional && c.assumptions.empty()) {
    c.assumptions.push_back("join at vertex " + std::to_string(cut) + " relies on a conditionally improving block");
  }
  return c;
}

Certificate certify_block(const Graph& block, const std::vector<int>& labels, const CertifyOptions& opts) {
  if (block.vertex_count() < 2 || !block.is_connected()) throw CertificateError("a block needs a connected graph on at least two vertices");
  BlockPolytope kind;
  std::vector<std::string> assumptions;
  if (block.vertex_count() == 2) {
    kind = BlockPolytope::Edge;
  } else if (block.vertex_count() == 3 && block.edge_count() == 3 && opts.profile.dimension() == 2) {
    kind = BlockPolytope::Triangle;
  } else {
    if (!opts.regularity_probe) {
      Certificate c = unknown_certificate(block, opts.profile, "no regularity probe available for this block");
      c.vertex_ids = labels;
      return c;
    }
    auto ev = opts.regularity_probe(block);
    if (!ev.supported) {
      Certificate c = unknown_certificate(block, opts.profile, "regular realizability not supported: " + ev.summary);
      c.vertex_ids = labels;
      return c;
    }
    kind = BlockPolytope::RegularHull;
    assumptions.push_back(regular_hull_assumption(labels, ev.summary));
  }
  auto poly = block_polytope_vertices(kind, block, opts.profile);
  PolytopeOptimum opt;
  if (!maximize_over_polytope(poly, {}, opt)) throw CertificateError("empty block polytope");
  return block_certificate(block, labels, kind, opts.profile, opt, assumptions);
}

namespace {

struct BlockInfo {
  Graph graph;
  std::vector<int> labels;  // original ids
  BlockPolytope kind = BlockPolytope::Edge;
  VertexPolytope poly;
  std::vector<std::string> assumptions;
};

struct CoreSolution {
  Rational value;
  RationalVector core_u;  // indexed like core labels
  std::size_t root = 0;
  std::vector<std::size_t> order;              // BFS order of blocks
  std::vector<int> parent_cut;                 // per block, 0 for the root
  std::vector<PolytopeOptimum> points;         // per block
};

// Linear expression over LP variables plus a constant.
struct Affine {
  RationalVector coeffs;
  Rational constant = 0;
};

bool solve_core(const std::vector<BlockInfo>& blocks, const std::vector<std::vector<std::size_t>>& adjacency,
                const std::map<std::pair<std::size_t, std::size_t>, int>& shared, const std::vector<int>& core_labels,
                const std::map<int, ConcavePL>& pendant_gain, std::size_t root, const Rational& mu, CoreSolution& out) {
  const std::size_t k = blocks.size();
  std::vector<int> parent_cut(k, 0);
  std::vector<std::size_t> order;
  std::vector<bool> seen(k, false);
  std::deque<std::size_t> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    auto b = queue.front();
    queue.pop_front();
    order.push_back(b);
    for (auto nb : adjacency[b]) {
      if (seen[nb]) continue;
      seen[nb] = true;
      parent_cut[nb] = shared.at({std::min(b, nb), std::max(b, nb)});
      queue.push_back(nb);
    }
  }

  std::vector<std::size_t> offset(k + 1, 0);
  for (std::size_t b = 0; b < k; ++b) offset[b + 1] = offset[b] + blocks[b].poly.vertices.size();
  std::vector<int> roots;
  for (const auto& [r, g] : pendant_gain) roots.push_back(r);
  const std::size_t nvars = offset[k] + roots.size();

  // u_v = sum over blocks containing v of y^B_v  -  (number of blocks hanging at v)
  std::map<int, Affine> u;
  for (int v : core_labels) u[v] = Affine{RationalVector(nvars, 0), 0};
  for (std::size_t b = 0; b < k; ++b) {
    const auto& blk = blocks[b];
    for (std::size_t i = 0; i < blk.labels.size(); ++i) {
      auto& expr = u[blk.labels[i]];
      for (std::size_t j = 0; j < blk.poly.vertices.size(); ++j) expr.coeffs[offset[b] + j] += blk.poly.vertices[j][i];
    }
    if (parent_cut[b] != 0) u[parent_cut[b]].constant -= 1;
  }

  LinearProgram lp;
  lp.num_vars = nvars;
  for (std::size_t b = 0; b < k; ++b) {
    RationalVector c(nvars, 0);
    for (std::size_t j = offset[b]; j < offset[b + 1]; ++j) c[j] = 1;
    lp.constraints.push_back({std::move(c), Relation::Equal, 1});
  }
  for (int v : core_labels) {
    const auto& expr = u[v];
    Rational lower = pendant_gain.count(v) ? mu : Rational(0);
    lp.constraints.push_back({expr.coeffs, Relation::GreaterEq, lower - expr.constant});
  }
  for (std::size_t b = 0; b < k; ++b) {
    if (parent_cut[b] == 0 || mu == 0) continue;
    const auto& blk = blocks[b];
    const std::size_t ci = index_of(blk.labels, parent_cut[b]);
    RationalVector c(nvars, 0);
    for (std::size_t j = 0; j < blk.poly.vertices.size(); ++j) c[offset[b] + j] = blk.poly.vertices[j][ci];
    lp.constraints.push_back({std::move(c), Relation::LessEq, 1 - mu});
  }
  RationalVector objective(nvars, 0);
  for (std::size_t r = 0; r < roots.size(); ++r) {
    const std::size_t tau = offset[k] + r;
    objective[tau] = 1;
    const auto& expr = u[roots[r]];
    Rational x0 = 0, g0 = 0;
    for (const auto& piece : pendant_gain.at(roots[r]).pieces) {
      // tau <= slope * (u - x0) + g0
      RationalVector c(nvars, 0);
      for (std::size_t j = 0; j < nvars; ++j) c[j] = -piece.slope * expr.coeffs[j];
      c[tau] = 1;
      lp.constraints.push_back({std::move(c), Relation::LessEq, piece.slope * (expr.constant - x0) + g0});
      g0 += piece.slope * piece.length;
      x0 += piece.length;
    }
  }
  for (int v : core_labels) {
    if (pendant_gain.count(v)) continue;
    for (std::size_t j = 0; j < nvars; ++j) objective[j] += u[v].coeffs[j];
  }
  std::vector<RationalVector> objectives{objective};
  for (int v : core_labels) objectives.push_back(u[v].coeffs);
  auto res = solve_lexicographic(lp, objectives);
  if (res.status != LpStatus::Optimal) return false;

  out.root = root;
  out.order = order;
  out.parent_cut = parent_cut;
  out.points.assign(k, {});
  for (std::size_t b = 0; b < k; ++b) {
    const auto& poly = blocks[b].poly;
    RationalVector w(res.x.begin() + static_cast<std::ptrdiff_t>(offset[b]), res.x.begin() + static_cast<std::ptrdiff_t>(offset[b + 1]));
    RationalVector p(blocks[b].labels.size(), 0);
    for (std::size_t j = 0; j < w.size(); ++j) {
      for (std::size_t i = 0; i < p.size(); ++i) p[i] += w[j] * poly.vertices[j][i];
    }
    out.points[b] = {ExponentVector(p), w};
  }
  out.core_u.clear();
  Rational value = 0;
  for (int v : core_labels) {
    Rational val = dot(u[v].coeffs, res.x) + u[v].constant;
    out.core_u.push_back(val);
    value += pendant_gain.count(v) ? pendant_gain.at(v).eval(val) : val;
  }
  out.value = value;
  return true;
}

bool strict_enough(const CoreSolution& s, const std::vector<BlockInfo>& blocks, const std::vector<int>& core_labels,
                   const std::map<int, ConcavePL>& pendant_gain) {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (s.parent_cut[b] == 0) continue;
    if (s.points[b].point[index_of(blocks[b].labels, s.parent_cut[b])] >= 1) return false;
  }
  for (std::size_t i = 0; i < core_labels.size(); ++i) {
    if (pendant_gain.count(core_labels[i]) && s.core_u[i] <= 0) return false;
  }
  return true;
}

}  // namespace

Certificate certify(const Graph& g, const CertifyOptions& opts) {
  if (!g.is_connected() || g.vertex_count() < 1) throw CertificateError("certify needs a connected graph");
  if (is_tree(g)) return certify_tree(g, opts.profile, opts.exhaustive_root_limit);

  auto dec = contract_pendant_trees(g);
  auto bd = block_decomposition(dec.core);

  std::vector<BlockInfo> blocks;
  for (const auto& b : bd.blocks) {
    BlockInfo info;
    info.graph = b.graph;
    for (int v : b.vertices) info.labels.push_back(dec.core_vertices[static_cast<std::size_t>(v - 1)]);
    auto cert = certify_block(info.graph, info.labels, opts);
    if (cert.status == CertStatus::Unknown) {
      Certificate c = unknown_certificate(g, opts.profile, "block could not be certified");
      c.notes.insert(c.notes.end(), cert.notes.begin(), cert.notes.end());
      return c;
    }
    info.kind = std::get<CaseStudyVertexStep>(cert.derivation.front()).polytope;
    info.poly = block_polytope_vertices(info.kind, info.graph, opts.profile);
    info.assumptions = cert.assumptions;
    blocks.push_back(std::move(info));
  }

  std::vector<std::vector<std::size_t>> adjacency(blocks.size());
  std::map<std::pair<std::size_t, std::size_t>, int> shared;
  for (const auto& adj : bd.block_tree) {
    adjacency[adj.parent].push_back(adj.child);
    adjacency[adj.child].push_back(adj.parent);
    shared[{std::min(adj.parent, adj.child), std::max(adj.parent, adj.child)}] =
        dec.core_vertices[static_cast<std::size_t>(adj.cut - 1)];
  }
  // Cut vertices shared by several children of one parent are joined through
  // that parent; sibling blocks are never adjacent in the rooted tree above.
  for (auto& a : adjacency) std::sort(a.begin(), a.end());

  std::map<int, ConcavePL> pendant_gain;
  for (const auto& pt : dec.pendant_forest) pendant_gain[pt.root] = TreeDP(pt.tree, 1, opts.profile).gain();

  std::optional<CoreSolution> best;
  for (std::size_t root = 0; root < blocks.size(); ++root) {
    CoreSolution sol;
    bool ok = solve_core(blocks, adjacency, shared, dec.core_vertices, pendant_gain, root, 0, sol) &&
              strict_enough(sol, blocks, dec.core_vertices, pendant_gain);
    if (!ok) {
      const Rational mu(1, 16 * g.vertex_count());
      ok = solve_core(blocks, adjacency, shared, dec.core_vertices, pendant_gain, root, mu, sol) &&
           strict_enough(sol, blocks, dec.core_vertices, pendant_gain);
    }
    if (!ok) continue;
    if (!best || better(sol.value, sol.core_u, best->value, best->core_u)) best = std::move(sol);
  }
  if (!best) return unknown_certificate(g, opts.profile, "no admissible allocation across the block tree");

  auto block_cert = [&](std::size_t b) {
    return block_certificate(blocks[b].graph, blocks[b].labels, blocks[b].kind, opts.profile, best->points[b],
                             blocks[b].assumptions);
  };
  Certificate acc = block_cert(best->root);
  for (std::size_t i = 1; i < best->order.size(); ++i) {
    const auto b = best->order[i];
    acc = certify_join(best->parent_cut[b], acc, block_cert(b));
  }
  Certificate out = certify_contraction(g, acc);
  if (out.status != CertStatus::Unknown && !(out.sum > 1)) {
    return unknown_certificate(g, opts.profile, "composition did not exceed exponent sum 1");
  }
  return out;
}

}  // namespace graphlp
