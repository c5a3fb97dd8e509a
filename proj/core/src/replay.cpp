#include "graphlp/certificate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace graphlp {

namespace {

struct Failure {
  std::optional<std::size_t> step;
  std::string message;
};

class Replayer {
 public:
  explicit Replayer(const Certificate& c) : cert_(c) {}

  ReplayResult run() {
    try {
      check();
    } catch (const Failure& f) {
      return {false, f.step, f.message};
    } catch (const std::exception& e) {
      return {false, step_, std::string("malformed certificate: ") + e.what()};
    }
    return {true, std::nullopt, "ok"};
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw Failure{step_, msg}; }
  [[noreturn]] void fail_global(const std::string& msg) const { throw Failure{std::nullopt, msg}; }

  void require(bool cond, const std::string& msg) const {
    if (!cond) fail(msg);
  }

  std::string lbl(int v) const { return std::to_string(v); }

  bool known(int label) const { return local_.count(label) > 0; }
  bool assigned(int label) const { return current_.count(label) > 0; }

  bool edge_between(int a, int b) const {
    return known(a) && known(b) && cert_.graph.has_edge(local_.at(a), local_.at(b));
  }

  void cover(int a, int b) {
    Edge e{std::min(a, b), std::max(a, b)};
    require(edge_between(a, b), "no edge {" + lbl(a) + "," + lbl(b) + "} in the graph");
    require(covered_.insert(e).second, "edge {" + lbl(a) + "," + lbl(b) + "} is used twice");
  }

  void check() {
    const int n = cert_.graph.vertex_count();
    if (static_cast<int>(cert_.vertex_ids.size()) != n) fail_global("vertex label count differs from the graph");
    for (int k = 0; k < n; ++k) {
      if (!local_.emplace(cert_.vertex_ids[static_cast<std::size_t>(k)], k + 1).second) fail_global("repeated vertex label");
    }
    if (cert_.profile.breakpoints() != improving_profile_circle(cert_.profile.dimension()).breakpoints()) {
      fail_global("profile differs from the circle profile for d = " + std::to_string(cert_.profile.dimension()));
    }

    if (cert_.status == CertStatus::Unknown) {
      if (!cert_.derivation.empty() || cert_.witness.size() != 0) fail_global("unknown certificate must not claim a witness");
      return;
    }

    for (step_ = 0; step_ < cert_.derivation.size(); ++step_) {
      std::visit([this](const auto& s) { apply(s); }, cert_.derivation[step_]);
    }
    step_ = cert_.derivation.size();

    if (!pending_.empty()) fail_global("vertex " + lbl(pending_.begin()->first) + " received a budget but no split");
    if (!expected_.empty()) fail_global("split share towards vertex " + lbl(expected_.begin()->first.second) + " never improved");
    if (awaiting_tree_) fail_global("contraction step without a tree recursion");
    for (auto idx : open_blocks_) fail_global("block step " + std::to_string(idx) + " is never joined");
    for (int v : cert_.vertex_ids) {
      if (!assigned(v)) fail_global("vertex " + lbl(v) + " has no exponent");
    }
    for (const auto& e : cert_.graph.edges()) {
      int a = cert_.vertex_ids[static_cast<std::size_t>(e.u - 1)];
      int b = cert_.vertex_ids[static_cast<std::size_t>(e.v - 1)];
      if (!covered_.count(Edge{std::min(a, b), std::max(a, b)})) fail_global("edge {" + lbl(a) + "," + lbl(b) + "} is not accounted for");
    }
    if (cert_.witness.size() != static_cast<std::size_t>(n)) fail_global("witness dimension differs from the vertex count");
    Rational total = 0;
    for (int k = 0; k < n; ++k) {
      const auto& w = cert_.witness[static_cast<std::size_t>(k)];
      if (w != current_.at(cert_.vertex_ids[static_cast<std::size_t>(k)])) {
        fail_global("witness entry for vertex " + lbl(cert_.vertex_ids[static_cast<std::size_t>(k)]) + " disagrees with the derivation");
      }
      total += w;
    }
    if (total != cert_.sum) fail_global("recorded sum " + to_string(cert_.sum) + " differs from " + to_string(total));
    if (total <= 1) fail_global("exponent sum " + to_string(total) + " is not greater than 1");
    if (cert_.status == CertStatus::Proven) {
      if (!cert_.assumptions.empty()) fail_global("proven certificate carries assumptions");
      if (conditional_) fail_global("proven certificate relies on a regular-hull block");
    } else if (cert_.assumptions.empty()) {
      fail_global("conditional certificate without recorded assumptions");
    }
  }

  void apply(const TreeRecursionStep& s) {
    require(!awaiting_tree_ || (s.root == contraction_root_ && s.budget == contraction_budget_),
            "tree recursion does not match the preceding contraction step");
    if (!awaiting_tree_) {
      require(step_ == 0, "a top-level tree recursion must be the first step");
      require(s.budget == 1, "top-level tree recursion must start from budget 1");
    }
    awaiting_tree_ = false;
    require(known(s.root) && !assigned(s.root), "tree root " + lbl(s.root) + " is already assigned");
    for (int v : s.vertices) require(known(v) && (v == s.root || !assigned(v)), "tree vertex " + lbl(v) + " is already assigned");
    require(s.budget > 0 && s.budget <= 1, "tree budget outside (0,1]");
    pending_[s.root] = s.budget;
  }

  void apply(const ContractionStep& s) {
    require(!awaiting_tree_ && pending_.empty() && expected_.empty(), "contraction step inside an open recursion");
    require(assigned(s.root), "contraction root " + lbl(s.root) + " has no core exponent");
    require(current_.at(s.root) == s.budget, "contraction budget differs from the core exponent at " + lbl(s.root));
    require(s.budget > 0, "contraction budget must be positive");
    for (int v : s.tree_vertices) require(known(v) && !assigned(v), "pendant vertex " + lbl(v) + " is already assigned");
    current_.erase(s.root);
    awaiting_tree_ = true;
    contraction_root_ = s.root;
    contraction_budget_ = s.budget;
  }

  void apply(const HolderSplitStep& s) {
    auto it = pending_.find(s.vertex);
    require(it != pending_.end(), "split at vertex " + lbl(s.vertex) + " without an incoming budget");
    require(it->second == s.budget, "split budget " + to_string(s.budget) + " differs from the incoming " + to_string(it->second));
    pending_.erase(it);
    require(s.self >= 0 && s.self <= 1, "own exponent outside [0,1]");
    Rational total = s.self;
    for (const auto& [child, share] : s.parts) {
      require(share > 0, "non-positive share towards " + lbl(child));
      require(edge_between(s.vertex, child), "split share towards a non-neighbour " + lbl(child));
      require(!assigned(child) && !pending_.count(child), "child " + lbl(child) + " already assigned");
      require(expected_.emplace(std::make_pair(s.vertex, child), share).second, "duplicate share towards " + lbl(child));
      total += share;
    }
    require(total == s.budget, "budget equation fails: parts sum to " + to_string(total) + ", budget " + to_string(s.budget));
    current_[s.vertex] = s.self;
  }

  void apply(const ImprovingStep& s) {
    auto it = expected_.find({s.parent, s.child});
    require(it != expected_.end(), "improving step " + lbl(s.parent) + "->" + lbl(s.child) + " has no matching split share");
    require(it->second == s.output, "improving step output differs from the split share");
    expected_.erase(it);
    require(s.output > 0 && s.output < 1, "improving step needs an output exponent strictly inside (0,1)");
    const Rational v = cert_.profile.value(s.output);
    require(s.input == v, "profile gives v(" + to_string(s.output) + ") = " + to_string(v) + ", step claims " + to_string(s.input));
    require(s.input > s.output, "improving step does not improve");
    cover(s.parent, s.child);
    pending_[s.child] = s.input;
  }

  void check_block(const CaseStudyVertexStep& s) {
    require(s.block.size() >= 2, "block with fewer than two vertices");
    require(std::is_sorted(s.block.begin(), s.block.end()) &&
                std::adjacent_find(s.block.begin(), s.block.end()) == s.block.end(),
            "block labels must be ascending and distinct");
    std::vector<int> locals;
    for (int v : s.block) {
      require(known(v), "unknown vertex " + lbl(v));
      locals.push_back(local_.at(v));
    }
    Graph sub = cert_.graph.induced(locals);
    require(sub.is_connected(), "block is not connected");
    if (s.polytope == BlockPolytope::RegularHull) conditional_ = true;
    VertexPolytope poly;
    try {
      poly = block_polytope_vertices(s.polytope, sub, cert_.profile);
    } catch (const std::exception& e) {
      fail(e.what());
    }
    require(s.point.size() == s.block.size(), "block point dimension mismatch");
    require(s.weights.size() == poly.vertices.size(), "weight count differs from the polytope's vertex count");
    Rational wsum = 0;
    RationalVector comb(s.block.size(), 0);
    for (std::size_t j = 0; j < poly.vertices.size(); ++j) {
      require(s.weights[j] >= 0, "negative convex weight");
      wsum += s.weights[j];
      for (std::size_t i = 0; i < comb.size(); ++i) comb[i] += s.weights[j] * poly.vertices[j][i];
    }
    require(wsum == 1, "convex weights sum to " + to_string(wsum));
    require(comb == s.point.entries(), "block point is not the stated convex combination");
  }

  void apply(const CaseStudyVertexStep& s) {
    require(pending_.empty() && expected_.empty() && !awaiting_tree_, "block step inside an open recursion");
    check_block(s);
    if (step_ == 0) {
      for (std::size_t i = 0; i < s.block.size(); ++i) current_[s.block[i]] = s.point[i];
      for (std::size_t i = 0; i < s.block.size(); ++i) {
        for (std::size_t j = i + 1; j < s.block.size(); ++j) {
          if (edge_between(s.block[i], s.block[j])) cover(s.block[i], s.block[j]);
        }
      }
    } else {
      open_blocks_.insert(step_);
    }
  }

  void apply(const JoinStep& s) {
    require(open_blocks_.erase(s.block_step) == 1, "join refers to a block step that is not open");
    const auto& blk = std::get<CaseStudyVertexStep>(cert_.derivation[s.block_step]);
    auto pos = std::find(blk.block.begin(), blk.block.end(), s.cut);
    require(pos != blk.block.end(), "cut vertex " + lbl(s.cut) + " is not in the joined block");
    require(assigned(s.cut), "cut vertex " + lbl(s.cut) + " has no exponent on the accumulated side");
    require(current_.at(s.cut) == s.parent_exponent, "join records exponent " + to_string(s.parent_exponent) +
                                                         " at the cut, derivation has " + to_string(current_.at(s.cut)));
    require(s.to_block > 0, "share handed to the block must be positive");
    require(s.kept >= 0, "kept share must be non-negative");
    require(s.to_block + s.kept == s.parent_exponent, "cut split does not add up");
    const auto ci = static_cast<std::size_t>(pos - blk.block.begin());
    require(blk.point[ci] == 1 - s.to_block, "block exponent at the cut must equal 1 - share");
    for (int v : blk.block) {
      if (v != s.cut) require(!assigned(v), "block vertex " + lbl(v) + " already assigned");
    }
    current_[s.cut] = s.kept;
    for (std::size_t i = 0; i < blk.block.size(); ++i) {
      if (blk.block[i] != s.cut) current_[blk.block[i]] = blk.point[i];
      for (std::size_t j = i + 1; j < blk.block.size(); ++j) {
        if (edge_between(blk.block[i], blk.block[j])) cover(blk.block[i], blk.block[j]);
      }
    }
  }

  const Certificate& cert_;
  std::size_t step_ = 0;
  std::map<int, int> local_;
  std::map<int, Rational> current_;
  std::map<int, Rational> pending_;
  std::map<std::pair<int, int>, Rational> expected_;
  std::set<Edge> covered_;
  std::set<std::size_t> open_blocks_;
  bool awaiting_tree_ = false;
  int contraction_root_ = 0;
  Rational contraction_budget_;
  bool conditional_ = false;
};

}  // namespace

ReplayResult replay(const Certificate& cert) { return Replayer(cert).run(); }

}  // namespace graphlp
