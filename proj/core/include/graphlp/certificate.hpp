#pragma once

#include "graphlp/graph.hpp"
#include "graphlp/polytope.hpp"
#include "graphlp/profile.hpp"
#include "graphlp/rational.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace graphlp {

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CertStatus { Proven, Conditional, Unknown };
const char* status_name(CertStatus s);
CertStatus parse_status(const std::string& s);

// Polytopes a single block may be certified against.
enum class BlockPolytope { Edge, Triangle, RegularHull };
const char* block_polytope_name(BlockPolytope p);
BlockPolytope parse_block_polytope(const std::string& s);

// Vertex ids in steps are labels (Certificate::vertex_ids), not local indices.

struct TreeRecursionStep {
  int root = 0;
  Rational budget;
  std::vector<int> vertices;
};

struct HolderSplitStep {
  int vertex = 0;
  Rational budget;
  Rational self;
  std::vector<std::pair<int, Rational>> parts;  // (child, output exponent share)
};

struct ImprovingStep {
  int parent = 0;
  int child = 0;
  Rational output;  // u = 1/q handed to the parent's budget
  Rational input;   // v(u) = 1/p, the child's budget
};

struct ContractionStep {
  int root = 0;
  Rational budget;  // the core exponent at the root
  std::vector<int> tree_vertices;
};

struct CaseStudyVertexStep {
  std::vector<int> block;  // labels, ascending
  BlockPolytope polytope = BlockPolytope::Edge;
  ExponentVector point;
  RationalVector weights;  // convex combination of the regenerated vertex list
};

struct JoinStep {
  int cut = 0;
  Rational parent_exponent;  // a = s + t at the cut before the join
  Rational to_block;         // s = 1 - y_cut, handed to the joined block
  Rational kept;             // t, what the accumulated part keeps
  std::size_t block_step = 0;  // index of the block's CaseStudyVertexStep
};

using DerivationStep =
    std::variant<TreeRecursionStep, HolderSplitStep, ImprovingStep, ContractionStep, CaseStudyVertexStep, JoinStep>;

struct Certificate {
  Graph graph;
  std::vector<int> vertex_ids;  // local index k+1 -> label
  ImprovingProfile profile = improving_profile_circle(2);
  CertStatus status = CertStatus::Unknown;
  ExponentVector witness;
  Rational sum = 0;
  std::vector<DerivationStep> derivation;
  std::vector<std::string> assumptions;
  std::vector<std::string> notes;
};

std::vector<int> identity_labels(int n);

struct ReplayResult {
  bool ok = false;
  std::optional<std::size_t> failed_step;
  std::string message;
};

// Independent re-check of a certificate using exact arithmetic only.
ReplayResult replay(const Certificate& cert);

struct RegularityEvidence {
  bool supported = false;
  std::string summary;
};

struct CertifyOptions {
  ImprovingProfile profile = improving_profile_circle(2);
  // Consulted for blocks other than edges and triangles.  When empty those
  // blocks cannot be certified.
  std::function<RegularityEvidence(const Graph&)> regularity_probe;
  // Trees with at most this many vertices try every root.
  int exhaustive_root_limit = 12;
};

Certificate certify_tree(const Graph& g, const ImprovingProfile& profile, int exhaustive_root_limit = 12);
Certificate certify_contraction(const Graph& gPrime, const Certificate& coreCert);
Certificate certify_join(int cut, const Certificate& certA, const Certificate& certB);
Certificate certify_block(const Graph& block, const std::vector<int>& labels, const CertifyOptions& opts);
Certificate certify(const Graph& g, const CertifyOptions& opts = {});

// Vertex list of a block polytope as regenerated by replay.
VertexPolytope block_polytope_vertices(BlockPolytope kind, const Graph& block, const ImprovingProfile& profile);

}  // namespace graphlp
