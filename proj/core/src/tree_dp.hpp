#pragma once

#include "graphlp/graph.hpp"
#include "graphlp/profile.hpp"
#include "graphlp/rational.hpp"

#include <utility>
#include <vector>

namespace graphlp::detail {

// Linear piece of a concave function starting at 0; owner -1 is the node's
// own exponent, otherwise the local index of the child the piece belongs to.
struct Piece {
  Rational length;
  Rational slope;
  int owner = -1;
};

struct ConcavePL {
  std::vector<Piece> pieces;  // slopes nonincreasing, f(0) = 0

  Rational eval(const Rational& x) const;
  Rational domain() const;
};

struct NodeAllocation {
  int vertex = 0;  // local index
  Rational budget;
  Rational self;
  std::vector<std::pair<int, Rational>> parts;  // (child local index, output share)
};

struct TreeAllocation {
  RationalVector u;                  // indexed by local vertex - 1
  std::vector<NodeAllocation> nodes;  // pre-order
  bool repaired = false;              // a minimum share had to be imposed
};

// Optimal Hölder budget allocation on a rooted tree.  gain()(b) is the best
// exponent sum of the subtree when the root receives budget b.
class TreeDP {
 public:
  TreeDP(const Graph& tree, int root, const ImprovingProfile& profile);

  const ConcavePL& gain() const { return gain_[static_cast<std::size_t>(root_ - 1)]; }
  TreeAllocation allocate(const Rational& budget) const;
  int root() const { return root_; }

 private:
  bool allocate_node(int v, const Rational& budget, const Rational& floor_share, NodeAllocation& out) const;

  const Graph& tree_;
  int root_;
  const ImprovingProfile& profile_;
  std::vector<std::vector<int>> children_;
  std::vector<ConcavePL> gain_;      // g_v as a function of v's budget
  std::vector<ConcavePL> through_;   // h_v(r) = g_v(profile(r)) for non-root v
};

int tree_centroid(const Graph& tree);

}  // namespace graphlp::detail
