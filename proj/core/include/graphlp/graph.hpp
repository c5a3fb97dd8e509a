#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace graphlp {

// Vertices are 1-indexed throughout, matching the graph file format.
struct Edge {
  int u = 0;
  int v = 0;
  auto operator<=>(const Edge&) const = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Graph {
 public:
  Graph() = default;
  // Validates simplicity and index range; edges are normalized to u < v and
  // stored in lexicographic order.  Connectivity is not required here.
  Graph(int n, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v - 1)); }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  bool has_edge(int u, int v) const;
  bool empty() const { return n_ == 0; }

  bool is_connected() const;
  std::vector<std::vector<int>> components() const;

  // Subgraph induced on `vertices`, relabelled so vertices[k] becomes k+1.
  Graph induced(const std::vector<int>& vertices) const;

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

// Accepts the line format ("n <count>", "e <i> <j>", '#' comments) or the
// JSON object {"n": ..., "edges": [[i,j], ...]}.  Rejects disconnected input.
Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::string& path);
std::string format_graph(const Graph& g);

bool is_tree(const Graph& g);
bool is_complete(const Graph& g);
bool is_bipartite(const Graph& g, std::vector<int>* colouring = nullptr);

struct PendantTree {
  int root = 0;               // original vertex id, lies on the core
  Graph tree;                 // local vertex 1 is the root
  std::vector<int> vertices;  // local index k+1 -> original id
};

struct VertexPlacement {
  bool in_core = false;
  int index = 0;  // core-local index when in_core, otherwise the root it hangs from
};

struct ContractionDecomposition {
  Graph core;
  std::vector<int> core_vertices;  // core-local index k+1 -> original id
  std::vector<PendantTree> pendant_forest;
  std::vector<VertexPlacement> vertex_map;  // indexed by original id - 1
  bool is_tree = false;
};

ContractionDecomposition contract_pendant_trees(const Graph& g);

struct Block {
  Graph graph;                // local relabelling
  std::vector<int> vertices;  // local index k+1 -> original id, ascending
};

struct BlockAdjacency {
  std::size_t parent = 0;
  std::size_t child = 0;
  int cut = 0;  // original id of the shared vertex
};

struct BlockDecomposition {
  std::vector<Block> blocks;
  std::vector<BlockAdjacency> block_tree;  // rooted at block 0
  std::vector<int> cut_vertices;
};

BlockDecomposition block_decomposition(const Graph& g);

}  // namespace graphlp
