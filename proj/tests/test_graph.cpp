#include "support.hpp"

#include <graphlp/graph.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace graphlp;

namespace {

bool connected_without(const Graph& g, int removed) {
  std::vector<int> keep;
  for (int v = 1; v <= g.vertex_count(); ++v) {
    if (v != removed) keep.push_back(v);
  }
  return keep.empty() || g.induced(keep).is_connected();
}

}  // namespace

TEST(GraphParse, LineFormatWithComments) {
  Graph g = parse_graph("# a triangle\nn 3\ne 1 2\ne 2 3\ne 1 3\n");
  EXPECT_EQ(g.vertex_count(), 3);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_TRUE(is_complete(g));
}

TEST(GraphParse, JsonFormat) {
  Graph g = parse_graph(R"({"n": 4, "edges": [[1,2],[2,3],[3,4],[1,4]]})");
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_TRUE(is_bipartite(g));
  EXPECT_FALSE(is_tree(g));
}

TEST(GraphParse, FormatRoundTrip) {
  for (const char* name : {"k3.graph", "c4.graph", "two_blocks13.graph", "tree_triangle.graph"}) {
    Graph g = read_graph_file(testsupport::graph_file(name));
    EXPECT_EQ(parse_graph(format_graph(g)), g) << name;
  }
}

TEST(GraphParse, RejectsMalformedInput) {
  const char* bad[] = {
      "e 1 2\nn 2\n",                  // edge before header
      "n 3\ne 1 2\n",                  // disconnected
      "n 2\ne 1 1\n",                  // self-loop
      "n 2\ne 2 1\n",                  // unordered pair
      "n 2\ne 1 3\n",                  // out of range
      "n 2\ne 1 2\ne 1 2\n",           // duplicate
      "n 2\nx 1 2\n",                  // unknown record
      "n 2\nn 2\ne 1 2\n",             // two headers
      "n two\n",                       // non-integer
      "",                              // empty
      R"({"n": 2, "edges": [[1]]})",   // short edge
      R"({"edges": [[1,2]]})",         // no n
      R"({"n": 2, "edges": [[1,2)",    // broken JSON
  };
  for (const char* text : bad) EXPECT_THROW(parse_graph(text), GraphError) << text;
}

TEST(GraphParse, MissingFileIsReported) {
  EXPECT_THROW(read_graph_file("/nonexistent/graph"), GraphError);
}

TEST(GraphProperties, ExampleClassification) {
  EXPECT_TRUE(is_tree(read_graph_file(testsupport::graph_file("p3.graph"))));
  EXPECT_TRUE(is_tree(read_graph_file(testsupport::graph_file("star3.graph"))));
  EXPECT_FALSE(is_bipartite(read_graph_file(testsupport::graph_file("k3.graph"))));
  EXPECT_TRUE(is_bipartite(read_graph_file(testsupport::graph_file("c6.graph"))));
  EXPECT_TRUE(is_complete(read_graph_file(testsupport::graph_file("k4.graph"))));
}

TEST(Contraction, TreeTrianglePendantForest) {
  Graph g = read_graph_file(testsupport::graph_file("tree_triangle.graph"));
  auto dec = contract_pendant_trees(g);
  EXPECT_FALSE(dec.is_tree);
  EXPECT_EQ(dec.core.vertex_count(), 3);
  EXPECT_TRUE(is_complete(dec.core));
  ASSERT_EQ(dec.pendant_forest.size(), 1u);
  EXPECT_EQ(dec.pendant_forest[0].root, 6);
  EXPECT_EQ(dec.pendant_forest[0].tree.vertex_count(), 6);
}

TEST(Blocks, TwoBlocksShareVertexFour) {
  Graph g = read_graph_file(testsupport::graph_file("two_blocks13.graph"));
  auto bd = block_decomposition(g);
  ASSERT_EQ(bd.blocks.size(), 2u);
  EXPECT_EQ(bd.cut_vertices, std::vector<int>{4});
  std::set<std::size_t> sizes{bd.blocks[0].vertices.size(), bd.blocks[1].vertices.size()};
  EXPECT_EQ(sizes, (std::set<std::size_t>{5, 9}));
}

// Structural invariants checked on every labelled connected graph with up to
// six vertices.
TEST(StructureProperty, ContractionAndBlocksOnAllSmallGraphs) {
  for (int n = 1; n <= 6; ++n) {
    for (const Graph& g : testsupport::connected_graphs(n)) {
      auto dec = contract_pendant_trees(g);
      ASSERT_EQ(dec.is_tree, is_tree(g));
      if (dec.is_tree) continue;

      // The core has minimum degree 2 and, together with the pendant trees,
      // accounts for every vertex and edge exactly once.
      for (int v = 1; v <= dec.core.vertex_count(); ++v) ASSERT_GE(dec.core.degree(v), 2);
      std::size_t vertices = dec.core_vertices.size(), edges = dec.core.edge_count();
      for (const auto& pt : dec.pendant_forest) {
        ASSERT_TRUE(is_tree(pt.tree));
        ASSERT_EQ(pt.vertices.front(), pt.root);
        vertices += pt.vertices.size() - 1;
        edges += pt.tree.edge_count();
      }
      ASSERT_EQ(vertices, static_cast<std::size_t>(n));
      ASSERT_EQ(edges, g.edge_count());

      auto bd = block_decomposition(dec.core);
      std::multiset<Edge> covered;
      for (const auto& b : bd.blocks) {
        // Each block is an edge or 2-connected, and its edges are core edges.
        if (b.graph.vertex_count() > 2) {
          for (int v = 1; v <= b.graph.vertex_count(); ++v) ASSERT_TRUE(connected_without(b.graph, v));
        } else {
          ASSERT_EQ(b.graph.edge_count(), 1u);
        }
        for (const auto& e : b.graph.edges()) {
          const int u = b.vertices[static_cast<std::size_t>(e.u - 1)], w = b.vertices[static_cast<std::size_t>(e.v - 1)];
          ASSERT_TRUE(dec.core.has_edge(u, w));
          covered.insert({std::min(u, w), std::max(u, w)});
        }
      }
      ASSERT_EQ(covered.size(), dec.core.edge_count());
      ASSERT_EQ(std::set<Edge>(covered.begin(), covered.end()).size(), covered.size());
      ASSERT_EQ(bd.block_tree.size() + 1, bd.blocks.size());
      // Two blocks share at most one vertex, and a shared vertex is a cut vertex.
      for (std::size_t a = 0; a < bd.blocks.size(); ++a) {
        for (std::size_t b = a + 1; b < bd.blocks.size(); ++b) {
          std::vector<int> common;
          std::set_intersection(bd.blocks[a].vertices.begin(), bd.blocks[a].vertices.end(), bd.blocks[b].vertices.begin(),
                                bd.blocks[b].vertices.end(), std::back_inserter(common));
          ASSERT_LE(common.size(), 1u);
          for (int v : common) {
            ASSERT_TRUE(std::count(bd.cut_vertices.begin(), bd.cut_vertices.end(), v));
            ASSERT_FALSE(connected_without(dec.core, v));
          }
        }
      }
    }
  }
}

TEST(TreeEnumeration, CountsMatchKnownSequence) {
  const std::size_t expected[] = {0, 1, 1, 1, 2, 3, 6, 11, 23};
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(testsupport::trees_up_to_isomorphism(n).size(), expected[n]) << n;
}
