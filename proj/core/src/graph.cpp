#include "graphlp/graph.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/biconnected_components.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace graphlp {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 0) throw GraphError("negative vertex count");
  for (auto& e : edges) {
    if (e.u < 1 || e.u > n || e.v < 1 || e.v > n) {
      throw GraphError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       "} has a vertex outside [1," + std::to_string(n) + "]");
    }
    if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw GraphError("duplicate edge {" + std::to_string(dup->u) + "," + std::to_string(dup->v) + "}");
  }
  edges_ = std::move(edges);
  adj_.assign(static_cast<std::size_t>(n), {});
  for (const auto& e : edges_) {
    adj_[static_cast<std::size_t>(e.u - 1)].push_back(e.v);
    adj_[static_cast<std::size_t>(e.v - 1)].push_back(e.u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(int u, int v) const {
  if (u < 1 || u > n_ || v < 1 || v > n_) return false;
  const auto& a = neighbors(u);
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<std::vector<int>> Graph::components() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(static_cast<std::size_t>(n_), false);
  for (int s = 1; s <= n_; ++s) {
    if (seen[static_cast<std::size_t>(s - 1)]) continue;
    std::vector<int> comp;
    std::deque<int> queue{s};
    seen[static_cast<std::size_t>(s - 1)] = true;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      comp.push_back(v);
      for (int w : neighbors(v)) {
        if (!seen[static_cast<std::size_t>(w - 1)]) {
          seen[static_cast<std::size_t>(w - 1)] = true;
          queue.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool Graph::is_connected() const { return n_ <= 1 || components().size() == 1; }

Graph Graph::induced(const std::vector<int>& vertices) const {
  std::map<int, int> local;
  for (std::size_t k = 0; k < vertices.size(); ++k) local[vertices[k]] = static_cast<int>(k + 1);
  std::vector<Edge> sub;
  for (const auto& e : edges_) {
    auto a = local.find(e.u);
    auto b = local.find(e.v);
    if (a != local.end() && b != local.end()) sub.push_back({a->second, b->second});
  }
  return Graph(static_cast<int>(vertices.size()), std::move(sub));
}

namespace {

std::string join_ids(const std::vector<int>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(ids[i]);
  }
  return s;
}

Graph require_connected(Graph g) {
  if (g.vertex_count() < 1) throw GraphError("graph must have at least one vertex");
  auto comps = g.components();
  if (comps.size() > 1) {
    throw GraphError("graph is disconnected: component {" + join_ids(comps[1]) +
                     "} is not reachable from vertex 1");
  }
  return g;
}

Graph parse_json_graph(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw GraphError(std::string("malformed JSON graph: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
    throw GraphError("JSON graph needs an integer field \"n\"");
  }
  const int n = j["n"].get<int>();
  if (n < 1) throw GraphError("vertex count must be positive, got " + std::to_string(n));
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw GraphError("\"edges\" must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
        throw GraphError("malformed edge entry: " + e.dump());
      }
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
  }
  return Graph(n, std::move(edges));
}

Graph parse_line_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream tok(line);
    std::string head;
    if (!(tok >> head) || head[0] == '#') continue;
    auto fail = [&](const std::string& why) {
      return GraphError("line " + std::to_string(lineno) + ": " + why + ": '" + line + "'");
    };
    std::vector<long long> nums;
    std::string word;
    while (tok >> word) {
      try {
        std::size_t used = 0;
        long long val = std::stoll(word, &used);
        if (used != word.size()) throw fail("non-integer token");
        nums.push_back(val);
      } catch (const std::logic_error&) {
        throw fail("non-integer token");
      }
    }
    if (head == "n") {
      if (n >= 0) throw fail("second header line");
      if (nums.size() != 1) throw fail("header must read 'n <count>'");
      if (nums[0] < 1 || nums[0] > 1000000) throw fail("vertex count must be positive");
      n = static_cast<int>(nums[0]);
    } else if (head == "e") {
      if (n < 0) throw fail("edge before header");
      if (nums.size() != 2) throw fail("edge must read 'e <i> <j>'");
      const long long i = nums[0];
      const long long j = nums[1];
      if (i < 1 || j < 1 || i > n || j > n) throw fail("vertex index out of range [1," + std::to_string(n) + "]");
      if (i == j) throw fail("self-loop");
      if (i > j) throw fail("edge indices must satisfy i < j");
      edges.push_back({static_cast<int>(i), static_cast<int>(j)});
    } else {
      throw fail("unknown record '" + head + "'");
    }
  }
  if (n < 0) throw GraphError("missing header line 'n <count>'");
  return Graph(n, std::move(edges));
}

}  // namespace

Graph parse_graph(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return require_connected(parse_json_graph(text));
  return require_connected(parse_line_graph(text));
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot read graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string format_graph(const Graph& g) {
  std::string s = "n " + std::to_string(g.vertex_count()) + "\n";
  for (const auto& e : g.edges()) s += "e " + std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return s;
}

bool is_tree(const Graph& g) {
  return g.vertex_count() >= 1 && g.is_connected() &&
         g.edge_count() == static_cast<std::size_t>(g.vertex_count() - 1);
}

bool is_complete(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  return g.edge_count() == n * (n - 1) / 2;
}

bool is_bipartite(const Graph& g, std::vector<int>* colouring) {
  std::vector<int> colour(static_cast<std::size_t>(g.vertex_count()), -1);
  for (int s = 1; s <= g.vertex_count(); ++s) {
    if (colour[static_cast<std::size_t>(s - 1)] >= 0) continue;
    colour[static_cast<std::size_t>(s - 1)] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : g.neighbors(v)) {
        int& cw = colour[static_cast<std::size_t>(w - 1)];
        if (cw < 0) {
          cw = 1 - colour[static_cast<std::size_t>(v - 1)];
          queue.push_back(w);
        } else if (cw == colour[static_cast<std::size_t>(v - 1)]) {
          return false;
        }
      }
    }
  }
  if (colouring) *colouring = std::move(colour);
  return true;
}

ContractionDecomposition contract_pendant_trees(const Graph& g) {
  const int n = g.vertex_count();
  ContractionDecomposition out;
  out.vertex_map.assign(static_cast<std::size_t>(n), {});

  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<bool> removed(static_cast<std::size_t>(n), false);
  std::deque<int> leaves;
  for (int v = 1; v <= n; ++v) {
    deg[static_cast<std::size_t>(v - 1)] = g.degree(v);
    if (g.degree(v) <= 1) leaves.push_back(v);
  }
  int remaining = n;
  while (!leaves.empty()) {
    int v = leaves.front();
    leaves.pop_front();
    if (removed[static_cast<std::size_t>(v - 1)]) continue;
    removed[static_cast<std::size_t>(v - 1)] = true;
    --remaining;
    for (int w : g.neighbors(v)) {
      if (removed[static_cast<std::size_t>(w - 1)]) continue;
      if (--deg[static_cast<std::size_t>(w - 1)] == 1) leaves.push_back(w);
    }
  }

  if (remaining == 0) {
    out.is_tree = true;
    return out;
  }

  for (int v = 1; v <= n; ++v) {
    if (!removed[static_cast<std::size_t>(v - 1)]) {
      out.core_vertices.push_back(v);
      out.vertex_map[static_cast<std::size_t>(v - 1)] = {true, static_cast<int>(out.core_vertices.size())};
    }
  }
  out.core = g.induced(out.core_vertices);

  for (int r : out.core_vertices) {
    std::vector<int> members;
    std::deque<int> queue;
    for (int w : g.neighbors(r)) {
      if (removed[static_cast<std::size_t>(w - 1)]) queue.push_back(w);
    }
    std::set<int> seen(queue.begin(), queue.end());
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      members.push_back(v);
      out.vertex_map[static_cast<std::size_t>(v - 1)] = {false, r};
      for (int w : g.neighbors(v)) {
        if (removed[static_cast<std::size_t>(w - 1)] && seen.insert(w).second) queue.push_back(w);
      }
    }
    if (members.empty()) continue;
    std::sort(members.begin(), members.end());
    PendantTree pt;
    pt.root = r;
    pt.vertices.push_back(r);
    pt.vertices.insert(pt.vertices.end(), members.begin(), members.end());
    pt.tree = g.induced(pt.vertices);
    out.pendant_forest.push_back(std::move(pt));
  }
  return out;
}

BlockDecomposition block_decomposition(const Graph& g) {
  BlockDecomposition out;
  const int n = g.vertex_count();
  if (g.edge_count() == 0) {
    if (n >= 1) {
      std::vector<int> all(static_cast<std::size_t>(n));
      for (int v = 1; v <= n; ++v) all[static_cast<std::size_t>(v - 1)] = v;
      out.blocks.push_back({g, all});
    }
    return out;
  }

  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                                       boost::property<boost::edge_index_t, std::size_t>>;
  BGraph bg(static_cast<std::size_t>(n));
  std::size_t idx = 0;
  for (const auto& e : g.edges()) {
    boost::add_edge(static_cast<std::size_t>(e.u - 1), static_cast<std::size_t>(e.v - 1), idx++, bg);
  }
  auto component = boost::get(boost::edge_index, bg);
  std::vector<std::size_t> comp_of(g.edge_count());
  auto comp_map = boost::make_iterator_property_map(comp_of.begin(), component);
  std::vector<std::size_t> art;
  auto count = boost::biconnected_components(bg, comp_map, std::back_inserter(art)).first;

  std::vector<std::set<int>> members(count);
  boost::graph_traits<BGraph>::edge_iterator ei, ee;
  for (boost::tie(ei, ee) = boost::edges(bg); ei != ee; ++ei) {
    const auto c = comp_map[*ei];
    members[c].insert(static_cast<int>(boost::source(*ei, bg)) + 1);
    members[c].insert(static_cast<int>(boost::target(*ei, bg)) + 1);
  }
  std::vector<std::vector<int>> vertex_sets;
  for (const auto& m : members) vertex_sets.emplace_back(m.begin(), m.end());
  std::sort(vertex_sets.begin(), vertex_sets.end());
  for (auto& vs : vertex_sets) out.blocks.push_back({g.induced(vs), vs});

  for (auto a : art) out.cut_vertices.push_back(static_cast<int>(a) + 1);
  std::sort(out.cut_vertices.begin(), out.cut_vertices.end());

  // Rooted block tree: each non-root block hangs from the block through which
  // the traversal first reached its attaching cut vertex.
  std::map<int, std::vector<std::size_t>> blocks_at;
  for (std::size_t b = 0; b < out.blocks.size(); ++b) {
    for (int v : out.blocks[b].vertices) blocks_at[v].push_back(b);
  }
  std::vector<bool> visited(out.blocks.size(), false);
  std::set<int> expanded_cuts;
  std::deque<std::size_t> queue{0};
  visited[0] = true;
  while (!queue.empty()) {
    auto b = queue.front();
    queue.pop_front();
    for (int v : out.blocks[b].vertices) {
      if (blocks_at[v].size() < 2 || !expanded_cuts.insert(v).second) continue;
      for (auto other : blocks_at[v]) {
        if (visited[other]) continue;
        visited[other] = true;
        out.block_tree.push_back({b, other, v});
        queue.push_back(other);
      }
    }
  }
  return out;
}

}  // namespace graphlp
