#pragma once

#include "cli.hpp"

#include <graphlp/graph.hpp>
#include <graphlp/grid.hpp>
#include <graphlp/rigidity.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

inline std::string graph_file(const std::string& name) { return std::string(GRAPHLP_GRAPHS_DIR) + "/" + name; }

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = graphlp::cli::execute(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Decodes a Pruefer sequence over {1..n}.
inline graphlp::Graph pruefer_tree(int n, const std::vector<int>& code) {
  std::vector<graphlp::Edge> edges;
  if (n == 2) return graphlp::Graph(2, {{1, 2}});
  std::vector<int> degree(static_cast<std::size_t>(n) + 1, 1);
  for (int c : code) ++degree[static_cast<std::size_t>(c)];
  for (int c : code) {
    for (int leaf = 1; leaf <= n; ++leaf) {
      if (degree[static_cast<std::size_t>(leaf)] == 1) {
        edges.push_back({std::min(leaf, c), std::max(leaf, c)});
        --degree[static_cast<std::size_t>(leaf)];
        --degree[static_cast<std::size_t>(c)];
        break;
      }
    }
  }
  int a = 0, b = 0;
  for (int v = 1; v <= n; ++v) {
    if (degree[static_cast<std::size_t>(v)] == 1) (a == 0 ? a : b) = v;
  }
  edges.push_back({a, b});
  return graphlp::Graph(n, edges);
}

inline std::string rooted_code(const graphlp::Graph& t, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : t.neighbors(v)) {
    if (w != parent) kids.push_back(rooted_code(t, w, v));
  }
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  return s + ")";
}

// Canonical string of an unrooted tree: minimum rooted code over its centres.
inline std::string tree_code(const graphlp::Graph& t) {
  const int n = t.vertex_count();
  std::vector<int> deg(static_cast<std::size_t>(n) + 1);
  std::vector<int> layer;
  for (int v = 1; v <= n; ++v) {
    deg[static_cast<std::size_t>(v)] = t.degree(v);
    if (deg[static_cast<std::size_t>(v)] <= 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    std::vector<int> next;
    remaining -= static_cast<int>(layer.size());
    for (int v : layer) {
      for (int w : t.neighbors(v)) {
        if (--deg[static_cast<std::size_t>(w)] == 1) next.push_back(w);
      }
    }
    layer = next;
  }
  std::string best;
  for (int c : layer) {
    std::string s = rooted_code(t, c, 0);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

// One representative per isomorphism class of trees on n vertices.
inline std::vector<graphlp::Graph> trees_up_to_isomorphism(int n) {
  if (n == 1) return {graphlp::Graph(1, {})};
  if (n == 2) return {graphlp::Graph(2, {{1, 2}})};
  std::map<std::string, graphlp::Graph> seen;
  std::vector<int> code(static_cast<std::size_t>(n - 2), 1);
  while (true) {
    graphlp::Graph t = pruefer_tree(n, code);
    seen.emplace(tree_code(t), t);
    std::size_t k = 0;
    while (k < code.size() && code[k] == n) code[k++] = 1;
    if (k == code.size()) break;
    ++code[k];
  }
  std::vector<graphlp::Graph> out;
  for (auto& [key, t] : seen) out.push_back(t);
  return out;
}

// Every labelled simple graph on n vertices that is connected.
inline std::vector<graphlp::Graph> connected_graphs(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) slots.emplace_back(i, j);
  }
  std::vector<graphlp::Graph> out;
  const unsigned long total = 1ul << slots.size();
  for (unsigned long mask = 0; mask < total; ++mask) {
    std::vector<graphlp::Edge> edges;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (mask & (1ul << k)) edges.push_back({slots[k].first, slots[k].second});
    }
    graphlp::Graph g(n, edges);
    if (g.is_connected()) out.push_back(std::move(g));
  }
  return out;
}

struct Gaussian {
  double cx, cy, s, cutoff;
  double operator()(double x, double y) const {
    const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
    if (r2 > cutoff * cutoff) return 0.0;
    return std::exp(-r2 / (2 * s * s));
  }
  graphlp::Box box() const { return {cx - cutoff, cx + cutoff, cy - cutoff, cy + cutoff}; }
};

// Three Gaussians at the corners of a unit equilateral triangle centred at
// `centre` and rotated by `angle`.
inline std::vector<Gaussian> triangle_gaussians(double s, double cutoff, double angle = 0, double tx = 0, double ty = 0) {
  std::vector<Gaussian> out;
  const double r = 1 / std::sqrt(3.0);
  for (int k = 0; k < 3; ++k) {
    const double a = angle + M_PI / 2 + 2 * M_PI * k / 3;
    out.push_back({tx + r * std::cos(a), ty + r * std::sin(a), s, cutoff});
  }
  return out;
}

}  // namespace testsupport
