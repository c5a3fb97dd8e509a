#include "tree_dp.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace graphlp::detail {

Rational ConcavePL::eval(const Rational& x) const {
  Rational acc = 0;
  Rational left = x;
  for (const auto& p : pieces) {
    if (left <= 0) break;
    const Rational& take = left < p.length ? left : p.length;
    acc += take * p.slope;
    left -= take;
  }
  return acc;
}

Rational ConcavePL::domain() const {
  Rational total = 0;
  for (const auto& p : pieces) total += p.length;
  return total;
}

namespace {

std::vector<Piece> merge_equal_slopes(std::vector<Piece> in) {
  std::vector<Piece> out;
  for (auto& p : in) {
    if (p.length.is_zero()) continue;
    if (!out.empty() && out.back().slope == p.slope && out.back().owner == p.owner) {
      out.back().length += p.length;
    } else {
      out.push_back(std::move(p));
    }
  }
  return out;
}

// h(r) = g(v(r)) on [0,1]; concave because g is concave nondecreasing and v concave.
ConcavePL compose(const ConcavePL& g, const ImprovingProfile& profile, int owner) {
  std::vector<Rational> knots;
  for (const auto& bp : profile.breakpoints()) knots.push_back(bp.u);
  Rational acc = 0;
  for (const auto& p : g.pieces) {
    acc += p.length;
    if (acc > 0 && acc < 1) knots.push_back(profile.inverse(acc));
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  ConcavePL h;
  Rational prev_val = 0;
  for (std::size_t k = 1; k < knots.size(); ++k) {
    Rational val = g.eval(profile.value(knots[k]));
    Rational len = knots[k] - knots[k - 1];
    h.pieces.push_back({len, (val - prev_val) / len, owner});
    prev_val = val;
  }
  h.pieces = merge_equal_slopes(std::move(h.pieces));
  return h;
}

}  // namespace

TreeDP::TreeDP(const Graph& tree, int root, const ImprovingProfile& profile)
    : tree_(tree), root_(root), profile_(profile) {
  const int n = tree.vertex_count();
  if (!is_tree(tree)) throw std::invalid_argument("TreeDP: graph is not a tree");
  if (root < 1 || root > n) throw std::invalid_argument("TreeDP: root out of range");
  if (!profile.strictly_increasing()) throw std::invalid_argument("TreeDP: profile must be strictly increasing");

  children_.assign(static_cast<std::size_t>(n), {});
  std::vector<int> order;
  std::vector<int> parent(static_cast<std::size_t>(n), 0);
  std::deque<int> queue{root};
  parent[static_cast<std::size_t>(root - 1)] = -1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (int w : tree.neighbors(v)) {
      if (parent[static_cast<std::size_t>(w - 1)] != 0) continue;
      parent[static_cast<std::size_t>(w - 1)] = v;
      children_[static_cast<std::size_t>(v - 1)].push_back(w);
      queue.push_back(w);
    }
  }

  gain_.resize(static_cast<std::size_t>(n));
  through_.resize(static_cast<std::size_t>(n));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    std::vector<Piece> pieces{{1, 1, -1}};
    for (int c : children_[static_cast<std::size_t>(v - 1)]) {
      const auto& h = through_[static_cast<std::size_t>(c - 1)];
      pieces.insert(pieces.end(), h.pieces.begin(), h.pieces.end());
    }
    std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.slope > b.slope; });
    ConcavePL g;
    Rational room = 1;
    for (auto& p : pieces) {
      if (room <= 0) break;
      Rational len = p.length < room ? p.length : room;
      g.pieces.push_back({len, p.slope, -1});
      room -= len;
    }
    g.pieces = merge_equal_slopes(std::move(g.pieces));
    gain_[static_cast<std::size_t>(v - 1)] = g;
    if (v != root_) through_[static_cast<std::size_t>(v - 1)] = compose(g, profile_, v);
  }
}

bool TreeDP::allocate_node(int v, const Rational& budget, const Rational& floor_share, NodeAllocation& out) const {
  const auto& kids = children_[static_cast<std::size_t>(v - 1)];
  struct Slot {
    int owner;
    Rational length;
    Rational slope;
  };
  std::vector<Slot> slots{{-1, 1, 1}};
  std::vector<Rational> given(kids.size(), 0);
  Rational left = budget;
  for (std::size_t k = 0; k < kids.size(); ++k) {
    Rational skip = floor_share;
    Rational cap = 1 - 2 * floor_share;  // remaining room after the floor, keeps r < 1
    if (floor_share.is_zero()) cap = 1;
    for (const auto& p : through_[static_cast<std::size_t>(kids[k] - 1)].pieces) {
      Rational len = p.length;
      if (skip > 0) {
        Rational s = skip < len ? skip : len;
        len -= s;
        skip -= s;
      }
      if (len > cap) len = cap;
      cap -= len;
      if (len > 0) slots.push_back({static_cast<int>(k), len, p.slope});
    }
    given[k] = floor_share;
    left -= floor_share;
  }
  if (left < 0) throw std::logic_error("TreeDP: floor shares exceed the budget");
  Rational self = 0;
  std::stable_sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) { return a.slope > b.slope; });
  for (std::size_t i = 0; i < slots.size() && left > 0;) {
    std::size_t j = i;
    Rational group_len = 0;
    while (j < slots.size() && slots[j].slope == slots[i].slope) group_len += slots[j++].length;
    std::vector<std::size_t> idx;
    for (std::size_t k = i; k < j; ++k) idx.push_back(k);
    std::vector<Rational> take(slots.size(), 0);
    if (left >= group_len) {
      for (auto k : idx) take[k] = slots[k].length;
      left -= group_len;
    } else {
      // Even water-filling across tied pieces.
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return slots[a].length < slots[b].length; });
      std::size_t remaining = idx.size();
      for (auto k : idx) {
        Rational share = left / static_cast<long long>(remaining);
        take[k] = slots[k].length < share ? slots[k].length : share;
        left -= take[k];
        --remaining;
      }
    }
    for (auto k : idx) {
      if (slots[k].owner < 0) self += take[k];
      else given[static_cast<std::size_t>(slots[k].owner)] += take[k];
    }
    i = j;
  }
  out.vertex = v;
  out.budget = budget;
  out.self = self;
  out.parts.clear();
  bool guard_ok = true;
  for (std::size_t k = 0; k < kids.size(); ++k) {
    if (given[k] <= 0 || given[k] >= 1) guard_ok = false;
    out.parts.emplace_back(kids[k], given[k]);
  }
  return guard_ok;
}

TreeAllocation TreeDP::allocate(const Rational& budget) const {
  if (budget <= 0 || budget > 1) throw std::invalid_argument("TreeDP: budget must lie in (0,1]");
  TreeAllocation out;
  out.u.assign(static_cast<std::size_t>(tree_.vertex_count()), 0);
  std::vector<std::pair<int, Rational>> stack{{root_, budget}};
  while (!stack.empty()) {
    auto [v, b] = stack.back();
    stack.pop_back();
    NodeAllocation node;
    if (!allocate_node(v, b, 0, node)) {
      const auto k = static_cast<long long>(children_[static_cast<std::size_t>(v - 1)].size());
      const Rational floor_share = b / (2 * k + 2);
      if (!allocate_node(v, b, floor_share, node)) throw std::logic_error("TreeDP: guard repair failed");
      out.repaired = true;
    }
    out.u[static_cast<std::size_t>(v - 1)] = node.self;
    for (auto it = node.parts.rbegin(); it != node.parts.rend(); ++it) {
      stack.emplace_back(it->first, profile_.value(it->second));
    }
    out.nodes.push_back(std::move(node));
  }
  return out;
}

int tree_centroid(const Graph& tree) {
  const int n = tree.vertex_count();
  std::vector<int> parent(static_cast<std::size_t>(n), 0), order;
  std::deque<int> queue{1};
  parent[0] = -1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (int w : tree.neighbors(v)) {
      if (parent[static_cast<std::size_t>(w - 1)] == 0) {
        parent[static_cast<std::size_t>(w - 1)] = v;
        queue.push_back(w);
      }
    }
  }
  std::vector<int> size(static_cast<std::size_t>(n), 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int p = parent[static_cast<std::size_t>(*it - 1)];
    if (p > 0) size[static_cast<std::size_t>(p - 1)] += size[static_cast<std::size_t>(*it - 1)];
  }
  int best = 1, best_load = n + 1;
  for (int v = 1; v <= n; ++v) {
    int load = n - size[static_cast<std::size_t>(v - 1)];
    for (int w : tree.neighbors(v)) {
      if (parent[static_cast<std::size_t>(w - 1)] == v) load = std::max(load, size[static_cast<std::size_t>(w - 1)]);
    }
    if (load < best_load) {
      best_load = load;
      best = v;
    }
  }
  return best;
}

}  // namespace graphlp::detail
