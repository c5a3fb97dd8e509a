#include "graphlp/parallel.hpp"
#include "graphlp/rigidity.hpp"

#include <deque>
#include <numbers>
#include <random>

namespace graphlp {

namespace {

struct Kahan {
  double sum = 0, carry = 0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool inside(const Box& b, const Point2& p) {
  return p.x() >= b.xmin && p.x() <= b.xmax && p.y() >= b.ymin && p.y() <= b.ymax;
}

}  // namespace

LerayEstimate leray_mc_form(const Graph& g, const std::vector<SampledFunction>& functions, double epsilon,
                            long long samples, std::uint64_t master_seed, int streams) {
  const int n = g.vertex_count();
  if (static_cast<int>(functions.size()) != n) throw RigidityError("leray_mc_form: one function per vertex required");
  if (!(epsilon > 0 && epsilon < 1)) throw RigidityError("leray_mc_form: epsilon must lie in (0,1)");
  if (samples < 1 || streams < 1) throw RigidityError("leray_mc_form: samples and streams must be positive");
  if (!g.is_connected()) throw RigidityError("leray_mc_form: graph must be connected");

  // BFS spanning tree from vertex 1.
  std::vector<int> parent(static_cast<std::size_t>(n), 0), order;
  std::deque<int> queue{1};
  parent[0] = -1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (int w : g.neighbors(v)) {
      if (parent[static_cast<std::size_t>(w - 1)] == 0) {
        parent[static_cast<std::size_t>(w - 1)] = v;
        queue.push_back(w);
      }
    }
  }
  std::vector<Edge> extra;
  for (const auto& e : g.edges()) {
    if (parent[static_cast<std::size_t>(e.v - 1)] != e.u && parent[static_cast<std::size_t>(e.u - 1)] != e.v) extra.push_back(e);
  }

  const double lo2 = (1 - epsilon) * (1 - epsilon);
  const double span2 = (1 + epsilon) * (1 + epsilon) - lo2;
  const Box& root_box = functions[0].support;
  const double base = root_box.area() * std::pow(2 * std::numbers::pi, n - 1) *
                      std::pow(1 / (2 * epsilon), static_cast<double>(extra.size()));

  std::vector<double> sums(static_cast<std::size_t>(streams)), squares(static_cast<std::size_t>(streams));
  std::vector<long long> hits(static_cast<std::size_t>(streams));
  parallel_for(static_cast<std::size_t>(streams), [&](std::size_t s) {
    const long long count = samples / streams + (static_cast<long long>(s) < samples % streams ? 1 : 0);
    std::mt19937_64 rng(derive_seed(master_seed, s));
    std::vector<Point2> x(static_cast<std::size_t>(n));
    Kahan w1, w2;
    long long accepted = 0;
    for (long long k = 0; k < count; ++k) {
      x[0] = Point2(root_box.xmin + unit(rng) * (root_box.xmax - root_box.xmin),
                    root_box.ymin + unit(rng) * (root_box.ymax - root_box.ymin));
      for (std::size_t i = 1; i < order.size(); ++i) {
        const int v = order[i];
        const double rho = std::sqrt(lo2 + unit(rng) * span2);
        const double theta = 2 * std::numbers::pi * unit(rng);
        x[static_cast<std::size_t>(v - 1)] =
            x[static_cast<std::size_t>(parent[static_cast<std::size_t>(v - 1)] - 1)] + rho * Point2(std::cos(theta), std::sin(theta));
      }
      bool ok = true;
      for (const auto& e : extra) {
        const double d = (x[static_cast<std::size_t>(e.u - 1)] - x[static_cast<std::size_t>(e.v - 1)]).norm();
        if (std::abs(d - 1) > epsilon) {
          ok = false;
          break;
        }
      }
      double w = 0;
      if (ok) {
        ++accepted;
        w = base;
        for (int v = 1; v <= n && w != 0; ++v) {
          const auto& f = functions[static_cast<std::size_t>(v - 1)];
          const auto& p = x[static_cast<std::size_t>(v - 1)];
          w *= inside(f.support, p) ? f.eval(p.x(), p.y()) : 0.0;
        }
      }
      w1.add(w);
      w2.add(w * w);
    }
    sums[s] = w1.sum;
    squares[s] = w2.sum;
    hits[s] = accepted;
  });

  LerayEstimate out;
  out.epsilon = epsilon;
  out.samples = samples;
  for (auto h : hits) out.accepted += h;
  if (out.accepted == 0) {
    throw ZeroAcceptanceError("leray_mc_form: no sample satisfied every window at epsilon " + std::to_string(epsilon));
  }
  const double N = static_cast<double>(samples);
  const double mean = pairwise_sum(sums) / N;
  const double second = pairwise_sum(squares) / N;
  out.value = mean;
  out.std_error = samples > 1 ? std::sqrt(std::max(second - mean * mean, 0.0) / (N - 1)) : 0.0;
  return out;
}

}  // namespace graphlp
