#include "graphlp/rigidity.hpp"
#include "graphlp/parallel.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <random>

namespace graphlp {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void check_size(const Graph& g, const Realization& x) {
  if (static_cast<int>(x.points.size()) != g.vertex_count()) {
    throw RigidityError("realization has " + std::to_string(x.points.size()) + " points for " +
                        std::to_string(g.vertex_count()) + " vertices");
  }
}

Eigen::VectorXd flatten(const Realization& x) {
  Eigen::VectorXd v(2 * static_cast<Eigen::Index>(x.points.size()));
  for (std::size_t k = 0; k < x.points.size(); ++k) v.segment<2>(2 * static_cast<Eigen::Index>(k)) = x.points[k];
  return v;
}

Realization unflatten(const Eigen::VectorXd& v) {
  Realization x;
  for (Eigen::Index k = 0; k < v.size() / 2; ++k) x.points.emplace_back(v.segment<2>(2 * k));
  return x;
}

// Residual vector and Jacobian without the coincidence check (zero rows there).
void evaluate(const Graph& g, const Eigen::VectorXd& X, Eigen::VectorXd& r, Eigen::MatrixXd& J) {
  const auto m = static_cast<Eigen::Index>(g.edge_count());
  r.resize(m);
  J.setZero(m, X.size());
  Eigen::Index row = 0;
  for (const auto& e : g.edges()) {
    const Eigen::Index a = 2 * (e.u - 1), b = 2 * (e.v - 1);
    Eigen::Vector2d d = X.segment<2>(a) - X.segment<2>(b);
    const double len = d.norm();
    r(row) = len - 1;
    if (len > 0) {
      J.block<1, 2>(row, a) = (d / len).transpose();
      J.block<1, 2>(row, b) = -(d / len).transpose();
    }
    ++row;
  }
}

}  // namespace

Eigen::VectorXd rigidity_map(const Graph& g, const Realization& x) {
  check_size(g, x);
  Eigen::VectorXd f(static_cast<Eigen::Index>(g.edge_count()));
  Eigen::Index row = 0;
  for (const auto& e : g.edges()) {
    const double len = (x.points[static_cast<std::size_t>(e.u - 1)] - x.points[static_cast<std::size_t>(e.v - 1)]).norm();
    if (len == 0) {
      throw RigidityError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} has coincident endpoints");
    }
    f(row++) = len;
  }
  return f;
}

Eigen::MatrixXd rigidity_jacobian(const Graph& g, const Realization& x, bool normalized) {
  const Eigen::VectorXd lengths = rigidity_map(g, x);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.edge_count()), 2 * g.vertex_count());
  Eigen::Index row = 0;
  for (const auto& e : g.edges()) {
    Eigen::Vector2d d = x.points[static_cast<std::size_t>(e.u - 1)] - x.points[static_cast<std::size_t>(e.v - 1)];
    if (normalized) d /= lengths(row);
    J.block<1, 2>(row, 2 * (e.u - 1)) = d.transpose();
    J.block<1, 2>(row, 2 * (e.v - 1)) = -d.transpose();
    ++row;
  }
  return J;
}

double realization_residual(const Graph& g, const Realization& x) {
  check_size(g, x);
  double worst = 0;
  for (const auto& e : g.edges()) {
    const double len = (x.points[static_cast<std::size_t>(e.u - 1)] - x.points[static_cast<std::size_t>(e.v - 1)]).norm();
    worst = std::max(worst, std::abs(len - 1));
  }
  return worst;
}

RankResult numerical_rank(const Eigen::MatrixXd& m, const RankPolicy& policy) {
  RankResult out;
  if (m.rows() == 0 || m.cols() == 0) return out;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  out.singular_values.assign(s.data(), s.data() + s.size());
  const double smax = s.size() ? s(0) : 0.0;
  out.threshold = static_cast<double>(std::max(m.rows(), m.cols())) * smax * policy.relative_factor;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > out.threshold) ++out.rank;
  }
  return out;
}

Realization refine_realization(const Graph& g, Realization start, int max_iterations, double tolerance) {
  check_size(g, start);
  if (g.edge_count() == 0) return start;
  Eigen::VectorXd X = flatten(start);
  Eigen::VectorXd r, rn;
  Eigen::MatrixXd J, Jn;
  evaluate(g, X, r, J);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  const Eigen::Index dim = X.size();
  for (int it = 0; it < max_iterations; ++it) {
    if (r.cwiseAbs().maxCoeff() < tolerance * 1e-3) break;
    Eigen::MatrixXd A = J.transpose() * J;
    A.diagonal().array() += lambda;
    Eigen::VectorXd step = A.ldlt().solve(-(J.transpose() * r));
    Eigen::VectorXd Xn = X + step;
    evaluate(g, Xn, rn, Jn);
    const double cn = rn.squaredNorm();
    if (cn < cost) {
      X = std::move(Xn);
      r = rn;
      J = Jn;
      cost = cn;
      lambda = std::max(lambda / 3, 1e-14);
    } else {
      lambda *= 4;
      if (lambda > 1e14) break;
    }
    (void)dim;
  }
  return unflatten(X);
}

Realization pin_to_M0(const Realization& x) {
  if (x.points.empty()) return x;
  Realization out = x;
  const Point2 origin = x.points[0];
  if (x.points.size() == 1) {
    out.points[0] = Point2::Zero();
    return out;
  }
  Point2 d = x.points[1] - origin;
  const double len = d.norm();
  if (len == 0) throw RigidityError("pin_to_M0: x1 and x2 coincide");
  const double c = d.x() / len, s = d.y() / len;
  for (auto& p : out.points) {
    const Point2 q = p - origin;
    p = Point2(c * q.x() + s * q.y(), -s * q.x() + c * q.y());
  }
  return out;
}

Realization folded_configuration(const Graph& g) {
  Realization x;
  x.points.assign(static_cast<std::size_t>(g.vertex_count()), Point2::Zero());
  std::vector<int> depth(static_cast<std::size_t>(g.vertex_count()), -1);
  if (g.vertex_count() == 0) return x;
  std::deque<int> queue{1};
  depth[0] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(v)) {
      if (depth[static_cast<std::size_t>(w - 1)] < 0) {
        depth[static_cast<std::size_t>(w - 1)] = depth[static_cast<std::size_t>(v - 1)] + 1;
        queue.push_back(w);
      }
    }
  }
  for (std::size_t k = 0; k < x.points.size(); ++k) x.points[k] = Point2(std::max(depth[k], 0), 0.0);
  return x;
}

namespace {

Realization pin_or_translate(const Realization& x) {
  try {
    return pin_to_M0(x);
  } catch (const RigidityError&) {
    Realization out = x;
    for (auto& p : out.points) p -= x.points[0];
    return out;
  }
}

}  // namespace

SolveResult solve_realization(const Graph& g, std::uint64_t seed, const SolveOptions& opts) {
  SolveResult out;
  out.best_residual = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  const double n = g.vertex_count();
  for (int attempt = 0; attempt < opts.restarts; ++attempt) {
    Realization start;
    for (int k = 0; k < g.vertex_count(); ++k) {
      const double px = -n + 2 * n * uniform01(rng);
      const double py = -n + 2 * n * uniform01(rng);
      start.points.emplace_back(px, py);
    }
    ++out.attempts;
    Realization x = refine_realization(g, std::move(start), opts.max_iterations, opts.tolerance);
    const double res = realization_residual(g, x);
    out.best_residual = std::min(out.best_residual, res);
    if (res < opts.tolerance) {
      out.realization = pin_or_translate(x);
      out.best_residual = realization_residual(g, *out.realization);
      return out;
    }
  }
  return out;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::RegularAtAllSamples: return "regular-at-all-samples";
    case Verdict::RankDeficientSampleFound: return "rank-deficient-sample-found";
    case Verdict::NoRealizationFound: return "no-realization-found";
  }
  return "no-realization-found";
}

namespace {

RankSample make_sample(const Graph& g, Realization x, std::string origin, const RankPolicy& policy) {
  RankSample s;
  s.origin = std::move(origin);
  s.residual = realization_residual(g, x);
  auto rk = numerical_rank(rigidity_jacobian(g, x), policy);
  s.rank = rk.rank;
  s.singular_values = std::move(rk.singular_values);
  s.realization = std::move(x);
  return s;
}

void finish_report(RigidityReport& rep) {
  const auto& g = rep.graph;
  rep.expected_rank = static_cast<int>(g.edge_count());
  rep.manifold_dim = 2 * g.vertex_count() - static_cast<int>(g.edge_count());
  rep.found = static_cast<int>(rep.details.size());
  rep.ranks.clear();
  bool deficient = false;
  for (const auto& s : rep.details) {
    ++rep.ranks[s.rank];
    if (s.rank < rep.expected_rank) deficient = true;
  }
  if (rep.found == 0) rep.verdict = Verdict::NoRealizationFound;
  else if (deficient) rep.verdict = Verdict::RankDeficientSampleFound;
  else rep.verdict = Verdict::RegularAtAllSamples;
  rep.note = "verdict summarizes the sampled configurations only; sampling can refute but never prove that the "
             "all-ones vector is a regular value";
}

}  // namespace

RigidityReport regularity_probe(const Graph& g, int num_seeds, const ProbeOptions& opts) {
  if (num_seeds < 1) throw RigidityError("regularity_probe needs at least one seed");
  if (!g.is_connected()) throw RigidityError("regularity_probe needs a connected graph");
  RigidityReport rep;
  rep.graph = g;
  const bool bipartite = is_bipartite(g);
  const Realization folded = folded_configuration(g);

  struct Slot {
    std::optional<RankSample> sample;
    double failed_residual = 0;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(num_seeds));
  parallel_for(slots.size(), [&](std::size_t k) {
    const std::uint64_t seed = derive_seed(opts.master_seed, k);
    if (opts.near_collinear) {
      std::mt19937_64 rng(seed);
      Realization start = folded;
      const double scale = (k == 0 && bipartite) ? 0.0 : 1e-3;
      for (auto& p : start.points) {
        p.x() += scale * (2 * uniform01(rng) - 1);
        p.y() += scale * (2 * uniform01(rng) - 1);
      }
      Realization x = refine_realization(g, std::move(start), opts.solve.max_iterations, opts.solve.tolerance);
      const double res = realization_residual(g, x);
      if (res < opts.solve.tolerance) {
        slots[k].sample = make_sample(g, pin_or_translate(x), "near-collinear " + std::to_string(k), opts.policy);
      } else {
        slots[k].failed_residual = res;
      }
      return;
    }
    auto sol = solve_realization(g, seed, opts.solve);
    if (sol.realization) slots[k].sample = make_sample(g, *sol.realization, "seed " + std::to_string(k), opts.policy);
    else slots[k].failed_residual = sol.best_residual;
  });

  rep.samples = num_seeds;
  double worst = 0;
  for (auto& s : slots) {
    if (s.sample) rep.details.push_back(std::move(*s.sample));
    else worst = std::max(worst, s.failed_residual);
  }
  rep.best_failed_residual = worst;
  if (opts.include_folded && bipartite && !opts.near_collinear && g.edge_count() > 0) {
    rep.details.push_back(make_sample(g, folded, "folded", opts.policy));
    ++rep.samples;
  }
  finish_report(rep);
  return rep;
}

RigidityReport rank_report(const Graph& g, const std::vector<Realization>& points, const RankPolicy& policy) {
  RigidityReport rep;
  rep.graph = g;
  rep.samples = static_cast<int>(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    rep.details.push_back(make_sample(g, points[k], "explicit " + std::to_string(k), policy));
  }
  finish_report(rep);
  return rep;
}

}  // namespace graphlp
