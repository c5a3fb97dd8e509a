#pragma once

#include "graphlp/graph.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphlp {

class RigidityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Point2 = Eigen::Vector2d;

struct Realization {
  std::vector<Point2> points;  // points[k] is vertex k+1
};

// Edge lengths |x_i - x_j| in lexicographic edge order.
Eigen::VectorXd rigidity_map(const Graph& g, const Realization& x);
// Rows (x_i - x_j)/|x_i - x_j| in the columns of i, negated in the columns of j.
// With normalized = false the rows are the unscaled differences.
Eigen::MatrixXd rigidity_jacobian(const Graph& g, const Realization& x, bool normalized = true);
// max_e | |x_i - x_j| - 1 |, always recomputed from the points.
double realization_residual(const Graph& g, const Realization& x);

struct RankPolicy {
  double relative_factor = std::ldexp(1.0, -40);
};

struct RankResult {
  int rank = 0;
  double threshold = 0;
  std::vector<double> singular_values;  // descending
};

// sigma_k counts iff sigma_k > max(rows, cols) * sigma_max * relative_factor.
RankResult numerical_rank(const Eigen::MatrixXd& m, const RankPolicy& policy = {});

struct SolveOptions {
  int max_iterations = 200;
  int restarts = 20;
  double tolerance = 1e-10;
};

struct SolveResult {
  std::optional<Realization> realization;  // pinned when found
  double best_residual = 0;
  int attempts = 0;
};

SolveResult solve_realization(const Graph& g, std::uint64_t seed, const SolveOptions& opts = {});
// Levenberg-Marquardt from a given start; returns the final configuration.
Realization refine_realization(const Graph& g, Realization start, int max_iterations, double tolerance);

Realization pin_to_M0(const Realization& x);
// The configuration placing each vertex at (BFS depth from vertex 1, 0); a
// point of the unit-distance variety whenever g is bipartite.
Realization folded_configuration(const Graph& g);

enum class Verdict { RegularAtAllSamples, RankDeficientSampleFound, NoRealizationFound };
const char* verdict_name(Verdict v);

struct RankSample {
  std::string origin;  // "seed <k>", "folded", "near-collinear <k>", "explicit <k>"
  int rank = 0;
  double residual = 0;
  std::vector<double> singular_values;
  Realization realization;
};

struct RigidityReport {
  Graph graph;
  int samples = 0;  // attempted samples
  int found = 0;    // samples that produced a realization
  std::map<int, int> ranks;
  int expected_rank = 0;
  int manifold_dim = 0;
  Verdict verdict = Verdict::NoRealizationFound;
  std::vector<RankSample> details;
  double best_failed_residual = 0;
  std::string note;
};

struct ProbeOptions {
  std::uint64_t master_seed = 1;
  bool include_folded = true;  // test the exact folded point for bipartite graphs
  bool near_collinear = false;  // start every seed near the folded line
  RankPolicy policy;
  SolveOptions solve;
};

RigidityReport regularity_probe(const Graph& g, int num_seeds, const ProbeOptions& opts = {});
// Rank report at user-supplied configurations (no solving).
RigidityReport rank_report(const Graph& g, const std::vector<Realization>& points, const RankPolicy& policy = {});

// Monte-Carlo estimate of the epsilon-windowed form.
struct Box {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  double area() const { return (xmax - xmin) * (ymax - ymin); }
};

struct SampledFunction {
  std::function<double(double, double)> eval;
  Box support;
};

struct LerayEstimate {
  double value = 0;
  double std_error = 0;
  double epsilon = 0;
  long long samples = 0;
  long long accepted = 0;  // samples whose windows were all satisfied
};

class ZeroAcceptanceError : public RigidityError {
 public:
  using RigidityError::RigidityError;
};

LerayEstimate leray_mc_form(const Graph& g, const std::vector<SampledFunction>& functions, double epsilon,
                            long long samples, std::uint64_t master_seed, int streams = 64);

}  // namespace graphlp
