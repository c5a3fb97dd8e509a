#include "support.hpp"

#include <graphlp/parallel.hpp>
#include <graphlp/rigidity.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace graphlp;

namespace {

Realization random_points(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-2, 2);
  Realization x;
  for (int i = 0; i < n; ++i) x.points.emplace_back(d(rng), d(rng));
  return x;
}

Realization moved(const Realization& x, double angle, const Point2& shift) {
  Eigen::Matrix2d rot;
  rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  Realization out;
  for (const auto& p : x.points) out.points.push_back(rot * p + shift);
  return out;
}

Realization equilateral() {
  return {{Point2(0, 0), Point2(1, 0), Point2(0.5, std::sqrt(3.0) / 2)}};
}

SampledFunction gaussian(double cx, double cy, double s, double scale = 1.0) {
  testsupport::Gaussian g{cx, cy, s, 4 * s};
  return {[g, scale](double x, double y) { return scale * g(x, y); }, g.box()};
}

}  // namespace

TEST(RigidityMap, UnitTriangle) {
  const Graph k3 = read_graph_file(testsupport::graph_file("k3.graph"));
  const auto x = equilateral();
  auto m = rigidity_map(k3, x);
  for (int e = 0; e < 3; ++e) EXPECT_NEAR(m[e], 1.0, 1e-15);
  EXPECT_LT(realization_residual(k3, x), 1e-15);
}

TEST(RigidityJacobian, MatchesFiniteDifferences) {
  const Graph g = read_graph_file(testsupport::graph_file("two_triangles.graph"));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Realization x = random_points(g.vertex_count(), rng);
    const Eigen::MatrixXd J = rigidity_jacobian(g, x);
    const double h = 1e-6;
    for (int v = 0; v < g.vertex_count(); ++v) {
      for (int c = 0; c < 2; ++c) {
        Realization a = x, b = x;
        a.points[static_cast<std::size_t>(v)][c] += h;
        b.points[static_cast<std::size_t>(v)][c] -= h;
        const Eigen::VectorXd fd = (rigidity_map(g, a) - rigidity_map(g, b)) / (2 * h);
        for (Eigen::Index e = 0; e < fd.size(); ++e) EXPECT_NEAR(J(e, 2 * v + c), fd[e], 1e-7);
      }
    }
  }
}

TEST(NumericalRank, ThresholdPolicy) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 4);
  m(0, 0) = 1;
  m(1, 1) = 1e-3;
  m(2, 2) = 1e-14;  // below 4 * 1 * 2^-40 ~ 3.6e-12
  auto r = numerical_rank(m);
  EXPECT_EQ(r.rank, 2);
  EXPECT_EQ(r.singular_values.size(), 3u);
  EXPECT_TRUE(std::is_sorted(r.singular_values.rbegin(), r.singular_values.rend()));
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd::Zero(2, 2)).rank, 0);
}

// Rank does not depend on whether rows are normalised, and is unchanged by a
// rigid motion of the configuration.
TEST(RankProperty, RowScalingAndRigidMotionInvariance) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(0, 2 * M_PI), sh(-5, 5);
  for (const char* name : {"k3.graph", "c4.graph", "k4.graph", "two_blocks13.graph", "tree_triangle.graph"}) {
    const Graph g = read_graph_file(testsupport::graph_file(name));
    for (int trial = 0; trial < 20; ++trial) {
      Realization x = random_points(g.vertex_count(), rng);
      const int r = numerical_rank(rigidity_jacobian(g, x)).rank;
      EXPECT_EQ(numerical_rank(rigidity_jacobian(g, x, false)).rank, r) << name;
      EXPECT_EQ(numerical_rank(rigidity_jacobian(g, moved(x, ang(rng), Point2(sh(rng), sh(rng))))).rank, r) << name;
    }
    if (g.vertex_count() <= 4 && is_bipartite(g)) {
      // Also at a folded point, where the rank drops.
      Realization f = folded_configuration(g);
      const int r = numerical_rank(rigidity_jacobian(g, f)).rank;
      EXPECT_EQ(numerical_rank(rigidity_jacobian(g, moved(f, 1.1, Point2(0.3, -2)))).rank, r) << name;
    }
  }
}

TEST(FourCycle, ModelPointHasRankThree) {
  const Graph c4 = read_graph_file(testsupport::graph_file("c4.graph"));
  Realization x{{Point2(0, 0), Point2(1, 0), Point2(2, 0), Point2(1, 0)}};
  EXPECT_LT(realization_residual(c4, x), 1e-15);
  auto r = numerical_rank(rigidity_jacobian(c4, x));
  EXPECT_EQ(r.rank, 3);
  ASSERT_EQ(r.singular_values.size(), 4u);
  EXPECT_NEAR(r.singular_values[0], 2.0, 1e-12);
  EXPECT_NEAR(r.singular_values[1], std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(r.singular_values[2], std::sqrt(2.0), 1e-12);
  EXPECT_LT(r.singular_values[3], 1e-12);
}

TEST(FourCycle, FoldedConfigurationIsRealization) {
  const Graph c4 = read_graph_file(testsupport::graph_file("c4.graph"));
  auto f = folded_configuration(c4);
  EXPECT_LT(realization_residual(c4, f), 1e-15);
  EXPECT_EQ(numerical_rank(rigidity_jacobian(c4, f)).rank, 3);
}

TEST(Solver, TriangleConverges) {
  const Graph k3 = read_graph_file(testsupport::graph_file("k3.graph"));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto res = solve_realization(k3, seed);
    ASSERT_TRUE(res.realization.has_value());
    const auto& x = *res.realization;
    EXPECT_LE((rigidity_map(k3, x).array() - 1).abs().maxCoeff(), 1e-8);
    EXPECT_NEAR(x.points[0].norm(), 0, 1e-12);
    EXPECT_NEAR(x.points[1].y(), 0, 1e-12);
  }
}

TEST(Solver, CompleteGraphOnFourHasNoUnitRealization) {
  const Graph k4 = read_graph_file(testsupport::graph_file("k4.graph"));
  SolveOptions opts;
  opts.restarts = 5;
  auto res = solve_realization(k4, 1, opts);
  EXPECT_FALSE(res.realization.has_value());
  EXPECT_GT(res.best_residual, 0.1);
}

TEST(Probe, ReportsManifoldDimensionAndVerdicts) {
  const Graph k3 = read_graph_file(testsupport::graph_file("k3.graph"));
  auto rep = regularity_probe(k3, 12);
  EXPECT_EQ(rep.manifold_dim, 3);
  EXPECT_EQ(rep.expected_rank, 3);
  EXPECT_EQ(rep.verdict, Verdict::RegularAtAllSamples);
  EXPECT_EQ(rep.ranks.at(3), 12);
  EXPECT_FALSE(rep.note.empty());

  const Graph c4 = read_graph_file(testsupport::graph_file("c4.graph"));
  ProbeOptions near;
  near.near_collinear = true;
  auto rc = regularity_probe(c4, 5, near);
  EXPECT_EQ(rc.verdict, Verdict::RankDeficientSampleFound);
  EXPECT_EQ(rc.manifold_dim, 4);

  const Graph c6 = read_graph_file(testsupport::graph_file("c6.graph"));
  auto r6 = regularity_probe(c6, 8);
  EXPECT_EQ(r6.manifold_dim, 6);
  EXPECT_GE(r6.found, 1);

  const Graph k4 = read_graph_file(testsupport::graph_file("k4.graph"));
  ProbeOptions quick;
  quick.solve.restarts = 3;
  EXPECT_EQ(regularity_probe(k4, 2, quick).verdict, Verdict::NoRealizationFound);
}

TEST(Probe, IndependentOfThreadCount) {
  const Graph g = read_graph_file(testsupport::graph_file("two_triangles.graph"));
  set_thread_limit(1);
  auto a = regularity_probe(g, 16);
  set_thread_limit(3);
  auto b = regularity_probe(g, 16);
  set_thread_limit(0);
  ASSERT_EQ(a.details.size(), b.details.size());
  for (std::size_t i = 0; i < a.details.size(); ++i) {
    EXPECT_EQ(a.details[i].singular_values, b.details[i].singular_values);
  }
  EXPECT_EQ(a.ranks, b.ranks);
}

TEST(LerayMc, ZeroFunctionGivesZero) {
  const Graph k3 = read_graph_file(testsupport::graph_file("k3.graph"));
  std::vector<SampledFunction> fs{gaussian(0, 0, 1), gaussian(1, 0, 1), {[](double, double) { return 0.0; }, {-1, 1, -1, 1}}};
  auto r = leray_mc_form(k3, fs, 0.05, 20000, 1);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.std_error, 0.0);
  EXPECT_GT(r.accepted, 0);
}

TEST(LerayMc, ImpossibleGeometryIsZeroAcceptance) {
  const Graph k4 = read_graph_file(testsupport::graph_file("k4.graph"));
  std::vector<SampledFunction> fs(4, gaussian(0, 0, 1));
  EXPECT_THROW(leray_mc_form(k4, fs, 0.01, 5000, 1), ZeroAcceptanceError);
}

TEST(LerayMc, LinearAndMonotoneForFixedSeed) {
  const Graph p3 = read_graph_file(testsupport::graph_file("p3.graph"));
  std::vector<SampledFunction> base{gaussian(0, 0, 0.7), gaussian(1, 1, 0.7), gaussian(0.5, 0.5, 0.7)};
  auto a = leray_mc_form(p3, base, 0.05, 50000, 9);
  auto doubled = base;
  doubled[1] = gaussian(1, 1, 0.7, 2.0);
  auto b = leray_mc_form(p3, doubled, 0.05, 50000, 9);
  EXPECT_NEAR(b.value, 2 * a.value, 1e-12 * std::abs(a.value));
  auto bigger = base;
  bigger[2] = gaussian(0.5, 0.5, 0.7, 1.5);
  EXPECT_GE(leray_mc_form(p3, bigger, 0.05, 50000, 9).value, a.value);
}

TEST(LerayMc, RejectsBadArguments) {
  const Graph k3 = read_graph_file(testsupport::graph_file("k3.graph"));
  std::vector<SampledFunction> two{gaussian(0, 0, 1), gaussian(1, 0, 1)};
  EXPECT_THROW(leray_mc_form(k3, two, 0.1, 100, 1), RigidityError);
  std::vector<SampledFunction> three(3, gaussian(0, 0, 1));
  EXPECT_THROW(leray_mc_form(k3, three, 0.0, 100, 1), RigidityError);
  EXPECT_THROW(leray_mc_form(k3, three, 0.1, 0, 1), RigidityError);
}
