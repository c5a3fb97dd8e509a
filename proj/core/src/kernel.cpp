#include "graphlp/kernel.hpp"
#include "graphlp/parallel.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace graphlp {

double bump_profile(double t) {
  if (t <= -1 || t >= 1) return 0.0;
  const double s = 1 - t * t;
  return 15.0 / 16.0 * s * s;
}

MollifiedCircleKernel::MollifiedCircleKernel(double epsilon, int angular_nodes, int radial_nodes)
    : eps_(epsilon), M_(angular_nodes) {
  if (!(epsilon > 0 && epsilon < 0.5)) throw EstimatorError("kernel width must lie in (0, 1/2)");
  if (angular_nodes < 64) throw EstimatorError("kernel needs at least 64 angular nodes");
  if (radial_nodes < 2) throw EstimatorError("kernel needs at least 2 radial nodes");
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(radial_nodes));
  if (table == nullptr) throw EstimatorError("Gauss-Legendre table allocation failed");
  double total = 0;
  for (int j = 0; j < radial_nodes; ++j) {
    double t = 0, w = 0;
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(j), &t, &w, table);
    radii_.push_back(1 + epsilon * t);
    weights_.push_back(w * bump_profile(t) * (1 + epsilon * t));
    total += weights_.back();
  }
  gsl_integration_glfixed_table_free(table);
  for (auto& w : weights_) w /= total;
}

double MollifiedCircleKernel::radial_weight(double r) const { return bump_profile((r - 1) / eps_) / eps_; }

double MollifiedCircleKernel::density(double x, double y) const {
  return radial_weight(std::hypot(x, y)) / (2 * std::numbers::pi);
}

double MollifiedCircleKernel::quadrature_mass() const {
  double s = 0;
  for (double w : weights_) s += w;
  return s;
}

MollifiedCircleKernel make_kernel(double epsilon, int angular_nodes, int radial_nodes) {
  return MollifiedCircleKernel(epsilon, angular_nodes, radial_nodes);
}

int default_angular_nodes(double h) {
  return std::max(512, static_cast<int>(std::ceil(16.0 / h)));
}

double Stencil::total_weight() const {
  std::vector<double> w;
  w.reserve(entries.size());
  for (const auto& e : entries) w.push_back(e.weight);
  return pairwise_sum(w);
}

Stencil build_stencil(const MollifiedCircleKernel& k, double h) {
  if (!(h > 0)) throw EstimatorError("stencil needs h > 0");
  std::map<std::pair<int, int>, double> acc;  // keyed (dj, di)
  const int M = k.angular_nodes();
  const auto& radii = k.radii();
  const auto& weights = k.radial_weights();
  for (int m = 0; m < M; ++m) {
    const double theta = 2 * std::numbers::pi * m / M;
    const double c = std::cos(theta), s = std::sin(theta);
    for (std::size_t j = 0; j < radii.size(); ++j) {
      const double w = weights[j] / M;
      // f(x - y) with y = r (c, s); bilinear weights at the four nodes around -y / h.
      const double gx = -radii[j] * c / h, gy = -radii[j] * s / h;
      const double fx = std::floor(gx), fy = std::floor(gy);
      const int i0 = static_cast<int>(fx), j0 = static_cast<int>(fy);
      const double a = gx - fx, b = gy - fy;
      // Af(node) reads f(node + (i0 + di', j0 + dj')), stored as an offset to subtract.
      acc[{-j0, -i0}] += w * (1 - a) * (1 - b);
      acc[{-j0, -i0 - 1}] += w * a * (1 - b);
      acc[{-j0 - 1, -i0}] += w * (1 - a) * b;
      acc[{-j0 - 1, -i0 - 1}] += w * a * b;
    }
  }
  Stencil out;
  for (const auto& [key, w] : acc) {
    if (w == 0) continue;
    out.entries.push_back({key.second, key.first, w});
    out.reach = std::max({out.reach, std::abs(key.first), std::abs(key.second)});
  }
  return out;
}

}  // namespace graphlp
