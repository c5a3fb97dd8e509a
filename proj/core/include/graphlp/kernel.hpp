#pragma once

#include "graphlp/grid.hpp"

#include <vector>

namespace graphlp {

// psi(t) = 15/16 (1 - t^2)^2 on [-1, 1], zero elsewhere; integral 1.
double bump_profile(double t);

// The mollified unit-circle measure sigma^eps(x) = w_eps(|x|) / (2 pi) with
// w_eps(r) = psi((r - 1) / eps) / eps.  Its plane integral is exactly 1.
class MollifiedCircleKernel {
 public:
  MollifiedCircleKernel(double epsilon, int angular_nodes, int radial_nodes = 8);

  double epsilon() const { return eps_; }
  int angular_nodes() const { return M_; }
  int radial_nodes() const { return static_cast<int>(radii_.size()); }

  double radial_weight(double r) const;  // w_eps(r)
  double density(double x, double y) const;  // sigma^eps(x, y)

  // Gauss-Legendre nodes in t mapped to radii r_j = 1 + eps t_j, with
  // weights W_j = gl_j psi(t_j) (1 + eps t_j) normalized to sum 1.
  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& radial_weights() const { return weights_; }
  // Sum over the product quadrature of W_j / M (the discrete mass).
  double quadrature_mass() const;

 private:
  double eps_;
  int M_;
  std::vector<double> radii_;
  std::vector<double> weights_;
};

MollifiedCircleKernel make_kernel(double epsilon, int angular_nodes, int radial_nodes = 8);
// max(512, ceil(16 / h)).
int default_angular_nodes(double h);

// The quadrature of sigma^eps with bilinear interpolation, expressed as
// integer offsets: Af(node) = sum_s weight_s f(node - (di_s, dj_s)).
struct StencilEntry {
  int di = 0, dj = 0;
  double weight = 0;
};

struct Stencil {
  std::vector<StencilEntry> entries;  // sorted by (dj, di)
  int reach = 0;                      // max(|di|, |dj|)
  double total_weight() const;
};

Stencil build_stencil(const MollifiedCircleKernel& k, double h);

}  // namespace graphlp
