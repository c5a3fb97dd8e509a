#include "graphlp/grid.hpp"
#include "graphlp/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace graphlp {

GridGeometry GridGeometry::with_spacing(double L, double h) {
  if (!(h > 0) || !(L >= 1 + h)) throw EstimatorError("grid needs h > 0 and L >= 1 + h");
  GridGeometry g;
  g.L = L;
  g.h = h;
  g.K = static_cast<int>(std::ceil(L / h - 1e-9));
  return g;
}

GridGeometry GridGeometry::with_nodes(double L, int K) {
  if (K < 1) throw EstimatorError("grid needs K >= 1");
  GridGeometry g;
  g.L = L;
  g.K = K;
  g.h = L / K;
  if (!(L >= 1 + g.h)) throw EstimatorError("grid needs L >= 1 + h");
  return g;
}

IndexBox IndexBox::intersect(const IndexBox& o) const {
  return {std::max(i0, o.i0), std::min(i1, o.i1), std::max(j0, o.j0), std::min(j1, o.j1)};
}

GridField::GridField(const GridGeometry& geometry, double exterior)
    : geo_(geometry),
      exterior_(exterior),
      values_(static_cast<std::size_t>(geometry.side()) * static_cast<std::size_t>(geometry.side()), exterior) {}

GridField GridField::from_function(const GridGeometry& geometry, const std::function<double(double, double)>& f,
                                   double exterior) {
  GridField out(geometry, exterior);
  const int n = out.side();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) out.at(i, j) = f(geometry.coord(i), geometry.coord(j));
  }
  return out;
}

bool GridField::is_constant() const {
  return std::all_of(values_.begin(), values_.end(), [&](double v) { return v == exterior_; });
}

double GridField::read(int i, int j) const {
  const int n = side();
  if (i < 0 || j < 0 || i >= n || j >= n) return exterior_;
  return at(i, j);
}

double GridField::sample(double x, double y) const {
  const double gx = x / geo_.h + geo_.K;
  const double gy = y / geo_.h + geo_.K;
  const double fx = std::floor(gx), fy = std::floor(gy);
  const int i = static_cast<int>(fx), j = static_cast<int>(fy);
  const double a = gx - fx, b = gy - fy;
  const int n = side();
  if (i >= 0 && j >= 0 && i + 1 < n && j + 1 < n) {
    const double* row0 = &values_[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
    const double* row1 = row0 + n;
    return (1 - b) * ((1 - a) * row0[0] + a * row0[1]) + b * ((1 - a) * row1[0] + a * row1[1]);
  }
  if (i < -1 || j < -1 || i >= n || j >= n) return exterior_;
  return (1 - b) * ((1 - a) * read(i, j) + a * read(i + 1, j)) + b * ((1 - a) * read(i, j + 1) + a * read(i + 1, j + 1));
}

IndexBox GridField::support() const {
  const int n = side();
  IndexBox box{n, -1, n, -1};
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (at(i, j) != 0) {
        box.i0 = std::min(box.i0, i);
        box.i1 = std::max(box.i1, i);
        box.j0 = std::min(box.j0, j);
        box.j1 = std::max(box.j1, j);
      }
    }
  }
  return box;
}

GridField GridField::shifted(int di, int dj) const {
  GridField out(geo_, exterior_);
  const int n = side();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) out.at(i, j) = read(i - di, j - dj);
  }
  return out;
}

const char* family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Ball: return "ball";
    case FamilyKind::Annulus: return "annulus";
    case FamilyKind::Constant: return "constant";
  }
  return "constant";
}

FamilyKind parse_family(const std::string& name) {
  if (name == "ball") return FamilyKind::Ball;
  if (name == "annulus") return FamilyKind::Annulus;
  if (name == "constant") return FamilyKind::Constant;
  throw EstimatorError("unknown test family '" + name + "' (expected ball, annulus or constant)");
}

GridField test_family(FamilyKind kind, double size, const GridGeometry& geometry) {
  const double extent = geometry.K * geometry.h;
  switch (kind) {
    case FamilyKind::Constant: return GridField(geometry, 1.0);
    case FamilyKind::Ball:
      if (!(size > 0)) throw EstimatorError("ball radius must be positive");
      if (size + geometry.h >= extent) throw EstimatorError("ball of radius " + std::to_string(size) + " exceeds the grid");
      return GridField::from_function(geometry, [size](double x, double y) { return std::hypot(x, y) < size ? 1.0 : 0.0; });
    case FamilyKind::Annulus:
      if (!(size > 0 && size < 2)) throw EstimatorError("annulus thickness must lie in (0, 2)");
      if (1 + size / 2 + geometry.h >= extent) throw EstimatorError("annulus exceeds the grid");
      return GridField::from_function(geometry,
                                      [size](double x, double y) { return std::abs(std::hypot(x, y) - 1) < size / 2 ? 1.0 : 0.0; });
  }
  throw EstimatorError("unknown test family");
}

double lp_norm(const GridField& f, double p) {
  if (!(p >= 1)) throw EstimatorError("lp_norm needs p >= 1");
  const auto& v = f.values();
  if (std::isinf(p)) {
    double m = std::abs(f.exterior());
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  std::vector<double> powered(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) powered[k] = std::pow(std::abs(v[k]), p);
  const double h = f.geometry().h;
  return std::pow(h * h * pairwise_sum(powered), 1 / p);
}

}  // namespace graphlp
