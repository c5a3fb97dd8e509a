#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphlp {

class EstimatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Uniform planar grid with nodes (i - K) h, i = 0 .. 2K, on both axes.
struct GridGeometry {
  double L = 1;
  double h = 1;
  int K = 1;

  // K = ceil(L / h); the outermost node sits at K h >= L.
  static GridGeometry with_spacing(double L, double h);
  // Exactly 2K + 1 nodes per side, h = L / K.
  static GridGeometry with_nodes(double L, int K);

  int side() const { return 2 * K + 1; }
  double coord(int i) const { return (i - K) * h; }
  bool operator==(const GridGeometry& o) const { return L == o.L && h == o.h && K == o.K; }
};

// Inclusive index rectangle; empty when i0 > i1 or j0 > j1.
struct IndexBox {
  int i0 = 0, i1 = -1, j0 = 0, j1 = -1;
  bool empty() const { return i0 > i1 || j0 > j1; }
  IndexBox expanded(int r) const { return {i0 - r, i1 + r, j0 - r, j1 + r}; }
  IndexBox intersect(const IndexBox& o) const;
  bool contains(const IndexBox& o) const { return o.empty() || (i0 <= o.i0 && o.i1 <= i1 && j0 <= o.j0 && o.j1 <= j1); }
  long long area() const { return empty() ? 0 : static_cast<long long>(i1 - i0 + 1) * (j1 - j0 + 1); }
};

// Samples of a function on a GridGeometry.  Outside the stored nodes the
// field takes the constant `exterior` value (0 for compactly supported data,
// the constant itself for constant fields).
class GridField {
 public:
  GridField() = default;
  explicit GridField(const GridGeometry& geometry, double exterior = 0.0);
  static GridField from_function(const GridGeometry& geometry, const std::function<double(double, double)>& f,
                                 double exterior = 0.0);

  const GridGeometry& geometry() const { return geo_; }
  int side() const { return geo_.side(); }
  double exterior() const { return exterior_; }
  bool bounded() const { return exterior_ == 0.0; }
  // True when every stored value equals the exterior value.
  bool is_constant() const;

  double& at(int i, int j) { return values_[static_cast<std::size_t>(j) * static_cast<std::size_t>(side()) + static_cast<std::size_t>(i)]; }
  double at(int i, int j) const { return values_[static_cast<std::size_t>(j) * static_cast<std::size_t>(side()) + static_cast<std::size_t>(i)]; }
  // at(i, j) inside the grid, exterior() outside.
  double read(int i, int j) const;
  // Bilinear interpolation at a point in length units.
  double sample(double x, double y) const;

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  // Bounding box of the nonzero stored values.
  IndexBox support() const;
  IndexBox full_box() const { return {0, side() - 1, 0, side() - 1}; }
  // Translate by whole cells; values shifted off the grid are dropped.
  GridField shifted(int di, int dj) const;

 private:
  GridGeometry geo_;
  double exterior_ = 0;
  std::vector<double> values_;
};

enum class FamilyKind { Ball, Annulus, Constant };
const char* family_name(FamilyKind kind);
FamilyKind parse_family(const std::string& name);

// Ball: indicator of |x| < size.  Annulus: indicator of ||x| - 1| < size / 2
// (unit radius, thickness size).  Constant: 1 everywhere.  Node values use the
// cell-centre rule.
GridField test_family(FamilyKind kind, double size, const GridGeometry& geometry);

// (h^2 sum |v|^p)^(1/p); p = infinity gives the maximum modulus.
double lp_norm(const GridField& f, double p);

}  // namespace graphlp
