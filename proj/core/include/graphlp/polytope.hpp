#pragma once

#include "graphlp/graph.hpp"
#include "graphlp/profile.hpp"
#include "graphlp/rational.hpp"
#include "graphlp/simplex.hpp"

#include <string>
#include <vector>

namespace graphlp {

// Exponents u_i = 1/p_i.  Entry 0 encodes p = infinity, entry 1 encodes p = 1.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(RationalVector entries);

  std::size_t size() const { return entries_.size(); }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }
  const RationalVector& entries() const { return entries_; }
  Rational sum() const { return graphlp::sum(entries_); }

  // Strict form: sum > 1.
  bool is_improving() const { return sum() > 1; }
  // Non-strict form used for composition: sum >= 1 with a finite exponent
  // (nonzero entry) at `vertex` (0-based).
  bool is_nontrivial_at(std::size_t vertex) const;

  bool operator==(const ExponentVector&) const = default;
  auto operator<=>(const ExponentVector& o) const { return entries_ <=> o.entries_; }

 private:
  RationalVector entries_;
};

struct HalfspaceRow {
  RationalVector coeffs;
  Relation relation = Relation::LessEq;
  Rational rhs = 0;
  int condition = 0;  // 1-based condition number in the source list
  std::string label;
};

struct HalfspaceSystem {
  std::size_t dimension = 0;
  int ambient_dimension = 0;  // d of R^d
  std::vector<HalfspaceRow> rows;
  std::string label;
};

struct VertexPolytope {
  std::vector<ExponentVector> vertices;
  std::string label;

  VertexPolytope() = default;
  VertexPolytope(std::vector<ExponentVector> vertices, std::string label);
  std::size_t dimension() const { return vertices.empty() ? 0 : vertices.front().size(); }
};

enum class CaseStudy { Triangle, Chain3 };

const char* case_study_name(CaseStudy kind);
CaseStudy parse_case_study(const std::string& name);

HalfspaceSystem necessary_halfspaces(CaseStudy kind, int d);
VertexPolytope sufficient_vertices(CaseStudy kind);
VertexPolytope sufficient_vertices_regular(const Graph& g);
// Hull of (1-s, v(s)) and (v(s), 1-s) over profile breakpoints s.
VertexPolytope edge_polytope(const ImprovingProfile& profile);

struct HalfspaceCheck {
  bool satisfied = false;
  std::vector<int> violated;  // condition numbers
  std::vector<int> tight;
  RationalVector lhs;         // per row
};

HalfspaceCheck halfspace_membership(const HalfspaceSystem& sys, const ExponentVector& x);

struct HullCheck {
  bool inside = false;
  RationalVector weights;  // convex combination witness when inside
};

HullCheck hull_membership(const VertexPolytope& poly, const ExponentVector& x);

struct Offence {
  std::size_t vertex = 0;  // index into inner.vertices
  std::string row;         // violated row label or "outside hull"
};

struct RegionReport {
  bool contained = true;
  std::vector<Offence> offending;
};

RegionReport region_compare(const VertexPolytope& inner, const HalfspaceSystem& outer);
RegionReport region_compare(const VertexPolytope& inner, const VertexPolytope& outer);

// Drops duplicates and every candidate lying in the hull of the others;
// result is sorted lexicographically.
VertexPolytope extreme_points(std::vector<ExponentVector> candidates, std::string label);

// Exponent triples reachable by composing two circle averages into the
// multiplication slot: (w_i, u_i) in the profile triangle, w_1 + w_2 + u_3 = 1.
VertexPolytope chain3_constructed_region(int d);

// Convex-combination maximisation over a polytope; returns the point and
// weights of the lexicographically best maximiser of sum(x) subject to the
// optional per-coordinate bounds.
struct PolytopeOptimum {
  ExponentVector point;
  RationalVector weights;
};

struct CoordinateBound {
  std::size_t coordinate = 0;
  Relation relation = Relation::LessEq;
  Rational value = 0;
};

bool maximize_over_polytope(const VertexPolytope& poly, const std::vector<CoordinateBound>& bounds,
                            PolytopeOptimum& out);

}  // namespace graphlp
