#include "graphlp/polytope.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace graphlp {

ExponentVector::ExponentVector(RationalVector entries) : entries_(std::move(entries)) {
  for (const auto& x : entries_) {
    if (x < 0 || x > 1) throw std::invalid_argument("exponent outside [0,1]: " + to_string(x));
  }
}

bool ExponentVector::is_nontrivial_at(std::size_t vertex) const {
  return vertex < entries_.size() && entries_[vertex] > 0 && sum() >= 1;
}

VertexPolytope::VertexPolytope(std::vector<ExponentVector> verts, std::string lbl)
    : vertices(std::move(verts)), label(std::move(lbl)) {
  std::set<ExponentVector> seen;
  for (const auto& v : vertices) {
    if (!vertices.empty() && v.size() != vertices.front().size()) {
      throw std::invalid_argument("polytope vertices of mixed dimension");
    }
    if (!seen.insert(v).second) throw std::invalid_argument("polytope vertices must be distinct");
  }
}

const char* case_study_name(CaseStudy kind) {
  return kind == CaseStudy::Triangle ? "triangle" : "chain3";
}

CaseStudy parse_case_study(const std::string& name) {
  if (name == "triangle") return CaseStudy::Triangle;
  if (name == "chain3") return CaseStudy::Chain3;
  throw std::invalid_argument("unknown kind '" + name + "' (expected triangle or chain3)");
}

namespace {

ExponentVector ev(std::initializer_list<Rational> xs) { return ExponentVector(RationalVector(xs)); }

HalfspaceRow row(CaseStudy kind, int condition, RationalVector coeffs, Relation rel, Rational rhs) {
  HalfspaceRow r;
  r.coeffs = std::move(coeffs);
  r.relation = rel;
  r.rhs = std::move(rhs);
  r.condition = condition;
  r.label = std::string(case_study_name(kind)) + " necessary condition " + std::to_string(condition);
  return r;
}

}  // namespace

HalfspaceSystem necessary_halfspaces(CaseStudy kind, int d) {
  if (d < 2) throw std::invalid_argument("dimension must be at least 2, got " + std::to_string(d));
  const Rational D = d;
  HalfspaceSystem sys;
  sys.dimension = 3;
  sys.ambient_dimension = d;
  sys.label = std::string(case_study_name(kind)) + " necessary conditions, d=" + std::to_string(d);
  using R = Relation;
  if (kind == CaseStudy::Triangle) {
    sys.rows = {
        row(kind, 1, {1, 1, 1}, R::GreaterEq, 1),
        row(kind, 2, {1, 1, D}, R::LessEq, D),
        row(kind, 3, {1, D, 1}, R::LessEq, D),
        row(kind, 4, {D, 1, 1}, R::LessEq, D),
        row(kind, 5, {D + 1, D + 1, 2 * D}, R::LessEq, 3 * D - 1),
        row(kind, 6, {D + 1, 2 * D, D + 1}, R::LessEq, 3 * D - 1),
        row(kind, 7, {2 * D, D + 1, D + 1}, R::LessEq, 3 * D - 1),
    };
  } else {
    sys.rows = {
        row(kind, 1, {1, 1, 1}, R::GreaterEq, 1),
        row(kind, 2, {1, 1, D}, R::LessEq, D),
        row(kind, 3, {D, D, 1}, R::LessEq, 2 * D - 1),
        row(kind, 4, {D, 0, 1}, R::LessEq, D),
        row(kind, 5, {0, D, 1}, R::LessEq, D),
    };
  }
  return sys;
}

VertexPolytope sufficient_vertices(CaseStudy kind) {
  const Rational z = 0, one = 1, h = Rational(1, 2), t = Rational(2, 3);
  if (kind == CaseStudy::Triangle) {
    return VertexPolytope({ev({one, z, z}), ev({z, one, z}), ev({z, z, one}), ev({t, t, z}), ev({t, z, t}),
                           ev({z, t, t}), ev({h, h, h})},
                          "triangle sufficient polygon");
  }
  return VertexPolytope({ev({one, z, z}), ev({z, one, z}), ev({z, z, one}), ev({t, z, t}), ev({z, t, t}),
                         ev({one, h, z}), ev({h, one, z})},
                        "chain3 sufficient polygon");
}

VertexPolytope sufficient_vertices_regular(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  if (n < 2 || !g.is_connected()) throw std::invalid_argument("regular hull needs a connected graph with n >= 2");
  std::vector<ExponentVector> verts;
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector e(n, 0);
    e[i] = 1;
    verts.emplace_back(std::move(e));
  }
  for (const auto& e : g.edges()) {
    RationalVector p(n, 0);
    p[static_cast<std::size_t>(e.u - 1)] = Rational(2, 3);
    p[static_cast<std::size_t>(e.v - 1)] = Rational(2, 3);
    verts.emplace_back(std::move(p));
  }
  return VertexPolytope(std::move(verts), "regularly realizable hull");
}

VertexPolytope edge_polytope(const ImprovingProfile& profile) {
  std::vector<ExponentVector> verts;
  std::set<ExponentVector> seen;
  auto add = [&](ExponentVector p) {
    if (seen.insert(p).second) verts.push_back(std::move(p));
  };
  for (const auto& bp : profile.breakpoints()) {
    add(ev({1 - bp.u, bp.v}));
    add(ev({bp.v, 1 - bp.u}));
  }
  return extreme_points(std::move(verts), "edge polygon");
}

HalfspaceCheck halfspace_membership(const HalfspaceSystem& sys, const ExponentVector& x) {
  if (x.size() != sys.dimension) throw std::invalid_argument("halfspace_membership: dimension mismatch");
  HalfspaceCheck out;
  out.satisfied = true;
  for (const auto& r : sys.rows) {
    Rational lhs = dot(r.coeffs, x.entries());
    out.lhs.push_back(lhs);
    bool ok = true;
    switch (r.relation) {
      case Relation::LessEq: ok = lhs <= r.rhs; break;
      case Relation::GreaterEq: ok = lhs >= r.rhs; break;
      case Relation::Equal: ok = lhs == r.rhs; break;
    }
    if (!ok) {
      out.satisfied = false;
      out.violated.push_back(r.condition);
    } else if (lhs == r.rhs) {
      out.tight.push_back(r.condition);
    }
  }
  return out;
}

HullCheck hull_membership(const VertexPolytope& poly, const ExponentVector& x) {
  if (poly.vertices.empty()) return {};
  if (x.size() != poly.dimension()) throw std::invalid_argument("hull_membership: dimension mismatch");
  const std::size_t m = poly.vertices.size();
  LinearProgram lp;
  lp.num_vars = m;
  lp.objective.assign(m, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    RationalVector c(m);
    for (std::size_t j = 0; j < m; ++j) c[j] = poly.vertices[j][i];
    lp.constraints.push_back({std::move(c), Relation::Equal, x[i]});
  }
  lp.constraints.push_back({RationalVector(m, 1), Relation::Equal, 1});
  auto res = solve_lp(lp);
  HullCheck out;
  out.inside = res.status == LpStatus::Optimal;
  if (out.inside) out.weights = std::move(res.x);
  return out;
}

RegionReport region_compare(const VertexPolytope& inner, const HalfspaceSystem& outer) {
  RegionReport rep;
  for (std::size_t k = 0; k < inner.vertices.size(); ++k) {
    auto chk = halfspace_membership(outer, inner.vertices[k]);
    for (int c : chk.violated) {
      for (const auto& r : outer.rows) {
        if (r.condition == c) rep.offending.push_back({k, r.label});
      }
    }
  }
  rep.contained = rep.offending.empty();
  return rep;
}

RegionReport region_compare(const VertexPolytope& inner, const VertexPolytope& outer) {
  RegionReport rep;
  for (std::size_t k = 0; k < inner.vertices.size(); ++k) {
    if (!hull_membership(outer, inner.vertices[k]).inside) rep.offending.push_back({k, "outside hull"});
  }
  rep.contained = rep.offending.empty();
  return rep;
}

VertexPolytope extreme_points(std::vector<ExponentVector> candidates, std::string label) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<ExponentVector> kept;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    std::vector<ExponentVector> others;
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      if (j != k) others.push_back(candidates[j]);
    }
    if (others.empty() || !hull_membership(VertexPolytope(others, ""), candidates[k]).inside) {
      kept.push_back(candidates[k]);
    }
  }
  return VertexPolytope(std::move(kept), std::move(label));
}

VertexPolytope chain3_constructed_region(int d) {
  const auto profile = improving_profile_circle(d);
  // Vertices of the profile triangle in (w, u) = (output, input) coordinates.
  std::vector<ProfilePoint> tri = profile.breakpoints();
  struct Segment {
    ProfilePoint a, b;
  };
  std::vector<Segment> sides;
  for (std::size_t k = 0; k < tri.size(); ++k) sides.push_back({tri[k], tri[(k + 1) % tri.size()]});

  std::vector<ExponentVector> candidates;
  auto emit = [&](const ProfilePoint& p1, const ProfilePoint& p2) {
    Rational u3 = 1 - p1.u - p2.u;
    if (u3 < 0 || u3 > 1) return;
    candidates.emplace_back(RationalVector{p1.v, p2.v, u3});
  };
  // Product vertices.
  for (const auto& p1 : tri) {
    for (const auto& p2 : tri) emit(p1, p2);
  }
  // Product edges crossing w1 + w2 = 1.
  for (const auto& fixed : tri) {
    for (const auto& s : sides) {
      // Points s.a + t (s.b - s.a), with fixed.u + w(t) = 1.
      Rational dw = s.b.u - s.a.u;
      if (dw == 0) continue;
      Rational t = (1 - fixed.u - s.a.u) / dw;
      if (t <= 0 || t >= 1) continue;
      ProfilePoint p{s.a.u + t * dw, s.a.v + t * (s.b.v - s.a.v)};
      emit(fixed, p);
      emit(p, fixed);
    }
  }
  return extreme_points(std::move(candidates), "chain3 constructed region");
}

bool maximize_over_polytope(const VertexPolytope& poly, const std::vector<CoordinateBound>& bounds,
                            PolytopeOptimum& out) {
  const std::size_t m = poly.vertices.size();
  const std::size_t dim = poly.dimension();
  LinearProgram lp;
  lp.num_vars = m;
  lp.constraints.push_back({RationalVector(m, 1), Relation::Equal, 1});
  for (const auto& b : bounds) {
    RationalVector c(m);
    for (std::size_t j = 0; j < m; ++j) c[j] = poly.vertices[j][b.coordinate];
    lp.constraints.push_back({std::move(c), b.relation, b.value});
  }
  std::vector<RationalVector> objectives;
  RationalVector total(m, 0);
  for (std::size_t j = 0; j < m; ++j) total[j] = poly.vertices[j].sum();
  objectives.push_back(total);
  for (std::size_t i = 0; i < dim; ++i) {
    RationalVector c(m);
    for (std::size_t j = 0; j < m; ++j) c[j] = poly.vertices[j][i];
    objectives.push_back(std::move(c));
  }
  auto res = solve_lexicographic(lp, objectives);
  if (res.status != LpStatus::Optimal) return false;
  RationalVector point(dim, 0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < dim; ++i) point[i] += res.x[j] * poly.vertices[j][i];
  }
  out.point = ExponentVector(std::move(point));
  out.weights = std::move(res.x);
  return true;
}

}  // namespace graphlp
