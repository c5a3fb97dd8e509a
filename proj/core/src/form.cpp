#include "graphlp/form.hpp"
#include "graphlp/parallel.hpp"
#include "graphlp/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

namespace graphlp {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Bounding box of the nodes whose value differs from the exterior value.
IndexBox deviation_support(const GridField& f) {
  const int n = f.side();
  IndexBox box{n, -1, n, -1};
  const double ext = f.exterior();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (f.at(i, j) != ext) {
        box.i0 = std::min(box.i0, i);
        box.i1 = std::max(box.i1, i);
        box.j0 = std::min(box.j0, j);
        box.j1 = std::max(box.j1, j);
      }
    }
  }
  return box;
}

// The field must not reach the outermost ring of nodes, otherwise data past
// the grid edge has been cut off.
void require_represented(const GridField& f, const char* what) {
  const IndexBox inner = f.full_box().expanded(-1);
  if (!inner.contains(deviation_support(f))) {
    throw EstimatorError(std::string("insufficient boundary margin: ") + what + " reaches the grid edge");
  }
}

void require_margin(const GridField& f, int reach, const char* what) {
  const IndexBox dev = deviation_support(f);
  if (!f.full_box().contains(dev.expanded(reach))) {
    throw EstimatorError(std::string("insufficient boundary margin: ") + what + " needs " + std::to_string(reach) +
                         " nodes of clearance (about 1 + eps) from the grid boundary");
  }
}

double stencil_at(const GridField& f, const Stencil& st, int i, int j) {
  const int n = f.side();
  double acc = 0;
  if (i - st.reach >= 0 && j - st.reach >= 0 && i + st.reach < n && j + st.reach < n) {
    for (const auto& e : st.entries) acc += e.weight * f.at(i - e.di, j - e.dj);
  } else {
    for (const auto& e : st.entries) acc += e.weight * f.read(i - e.di, j - e.dj);
  }
  return acc;
}

struct Node {
  int i, j;
};

std::vector<Node> nonzero_nodes(const GridField& f) {
  std::vector<Node> out;
  const int n = f.side();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (f.at(i, j) != 0) out.push_back({i, j});
    }
  }
  return out;
}

double h2_sum(const GridField& f, std::vector<double>& terms) {
  const double h = f.geometry().h;
  return h * h * pairwise_sum(terms);
}

void check_fields(const Graph& g, const std::vector<GridField>& fields) {
  if (static_cast<int>(fields.size()) != g.vertex_count()) {
    throw EstimatorError("form_evaluate: expected " + std::to_string(g.vertex_count()) + " fields, got " +
                         std::to_string(fields.size()));
  }
  if (!g.is_connected()) throw EstimatorError("form_evaluate: graph must be connected");
  for (const auto& f : fields) {
    if (!(f.geometry() == fields.front().geometry())) throw EstimatorError("form_evaluate: fields live on different grids");
  }
}

bool is_zero(const GridField& f) { return f.bounded() && f.is_constant(); }

// ---------------------------------------------------------------- tree-factor

class TreeFactor {
 public:
  TreeFactor(const Graph& g, const std::vector<GridField>& fields, const MollifiedCircleKernel& k)
      : g_(g), fields_(fields), stencil_(build_stencil(k, fields.front().geometry().h)) {
    mass_ = stencil_.total_weight();
  }

  double run() {
    int root = 0;
    for (int v = 1; v <= g_.vertex_count(); ++v) {
      if (!fields_[static_cast<std::size_t>(v - 1)].is_constant()) {
        root = v;
        break;
      }
    }
    if (root == 0) throw EstimatorError("tree-factor: all fields are constant, the form diverges");
    if (!fields_[static_cast<std::size_t>(root - 1)].bounded()) {
      throw EstimatorError("tree-factor: non-constant fields must be compactly supported");
    }
    Partial top = eval(root, 0);
    return h2_sum(top.field, top.field.values());
  }

 private:
  struct Partial {
    bool constant = false;
    double value = 0;
    GridField field;
  };

  Partial eval(int v, int parent) {
    std::vector<Partial> kids;
    for (int w : g_.neighbors(v)) {
      if (w != parent) kids.push_back(eval(w, v));
    }
    const GridField& f = fields_[static_cast<std::size_t>(v - 1)];
    const bool all_const = std::all_of(kids.begin(), kids.end(), [](const Partial& p) { return p.constant; });
    double scale = 1;
    for (const auto& p : kids) {
      if (p.constant) scale *= p.value * mass_;
    }
    if (f.is_constant()) {
      if (all_const) return {true, f.exterior() * scale, {}};
      Partial out{false, 0, GridField(f.geometry(), 0.0)};
      auto& vals = out.field.values();
      std::fill(vals.begin(), vals.end(), f.exterior() * scale);
      for (const auto& p : kids) {
        if (p.constant) continue;
        require_margin(p.field, stencil_.reach, "an inner tree factor");
        GridField a = circular_average(p.field, stencil_);
        for (std::size_t s = 0; s < vals.size(); ++s) vals[s] *= a.values()[s];
      }
      return out;
    }
    if (!f.bounded()) throw EstimatorError("tree-factor: non-constant fields must be compactly supported");
    require_represented(f, "a field");
    Partial out{false, 0, GridField(f.geometry(), 0.0)};
    const auto nodes = nonzero_nodes(f);
    parallel_for(nodes.size(), [&](std::size_t s) {
      const auto [i, j] = nodes[s];
      double val = f.at(i, j) * scale;
      for (const auto& p : kids) {
        if (!p.constant) val *= stencil_at(p.field, stencil_, i, j);
      }
      out.field.at(i, j) = val;
    });
    return out;
  }

  const Graph& g_;
  const std::vector<GridField>& fields_;
  Stencil stencil_;
  double mass_ = 1;
};

// ---------------------------------------------------------------- direct

struct Quadrature {
  std::vector<double> dx, dy, w;  // offsets y_q and weights W_j / M
};

Quadrature circle_quadrature(const MollifiedCircleKernel& k) {
  Quadrature q;
  const int M = k.angular_nodes();
  for (int m = 0; m < M; ++m) {
    const double th = kTwoPi * m / M;
    for (int j = 0; j < k.radial_nodes(); ++j) {
      q.dx.push_back(k.radii()[static_cast<std::size_t>(j)] * std::cos(th));
      q.dy.push_back(k.radii()[static_cast<std::size_t>(j)] * std::sin(th));
      q.w.push_back(k.radial_weights()[static_cast<std::size_t>(j)] / M);
    }
  }
  return q;
}

double average_direct(const GridField& f, const Quadrature& q, double x, double y) {
  double acc = 0;
  for (std::size_t s = 0; s < q.w.size(); ++s) acc += q.w[s] * f.sample(x - q.dx[s], y - q.dy[s]);
  return acc;
}

// Path on at most three vertices: value = int f_c * prod_leaves A f_leaf.
double direct_tree(const Graph& g, const std::vector<GridField>& fields, const MollifiedCircleKernel& k) {
  const int n = g.vertex_count();
  const Quadrature q = circle_quadrature(k);
  const GridGeometry& geo = fields.front().geometry();
  if (n == 1) {
    const GridField& f = fields[0];
    if (!f.bounded()) throw EstimatorError("direct: the form of a constant field diverges");
    std::vector<double> v = f.values();
    return h2_sum(f, v);
  }
  int centre = 1;
  for (int v = 1; v <= n; ++v) {
    if (g.degree(v) > g.degree(centre)) centre = v;
  }
  if (n == 2 && fields[0].is_constant()) centre = 2;
  const GridField& fc = fields[static_cast<std::size_t>(centre - 1)];
  std::vector<const GridField*> leaves;
  for (int w : g.neighbors(centre)) leaves.push_back(&fields[static_cast<std::size_t>(w - 1)]);

  std::vector<Node> nodes;
  if (fc.is_constant()) {
    bool any_bounded = false;
    const int reach = static_cast<int>(std::ceil((1 + k.epsilon()) / geo.h)) + 1;
    for (const auto* lf : leaves) {
      if (!lf->is_constant()) {
        if (!lf->bounded()) throw EstimatorError("direct: non-constant fields must be compactly supported");
        require_margin(*lf, reach, "a leaf field");
        any_bounded = true;
      }
    }
    if (!any_bounded) throw EstimatorError("direct: all fields are constant, the form diverges");
    for (int j = 0; j < fc.side(); ++j) {
      for (int i = 0; i < fc.side(); ++i) nodes.push_back({i, j});
    }
  } else {
    if (!fc.bounded()) throw EstimatorError("direct: non-constant fields must be compactly supported");
    require_represented(fc, "a field");
    nodes = nonzero_nodes(fc);
  }
  std::vector<double> terms(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t s) {
    const auto [i, j] = nodes[s];
    const double x = geo.coord(i), y = geo.coord(j);
    double val = fc.at(i, j);
    for (const auto* lf : leaves) {
      if (val == 0) break;
      val *= average_direct(*lf, q, x, y);
    }
    terms[s] = val;
  });
  return h2_sum(fc, terms);
}

int bounded_vertex(const std::vector<GridField>& fields) {
  for (std::size_t v = 0; v < fields.size(); ++v) {
    if (!fields[v].is_constant()) {
      if (!fields[v].bounded()) throw EstimatorError("non-constant fields must be compactly supported");
      return static_cast<int>(v);
    }
  }
  throw EstimatorError("all fields are constant, the form diverges");
}

// Triangle: for each x and each y on the mollified circle around x, the z
// integral is taken in the coordinates (a, b) = (|z - x|, |z - y|), where
// dz = a b / (D q) da db on each of the two intersection branches.
double direct_triangle(const std::vector<GridField>& fields, const MollifiedCircleKernel& k) {
  const int a0 = bounded_vertex(fields);
  const GridField& f1 = fields[static_cast<std::size_t>(a0)];
  const GridField& f2 = fields[static_cast<std::size_t>((a0 + 1) % 3)];
  const GridField& f3 = fields[static_cast<std::size_t>((a0 + 2) % 3)];
  require_represented(f1, "a field");
  const GridGeometry& geo = f1.geometry();
  const Quadrature q = circle_quadrature(k);
  const auto& radii = k.radii();
  std::vector<double> inner_w;  // W_j / r_j = gl_j psi(t_j), the weight of w(a) da
  for (int j = 0; j < k.radial_nodes(); ++j) {
    inner_w.push_back(k.radial_weights()[static_cast<std::size_t>(j)] / radii[static_cast<std::size_t>(j)]);
  }
  const auto nodes = nonzero_nodes(f1);
  std::vector<double> terms(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t s) {
    const auto [i, j] = nodes[s];
    const double x1 = geo.coord(i), y1 = geo.coord(j);
    double acc = 0;
    for (std::size_t t = 0; t < q.w.size(); ++t) {
      const double x2 = x1 - q.dx[t], y2 = y1 - q.dy[t];
      const double v2 = f2.sample(x2, y2);
      if (v2 == 0) continue;
      const double D = std::hypot(x2 - x1, y2 - y1);
      const double ex = (x2 - x1) / D, ey = (y2 - y1) / D;
      double inner = 0;
      for (std::size_t ja = 0; ja < radii.size(); ++ja) {
        const double a = radii[ja];
        for (std::size_t jb = 0; jb < radii.size(); ++jb) {
          const double b = radii[jb];
          const double p = (D * D + a * a - b * b) / (2 * D);
          const double qq = a * a - p * p;
          if (qq <= 0) continue;
          const double h = std::sqrt(qq);
          const double px = x1 + p * ex, py = y1 + p * ey;
          const double val = f3.sample(px - h * ey, py + h * ex) + f3.sample(px + h * ey, py - h * ex);
          // w(a) w(b) / (2 pi)^2 * a b / (D h) with w(a) da = inner_w * (dt) and a = r_j.
          inner += inner_w[ja] * inner_w[jb] * a * b / (D * h) * val;
        }
      }
      acc += q.w[t] * v2 * inner;
    }
    terms[s] = f1.at(i, j) * acc / (kTwoPi * kTwoPi);
  });
  return h2_sum(f1, terms);
}

// ---------------------------------------------------------------- radon pair

double radon_at(const GridField& g, const GridField& h, double c, double s, const Quadrature& q, double x, double y) {
  double acc = 0;
  for (std::size_t t = 0; t < q.w.size(); ++t) {
    const double gv = g.sample(x - q.dx[t], y - q.dy[t]);
    if (gv == 0) continue;
    const double rx = c * q.dx[t] - s * q.dy[t];
    const double ry = s * q.dx[t] + c * q.dy[t];
    acc += q.w[t] * gv * h.sample(x - rx, y - ry);
  }
  return acc;
}

double radon_pair(const std::vector<GridField>& fields, const MollifiedCircleKernel& k) {
  const int a0 = bounded_vertex(fields);
  const GridField& f1 = fields[static_cast<std::size_t>(a0)];
  const GridField& f2 = fields[static_cast<std::size_t>((a0 + 1) % 3)];
  const GridField& f3 = fields[static_cast<std::size_t>((a0 + 2) % 3)];
  require_represented(f1, "a field");
  const GridGeometry& geo = f1.geometry();
  const Quadrature q = circle_quadrature(k);
  const double c = std::cos(std::numbers::pi / 3), s = std::sin(std::numbers::pi / 3);
  const auto nodes = nonzero_nodes(f1);
  std::vector<double> terms(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t t) {
    const auto [i, j] = nodes[t];
    const double x = geo.coord(i), y = geo.coord(j);
    terms[t] = f1.at(i, j) * (radon_at(f2, f3, c, s, q, x, y) + radon_at(f2, f3, c, -s, q, x, y));
  });
  const double C = 2 / (std::sqrt(3.0) * kTwoPi * kTwoPi);
  return C * h2_sum(f1, terms);
}

// ---------------------------------------------------------------- leray

double leray(const Graph& g, const std::vector<GridField>& fields, const MollifiedCircleKernel& k, const FormOptions& opts) {
  std::vector<SampledFunction> fns;
  for (const auto& f : fields) {
    SampledFunction fn;
    fn.eval = [&f](double x, double y) { return f.sample(x, y); };
    const double h = f.geometry().h;
    if (f.bounded()) {
      const IndexBox b = f.support();
      const auto& geo = f.geometry();
      fn.support = {geo.coord(b.i0) - h, geo.coord(b.i1) + h, geo.coord(b.j0) - h, geo.coord(b.j1) + h};
    } else {
      fn.support = {-1e300, 1e300, -1e300, 1e300};
    }
    fns.push_back(std::move(fn));
  }
  if (!fields.front().bounded()) throw EstimatorError("leray-mc: the field at vertex 1 must be compactly supported");
  const LerayEstimate est = leray_mc_form(g, fns, k.epsilon(), opts.mc_samples, opts.seed);
  return est.value / std::pow(kTwoPi, static_cast<double>(g.edge_count()));
}

}  // namespace

GridField circular_average(const GridField& f, const MollifiedCircleKernel& k, const std::optional<IndexBox>& region) {
  return circular_average(f, build_stencil(k, f.geometry().h), region);
}

GridField circular_average(const GridField& f, const Stencil& stencil, const std::optional<IndexBox>& region) {
  IndexBox box = f.full_box();
  if (region) {
    require_represented(f, "the input");
    box = region->intersect(f.full_box());
  } else {
    require_margin(f, stencil.reach, "the input");
  }
  GridField out(f.geometry(), region ? 0.0 : f.exterior());
  if (region) std::fill(out.values().begin(), out.values().end(), 0.0);
  if (box.empty()) return out;
  const int n = f.side();
  const int width = box.i1 - box.i0 + 1;
  const double ext = f.exterior();
  parallel_for(static_cast<std::size_t>(box.j1 - box.j0 + 1), [&](std::size_t r) {
    const int j = box.j0 + static_cast<int>(r);
    std::vector<double> acc(static_cast<std::size_t>(width), 0.0);
    for (const auto& e : stencil.entries) {
      const int src_j = j - e.dj;
      if (src_j < 0 || src_j >= n) {
        for (auto& a : acc) a += e.weight * ext;
        continue;
      }
      const double* row = &f.values()[static_cast<std::size_t>(src_j) * static_cast<std::size_t>(n)];
      for (int c = 0; c < width; ++c) {
        const int src_i = box.i0 + c - e.di;
        acc[static_cast<std::size_t>(c)] += e.weight * ((src_i >= 0 && src_i < n) ? row[src_i] : ext);
      }
    }
    for (int c = 0; c < width; ++c) out.at(box.i0 + c, j) = acc[static_cast<std::size_t>(c)];
  });
  return out;
}

GridField bilinear_radon(const GridField& g, const GridField& h, double theta, const MollifiedCircleKernel& k,
                         const std::optional<IndexBox>& region) {
  if (!(g.geometry() == h.geometry())) throw EstimatorError("bilinear_radon: fields live on different grids");
  const GridGeometry& geo = g.geometry();
  const int reach = static_cast<int>(std::ceil((1 + k.epsilon()) / geo.h)) + 1;
  IndexBox box = g.full_box();
  if (region) {
    require_represented(g, "the first input");
    require_represented(h, "the second input");
    box = region->intersect(g.full_box());
  } else {
    // The output deviates from ext_g * ext_h only within reach of the inputs' deviations.
    IndexBox dev = g.bounded() ? deviation_support(g) : (h.bounded() ? deviation_support(h) : deviation_support(g));
    if (g.bounded() && h.bounded()) dev = deviation_support(g).intersect(deviation_support(h).expanded(2 * reach));
    if (!g.bounded() && !h.bounded()) {
      const IndexBox dh = deviation_support(h);
      if (!dh.empty()) {
        dev = dev.empty() ? dh : IndexBox{std::min(dev.i0, dh.i0), std::max(dev.i1, dh.i1), std::min(dev.j0, dh.j0), std::max(dev.j1, dh.j1)};
      }
    }
    if (!g.full_box().contains(dev.expanded(reach))) {
      throw EstimatorError("insufficient boundary margin: bilinear_radon output leaves the grid");
    }
  }
  GridField out(geo, region ? 0.0 : g.exterior() * h.exterior());
  std::fill(out.values().begin(), out.values().end(), 0.0);
  if (box.empty()) return out;
  const Quadrature q = circle_quadrature(k);
  const double c = std::cos(theta), s = std::sin(theta);
  parallel_for(static_cast<std::size_t>(box.j1 - box.j0 + 1), [&](std::size_t r) {
    const int j = box.j0 + static_cast<int>(r);
    for (int i = box.i0; i <= box.i1; ++i) out.at(i, j) = radon_at(g, h, c, s, q, geo.coord(i), geo.coord(j));
  });
  return out;
}

const char* method_name(FormMethod m) {
  switch (m) {
    case FormMethod::Auto: return "auto";
    case FormMethod::TreeFactor: return "tree-factor";
    case FormMethod::RadonPair: return "radon-pair";
    case FormMethod::Direct: return "direct";
    case FormMethod::LerayMC: return "leray-mc";
  }
  return "auto";
}

FormMethod parse_method(const std::string& name) {
  for (auto m : {FormMethod::Auto, FormMethod::TreeFactor, FormMethod::RadonPair, FormMethod::Direct, FormMethod::LerayMC}) {
    if (name == method_name(m)) return m;
  }
  throw EstimatorError("unknown method '" + name + "'");
}

FormMethod resolve_method(const Graph& g) {
  if (is_tree(g)) return FormMethod::TreeFactor;
  if (g.vertex_count() == 3 && g.edge_count() == 3) return FormMethod::RadonPair;
  if (g.vertex_count() <= 3) return FormMethod::Direct;
  return FormMethod::LerayMC;
}

double form_evaluate(const Graph& g, const std::vector<GridField>& fields, const MollifiedCircleKernel& k,
                     FormMethod method, const FormOptions& opts) {
  check_fields(g, fields);
  if (method == FormMethod::Auto) method = resolve_method(g);
  const bool triangle = g.vertex_count() == 3 && g.edge_count() == 3;
  switch (method) {
    case FormMethod::TreeFactor:
      if (!is_tree(g)) throw EstimatorError("tree-factor applies to trees only");
      break;
    case FormMethod::RadonPair:
      if (!triangle) throw EstimatorError("radon-pair applies to the triangle only");
      break;
    case FormMethod::Direct:
      if (g.vertex_count() > 3) throw EstimatorError("direct applies to graphs on at most 3 vertices");
      break;
    default: break;
  }
  if (std::any_of(fields.begin(), fields.end(), is_zero)) return 0.0;
  switch (method) {
    case FormMethod::TreeFactor: return TreeFactor(g, fields, k).run();
    case FormMethod::RadonPair: return radon_pair(fields, k);
    case FormMethod::Direct: return triangle ? direct_triangle(fields, k) : direct_tree(g, fields, k);
    case FormMethod::LerayMC: return leray(g, fields, k, opts);
    case FormMethod::Auto: break;
  }
  throw EstimatorError("unreachable form method");
}

}  // namespace graphlp
