#include "graphlp/experiments.hpp"
#include "graphlp/parallel.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

namespace graphlp {

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw EstimatorError("fit_loglog: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (y[k] > 0 && x[k] > 0) {
      lx.push_back(std::log(x[k]));
      ly.push_back(std::log(y[k]));
    }
  }
  SlopeFit fit;
  fit.points = static_cast<int>(lx.size());
  if (lx.size() < 2) {
    fit.slope = std::numeric_limits<double>::quiet_NaN();
    fit.intercept = fit.slope;
    return fit;
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  if (sxx == 0) throw EstimatorError("fit_loglog: parameters must be distinct");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    const double r = ly[k] - (fit.intercept + fit.slope * lx[k]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

namespace {

void check_geometric(const std::vector<double>& params) {
  if (params.size() < 2) throw EstimatorError("experiments need at least two parameter values");
  for (double p : params) {
    if (!(p > 0)) throw EstimatorError("experiment parameters must be positive");
  }
  const bool down = params[1] < params[0];
  for (std::size_t k = 1; k < params.size(); ++k) {
    if ((params[k] < params[k - 1]) != down || params[k] == params[k - 1]) {
      throw EstimatorError("experiment parameters must be strictly monotone");
    }
  }
}

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

ScalingResult scaling_experiment(const ScalingConfig& cfg) {
  if (static_cast<int>(cfg.assignment.size()) != cfg.graph.vertex_count()) {
    throw EstimatorError("scaling_experiment: one family per vertex required");
  }
  check_geometric(cfg.params);
  const int M = cfg.angular_nodes > 0 ? cfg.angular_nodes : default_angular_nodes(cfg.grid.h);
  ScalingResult out;
  out.rows.resize(cfg.params.size());
  // Parameters are independent; each builds its own fields and kernel.
  std::vector<std::string> errors(cfg.params.size());
  parallel_for(cfg.params.size(), [&](std::size_t k) {
    try {
      const double param = cfg.params[k];
      std::vector<GridField> fields;
      for (auto kind : cfg.assignment) fields.push_back(test_family(kind, param, cfg.grid));
      const auto kernel = make_kernel(cfg.epsilon.at(param), M, cfg.radial_nodes);
      FormOptions opts;
      opts.seed = derive_seed(cfg.seed, k);
      ScalingRow row;
      row.param = param;
      row.lambda = form_evaluate(cfg.graph, fields, kernel, cfg.method, opts);
      for (const auto& f : fields) row.norms.push_back(lp_norm(f, cfg.norm_p));
      out.rows[k] = std::move(row);
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  });
  for (const auto& e : errors) {
    if (!e.empty()) throw EstimatorError(e);
  }
  std::vector<double> xs, ys;
  bool any_positive = false;
  for (auto& row : out.rows) {
    xs.push_back(row.param);
    ys.push_back(row.lambda);
    any_positive = any_positive || row.lambda > 0;
    row.slope_running = xs.size() < 2 ? std::numeric_limits<double>::quiet_NaN() : fit_loglog(xs, ys).slope;
  }
  if (!any_positive) throw EstimatorError("scaling_experiment: every form value is zero");
  out.fit = fit_loglog(xs, ys);
  return out;
}

std::string scaling_csv(const ScalingResult& r) {
  std::ostringstream os;
  os << "param,lambda";
  const std::size_t n = r.rows.empty() ? 0 : r.rows.front().norms.size();
  for (std::size_t k = 1; k <= n; ++k) os << ",norm_" << k;
  os << ",slope_running\n";
  for (const auto& row : r.rows) {
    os << fmt(row.param) << ',' << fmt(row.lambda);
    for (double v : row.norms) os << ',' << fmt(v);
    os << ',' << fmt(row.slope_running) << '\n';
  }
  return os.str();
}

std::vector<RatioRow> ratio_experiment(const RatioConfig& cfg) {
  if (!(cfg.p >= 1) || !(cfg.q >= 1)) throw EstimatorError("ratio_experiment needs p, q >= 1");
  check_geometric(cfg.params);
  const int M = cfg.angular_nodes > 0 ? cfg.angular_nodes : default_angular_nodes(cfg.grid.h);
  std::vector<RatioRow> rows;
  for (double param : cfg.params) {
    const GridField f = test_family(cfg.family, param, cfg.grid);
    const auto kernel = make_kernel(cfg.epsilon.at(param), M, cfg.radial_nodes);
    RatioRow row;
    row.param = param;
    row.norm_in = lp_norm(f, cfg.p);
    if (row.norm_in == 0) throw EstimatorError("ratio_experiment: zero-norm input");
    row.norm_out = lp_norm(circular_average(f, kernel), cfg.q);
    row.ratio = row.norm_out / row.norm_in;
    rows.push_back(row);
  }
  return rows;
}

std::string ratio_csv(const std::vector<RatioRow>& rows) {
  std::ostringstream os;
  os << "param,norm_in,norm_out,ratio\n";
  for (const auto& r : rows) os << fmt(r.param) << ',' << fmt(r.norm_in) << ',' << fmt(r.norm_out) << ',' << fmt(r.ratio) << '\n';
  return os.str();
}

std::vector<DecayRow> kernel_decay_check(const MollifiedCircleKernel& k, const std::vector<double>& frequencies,
                                         const DecayOptions& opts) {
  const double eps = k.epsilon();
  const double h = opts.h > 0 ? opts.h : eps / 16;
  if (opts.directions < 1) throw EstimatorError("kernel_decay_check needs at least one direction");
  for (double xi : frequencies) {
    if (!(xi >= 0)) throw EstimatorError("frequencies must be non-negative");
    if (xi > 1 / (2 * h)) {
      throw EstimatorError("frequency " + fmt(xi) + " exceeds the Nyquist limit " + fmt(1 / (2 * h)) + " of spacing " + fmt(h));
    }
  }
  // Nodes of the grid h Z^2 inside the support ring, with their densities.
  const int K = static_cast<int>(std::ceil((1 + eps) / h)) + 1;
  std::vector<double> px, py, pw;
  for (int j = -K; j <= K; ++j) {
    for (int i = -K; i <= K; ++i) {
      const double x = i * h, y = j * h;
      const double d = k.density(x, y);
      if (d > 0) {
        px.push_back(x);
        py.push_back(y);
        pw.push_back(d * h * h);
      }
    }
  }
  std::vector<DecayRow> rows(frequencies.size());
  parallel_for(frequencies.size(), [&](std::size_t f) {
    const double xi = frequencies[f];
    double total = 0;
    for (int d = 0; d < opts.directions; ++d) {
      const double phi = std::numbers::pi * (d + 0.5) / (2 * opts.directions);
      const double cx = 2 * std::numbers::pi * xi * std::cos(phi), cy = 2 * std::numbers::pi * xi * std::sin(phi);
      std::vector<double> terms(pw.size());
      for (std::size_t s = 0; s < pw.size(); ++s) terms[s] = pw[s] * std::cos(cx * px[s] + cy * py[s]);
      total += pairwise_sum(terms);
    }
    DecayRow row;
    row.xi = xi;
    row.transform = total / opts.directions;
    row.normalized = std::abs(row.transform) * std::sqrt(1 + xi);
    rows[f] = row;
  });
  return rows;
}

}  // namespace graphlp
