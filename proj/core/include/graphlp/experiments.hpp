#pragma once

#include "graphlp/form.hpp"
#include "graphlp/graph.hpp"
#include "graphlp/grid.hpp"
#include "graphlp/kernel.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace graphlp {

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // root-mean-square residual of the log-log fit
  int points = 0;
};

// Least squares of log y against log x over the pairs with y > 0.
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct EpsilonPolicy {
  enum class Mode { Coupled, Fixed } mode = Mode::Coupled;
  double factor = 0.25;  // Coupled: eps = factor * param
  double value = 0.125;  // Fixed: eps = value
  double at(double param) const { return mode == Mode::Coupled ? factor * param : value; }
};

struct ScalingConfig {
  Graph graph;
  std::vector<FamilyKind> assignment;  // one family per vertex; size = parameter
  std::vector<double> params;
  EpsilonPolicy epsilon;
  GridGeometry grid;
  int angular_nodes = 0;  // 0 selects default_angular_nodes(h)
  int radial_nodes = 8;
  FormMethod method = FormMethod::Auto;
  std::uint64_t seed = 1;
  double norm_p = 1;  // exponent of the reported per-field norms
};

struct ScalingRow {
  double param = 0;
  double lambda = 0;
  std::vector<double> norms;
  double slope_running = 0;  // slope over rows 0..k; NaN for the first row
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  SlopeFit fit;
};

ScalingResult scaling_experiment(const ScalingConfig& cfg);
// Header: param,lambda,norm_1,...,norm_n,slope_running
std::string scaling_csv(const ScalingResult& r);

struct RatioConfig {
  double p = 1.5;
  double q = 3;
  FamilyKind family = FamilyKind::Annulus;
  std::vector<double> params;
  EpsilonPolicy epsilon;
  GridGeometry grid;
  int angular_nodes = 0;
  int radial_nodes = 8;
};

struct RatioRow {
  double param = 0;
  double norm_in = 0;   // ||f||_p
  double norm_out = 0;  // ||Af||_q
  double ratio = 0;
};

std::vector<RatioRow> ratio_experiment(const RatioConfig& cfg);
std::string ratio_csv(const std::vector<RatioRow>& rows);

struct DecayRow {
  double xi = 0;
  double transform = 0;   // real part of the Fourier transform, averaged over directions
  double normalized = 0;  // |transform| (1 + xi)^(1/2)
};

struct DecayOptions {
  double h = 0;        // 0 selects eps / 16
  int directions = 4;  // directions averaged per frequency
};

// Fourier transform of sigma^eps with the e^{-2 pi i x.xi} convention, by a
// Riemann sum over grid nodes in the support ring.  Frequencies beyond the
// Nyquist limit 1 / (2h) are rejected.
std::vector<DecayRow> kernel_decay_check(const MollifiedCircleKernel& k, const std::vector<double>& frequencies,
                                         const DecayOptions& opts = {});

}  // namespace graphlp
