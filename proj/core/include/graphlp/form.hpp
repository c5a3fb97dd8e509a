#pragma once

#include "graphlp/graph.hpp"
#include "graphlp/grid.hpp"
#include "graphlp/kernel.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace graphlp {

// Af = f * sigma^eps at every node of `region` (default: the whole grid).
// Outside the region the result is zero.  Without a region, a compactly
// supported f must keep its support at least the kernel reach away from the
// boundary; with a region, f only has to be fully represented on the grid.
GridField circular_average(const GridField& f, const MollifiedCircleKernel& k,
                           const std::optional<IndexBox>& region = std::nullopt);
// Same, with a prebuilt stencil for f's spacing.
GridField circular_average(const GridField& f, const Stencil& stencil,
                           const std::optional<IndexBox>& region = std::nullopt);

// B_theta(g, h)(x) = int g(x - y) h(x - R_theta y) dsigma(y) over the unit
// circle, using the kernel's M angular nodes.
GridField bilinear_radon(const GridField& g, const GridField& h, double theta, const MollifiedCircleKernel& k,
                         const std::optional<IndexBox>& region = std::nullopt);

enum class FormMethod { Auto, TreeFactor, RadonPair, Direct, LerayMC };
const char* method_name(FormMethod m);
FormMethod parse_method(const std::string& name);

struct FormOptions {
  long long mc_samples = 1000000;
  std::uint64_t seed = 1;
};

// The mollified multilinear form for the probability-normalized kernel.
double form_evaluate(const Graph& g, const std::vector<GridField>& fields, const MollifiedCircleKernel& k,
                     FormMethod method = FormMethod::Auto, const FormOptions& opts = {});

// The method Auto resolves to for g.
FormMethod resolve_method(const Graph& g);

}  // namespace graphlp
