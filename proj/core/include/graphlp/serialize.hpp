#pragma once

#include "graphlp/certificate.hpp"
#include "graphlp/experiments.hpp"
#include "graphlp/graph.hpp"
#include "graphlp/polytope.hpp"
#include "graphlp/rigidity.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace graphlp {

using Json = nlohmann::json;

class SerializeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json to_json(const ExponentVector& x);

Json to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json to_json(const ImprovingProfile& p);
ImprovingProfile profile_from_json(const Json& j);

Json to_json(const DerivationStep& step);
DerivationStep step_from_json(const Json& j);

Json to_json(const Certificate& c);
// Accepts a bare certificate object or one wrapped as {"certificate": ...}.
Certificate certificate_from_json(const Json& j);

Json to_json(const HalfspaceSystem& sys);
Json to_json(const VertexPolytope& poly);
Json to_json(const HalfspaceCheck& check, const HalfspaceSystem& sys);
Json to_json(const HullCheck& check);
Json to_json(const RegionReport& report, const VertexPolytope& inner);

Json to_json(const Realization& x);
Realization realization_from_json(const Json& j);
Json to_json(const RigidityReport& report);

Json to_json(const ScalingResult& r);
Json to_json(const std::vector<RatioRow>& rows);
Json to_json(const std::vector<DecayRow>& rows);

// Two-space indented dump with a trailing newline; object keys are sorted,
// so equal values always give identical bytes.
std::string dump(const Json& j);

}  // namespace graphlp
