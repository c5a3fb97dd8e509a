#include "graphlp/certificate.hpp"

namespace graphlp {

const char* status_name(CertStatus s) {
  switch (s) {
    case CertStatus::Proven: return "proven";
    case CertStatus::Conditional: return "conditional";
    case CertStatus::Unknown: return "unknown";
  }
  return "unknown";
}

CertStatus parse_status(const std::string& s) {
  if (s == "proven") return CertStatus::Proven;
  if (s == "conditional") return CertStatus::Conditional;
  if (s == "unknown") return CertStatus::Unknown;
  throw CertificateError("unknown certificate status '" + s + "'");
}

const char* block_polytope_name(BlockPolytope p) {
  switch (p) {
    case BlockPolytope::Edge: return "edge";
    case BlockPolytope::Triangle: return "triangle";
    case BlockPolytope::RegularHull: return "regular-hull";
  }
  return "edge";
}

BlockPolytope parse_block_polytope(const std::string& s) {
  if (s == "edge") return BlockPolytope::Edge;
  if (s == "triangle") return BlockPolytope::Triangle;
  if (s == "regular-hull") return BlockPolytope::RegularHull;
  throw CertificateError("unknown block polytope '" + s + "'");
}

std::vector<int> identity_labels(int n) {
  std::vector<int> ids(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i + 1;
  return ids;
}

VertexPolytope block_polytope_vertices(BlockPolytope kind, const Graph& block, const ImprovingProfile& profile) {
  switch (kind) {
    case BlockPolytope::Edge:
      if (block.vertex_count() != 2 || block.edge_count() != 1) throw CertificateError("edge polytope needs a single edge");
      return edge_polytope(profile);
    case BlockPolytope::Triangle:
      if (block.vertex_count() != 3 || block.edge_count() != 3) throw CertificateError("triangle polytope needs K3");
      if (profile.dimension() != 2) throw CertificateError("triangle polygon is only available for d = 2");
      return sufficient_vertices(CaseStudy::Triangle);
    case BlockPolytope::RegularHull:
      return sufficient_vertices_regular(block);
  }
  throw CertificateError("unhandled block polytope");
}

}  // namespace graphlp
