#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minsurf/mesh.hpp"

namespace minsurf {

// V - E + F. Throws InputDomain on edges with more than two faces.
int euler_characteristic(const SurfaceMesh& m);

struct ComponentOrientability {
  int components = 0;
  std::vector<bool> orientable;  // per connected component
};

ComponentOrientability orientability_by_component(const SurfaceMesh& m);

// Single answer; throws InconsistentConfiguration when components disagree.
bool orientability(const SurfaceMesh& m);

struct SeparationDetail {
  int samples = 0;
  int resampled = 0;
  int odd_fibers = 0;
  bool slice_excluded = false;  // every face horizontal
};

// Crossing parity of sampled fibers {p} x S^1. True iff all parities are even.
bool separation_parity(const SurfaceMesh& m, int fiber_samples = 64, SeparationDetail* detail = nullptr);

struct ZeroSite {
  int vertex = -1;  // representative (largest nu^2)
  int cluster_size = 0;
  int index = 0;
};

struct PoincareHopfReport {
  bool applicable = true;  // false when T vanishes identically
  std::vector<ZeroSite> sites;
  int sum = 0;
};

// Zeros of T = xi - nu N at vertices with 1 - nu^2 below the threshold,
// clustered within cluster_rings edges; index from the winding of T.
PoincareHopfReport poincare_hopf_audit(const SurfaceMesh& m, double threshold = 1e-3, int cluster_rings = 3);

struct IntersectionResult {
  bool intersects = false;
  double min_vertex_distance = 0;
  long long pairs_tested = 0;
};

IntersectionResult intersection_check(const SurfaceMesh& a, const SurfaceMesh& b);

struct GeodesicCompanionReport {
  std::vector<Vec3> vertical_fibers;                      // base points
  std::vector<std::pair<Vec3, double>> horizontal_circles;  // (pole, height)
  std::vector<std::string> violations;
  bool pass() const { return violations.empty(); }
};

GeodesicCompanionReport geodesic_companions(const SurfaceMesh& m, double tol = 1e-7);

struct TopologyReport {
  int chi = 0;
  bool orientable = false;
  int genus = 0;
  bool separates = false;
  SeparationDetail separation;
  PoincareHopfReport ph;
  GeodesicCompanionReport companions;
  std::optional<bool> intersects;
  std::optional<double> min_distance;
};

TopologyReport topology_report(const SurfaceMesh& m, int fiber_samples = 64);

std::string topology_report_text(const TopologyReport& r);

}  // namespace minsurf
