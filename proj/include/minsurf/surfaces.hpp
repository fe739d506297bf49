#pragma once

#include <array>

#include "minsurf/mesh.hpp"
#include "minsurf/sphtrig.hpp"

namespace minsurf {

struct ContourSpec {
  HingeSpec hinge;
  double h_tilde = 0;
};

void validate_contour_spec(const ContourSpec& spec);

enum class EdgeType { Horizontal, Vertical };

struct PolygonEdge {
  EdgeType type;
  int from;  // vertex index 0..4 (labels 1..5)
  int to;
  double length;
};

// Edges are stored in contour order 12, 23, 34, 45, 51.
struct GeodesicPolygon {
  std::array<ProdPoint, 5> vertices;
  std::array<PolygonEdge, 5> edges;
  TriangleData triangle;
  // Base triangle: P1 (end of side a), P4 (end of side b), P5 (hinge vertex).
  Vec3 P1, P4, P5;

  // Interior angle at vertex i (0-based), measured from the unit edge tangents.
  double vertex_angle(int i) const;
  double closure_gap() const;
};

GeodesicPolygon build_contour(const ContourSpec& spec);

// Subdivided icosahedron at height t0, outward normals (nu = +1).
SurfaceMesh slice_mesh(double t0, int resolution);

// Great circle with the given pole, times S^1(r).
SurfaceMesh cylinder_mesh(const Vec3& axis, double r, int resolution);

// Vertical helicoid of pitch ell in the quotient of period 2 pi r.
SurfaceMesh helicoid_mesh(double pitch, double r, int resolution);

}  // namespace minsurf
