#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minsurf/manifold.hpp"

namespace minsurf {

// Labels for contour pieces. Segment ij is the edge between contour
// vertices i and j (for the conjugate piece: the prism face it lies on).
enum class BoundaryLabel : std::uint8_t {
  None = 0,
  Edge12,
  Edge23,
  Edge34,
  Edge45,
  Edge51,
  Corner1,
  Corner2,
  Corner3,
  Corner4,
  Corner5,
};

const char* label_name(BoundaryLabel l);
BoundaryLabel label_from_name(const std::string& s);
bool label_on_segment(BoundaryLabel l, BoundaryLabel segment);
bool is_corner(BoundaryLabel l);

using Face = std::array<int, 3>;

struct SurfaceMesh {
  std::vector<ProdPoint> vertices;
  std::vector<Face> faces;
  std::vector<BoundaryLabel> boundary_tags;
  std::vector<ProdVector> normals;
  std::vector<double> nu;
  std::optional<double> quotient_circumference;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_faces() const { return static_cast<int>(faces.size()); }
  BoundaryLabel tag(int v) const { return boundary_tags.empty() ? BoundaryLabel::None : boundary_tags[v]; }
};

// Height difference b - a reduced to the nearest representative in the quotient.
double wrapped_delta(const SurfaceMesh& m, double a, double b);

// Chordal R^4 coordinates of a face with heights unwrapped around the first vertex.
std::array<Vec4, 3> face_chordal(const SurfaceMesh& m, int f);
double face_area(const SurfaceMesh& m, int f);
double total_area(const SurfaceMesh& m);

struct EdgeTopology {
  std::vector<std::array<int, 2>> edges;
  std::vector<std::vector<int>> edge_faces;
  std::map<std::pair<int, int>, int> index;

  int find(int a, int b) const;
};

EdgeTopology build_edges(const SurfaceMesh& m);
std::vector<std::vector<int>> vertex_faces(const SurfaceMesh& m);
std::vector<std::vector<int>> vertex_neighbors(const SurfaceMesh& m);

// Throws MeshQuality on degenerate faces, InputDomain on non-manifold edges.
void validate_mesh(const SurfaceMesh& m, double min_area = 1e-14);

// Face orientation signs (+1/-1) from breadth-first propagation; consistent
// wherever the mesh is orientable. `orientable` reports contradiction-free.
std::vector<int> propagate_orientation(const SurfaceMesh& m, const EdgeTopology& topo, bool* orientable = nullptr,
                                       int* components = nullptr);

// Unnormalized normal of face f in the product tangent space at vertex v
// (length = twice the face area, to first order).
Vec4 face_normal_at(const SurfaceMesh& m, int f, int v);

// Per-vertex unit normals and nu. Face orientations are made consistent
// around each vertex star, anchored to the global propagation.
void compute_normals(SurfaceMesh& m);

// Unit normal of face f at its centroid base point (face orientation as stored).
ProdVector face_unit_normal(const SurfaceMesh& m, int f);

// Cross product in the oriented tangent space of S^2 x R at p.
Vec4 tangent_cross(const Vec3& p, const Vec4& x, const Vec4& y);

std::vector<double> mean_curvature_residual(const SurfaceMesh& m);

// Area-gradient of a chordal triangle with respect to its three vertices.
std::array<Vec4, 3> triangle_area_gradient(const std::array<Vec4, 3>& x);

// Interior angle of face f at its local corner c, from product distances.
double face_angle(const SurfaceMesh& m, int f, int c);

}  // namespace minsurf
