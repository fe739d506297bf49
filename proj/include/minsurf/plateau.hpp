#pragma once

#include <array>
#include <vector>

#include "minsurf/graph_solver.hpp"
#include "minsurf/surfaces.hpp"

namespace minsurf {

enum class ContourEdge { E12 = 0, E23, E34, E45, E51 };

int edge_code(ContourEdge e);
ContourEdge edge_from_code(int code);
bool is_vertical(ContourEdge e);

// theta is NaN on horizontal edges; w is NaN on vertical edges.
struct TraceSample {
  double s = 0;
  double nu = 0;
  double theta = 0;
  double w = 0;
};

// Bookkeeping for the collapsed-grid triangulation of the base triangle.
// Half A has its apex at P1, half B at P4; both share the column k = kt
// along the segment from M (midpoint of side c) to P5.
struct PlateauGrid {
  int J = 0;
  int K = 0;
  std::vector<double> xi;   // radial parameters, xi[0] = 0 ... xi[kt] = 1
  std::vector<double> eta;  // angular parameters, eta[0] = 0 (side c) ... eta[J] = 1
  std::vector<std::vector<int>> A, B;
  Vec3 P1, P4, P5, M;

  int kt() const { return static_cast<int>(xi.size()) - 1; }
};

struct PlateauSolution {
  ContourSpec spec;
  int resolution = 0;
  double tol = 0;
  GeodesicPolygon contour;
  PlateauGrid grid;
  SurfaceMesh mesh;
  std::vector<double> height_fn;
  std::array<std::vector<TraceSample>, 5> boundary_traces;
  double residual = 0;
  GraphSolveReport report;
};

// Number of geometric rings inserted at the two bottom vertices.
constexpr int kGradedRings = 4;

// eta overrides the uniform angular parameters when given (size resolution + 1).
PlateauGrid build_plateau_grid(const GeodesicPolygon& poly, int resolution, SurfaceMesh& mesh,
                               const std::vector<double>& eta = {});

PlateauSolution solve_graph(const ContourSpec& spec, int resolution, double tol = 1e-9);

// Rebuilds a solution around given heights (no solve). Used by the reader.
PlateauSolution plateau_from_heights(const ContourSpec& spec, int resolution, const std::vector<double>& heights,
                                     double tol, const std::vector<double>& eta = {});

struct NormalRotation {
  std::vector<double> s;
  std::vector<double> theta;
  double delta_theta = 0;
  bool monotone = true;
};

NormalRotation measure_normal_rotation(const PlateauSolution& sol, ContourEdge edge);
double measure_symmetry_curve(const PlateauSolution& sol);
std::vector<TraceSample> boundary_trace(const PlateauSolution& sol, ContourEdge edge);

// Trapezoid integrals of nu and w over a horizontal trace.
double trace_integral_nu(const std::vector<TraceSample>& t);
double trace_integral_w(const std::vector<TraceSample>& t);

// Vertex indices of the blown-up apex row over P1 (edge 12) or P4 (edge 34).
std::vector<int> fan_vertices(const PlateauSolution& sol, ContourEdge edge);

// Indices along the mirror column from M to P5.
std::vector<int> mirror_column(const PlateauSolution& sol);

}  // namespace minsurf
