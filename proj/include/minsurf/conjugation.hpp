#pragma once

#include <array>
#include <vector>

#include "minsurf/plateau.hpp"

namespace minsurf {

// Prism bounded by three vertical planes over great circles and the slices
// t = 0 and t = h. Base triangle vertices: A = Π23 ∩ Π51, B = Π23 ∩ Π45,
// C = Π45 ∩ Π51. Wall poles point into the prism.
struct PrismData {
  double alpha = 0;
  double beta = 0;
  double gamma = 0;
  double h = 0;
  std::array<Vec3, 3> wall_circles;  // poles of Π23, Π45, Π51
  std::array<double, 2> slices{0.0, 0.0};
  Vec3 A = Vec3::UnitX(), B = Vec3::UnitY(), C = Vec3::UnitZ();
  double gamma_measured = 0;  // angle between Π45 and Π51 at C
};

struct SliceCurve {
  std::vector<Vec3> points;
  std::vector<double> s;
  std::vector<double> curvature;  // signed, positive toward the adjacent prism edge
  double height = 0;
};

struct WallCurve {
  std::vector<double> s;  // arc length along the source edge
  std::vector<double> x;  // arc length along the wall circle
  std::vector<double> t;  // height
  std::vector<ProdPoint> points;
};

// Curves are stored with their source orientation: slice_curves[0] is 1̄2
// running from corner 2 to corner 1, slice_curves[1] is 3̄4 from 3 to 4.
// wall_curves[0] = 2̄3 (2 to 3), [1] = 4̄5 (4 to 5), [2] = 5̄1 (5 to 1).
struct ConjugateContour {
  std::array<SliceCurve, 2> slice_curves;
  std::array<WallCurve, 3> wall_curves;
  std::array<ProdPoint, 5> corner_points;
  double closure_residual = 0;
  double closure_tolerance = 0;
  double total_length = 0;
  // Measured source turning angles |Δθ| on edges 12 and 34.
  double alpha_tilde = 0;
  double beta_tilde = 0;
  double h_tilde = 0;
  double source_area = 0;
  double source_c = 0;
};

struct ConjugateResult {
  ConjugateContour contour;
  PrismData prism;
};

// closure_tol <= 0 selects the default 1e-2 of the total contour length.
ConjugateResult reconstruct_contour(const PlateauSolution& sol, double closure_tol = 0);

struct GaussBonnetCheck {
  double alpha_check = 0;
  double beta_check = 0;
  double area_alpha = 0;
  double area_beta = 0;
};

GaussBonnetCheck alpha_gauss_bonnet(const ConjugateContour& contour, const PrismData& prism);

// True if the closed polyline (in a gnomonic chart) has a self-crossing.
bool polyline_self_intersects(const std::vector<Vec3>& loop);

struct FreeBoundaryPiece {
  SurfaceMesh mesh;
  GraphSolveReport report;
  double max_dihedral_defect = 0;  // |<N, wall pole>| on wall vertices
  double height_excursion = 0;     // worst exit from [0, h]
};

FreeBoundaryPiece solve_free_boundary(const PrismData& prism, const ConjugateContour& contour, int resolution,
                                      double tol = 1e-9);

struct ConjugateThresholds {
  double area = 0.01;
  double nu_distance = 0.02;
  double curvature = 0.03;
  double planarity = 1e-8;
};

struct ConjugateReport {
  double area_source = 0;
  double area_piece = 0;
  double area_mismatch = 0;
  double nu_distance = 0;
  double total_curvature = 0;
  double curvature_target = 0;
  double curvature_mismatch = 0;
  double planarity_residual = 0;
  bool area_ok = false;
  bool nu_ok = false;
  bool curvature_ok = false;
  bool planarity_ok = false;
  bool pass() const { return area_ok && nu_ok && curvature_ok && planarity_ok; }
};

// Gauss curvature integral from interior angle defects plus boundary cells
// weighted by the curvature density of their interior neighbours.
double discrete_total_curvature(const SurfaceMesh& m);

// 1-Wasserstein distance between area-weighted face distributions of |nu|.
double nu_distribution_distance(const SurfaceMesh& a, const SurfaceMesh& b);

ConjugateReport verify_conjugate(const PlateauSolution& sol, const PrismData& prism, const SurfaceMesh& piece,
                                 const ConjugateThresholds& thr = {});

}  // namespace minsurf
