#pragma once

#include <string>
#include <vector>

#include "minsurf/conjugation.hpp"
#include "minsurf/plateau.hpp"
#include "minsurf/shooting.hpp"

namespace minsurf {

enum class Family { Cube, Balloon, Pk, Rosenberg, None };

const char* family_name(Family f);
Family family_from_name(const std::string& s);

enum class RosenbergMode { Single, Double };

struct TilingSpec {
  Family family = Family::Cube;
  int k = 0;  // balloon and pk
  int d = 0;  // rosenberg
  RosenbergMode mode = RosenbergMode::Single;
  int copies = 0;
};

// Fills in the copy count for the family: 48, 8k, 8k, 4d (single) or 8d (double).
TilingSpec make_tiling(Family family, int param = 0, RosenbergMode mode = RosenbergMode::Single);

// Prism angles (alpha, beta, gamma) the conjugate families require.
std::array<double, 3> family_angles(const TilingSpec& spec);

struct AssembledSurface {
  SurfaceMesh mesh;
  double r = 0;
  int copies = 0;
  TilingSpec spec;
  std::vector<Isometry> generator_log;
  std::vector<std::string> words;  // generator letters per copy
  double max_seam_gap = 0;         // largest distance merged at a seam
  double snap_displacement = 0;    // largest move onto the exact prism
  double wall_angle_defect = 0;    // |measured wall angle at C - gamma|
};

// Relative snap tolerance for seam identification (times the piece diameter).
constexpr double kSnapTolerance = 1e-6;

AssembledSurface orbit_assemble(const SurfaceMesh& piece, const PrismData& prism, const TilingSpec& spec,
                                double snap_tol = kSnapTolerance);

AssembledSurface rosenberg_assemble(const PlateauSolution& sol, RosenbergMode mode, double snap_tol = kSnapTolerance);

// Wraps a closed mesh that does not come from a tiling (family None).
AssembledSurface wrap_surface(const SurfaceMesh& mesh);

struct FamilyOptions {
  int resolution = 32;
  double a_tilde = 0;   // symmetric families; 0 selects the family default
  double h_tilde = 1.0;  // rosenberg contour height
};

double default_a_tilde(Family family);

struct FamilyBuild {
  ShotResult shot;  // unset for rosenberg
  PlateauSolution plateau;
  ConjugateResult conjugate;  // unset for rosenberg
  AssembledSurface surface;
};

// Full pipeline: shoot, solve, conjugate, free boundary and orbit assembly
// (conjugate families), or solve and rotate (rosenberg).
FamilyBuild build_family(const TilingSpec& spec, const FamilyOptions& opt = {});

struct GenusConsistency {
  int chi = 0;
  bool orientable = false;
  bool formula_applies = false;
  int expected_chi = 0;
  int genus = 0;  // from the formula when it applies, else from chi
  bool match = true;
};

// Throws AssemblyDefect when the formula applies and does not match.
GenusConsistency genus_consistency(const AssembledSurface& s, double gamma);

// Largest distance from g(v) to the nearest vertex, or +inf when some image
// has no vertex within tol.
double symmetry_defect(const SurfaceMesh& m, const Isometry& g, double tol = 1e-6);

}  // namespace minsurf
