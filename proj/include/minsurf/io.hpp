#pragma once

#include <string>

#include "minsurf/assembly.hpp"
#include "minsurf/conjugation.hpp"
#include "minsurf/plateau.hpp"
#include "minsurf/shooting.hpp"
#include "minsurf/topology.hpp"

namespace minsurf {

// All text formats start with a "<NAME> v<version>" line. Readers throw
// Format on any other header. Column layouts are listed in docs/FORMATS.md.

std::string write_plateau(const PlateauSolution& sol);
PlateauSolution read_plateau(const std::string& text);

std::string write_mesh(const SurfaceMesh& m);
SurfaceMesh read_mesh(const std::string& text);

std::string write_conjugate(const ConjugateResult& r);
ConjugateResult read_conjugate(const std::string& text);

std::string write_shot(const ShotResult& s);

std::string write_assembly(const AssembledSurface& s);

// Exact coordinates, heights reduced into [0, 2 pi r) when periodic.
std::string write_mesh_csv(const SurfaceMesh& m);

// Visualization chart (p, t) -> p (2 + t / (2 pi r)), 9 significant digits.
// Meshes without a quotient use p (2 + t / L) with L the height span.
std::string write_obj(const SurfaceMesh& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace minsurf
