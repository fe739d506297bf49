#pragma once

#include <vector>

#include "minsurf/mesh.hpp"

namespace minsurf {

// Vertical graph over a fixed spherical triangulation; unknowns are heights.
struct GraphProblem {
  std::vector<Vec3> base;
  std::vector<Face> faces;
  std::vector<double> height;
  std::vector<char> fixed;
};

struct GraphSolveReport {
  int iterations = 0;
  double gradient_norm = 0;
  double area = 0;
  std::vector<double> area_history;
  bool converged = false;
};

double graph_area(const GraphProblem& p, const std::vector<double>& h);
// Gradient of the area with respect to every height (fixed ones included).
std::vector<double> graph_area_gradient(const GraphProblem& p, const std::vector<double>& h);

// Damped Newton iteration with Armijo backtracking. The area never increases.
// Throws SolverError if the gradient norm does not drop below tol.
GraphSolveReport minimize_graph_area(GraphProblem& p, double tol, int max_iter = 200);

}  // namespace minsurf
