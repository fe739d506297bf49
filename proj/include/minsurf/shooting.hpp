#pragma once

#include <functional>
#include <string>
#include <vector>

#include "minsurf/conjugation.hpp"

namespace minsurf {

struct ShotDiagnostics {
  double plateau_residual = 0;
  double closure_residual = 0;
  double closure_tolerance = 0;
  int plateau_iterations = 0;
  double delta_length = -1;  // symmetry curve length when measured
  double angle_relation_residual = -1;  // |cos a - sin(g/2) cos l(delta)| when measured
};

struct ShotResult {
  double h_tilde = 0;
  double a_tilde = 0;
  double b_tilde = 0;
  double gamma = 0;
  int resolution = 0;
  PrismData prism;
  ShotDiagnostics diagnostics;
  bool trusted = true;
  int winding = 0;  // certificate from solve_general, 0 otherwise
};

// One row of the search log.
struct ShotLogEntry {
  std::string stage;
  double h_tilde, a_tilde, b_tilde;
  double h, alpha, beta;
  double closure;
  bool trusted;
};

using ShotLog = std::vector<ShotLogEntry>;

ShotResult eval_f(double h_tilde, double a_tilde, double b_tilde, double gamma, int resolution, ShotLog* log = nullptr);

ShotResult solve_symmetric(double gamma, double alpha_target, double a_tilde, int resolution, ShotLog* log = nullptr);

// Parameter rectangle of the degree argument for gamma = pi/2 and target (pi/k, pi/2).
struct WindingRectangle {
  double a_lo, a_hi, b_lo, b_hi;
};

WindingRectangle default_rectangle(int k);

struct WindingReport {
  int winding = 0;
  int samples_per_side = 0;
  // Per-side sign conditions: beta > pi/2 on c1, alpha > pi/k on c2,
  // beta < pi/2 on c3, alpha < pi/k on c4.
  bool c1 = false, c2 = false, c3 = false, c4 = false;
  double min_distance = 0;  // closest approach of the image curve to the target
};

// Winding number of the image of the rectangle boundary around the target
// (alpha, beta). Samples start at 16 per side and double on indeterminacy.
WindingReport winding_about(double h_tilde, int k, const WindingRectangle& rect, double alpha_target,
                            double beta_target, int resolution, ShotLog* log = nullptr);

int winding_test(double h_tilde, int k, int resolution, ShotLog* log = nullptr);

ShotResult solve_general(int k, int resolution, ShotLog* log = nullptr);

std::string shot_log_csv(const ShotLog& log);

}  // namespace minsurf
