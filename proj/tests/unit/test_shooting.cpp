#include <cmath>
#include <numbers>

#include "doctest.h"
#include "minsurf/shooting.hpp"

using namespace minsurf;
using std::numbers::pi;

TEST_CASE("symmetric shooting hits the cube prism") {
  ShotLog log;
  ShotResult r = solve_symmetric(pi / 2, pi / 3, 0.6, 16, &log);
  CHECK(std::abs(r.prism.alpha - pi / 3) < 1e-3);
  CHECK(std::abs(r.prism.beta - pi / 3) < 1e-3);
  CHECK(r.trusted);
  CHECK(r.h_tilde > 0);
  CHECK(r.h_tilde <= delta_from_alpha(pi / 2, pi / 3));
  CHECK(r.diagnostics.angle_relation_residual >= 0);
  CHECK(r.diagnostics.angle_relation_residual < 1e-3);
  CHECK(r.winding == 0);
  CHECK_FALSE(log.empty());
  CHECK(log.back().stage == "symmetric");
}

TEST_CASE("balloon prism for k = 2") {
  ShotResult r = solve_symmetric(pi / 2, pi / 2, 0.9, 16);
  CHECK(std::abs(r.prism.alpha - pi / 2) < 1e-3);
  CHECK(r.prism.gamma == pi / 2);
}

TEST_CASE("unreachable targets are reported") {
  CHECK_THROWS_AS(solve_symmetric(pi / 2, 0.5, 0.6, 8), Error);
  CHECK_THROWS_AS(solve_symmetric(pi / 2, pi / 3, 2.0, 8), Error);
}

TEST_CASE("prism angle grows with the contour height") {
  double prev = solve_hinge({0.6, 0.6, pi / 2}).alpha_tilde;
  for (double h : {0.05, 0.2, 0.4, 0.6}) {
    ShotResult r = eval_f(h, 0.6, 0.6, pi / 2, 8);
    CHECK(r.prism.alpha > prev);
    prev = r.prism.alpha;
  }
}

TEST_CASE("small heights approach the base triangle") {
  ShotResult r = eval_f(1e-3, 0.6, 0.9, pi / 2, 8);
  TriangleData t = solve_hinge({0.6, 0.9, pi / 2});
  CHECK(r.prism.alpha == doctest::Approx(t.alpha_tilde).epsilon(1e-2));
  CHECK(r.prism.beta == doctest::Approx(t.beta_tilde).epsilon(1e-2));
  CHECK(r.diagnostics.angle_relation_residual < 0);
}

TEST_CASE("degree certificate for k = 3") {
  WindingReport w = winding_about(0.1, 3, default_rectangle(3), pi / 3, pi / 2, 8);
  CHECK(w.c1);
  CHECK(w.c2);
  CHECK(w.c3);
  CHECK(w.c4);
  CHECK(std::abs(w.winding) == 1);
  CHECK(w.samples_per_side >= 16);
  CHECK_THROWS_AS(winding_test(0.1, 2, 8), Error);
}

TEST_CASE("general shooting for k = 3") {
  ShotLog log;
  ShotResult r = solve_general(3, 8, &log);
  CHECK(std::abs(r.prism.alpha - pi / 3) < 2e-3);
  CHECK(std::abs(r.prism.beta - pi / 2) < 2e-3);
  CHECK(r.winding != 0);
  CHECK(r.a_tilde != r.b_tilde);
  std::string csv = shot_log_csv(log);
  CHECK(csv.rfind("SHOTLOG v1\nstage,h_tilde,", 0) == 0);
}
