#include <cmath>
#include <numbers>

#include "doctest.h"
#include "minsurf/surfaces.hpp"
#include "minsurf/topology.hpp"

using namespace minsurf;
using std::numbers::pi;

TEST_CASE("octant contour") {
  GeodesicPolygon g = build_contour({{pi / 2, pi / 2, pi / 2}, 0.5});
  CHECK(g.edges[1].length == doctest::Approx(pi / 2));
  CHECK(g.edges[0].length == doctest::Approx(0.5));
  CHECK(g.edges[2].length == doctest::Approx(0.5));
  CHECK(g.edges[0].type == EdgeType::Vertical);
  CHECK(g.edges[2].type == EdgeType::Vertical);
  CHECK(g.closure_gap() < 1e-10);
}

TEST_CASE("contour angles and edge lengths") {
  for (ContourSpec s : {ContourSpec{{0.6, 0.9, 1.1}, 0.4}, ContourSpec{{1.2, 0.3, 2.0}, 1.3},
                        ContourSpec{{0.5, 0.5, pi / 3}, 1e-9}}) {
    GeodesicPolygon g = build_contour(s);
    for (int i = 0; i < 4; ++i) CHECK(g.vertex_angle(i) == doctest::Approx(pi / 2).epsilon(1e-10));
    CHECK(g.vertex_angle(4) == doctest::Approx(s.hinge.gamma).epsilon(1e-10));
    CHECK(g.edges[3].length == doctest::Approx(s.hinge.b_tilde));
    CHECK(g.edges[4].length == doctest::Approx(s.hinge.a_tilde));
    CHECK(g.edges[1].length == doctest::Approx(solve_hinge(s.hinge).c));
    CHECK(g.closure_gap() < 1e-10);
  }
}

TEST_CASE("contour preconditions") {
  CHECK_THROWS_AS(build_contour({{pi / 2, pi / 2, pi / 2}, -0.1}), Error);
  CHECK_THROWS_AS(build_contour({{pi / 2, pi / 2, pi / 2}, 2.0}), Error);
  CHECK_THROWS_AS(build_contour({{1.8, 0.5, 1.0}, 0.5}), Error);
}

TEST_CASE("slice") {
  SurfaceMesh m = slice_mesh(0.3, 16);
  CHECK(euler_characteristic(m) == 2);
  for (double nu : m.nu) CHECK(nu == doctest::Approx(1));
  for (const auto& v : m.vertices) CHECK(v.height == 0.3);
  CHECK(total_area(m) == doctest::Approx(4 * pi).epsilon(0.01));
}

TEST_CASE("cylinder") {
  SurfaceMesh m = cylinder_mesh(Vec3::UnitZ(), 1.0, 8);
  CHECK(euler_characteristic(m) == 0);
  CHECK(orientability(m));
  for (double nu : m.nu) CHECK(std::abs(nu) < 1e-12);
  CHECK(m.quotient_circumference);
  CHECK(*m.quotient_circumference == doctest::Approx(2 * pi));
  CHECK(total_area(m) == doctest::Approx(4 * pi * pi).epsilon(1e-3));
}

TEST_CASE("helicoids") {
  SurfaceMesh torus = helicoid_mesh(2 * pi, 1.0, 8);
  CHECK(euler_characteristic(torus) == 0);
  CHECK(orientability(torus));
  SurfaceMesh klein = helicoid_mesh(4 * pi * 0.5, 0.5, 8);
  CHECK(euler_characteristic(klein) == 0);
  CHECK_FALSE(orientability(klein));
  int g = 2 - euler_characteristic(klein);
  CHECK(g == 2);
  CHECK(g % 2 == 0);
  CHECK_THROWS_AS(helicoid_mesh(3.0, 1.0, 8), Error);
}

TEST_CASE("minimality residual decays on the model surfaces") {
  auto worst = [](const SurfaceMesh& m) {
    double w = 0;
    for (double r : mean_curvature_residual(m)) w = std::max(w, r);
    return w;
  };
  double s1 = worst(slice_mesh(0, 8)), s2 = worst(slice_mesh(0, 16));
  CHECK(s2 < s1 / 3);
  double h1 = worst(helicoid_mesh(2 * pi, 1, 4)), h2 = worst(helicoid_mesh(2 * pi, 1, 8));
  CHECK(h2 < h1 / 3);
  CHECK(worst(cylinder_mesh(Vec3::UnitX(), 1, 6)) < 1e-12);
}
