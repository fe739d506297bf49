#include <cmath>
#include <numbers>

#include "doctest.h"
#include "minsurf/graph_solver.hpp"
#include "minsurf/surfaces.hpp"

using namespace minsurf;
using std::numbers::pi;

TEST_CASE("labels round trip") {
  for (int i = 0; i <= static_cast<int>(BoundaryLabel::Corner5); ++i) {
    auto l = static_cast<BoundaryLabel>(i);
    CHECK(label_from_name(label_name(l)) == l);
  }
  CHECK_THROWS_AS(label_from_name("edge99"), Error);
  CHECK(label_on_segment(BoundaryLabel::Corner2, BoundaryLabel::Edge12));
  CHECK(label_on_segment(BoundaryLabel::Corner2, BoundaryLabel::Edge23));
  CHECK_FALSE(label_on_segment(BoundaryLabel::Corner4, BoundaryLabel::Edge12));
}

TEST_CASE("edge topology of a closed mesh") {
  SurfaceMesh m = slice_mesh(0, 4);
  EdgeTopology t = build_edges(m);
  CHECK(static_cast<int>(t.edges.size()) * 2 == m.num_faces() * 3);
  for (const auto& f : t.edge_faces) CHECK(f.size() == 2);
  CHECK_NOTHROW(validate_mesh(m));
  bool orientable = false;
  int components = 0;
  propagate_orientation(m, t, &orientable, &components);
  CHECK(orientable);
  CHECK(components == 1);
}

TEST_CASE("non-manifold edges are rejected") {
  SurfaceMesh m;
  m.vertices = {{Vec3(1, 0, 0), 0}, {Vec3(0, 1, 0), 0}, {Vec3(0, 0, 1), 0}, {Vec3(0, 0, 1), 1}, {Vec3(0, 0, 1), 2}};
  m.faces = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}};
  CHECK_THROWS_AS(validate_mesh(m), Error);
}

TEST_CASE("degenerate faces are rejected") {
  SurfaceMesh m;
  m.vertices = {{Vec3(1, 0, 0), 0}, {Vec3(1, 0, 0), 0}, {Vec3(0, 0, 1), 0}};
  m.faces = {{0, 1, 2}};
  CHECK_THROWS_AS(validate_mesh(m), Error);
}

TEST_CASE("residual detects a displaced vertex") {
  SurfaceMesh m = slice_mesh(0, 8);
  auto r0 = mean_curvature_residual(m);
  int v = 7;
  m.vertices[v].height += 0.1;
  auto r1 = mean_curvature_residual(m);
  CHECK(r1[v] > 0.01);
  CHECK(r1[v] > 100 * r0[v]);
}

TEST_CASE("wrapped heights") {
  SurfaceMesh m;
  m.quotient_circumference = 2 * pi;
  CHECK(wrapped_delta(m, 0.1, 2 * pi - 0.1) == doctest::Approx(-0.2));
  CHECK(wrapped_delta(m, 2 * pi - 0.1, 0.1) == doctest::Approx(0.2));
}

TEST_CASE("area gradient of a chordal triangle") {
  std::array<Vec4, 3> x{Vec4(1, 0, 0, 0), Vec4(0, 1, 0, 0.3), Vec4(0, 0, 1, -0.2)};
  auto area = [](const std::array<Vec4, 3>& y) {
    Vec4 a = y[1] - y[0], b = y[2] - y[0];
    return 0.5 * std::sqrt(a.squaredNorm() * b.squaredNorm() - std::pow(a.dot(b), 2));
  };
  auto g = triangle_area_gradient(x);
  const double eps = 1e-6;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 4; ++k) {
      auto p = x, q = x;
      p[i][k] += eps;
      q[i][k] -= eps;
      CHECK(g[i][k] == doctest::Approx((area(p) - area(q)) / (2 * eps)).epsilon(1e-6));
    }
}

TEST_CASE("graph area minimization is monotone and convergent") {
  SurfaceMesh s = slice_mesh(0, 4);
  GraphProblem p;
  for (const auto& v : s.vertices) p.base.push_back(v.base.coords());
  p.height.assign(p.base.size(), 0.0);
  p.fixed.assign(p.base.size(), 0);
  // Keep the northern cap free, pin the rest at height z.
  for (size_t v = 0; v < p.base.size(); ++v) {
    if (p.base[v].z() < 0.5) {
      p.fixed[v] = 1;
      p.height[v] = 0.2 * p.base[v].x();
    } else {
      p.height[v] = 0.3;
    }
  }
  p.faces = s.faces;
  GraphSolveReport r = minimize_graph_area(p, 1e-10);
  CHECK(r.converged);
  for (size_t i = 1; i < r.area_history.size(); ++i) CHECK(r.area_history[i] <= r.area_history[i - 1] + 1e-15);
  auto g = graph_area_gradient(p, p.height);
  double gn = 0;
  for (size_t v = 0; v < g.size(); ++v)
    if (!p.fixed[v]) gn += g[v] * g[v];
  CHECK(std::sqrt(gn) < 1e-10);
}
