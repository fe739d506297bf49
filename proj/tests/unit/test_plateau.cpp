#include <cmath>
#include <numbers>

#include "doctest.h"
#include "minsurf/plateau.hpp"

using namespace minsurf;
using std::numbers::pi;

namespace {

const PlateauSolution& octant() {
  static const PlateauSolution sol = solve_graph({{pi / 2, pi / 2, pi / 2}, 0.5}, 32);
  return sol;
}

}  // namespace

TEST_CASE("octant solve converges to a graph") {
  const PlateauSolution& sol = octant();
  CHECK(sol.report.converged);
  CHECK(sol.residual < 1e-9);
  const SurfaceMesh& m = sol.mesh;
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (m.tag(v) != BoundaryLabel::None) continue;
    CHECK(m.nu[v] > 0);
    CHECK(m.vertices[v].height > 0);
    CHECK(m.vertices[v].height < 0.5);
  }
}

TEST_CASE("boundary values") {
  const SurfaceMesh& m = octant().mesh;
  for (int v = 0; v < m.num_vertices(); ++v) {
    switch (m.tag(v)) {
      case BoundaryLabel::Edge23: CHECK(m.vertices[v].height == 0); break;
      case BoundaryLabel::Edge45:
      case BoundaryLabel::Edge51:
      case BoundaryLabel::Corner5: CHECK(m.vertices[v].height == 0.5); break;
      default: break;
    }
  }
}

TEST_CASE("area decreases monotonically") {
  const auto& hist = octant().report.area_history;
  REQUIRE(hist.size() > 1);
  for (size_t i = 1; i < hist.size(); ++i) CHECK(hist[i] <= hist[i - 1] + 1e-15);
}

TEST_CASE("symmetric hinges give mirror symmetric solutions") {
  const PlateauSolution& sol = octant();
  const PlateauGrid& g = sol.grid;
  double worst = 0;
  for (int k = 0; k <= g.kt(); ++k)
    for (int j = 0; j <= g.J; ++j)
      worst = std::max(worst, std::abs(sol.mesh.vertices[g.A[k][j]].height - sol.mesh.vertices[g.B[k][j]].height));
  CHECK(worst < 1e-8);
}

TEST_CASE("normal rotation along the vertical edges") {
  const PlateauSolution& sol = octant();
  double at = solve_hinge(sol.spec.hinge).alpha_tilde;
  NormalRotation r12 = measure_normal_rotation(sol, ContourEdge::E12);
  NormalRotation r34 = measure_normal_rotation(sol, ContourEdge::E34);
  CHECK(std::abs(r12.delta_theta) == doctest::Approx(at).epsilon(0.02));
  CHECK(std::abs(r34.delta_theta) == doctest::Approx(at).epsilon(0.02));
  CHECK(r12.monotone);
  CHECK(r34.monotone);
  CHECK_THROWS_AS(measure_normal_rotation(sol, ContourEdge::E23), Error);
}

TEST_CASE("symmetry curve") {
  const PlateauSolution& sol = octant();
  double l = measure_symmetry_curve(sol);
  CHECK(l > sol.spec.h_tilde);
  HingeSpec hinge{0.8, 0.8, pi / 2};
  double median = hinge_median(hinge);
  PlateauSolution flat = solve_graph({hinge, 1e-6}, 16);
  CHECK(measure_symmetry_curve(flat) == doctest::Approx(median).epsilon(1e-4));
  double prev = 0;
  for (double h : {0.2, 0.4, 0.6, 0.8}) {
    double len = measure_symmetry_curve(solve_graph({hinge, h}, 16));
    CHECK(len > prev);
    CHECK(len > h);
    prev = len;
  }
  PlateauSolution skew = solve_graph({{0.6, 0.9, pi / 2}, 0.3}, 8);
  CHECK_THROWS_AS(measure_symmetry_curve(skew), Error);
}

TEST_CASE("horizontal traces") {
  const PlateauSolution& sol = octant();
  auto t23 = boundary_trace(sol, ContourEdge::E23);
  REQUIRE(t23.size() > 2);
  for (const auto& s : t23) {
    CHECK(s.nu >= -1e-12);
    CHECK(s.nu <= 1 + 1e-12);
    CHECK(std::isnan(s.theta));
  }
  CHECK(t23.front().nu < 0.1);
  CHECK(t23.back().nu < 0.1);
  CHECK(std::abs(t23.front().w) > 0.99);
  CHECK(std::abs(t23.back().w) > 0.99);
  double L = trace_integral_nu(t23);
  CHECK(L > 0);
  CHECK(L <= sol.contour.edges[1].length);
  CHECK_THROWS_AS(boundary_trace(sol, ContourEdge::E12), Error);
}

TEST_CASE("flat limit") {
  PlateauSolution sol = solve_graph({{0.7, 0.5, 1.2}, 1e-6}, 8);
  for (const auto& v : sol.mesh.vertices) CHECK(std::abs(v.height) <= 1e-6);
}

TEST_CASE("refinement changes probe heights at second order") {
  ContourSpec spec{{0.9, 0.9, pi / 2}, 0.4};
  PlateauSolution a = solve_graph(spec, 8), b = solve_graph(spec, 16), c = solve_graph(spec, 32);
  auto probe = [](const PlateauSolution& s) {
    const auto col = mirror_column(s);
    return s.mesh.vertices[col[col.size() / 2]].height;
  };
  double d1 = std::abs(probe(a) - probe(b)), d2 = std::abs(probe(b) - probe(c));
  CHECK(d2 < d1);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(solve_graph({{pi / 2, pi / 2, pi / 2}, 0.5}, 1), Error);
  CHECK_THROWS_AS(solve_graph({{pi / 2, pi / 2, pi / 2}, 0.5}, 8, -1), Error);
  CHECK_THROWS_AS(solve_graph({{pi / 2, pi / 2, pi / 2}, 1.7}, 8), Error);
}
