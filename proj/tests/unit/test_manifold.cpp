#include <cmath>
#include <numbers>

#include "doctest.h"
#include "minsurf/manifold.hpp"

using namespace minsurf;
using std::numbers::pi;

namespace {

bool near(const ProdPoint& a, const ProdPoint& b, double tol = 1e-12) {
  return (a.base.coords() - b.base.coords()).norm() < tol && std::abs(a.height - b.height) < tol;
}

}  // namespace

TEST_CASE("sphere points are normalized on construction") {
  SpherePoint p(3, 4, 0);
  CHECK(p.coords().norm() == doctest::Approx(1).epsilon(1e-15));
  CHECK_THROWS_AS(SpherePoint(0, 0, 0), Error);
}

TEST_CASE("tangent vectors must be tangent") {
  SpherePoint p(1, 0, 0);
  CHECK_NOTHROW(ProdVector(p, Vec3(0, 1, 0), 0.5));
  CHECK_THROWS_AS(ProdVector(p, Vec3(1, 0, 0), 0), Error);
  ProdVector xi = ProdVector::xi(p);
  CHECK(xi.horizontal.norm() == 0);
  CHECK(xi.vertical == 1);
}

TEST_CASE("great circle geodesics") {
  SpherePoint p(1, 0, 0);
  auto q = sphere_geodesic(p, Vec3(0, 1, 0), pi / 2);
  CHECK((q.coords() - Vec3(0, 1, 0)).norm() < 1e-15);
  q = sphere_geodesic(p, Vec3(0, 1, 0), 0);
  CHECK((q.coords() - Vec3(1, 0, 0)).norm() < 1e-15);
  q = sphere_geodesic(p, Vec3(0, 0, 1), pi / 3);
  CHECK((q.coords() - Vec3(std::cos(pi / 3), 0, std::sin(pi / 3))).norm() < 1e-15);
}

TEST_CASE("product distance") {
  CHECK(prod_distance({Vec3(1, 0, 0), 0}, {Vec3(1, 0, 0), 2}) == doctest::Approx(2));
  CHECK(prod_distance({Vec3(1, 0, 0), 0}, {Vec3(0, 1, 0), 0}) == doctest::Approx(pi / 2));
  CHECK(prod_distance({Vec3(1, 0, 0), 0}, {Vec3(0, 1, 0), pi / 2}) == doctest::Approx(pi / std::sqrt(2.0)));
}

TEST_CASE("isometries") {
  ProdPoint x(Vec3(1, 0, 0), 1);
  CHECK(near(Isometry::slice_reflection(0).apply(x), ProdPoint(Vec3(1, 0, 0), -1)));
  CHECK(near(Isometry::vertical_translation(2 * pi).apply({Vec3(0, 1, 0), 0}), ProdPoint(Vec3(0, 1, 0), 2 * pi)));
  CHECK(near(Isometry::horizontal_geodesic_rotation(Vec3(0, 0, 1), 0).apply({Vec3(0, 0, 1), 1}),
             ProdPoint(Vec3(0, 0, -1), -1)));

  Vec3 n = Vec3(1, 2, 3).normalized();
  std::vector<Isometry> gs{Isometry::slice_reflection(0.7), Isometry::vertical_plane_reflection(n),
                           Isometry::vertical_geodesic_rotation(Vec3(0, 0.6, 0.8)),
                           Isometry::horizontal_geodesic_rotation(n, -0.3), Isometry::vertical_translation(1.1)};
  ProdPoint y(Vec3(0.3, -0.4, 0.5), 0.25);
  for (const Isometry& g : gs) {
    CHECK(near(g.compose(g.inverse()).apply(y), y));
    CHECK(near(g.inverse().apply(g.apply(y)), y));
  }
  for (int i = 0; i < 4; ++i) CHECK(near(gs[i].compose(gs[i]).apply(y), y));
  CHECK(gs[0].orientation_sign() == doctest::Approx(-1));
  CHECK(gs[1].orientation_sign() == doctest::Approx(-1));
  CHECK(gs[2].orientation_sign() == doctest::Approx(1));
  CHECK(gs[3].orientation_sign() == doctest::Approx(1));
}

TEST_CASE("ricci curvature of the product") {
  SpherePoint p(0, 0, 1);
  CHECK(ricci(ProdVector::xi(p)) == doctest::Approx(0));
  CHECK(ricci(ProdVector(p, Vec3(1, 0, 0), 0)) == doctest::Approx(1));
  CHECK(ricci(ProdVector(p, Vec3(1, 0, 0) / std::sqrt(2.0), 1 / std::sqrt(2.0))) == doctest::Approx(0.5));
}

TEST_CASE("curvature tensor") {
  SpherePoint p(0, 0, 1);
  ProdVector x(p, Vec3(1, 0, 0), 0), y(p, Vec3(0, 1, 0), 0), xi = ProdVector::xi(p);
  ProdVector r = curvature_tensor(x, y, x);
  CHECK((r.horizontal - Vec3(0, -1, 0)).norm() < 1e-15);
  CHECK(r.vertical == doctest::Approx(0));
  r = curvature_tensor(x, xi, xi);
  CHECK(r.horizontal.norm() < 1e-15);
  CHECK(std::abs(r.vertical) < 1e-15);
  CHECK(inner(curvature_tensor(x, xi, xi), x) == doctest::Approx(0));
}

TEST_CASE("spherical triangle area") {
  CHECK(spherical_triangle_area(Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()) == doctest::Approx(pi / 2));
  CHECK(spherical_triangle_area(Vec3::UnitY(), Vec3::UnitX(), Vec3::UnitZ()) == doctest::Approx(-pi / 2));
}
