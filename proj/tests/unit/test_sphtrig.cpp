#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "minsurf/manifold.hpp"
#include "minsurf/sphtrig.hpp"

using namespace minsurf;
using std::numbers::pi;

namespace {

Vec3 at(double polar, double azimuth) {
  return Vec3(std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar));
}

double angle_at(const Vec3& p, const Vec3& q, const Vec3& r) {
  return std::acos(std::clamp(direction_to(p, q).dot(direction_to(p, r)), -1.0, 1.0));
}

}  // namespace

TEST_CASE("octant hinge") {
  TriangleData t = solve_hinge({pi / 2, pi / 2, pi / 2});
  CHECK(t.c == doctest::Approx(pi / 2));
  CHECK(t.alpha_tilde == doctest::Approx(pi / 2));
  CHECK(t.beta_tilde == doctest::Approx(pi / 2));
  CHECK(t.area == doctest::Approx(pi / 2));
}

TEST_CASE("right angle opposite a quarter side") {
  for (double b : {0.2, 0.7, 1.3})
    CHECK(solve_hinge({pi / 2, b, pi / 2}).beta_tilde == doctest::Approx(pi / 2).epsilon(1e-12));
}

TEST_CASE("isosceles hinges have equal base angles") {
  for (double g : {0.3, pi / 3, 2.0}) {
    TriangleData t = solve_hinge({0.8, 0.8, g});
    CHECK(t.alpha_tilde == doctest::Approx(t.beta_tilde).epsilon(1e-13));
  }
}

TEST_CASE("hinge against a vector construction") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> side(0.05, pi / 2), ang(0.05, pi - 0.05);
  for (int i = 0; i < 50; ++i) {
    double a = side(rng), b = side(rng), g = ang(rng);
    Vec3 C = Vec3::UnitZ(), A = at(a, 0), B = at(b, g);
    TriangleData t = solve_hinge({a, b, g});
    CHECK(t.c == doctest::Approx(sphere_distance(A, B)).epsilon(1e-10));
    CHECK(t.alpha_tilde == doctest::Approx(angle_at(A, B, C)).epsilon(1e-9));
    CHECK(t.beta_tilde == doctest::Approx(angle_at(B, A, C)).epsilon(1e-9));
    CHECK(t.area == doctest::Approx(t.alpha_tilde + t.beta_tilde + g - pi).epsilon(1e-12));
  }
}

TEST_CASE("degenerate hinges are rejected") {
  CHECK_THROWS_AS(solve_hinge({0, 0.5, 1.0}), Error);
  CHECK_THROWS_AS(solve_hinge({0.5, 0.5, 0}), Error);
  CHECK_THROWS_AS(solve_hinge({0.5, 2.0, 1.0}), Error);
}

TEST_CASE("prism angle from the symmetry curve") {
  CHECK(alpha_from_delta(pi / 2, pi / 4) == doctest::Approx(pi / 3).epsilon(1e-15));
  for (int k = 2; k <= 6; ++k) CHECK(alpha_from_delta(pi / k, pi / 2) == doctest::Approx(pi / 2).epsilon(1e-15));
  for (double g : {0.4, 1.0, 2.5}) CHECK(alpha_from_delta(g, 0) == doctest::Approx(pi / 2 - g / 2));
  CHECK(delta_from_alpha(pi / 2, pi / 3) == doctest::Approx(pi / 4).epsilon(1e-15));
  CHECK(delta_from_alpha(pi / 2, pi / 2) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK_THROWS_AS(delta_from_alpha(pi / 3, pi / 6), Error);
}

TEST_CASE("prism angle matches a right triangle built from vectors") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> gam(0.1, pi - 0.1), del(0.05, pi / 2 - 0.05);
  for (int i = 0; i < 40; ++i) {
    double g = gam(rng), d = del(rng);
    double hyp = std::atan(std::tan(d) / std::cos(g / 2));
    Vec3 C = Vec3::UnitZ(), M = at(d, 0), A = at(hyp, g / 2);
    CHECK(angle_at(M, C, A) == doctest::Approx(pi / 2).epsilon(1e-9));
    CHECK(alpha_from_delta(g, d) == doctest::Approx(angle_at(A, C, M)).epsilon(1e-9));
    CHECK(alpha_from_delta(g, delta_from_alpha(g, alpha_from_delta(g, d))) ==
          doctest::Approx(alpha_from_delta(g, d)).epsilon(1e-12));
  }
}

TEST_CASE("prism angle grows with the symmetry curve length") {
  double prev = alpha_from_delta(pi / 3, 0);
  for (double d = 0.01; d < pi / 2; d += 0.01) {
    double a = alpha_from_delta(pi / 3, d);
    CHECK(a > prev);
    prev = a;
  }
}

TEST_CASE("third side closed form") {
  CHECK(edge23_length(pi / 2, pi / 2) == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK(edge23_length(1e-8, pi / 2) < 1e-7);
  CHECK(edge23_length(pi / 4, pi / 2) == doctest::Approx(solve_hinge({pi / 4, pi / 4, pi / 2}).c).epsilon(1e-13));
  for (double g : {0.5, 1.2, 2.4})
    for (double a : {0.1, 0.6, 1.4})
      CHECK(edge23_length(a, g) == doctest::Approx(solve_hinge({a, a, g}).c).epsilon(1e-12));
}

TEST_CASE("genus from copies") {
  CHECK(genus_from_copies(48, pi / 2) == 7);
  for (int k = 2; k <= 8; ++k) {
    CHECK(genus_from_copies(8 * k, pi / k) == 2 * k - 1);
    CHECK(genus_from_copies(8 * k, pi / 2) == k + 1);
  }
  CHECK_THROWS_AS(genus_from_copies(10, pi / 2), Error);
}

TEST_CASE("median of the isosceles hinge") {
  for (double a : {0.3, 0.9, 1.4}) {
    double g = 1.1;
    Vec3 A = at(a, 0), B = at(a, g);
    Vec3 M = (A + B).normalized();
    CHECK(hinge_median({a, a, g}) == doctest::Approx(sphere_distance(Vec3::UnitZ(), M)).epsilon(1e-12));
  }
}
