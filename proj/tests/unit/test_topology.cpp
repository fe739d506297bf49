#include <cmath>
#include <numbers>

#include "doctest.h"
#include "json.hpp"
#include "minsurf/surfaces.hpp"
#include "minsurf/topology.hpp"

using namespace minsurf;
using std::numbers::pi;

TEST_CASE("euler characteristic") {
  CHECK(euler_characteristic(slice_mesh(0, 2)) == 2);
  CHECK(euler_characteristic(cylinder_mesh(Vec3::UnitY(), 0.7, 3)) == 0);
  SurfaceMesh bad;
  bad.vertices = {{Vec3(1, 0, 0), 0}, {Vec3(0, 1, 0), 0}, {Vec3(0, 0, 1), 0}, {Vec3(0, 0, 1), 1}, {Vec3(0, 0, 1), 2}};
  bad.faces = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}};
  CHECK_THROWS_AS(euler_characteristic(bad), Error);
}

TEST_CASE("orientability by component") {
  SurfaceMesh a = cylinder_mesh(Vec3::UnitZ(), 1, 3);
  SurfaceMesh b = helicoid_mesh(2 * pi, 1, 3);
  ComponentOrientability ca = orientability_by_component(a);
  CHECK(ca.components == 1);
  CHECK(ca.orientable[0]);
  SurfaceMesh k = helicoid_mesh(2 * pi, 0.5, 3);
  CHECK_FALSE(orientability_by_component(k).orientable[0]);

  SurfaceMesh both = a;
  int off = both.num_vertices();
  for (const auto& v : b.vertices) both.vertices.push_back(v);
  for (const auto& f : b.faces) both.faces.push_back({f[0] + off, f[1] + off, f[2] + off});
  both.boundary_tags.assign(both.num_vertices(), BoundaryLabel::None);
  CHECK(orientability_by_component(both).components == 2);
  CHECK(orientability(both));
}

TEST_CASE("separation parity") {
  SeparationDetail d;
  CHECK(separation_parity(cylinder_mesh(Vec3::UnitZ(), 1, 6), 64, &d));
  CHECK(d.odd_fibers == 0);
  CHECK_FALSE(d.slice_excluded);
  CHECK(separation_parity(helicoid_mesh(2 * pi, 1, 6)));
  CHECK_FALSE(separation_parity(helicoid_mesh(2 * pi, 0.5, 6), 64, &d));
  CHECK(d.odd_fibers > 0);
  separation_parity(slice_mesh(0.1, 4), 64, &d);
  CHECK(d.slice_excluded);
}

TEST_CASE("orientable iff separating on the model surfaces") {
  for (const SurfaceMesh& m : {cylinder_mesh(Vec3(1, 1, 0), 1.3, 6), helicoid_mesh(2 * pi, 1, 6),
                               helicoid_mesh(2 * pi, 0.5, 6), helicoid_mesh(4 * pi / 3, 2.0 / 3, 6)})
    CHECK(separation_parity(m) == orientability(m));
}

TEST_CASE("Poincare-Hopf on vertical surfaces") {
  for (const SurfaceMesh& m : {cylinder_mesh(Vec3::UnitZ(), 1, 6), helicoid_mesh(2 * pi, 1, 6)}) {
    PoincareHopfReport r = poincare_hopf_audit(m);
    CHECK(r.applicable);
    CHECK(r.sites.empty());
    CHECK(r.sum == euler_characteristic(m));
  }
  CHECK_FALSE(poincare_hopf_audit(slice_mesh(0, 4)).applicable);
}

TEST_CASE("intersections") {
  CHECK_FALSE(intersection_check(slice_mesh(0.2, 4), slice_mesh(0.5, 4)).intersects);
  CHECK(intersection_check(cylinder_mesh(Vec3::UnitZ(), 1, 4), cylinder_mesh(Vec3::UnitX(), 1, 4)).intersects);
  CHECK(intersection_check(helicoid_mesh(2 * pi, 1, 4), cylinder_mesh(Vec3::UnitX(), 1, 4)).intersects);
  CHECK_THROWS_AS(intersection_check(slice_mesh(0.2, 4), cylinder_mesh(Vec3::UnitX(), 1, 4)), Error);
}

TEST_CASE("geodesic companions") {
  GeodesicCompanionReport c = geodesic_companions(cylinder_mesh(Vec3::UnitZ(), 1, 8));
  CHECK(c.vertical_fibers.size() > 2);
  CHECK(c.horizontal_circles.size() > 2);
  CHECK(c.pass());
  GeodesicCompanionReport h = geodesic_companions(helicoid_mesh(2 * pi, 1, 8));
  CHECK(h.vertical_fibers.size() == 2);
  CHECK((h.vertical_fibers[0] + h.vertical_fibers[1]).norm() < 1e-9);
  CHECK(h.pass());
  CHECK(geodesic_companions(slice_mesh(0, 4)).vertical_fibers.empty());
}

TEST_CASE("report text") {
  TopologyReport r = topology_report(helicoid_mesh(4 * pi * 0.5, 0.5, 6));
  CHECK(r.chi == 0);
  CHECK_FALSE(r.orientable);
  CHECK(r.genus == 2);
  std::string text = topology_report_text(r);
  REQUIRE(text.rfind("TOPOLOGY v1\n", 0) == 0);
  auto j = nlohmann::json::parse(text.substr(12));
  CHECK(j["chi"] == 0);
  CHECK(j["orientable"] == false);
  CHECK(j["genus_kind"] == "non-orientable");
  CHECK(j["poincare_hopf"]["sum"] == 0);
  CHECK(j.contains("geodesic_companions"));
}
