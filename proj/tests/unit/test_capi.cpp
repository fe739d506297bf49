#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "doctest.h"
#include "minsurf/minsurf.h"

using std::numbers::pi;

TEST_CASE("status names and errors") {
  CHECK(std::string(ms_status_name(MS_OK)) == "ok");
  CHECK(std::strlen(ms_version()) > 0);
  ms_triangle t;
  CHECK(ms_trig_hinge(2.0, 0.5, 1.0, &t) == MS_ERR_INPUT_DOMAIN);
  CHECK(std::strlen(ms_last_error()) > 0);
  CHECK(ms_trig_hinge(0.5, 0.5, 1.0, nullptr) == MS_ERR_NULL_ARGUMENT);
}

TEST_CASE("trigonometry") {
  ms_triangle t;
  REQUIRE(ms_trig_hinge(pi / 2, pi / 2, pi / 2, &t) == MS_OK);
  CHECK(t.c == doctest::Approx(pi / 2));
  CHECK(t.alpha_tilde == doctest::Approx(pi / 2));
  CHECK(t.area == doctest::Approx(pi / 2));
  double a = 0, l = 0;
  REQUIRE(ms_trig_alpha_from_delta(pi / 2, 0.6, &a) == MS_OK);
  REQUIRE(ms_trig_delta_from_alpha(pi / 2, a, &l) == MS_OK);
  CHECK(l == doctest::Approx(0.6));
  int g = 0;
  REQUIRE(ms_trig_genus(48, pi / 2, &g) == MS_OK);
  CHECK(g == 7);
  CHECK(ms_trig_genus(7, 1.0, &g) == MS_ERR_INCONSISTENT_CONFIGURATION);
}

TEST_CASE("plateau and conjugate handles") {
  ms_plateau* p = nullptr;
  REQUIRE(ms_plateau_solve(0.6, 0.6, pi / 2, 0.5, 16, 1e-9, &p) == MS_OK);
  ms_plateau_info pi_;
  REQUIRE(ms_plateau_info_get(p, &pi_) == MS_OK);
  CHECK(pi_.residual < 1e-9);
  CHECK(pi_.symmetry_curve_length > 0.5);
  CHECK(pi_.delta_theta12 == doctest::Approx(-pi_.delta_theta34));

  char* text = nullptr;
  REQUIRE(ms_plateau_write(p, &text) == MS_OK);
  ms_plateau* q = nullptr;
  REQUIRE(ms_plateau_read(text, &q) == MS_OK);
  ms_string_free(text);
  ms_plateau_info qi;
  REQUIRE(ms_plateau_info_get(q, &qi) == MS_OK);
  CHECK(qi.vertices == pi_.vertices);
  CHECK(qi.symmetry_curve_length == pi_.symmetry_curve_length);
  CHECK(ms_plateau_read("nonsense", &q) == MS_ERR_FORMAT);

  ms_conjugate* c = nullptr;
  REQUIRE(ms_conjugate_build(p, 16, &c) == MS_OK);
  ms_prism_info info;
  REQUIRE(ms_conjugate_info_get(c, &info) == MS_OK);
  CHECK(info.alpha == doctest::Approx(info.beta));
  CHECK(std::abs(info.alpha_gauss_bonnet - info.alpha) < 5 * info.closure_tolerance);
  ms_conjugate_report rep;
  REQUIRE(ms_conjugate_verify(p, c, &rep) == MS_OK);
  CHECK(rep.pass == 1);
  ms_surface* piece = nullptr;
  REQUIRE(ms_conjugate_piece(c, &piece) == MS_OK);
  ms_surface_info si;
  REQUIRE(ms_surface_info_get(piece, &si) == MS_OK);
  CHECK(si.faces > 0);
  ms_surface_free(piece);

  ms_conjugate* bare = nullptr;
  REQUIRE(ms_conjugate_build(p, 0, &bare) == MS_OK);
  CHECK(ms_conjugate_piece(bare, &piece) != MS_OK);
  ms_conjugate_free(bare);
  ms_conjugate_free(c);
  ms_plateau_free(q);
  ms_plateau_free(p);
}

TEST_CASE("shooting handle") {
  ms_shot* s = nullptr;
  REQUIRE(ms_shoot_symmetric(pi / 2, pi / 3, 0.6, 8, &s) == MS_OK);
  ms_shot_info i;
  REQUIRE(ms_shot_info_get(s, &i) == MS_OK);
  CHECK(std::abs(i.alpha - pi / 3) < 1e-3);
  CHECK(i.trusted == 1);
  char* res = nullptr;
  char* log = nullptr;
  REQUIRE(ms_shot_write(s, &res, &log) == MS_OK);
  CHECK(std::string(res).rfind("SHOT v1", 0) == 0);
  CHECK(std::string(log).rfind("SHOTLOG v1", 0) == 0);
  ms_string_free(res);
  ms_string_free(log);
  ms_shot_free(s);
  CHECK(ms_shoot_general(2, 8, &s) == MS_ERR_INPUT_DOMAIN);
}

TEST_CASE("assembly and surface queries") {
  ms_assembly_params params{MS_FAMILY_ROSENBERG, 0, 2, 1, 8, 0.0};
  ms_surface* s = nullptr;
  REQUIRE(ms_assemble(&params, &s) == MS_OK);
  ms_surface_info info;
  REQUIRE(ms_surface_info_get(s, &info) == MS_OK);
  CHECK(info.copies == 16);
  ms_topology t;
  char* report = nullptr;
  REQUIRE(ms_surface_topology(s, 64, &t, &report) == MS_OK);
  CHECK(t.chi == -4);
  CHECK(t.orientable == 1);
  CHECK(t.separates == 1);
  CHECK(t.ph_sum == t.chi);
  CHECK(std::string(report).rfind("TOPOLOGY v1", 0) == 0);
  ms_string_free(report);
  ms_genus_info gi;
  REQUIRE(ms_surface_genus(s, pi / 2, &gi) == MS_OK);
  CHECK(gi.genus == 3);

  char* mesh = nullptr;
  REQUIRE(ms_surface_export(s, MS_EXPORT_MESH, &mesh) == MS_OK);
  ms_surface* back = nullptr;
  REQUIRE(ms_surface_read(mesh, &back) == MS_OK);
  ms_string_free(mesh);
  ms_surface_info bi;
  REQUIRE(ms_surface_info_get(back, &bi) == MS_OK);
  CHECK(bi.vertices == info.vertices);
  CHECK(bi.faces == info.faces);
  ms_surface_free(back);

  for (ms_export_format f : {MS_EXPORT_CSV, MS_EXPORT_OBJ, MS_EXPORT_ASSEMBLY}) {
    char* text = nullptr;
    CHECK(ms_surface_export(s, f, &text) == MS_OK);
    CHECK(text != nullptr);
    ms_string_free(text);
  }
  ms_surface_free(s);

  ms_assembly_params bad{MS_FAMILY_BALLOON, 1, 0, 0, 8, 0.0};
  CHECK(ms_assemble(&bad, &s) == MS_ERR_INPUT_DOMAIN);
}

TEST_CASE("model surfaces") {
  ms_surface* a = nullptr;
  ms_surface* b = nullptr;
  ms_surface* c = nullptr;
  REQUIRE(ms_surface_cylinder(0, 0, 1, 1.0, 4, &a) == MS_OK);
  REQUIRE(ms_surface_cylinder(1, 0, 0, 1.0, 4, &b) == MS_OK);
  REQUIRE(ms_surface_helicoid(2 * pi * 0.5 * 2, 0.5, 4, &c) == MS_OK);
  int hit = 0;
  double dist = 0;
  REQUIRE(ms_surface_intersects(a, b, &hit, &dist) == MS_OK);
  CHECK(hit == 1);
  ms_topology t;
  REQUIRE(ms_surface_topology(c, 64, &t, nullptr) == MS_OK);
  CHECK(t.orientable == 0);
  CHECK(t.genus == 2);
  CHECK(ms_surface_intersects(a, c, &hit, &dist) == MS_ERR_INPUT_DOMAIN);
  ms_surface* sl = nullptr;
  REQUIRE(ms_surface_slice(0.2, 2, &sl) == MS_OK);
  ms_surface_free(sl);
  ms_surface_free(a);
  ms_surface_free(b);
  ms_surface_free(c);
  ms_surface_free(nullptr);
}
