#include "minsurf/minsurf.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "minsurf/assembly.hpp"
#include "minsurf/io.hpp"
#include "minsurf/topology.hpp"

using namespace minsurf;

struct ms_plateau {
  PlateauSolution sol;
};

struct ms_conjugate {
  ConjugateResult result;
  bool has_piece = false;
  SurfaceMesh piece;
};

struct ms_shot {
  ShotResult result;
  ShotLog log;
};

struct ms_surface {
  AssembledSurface surface;
  double gamma = 0;
};

namespace {

thread_local std::string g_error;

template <class F>
ms_status guard(F&& f) {
  try {
    f();
    g_error.clear();
    return MS_OK;
  } catch (const Error& e) {
    g_error = e.what();
    return static_cast<ms_status>(static_cast<int>(e.kind()));
  } catch (const std::exception& e) {
    g_error = e.what();
    return MS_ERR_INTERNAL;
  } catch (...) {
    g_error = "unknown exception";
    return MS_ERR_INTERNAL;
  }
}

ms_status null_arg(const char* what) {
  g_error = std::string("null argument: ") + what;
  return MS_ERR_NULL_ARGUMENT;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

ms_surface* wrap(const SurfaceMesh& m) {
  auto s = std::make_unique<ms_surface>();
  s->surface = wrap_surface(m);
  return s.release();
}

}  // namespace

extern "C" {

const char* ms_last_error(void) { return g_error.c_str(); }

const char* ms_status_name(ms_status s) {
  if (s == MS_OK) return "ok";
  if (s == MS_ERR_NULL_ARGUMENT) return "null-argument";
  if (s == MS_ERR_INTERNAL) return "internal";
  if (s >= MS_ERR_INPUT_DOMAIN && s <= MS_ERR_FORMAT) return error_kind_name(static_cast<ErrorKind>(s));
  return "unknown";
}

const char* ms_version(void) { return "1.0.0"; }

void ms_string_free(char* s) { std::free(s); }

ms_status ms_trig_hinge(double a_tilde, double b_tilde, double gamma, ms_triangle* out) {
  if (!out) return null_arg("out");
  return guard([&] {
    TriangleData t = solve_hinge({a_tilde, b_tilde, gamma});
    *out = {t.c, t.alpha_tilde, t.beta_tilde, t.area};
  });
}

ms_status ms_trig_alpha_from_delta(double gamma, double ell_delta, double* alpha) {
  if (!alpha) return null_arg("alpha");
  return guard([&] { *alpha = alpha_from_delta(gamma, ell_delta); });
}

ms_status ms_trig_delta_from_alpha(double gamma, double alpha, double* ell_delta) {
  if (!ell_delta) return null_arg("ell_delta");
  return guard([&] { *ell_delta = delta_from_alpha(gamma, alpha); });
}

ms_status ms_trig_edge23(double a_tilde, double gamma, double* length) {
  if (!length) return null_arg("length");
  return guard([&] { *length = edge23_length(a_tilde, gamma); });
}

ms_status ms_trig_genus(int copies, double gamma, int* genus) {
  if (!genus) return null_arg("genus");
  return guard([&] { *genus = genus_from_copies(copies, gamma); });
}

ms_status ms_plateau_solve(double a_tilde, double b_tilde, double gamma, double h_tilde, int resolution, double tol,
                           ms_plateau** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guard([&] {
    auto p = std::make_unique<ms_plateau>();
    p->sol = solve_graph(ContourSpec{{a_tilde, b_tilde, gamma}, h_tilde}, resolution, tol);
    *out = p.release();
  });
}

ms_status ms_plateau_read(const char* text, ms_plateau** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guard([&] {
    auto p = std::make_unique<ms_plateau>();
    p->sol = read_plateau(text);
    *out = p.release();
  });
}

ms_status ms_plateau_write(const ms_plateau* p, char** text) {
  if (!p) return null_arg("plateau");
  if (!text) return null_arg("text");
  return guard([&] { *text = dup(write_plateau(p->sol)); });
}

ms_status ms_plateau_info_get(const ms_plateau* p, ms_plateau_info* out) {
  if (!p) return null_arg("plateau");
  if (!out) return null_arg("out");
  return guard([&] {
    const PlateauSolution& s = p->sol;
    ms_plateau_info i{};
    i.vertices = s.mesh.num_vertices();
    i.faces = s.mesh.num_faces();
    i.iterations = s.report.iterations;
    i.residual = s.residual;
    i.area = total_area(s.mesh);
    i.delta_theta12 = measure_normal_rotation(s, ContourEdge::E12).delta_theta;
    i.delta_theta34 = measure_normal_rotation(s, ContourEdge::E34).delta_theta;
    i.symmetry_curve_length = -1;
    if (s.spec.hinge.a_tilde == s.spec.hinge.b_tilde) i.symmetry_curve_length = measure_symmetry_curve(s);
    *out = i;
  });
}

void ms_plateau_free(ms_plateau* p) { delete p; }

ms_status ms_conjugate_build(const ms_plateau* p, int piece_resolution, ms_conjugate** out) {
  if (!p) return null_arg("plateau");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guard([&] {
    auto c = std::make_unique<ms_conjugate>();
    c->result = reconstruct_contour(p->sol);
    if (piece_resolution > 0) {
      c->piece = solve_free_boundary(c->result.prism, c->result.contour, piece_resolution).mesh;
      c->has_piece = true;
    }
    *out = c.release();
  });
}

ms_status ms_conjugate_info_get(const ms_conjugate* c, ms_prism_info* out) {
  if (!c) return null_arg("conjugate");
  if (!out) return null_arg("out");
  return guard([&] {
    const PrismData& p = c->result.prism;
    const ConjugateContour& k = c->result.contour;
    GaussBonnetCheck gb = alpha_gauss_bonnet(k, p);
    *out = {p.alpha,          p.beta,         p.gamma,          p.gamma_measured, p.h,           k.closure_residual,
            k.closure_tolerance, k.alpha_tilde, k.beta_tilde, gb.alpha_check,   gb.beta_check};
  });
}

ms_status ms_conjugate_verify(const ms_plateau* p, const ms_conjugate* c, ms_conjugate_report* out) {
  if (!p) return null_arg("plateau");
  if (!c) return null_arg("conjugate");
  if (!out) return null_arg("out");
  if (!c->has_piece) {
    g_error = "conjugate was built without a free boundary piece";
    return MS_ERR_NOT_APPLICABLE;
  }
  return guard([&] {
    ConjugateReport r = verify_conjugate(p->sol, c->result.prism, c->piece);
    *out = {r.area_mismatch, r.nu_distance, r.curvature_mismatch, r.planarity_residual, r.pass() ? 1 : 0};
  });
}

ms_status ms_conjugate_write(const ms_conjugate* c, char** text) {
  if (!c) return null_arg("conjugate");
  if (!text) return null_arg("text");
  return guard([&] { *text = dup(write_conjugate(c->result)); });
}

ms_status ms_conjugate_piece(const ms_conjugate* c, ms_surface** out) {
  if (!c) return null_arg("conjugate");
  if (!out) return null_arg("out");
  *out = nullptr;
  if (!c->has_piece) {
    g_error = "conjugate was built without a free boundary piece";
    return MS_ERR_NOT_APPLICABLE;
  }
  return guard([&] { *out = wrap(c->piece); });
}

void ms_conjugate_free(ms_conjugate* c) { delete c; }

ms_status ms_shoot_symmetric(double gamma, double alpha_target, double a_tilde, int resolution, ms_shot** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guard([&] {
    auto s = std::make_unique<ms_shot>();
    s->result = solve_symmetric(gamma, alpha_target, a_tilde, resolution, &s->log);
    *out = s.release();
  });
}

ms_status ms_shoot_general(int k, int resolution, ms_shot** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guard([&] {
    auto s = std::make_unique<ms_shot>();
    s->result = solve_general(k, resolution, &s->log);
    *out = s.release();
  });
}

ms_status ms_shot_info_get(const ms_shot* s, ms_shot_info* out) {
  if (!s) return null_arg("shot");
  if (!out) return null_arg("out");
  const ShotResult& r = s->result;
  *out = {r.h_tilde,
          r.a_tilde,
          r.b_tilde,
          r.gamma,
          r.prism.alpha,
          r.prism.beta,
          r.prism.h,
          r.diagnostics.closure_residual,
          r.diagnostics.angle_relation_residual,
          r.winding,
          r.trusted ? 1 : 0};
  return MS_OK;
}

ms_status ms_shot_write(const ms_shot* s, char** result_text, char** log_csv) {
  if (!s) return null_arg("shot");
  return guard([&] {
    if (result_text) *result_text = dup(write_shot(s->result));
    if (log_csv) *log_csv = dup(shot_log_csv(s->log));
  });
}

void ms_shot_free(ms_shot* s) { delete s; }

ms_status ms_assemble(const ms_assembly_params* params, ms_surface** out) {
  if (!params) return null_arg("params");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guard([&] {
    TilingSpec spec;
    switch (params->family) {
      case MS_FAMILY_CUBE: spec = make_tiling(Family::Cube); break;
      case MS_FAMILY_BALLOON: spec = make_tiling(Family::Balloon, params->k); break;
      case MS_FAMILY_PK: spec = make_tiling(Family::Pk, params->k); break;
      case MS_FAMILY_ROSENBERG:
        spec = make_tiling(Family::Rosenberg, params->d,
                           params->doubled ? RosenbergMode::Double : RosenbergMode::Single);
        break;
      default: fail(ErrorKind::InputDomain, "unknown family");
    }
    FamilyOptions opt;
    opt.resolution = params->resolution;
    opt.a_tilde = params->a_tilde;
    FamilyBuild b = build_family(spec, opt);
    auto s = std::make_unique<ms_surface>();
    s->surface = std::move(b.surface);
    s->gamma = b.plateau.spec.hinge.gamma;
    *out = s.release();
  });
}

ms_status ms_surface_read(const char* mesh_text, ms_surface** out) {
  if (!mesh_text) return null_arg("mesh_text");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guard([&] { *out = wrap(read_mesh(mesh_text)); });
}

ms_status ms_surface_slice(double t0, int resolution, ms_surface** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guard([&] { *out = wrap(slice_mesh(t0, resolution)); });
}

ms_status ms_surface_cylinder(double ax, double ay, double az, double r, int resolution, ms_surface** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guard([&] { *out = wrap(cylinder_mesh(Vec3(ax, ay, az), r, resolution)); });
}

ms_status ms_surface_helicoid(double pitch, double r, int resolution, ms_surface** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guard([&] { *out = wrap(helicoid_mesh(pitch, r, resolution)); });
}

ms_status ms_surface_info_get(const ms_surface* s, ms_surface_info* out) {
  if (!s) return null_arg("surface");
  if (!out) return null_arg("out");
  const AssembledSurface& a = s->surface;
  *out = {a.mesh.num_vertices(), a.mesh.num_faces(), a.copies,          a.r,
          a.max_seam_gap,        a.snap_displacement, a.wall_angle_defect, s->gamma};
  return MS_OK;
}

ms_status ms_surface_export(const ms_surface* s, ms_export_format format, char** text) {
  if (!s) return null_arg("surface");
  if (!text) return null_arg("text");
  return guard([&] {
    switch (format) {
      case MS_EXPORT_MESH: *text = dup(write_mesh(s->surface.mesh)); break;
      case MS_EXPORT_CSV: *text = dup(write_mesh_csv(s->surface.mesh)); break;
      case MS_EXPORT_OBJ: *text = dup(write_obj(s->surface.mesh)); break;
      case MS_EXPORT_ASSEMBLY: *text = dup(write_assembly(s->surface)); break;
      default: fail(ErrorKind::InputDomain, "unknown export format");
    }
  });
}

ms_status ms_surface_genus(const ms_surface* s, double gamma, ms_genus_info* out) {
  if (!s) return null_arg("surface");
  if (!out) return null_arg("out");
  return guard([&] {
    GenusConsistency g = genus_consistency(s->surface, gamma);
    *out = {g.chi, g.orientable, g.formula_applies, g.expected_chi, g.genus, g.match};
  });
}

ms_status ms_surface_topology(const ms_surface* s, int fiber_samples, ms_topology* out, char** report_text) {
  if (!s) return null_arg("surface");
  if (!out) return null_arg("out");
  return guard([&] {
    TopologyReport r = topology_report(s->surface.mesh, fiber_samples);
    const GeodesicCompanionReport& gc = r.companions;
    ms_topology t{};
    t.chi = r.chi;
    t.orientable = r.orientable;
    t.genus = r.genus;
    t.separates = r.separates;
    t.ph_applicable = r.ph.applicable;
    t.ph_sum = r.ph.sum;
    t.ph_zero_count = static_cast<int>(r.ph.sites.size());
    t.companions_pass = gc.pass();
    t.companion_fibers = static_cast<int>(gc.vertical_fibers.size());
    t.companion_circles = static_cast<int>(gc.horizontal_circles.size());
    *out = t;
    if (report_text) *report_text = dup(topology_report_text(r));
  });
}

ms_status ms_surface_intersects(const ms_surface* a, const ms_surface* b, int* intersects, double* min_distance) {
  if (!a || !b) return null_arg("surface");
  if (!intersects) return null_arg("intersects");
  return guard([&] {
    IntersectionResult r = intersection_check(a->surface.mesh, b->surface.mesh);
    *intersects = r.intersects;
    if (min_distance) *min_distance = r.min_vertex_distance;
  });
}

void ms_surface_free(ms_surface* s) { delete s; }

}  // extern "C"
