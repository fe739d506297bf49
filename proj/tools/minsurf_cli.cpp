#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "minsurf/minsurf.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheck = 2;
constexpr int kExitSolver = 3;
constexpr int kExitUsage = 4;

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(ms_status s) {
  switch (s) {
    case MS_OK: return kExitPass;
    case MS_ERR_NO_SOLUTION:
    case MS_ERR_SOLVER_FAILURE:
    case MS_ERR_INDETERMINATE:
    case MS_ERR_NO_ROOT_CERTIFICATE:
    case MS_ERR_PRECISION_LIMIT:
    case MS_ERR_MESH_QUALITY:
    case MS_ERR_DEGENERATE_HEIGHT:
    case MS_ERR_INTERNAL: return kExitSolver;
    case MS_ERR_INPUT_DOMAIN:
    case MS_ERR_DEGENERATE_TRIANGLE:
    case MS_ERR_INVALID_DOMAIN:
    case MS_ERR_NOT_APPLICABLE:
    case MS_ERR_FORMAT:
    case MS_ERR_NULL_ARGUMENT: return kExitUsage;
    default: return kExitCheck;
  }
}

void check(ms_status s) {
  if (s != MS_OK)
    throw Failure{exit_code_for(s), std::string(ms_status_name(s)) + ": " + ms_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  ms_string_free(s);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitUsage, "cannot open '" + path + "'"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Config {
  std::string out_dir;
  int level = 3;
  int n = 0;

  int resolution() const { return n > 0 ? n : 8 << (level - 1); }

  std::string path(const std::string& name) const {
    fs::create_directories(out_dir);
    return (fs::path(out_dir) / name).string();
  }

  void save(const std::string& name, const std::string& text) const {
    std::string p = path(name);
    std::ofstream out(p, std::ios::binary);
    if (!out || !(out << text)) throw Failure{kExitUsage, "cannot write '" + p + "'"};
    std::printf("wrote %s\n", p.c_str());
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void kv(const char* key, double v) { std::printf("%s %s\n", key, fmt(v).c_str()); }
void kv(const char* key, int v) { std::printf("%s %d\n", key, v); }
void kv(const char* key, const char* v) { std::printf("%s %s\n", key, v); }

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
  T** out() { return &p; }
};

using Plateau = Handle<ms_plateau, ms_plateau_free>;
using Conjugate = Handle<ms_conjugate, ms_conjugate_free>;
using Shot = Handle<ms_shot, ms_shot_free>;
using Surface = Handle<ms_surface, ms_surface_free>;

// Checks every topology predicate that applies to a closed surface.
bool report_topology(const ms_surface* s, int fibers, ms_topology& t, std::string& text) {
  char* rep = nullptr;
  check(ms_surface_topology(s, fibers, &t, &rep));
  text = take(rep);
  bool ok = true;
  if (t.ph_applicable && t.ph_sum != t.chi) ok = false;
  if (t.ph_applicable && t.separates != t.orientable) ok = false;
  if (t.orientable && !t.companions_pass) ok = false;
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compact minimal surfaces in S^2 x S^1 from conjugate Plateau constructions"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  const char* env = std::getenv("MINSURF_OUTPUT_DIR");
  cfg.out_dir = env && *env ? env : ".";
  app.add_option("--out-dir", cfg.out_dir, "Output directory (default $MINSURF_OUTPUT_DIR or .)");

  auto add_res = [&](CLI::App* sub) {
    sub->add_option("--res", cfg.level, "Resolution level L (n = 8 * 2^(L-1))")->check(CLI::Range(1, 6));
    sub->add_option("--n", cfg.n, "Raw grid resolution, overrides --res")->check(CLI::PositiveNumber);
  };

  // trig
  auto* trig = app.add_subcommand("trig", "Spherical trigonometry helpers");
  trig->require_subcommand(1);
  double ta = 0, tb = 0, tg = 0, tdelta = 0, talpha = 0;
  int tm = 0;
  auto* hinge = trig->add_subcommand("hinge", "Solve the hinge triangle");
  hinge->add_option("--a", ta)->required();
  hinge->add_option("--b", tb)->required();
  hinge->add_option("--gamma", tg)->required();
  auto* afd = trig->add_subcommand("alpha-from-delta", "Prism angle from the symmetry curve length");
  afd->add_option("--gamma", tg)->required();
  afd->add_option("--delta", tdelta)->required();
  auto* dfa = trig->add_subcommand("delta-from-alpha", "Symmetry curve length from the prism angle");
  dfa->add_option("--gamma", tg)->required();
  dfa->add_option("--alpha", talpha)->required();
  auto* e23 = trig->add_subcommand("edge23", "Length of the third hinge side");
  e23->add_option("--a", ta)->required();
  e23->add_option("--gamma", tg)->required();
  auto* gen = trig->add_subcommand("genus", "Genus from the copy count");
  gen->add_option("--m", tm)->required();
  gen->add_option("--gamma", tg)->required();

  // plateau
  auto* plateau = app.add_subcommand("plateau", "Solve the Plateau problem over the geodesic pentagon");
  double pa = 0, pb = 0, pg = 0, ph = 0, ptol = 1e-9;
  std::string pout = "solution.plateau";
  plateau->set_help_flag("--help", "Print this help message and exit");
  plateau->add_option("--a", pa)->required();
  plateau->add_option("--b", pb)->required();
  plateau->add_option("--gamma", pg)->required();
  plateau->add_option("--h", ph)->required();
  plateau->add_option("--tol", ptol)->check(CLI::PositiveNumber);
  plateau->add_option("--output", pout, "Solution file name");
  add_res(plateau);

  // conjugate
  auto* conjugate = app.add_subcommand("conjugate", "Reconstruct the conjugate contour and free boundary piece");
  std::string csol;
  std::string cprefix = "conjugate";
  bool cno_piece = false;
  conjugate->add_option("--solution", csol, "PLATEAU file")->required()->check(CLI::ExistingFile);
  conjugate->add_option("--prefix", cprefix, "Output file prefix");
  conjugate->add_flag("--no-piece", cno_piece, "Skip the free boundary solve");
  add_res(conjugate);

  // shoot
  auto* shoot = app.add_subcommand("shoot", "Find the contour height that produces the target prism");
  shoot->require_subcommand(1);
  double sg = std::numbers::pi / 2, salpha = std::numbers::pi / 3, sa = 0.6;
  int sk = 3;
  std::string sprefix = "shot";
  auto* ssym = shoot->add_subcommand("symmetric", "Symmetric hinge, one parameter");
  ssym->add_option("--gamma", sg);
  ssym->add_option("--alpha", salpha);
  ssym->add_option("--a", sa);
  add_res(ssym);
  auto* sgen = shoot->add_subcommand("general", "Two parameter search with a winding certificate");
  sgen->add_option("--k", sk)->check(CLI::Range(3, 64));
  add_res(sgen);
  for (auto* sub : {ssym, sgen}) sub->add_option("--prefix", sprefix, "Output file prefix");

  // assemble
  auto* assemble = app.add_subcommand("assemble", "Build a compact surface from a family");
  std::string family = "cube", mode = "single";
  int ak = 2, ad = 2, afibers = 64;
  double aa = 0;
  std::string aprefix;
  assemble->add_option("--family", family)->check(CLI::IsMember({"cube", "balloon", "pk", "rosenberg"}));
  assemble->add_option("--k", ak, "Balloon or pk parameter");
  assemble->add_option("--d", ad, "Rosenberg parameter");
  assemble->add_option("--mode", mode, "Rosenberg quotient")->check(CLI::IsMember({"single", "double"}));
  assemble->add_option("--a", aa, "Hinge side for symmetric families (0 = default)");
  assemble->add_option("--fibers", afibers, "Fiber samples for the separation test");
  assemble->add_option("--prefix", aprefix, "Output file prefix (default: family name)");
  add_res(assemble);

  // verify
  auto* verify = app.add_subcommand("verify", "Topology report for a closed mesh");
  std::string vmesh, vagainst;
  double vgamma = 0;
  int vfibers = 64;
  verify->add_option("--mesh", vmesh, "MESH file")->required()->check(CLI::ExistingFile);
  verify->add_option("--against", vagainst, "Second MESH file for the intersection test")->check(CLI::ExistingFile);
  verify->add_option("--gamma", vgamma, "Hinge angle for the genus formula");
  verify->add_option("--fibers", vfibers);

  // export
  auto* exp = app.add_subcommand("export", "Convert a MESH file");
  std::string emesh, eformat = "obj", eout;
  exp->add_option("--mesh", emesh, "MESH file")->required()->check(CLI::ExistingFile);
  exp->add_option("--format", eformat)->check(CLI::IsMember({"obj", "csv"}));
  exp->add_option("--output", eout, "Output file name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*trig) {
      if (*hinge) {
        ms_triangle t;
        check(ms_trig_hinge(ta, tb, tg, &t));
        kv("c", t.c);
        kv("alpha_tilde", t.alpha_tilde);
        kv("beta_tilde", t.beta_tilde);
        kv("area", t.area);
      } else if (*afd) {
        double a;
        check(ms_trig_alpha_from_delta(tg, tdelta, &a));
        kv("alpha", a);
      } else if (*dfa) {
        double d;
        check(ms_trig_delta_from_alpha(tg, talpha, &d));
        kv("delta", d);
      } else if (*e23) {
        double l;
        check(ms_trig_edge23(ta, tg, &l));
        kv("edge23", l);
      } else if (*gen) {
        int g;
        check(ms_trig_genus(tm, tg, &g));
        kv("genus", g);
      }
      return kExitPass;
    }

    if (*plateau) {
      Plateau p;
      check(ms_plateau_solve(pa, pb, pg, ph, cfg.resolution(), ptol, p.out()));
      ms_plateau_info i;
      check(ms_plateau_info_get(p.p, &i));
      char* text = nullptr;
      check(ms_plateau_write(p.p, &text));
      cfg.save(pout, take(text));
      kv("resolution", cfg.resolution());
      kv("vertices", i.vertices);
      kv("faces", i.faces);
      kv("iterations", i.iterations);
      kv("residual", i.residual);
      kv("area", i.area);
      kv("delta_theta12", i.delta_theta12);
      kv("delta_theta34", i.delta_theta34);
      if (i.symmetry_curve_length >= 0) kv("symmetry_curve_length", i.symmetry_curve_length);
      return kExitPass;
    }

    if (*conjugate) {
      Plateau p;
      check(ms_plateau_read(slurp(csol).c_str(), p.out()));
      Conjugate c;
      check(ms_conjugate_build(p.p, cno_piece ? 0 : cfg.resolution(), c.out()));
      char* text = nullptr;
      check(ms_conjugate_write(c.p, &text));
      cfg.save(cprefix + ".conjugate", take(text));
      ms_prism_info pi;
      check(ms_conjugate_info_get(c.p, &pi));
      kv("alpha", pi.alpha);
      kv("beta", pi.beta);
      kv("gamma", pi.gamma);
      kv("gamma_measured", pi.gamma_measured);
      kv("h", pi.h);
      kv("closure_residual", pi.closure_residual);
      kv("closure_tolerance", pi.closure_tolerance);
      kv("alpha_gauss_bonnet", pi.alpha_gauss_bonnet);
      kv("beta_gauss_bonnet", pi.beta_gauss_bonnet);
      if (cno_piece) return kExitPass;
      Surface piece;
      check(ms_conjugate_piece(c.p, piece.out()));
      check(ms_surface_export(piece.p, MS_EXPORT_MESH, &text));
      cfg.save(cprefix + ".piece.mesh", take(text));
      ms_conjugate_report r;
      check(ms_conjugate_verify(p.p, c.p, &r));
      kv("area_mismatch", r.area_mismatch);
      kv("nu_distance", r.nu_distance);
      kv("curvature_mismatch", r.curvature_mismatch);
      kv("planarity_residual", r.planarity_residual);
      kv("verified", r.pass ? "true" : "false");
      return r.pass ? kExitPass : kExitCheck;
    }

    if (*shoot) {
      Shot s;
      if (*ssym)
        check(ms_shoot_symmetric(sg, salpha, sa, cfg.resolution(), s.out()));
      else
        check(ms_shoot_general(sk, cfg.resolution(), s.out()));
      char *res = nullptr, *log = nullptr;
      check(ms_shot_write(s.p, &res, &log));
      std::string r = take(res);
      cfg.save(sprefix + ".shot", r);
      cfg.save(sprefix + ".log.csv", take(log));
      std::fputs(r.c_str(), stdout);
      return kExitPass;
    }

    if (*assemble) {
      ms_assembly_params prm{};
      prm.family = family == "cube"      ? MS_FAMILY_CUBE
                   : family == "balloon" ? MS_FAMILY_BALLOON
                   : family == "pk"      ? MS_FAMILY_PK
                                         : MS_FAMILY_ROSENBERG;
      prm.k = family == "pk" && !assemble->count("--k") ? 3 : ak;
      prm.d = ad;
      prm.doubled = mode == "double";
      prm.resolution = cfg.resolution();
      prm.a_tilde = aa;
      Surface s;
      check(ms_assemble(&prm, s.out()));
      std::string prefix = aprefix.empty() ? family : aprefix;
      char* text = nullptr;
      check(ms_surface_export(s.p, MS_EXPORT_MESH, &text));
      cfg.save(prefix + ".mesh", take(text));
      check(ms_surface_export(s.p, MS_EXPORT_OBJ, &text));
      cfg.save(prefix + ".obj", take(text));
      check(ms_surface_export(s.p, MS_EXPORT_ASSEMBLY, &text));
      cfg.save(prefix + ".assembly", take(text));
      ms_surface_info info;
      check(ms_surface_info_get(s.p, &info));
      ms_genus_info g;
      check(ms_surface_genus(s.p, info.gamma, &g));
      ms_topology t;
      std::string report;
      bool ok = report_topology(s.p, afibers, t, report);
      cfg.save(prefix + ".topology", report);
      kv("copies", info.copies);
      kv("r", info.r);
      kv("vertices", info.vertices);
      kv("faces", info.faces);
      kv("chi", t.chi);
      kv("orientable", t.orientable ? "true" : "false");
      kv("genus", t.genus);
      kv("separates", t.separates ? "true" : "false");
      kv("ph_sum", t.ph_sum);
      kv("ph_zero_count", t.ph_zero_count);
      kv("genus_formula", g.formula_applies ? "match" : "not-applicable");
      kv("checks", ok ? "pass" : "fail");
      return ok ? kExitPass : kExitCheck;
    }

    if (*verify) {
      Surface s;
      check(ms_surface_read(slurp(vmesh).c_str(), s.out()));
      bool ok = true;
      if (vgamma > 0) {
        ms_genus_info g;
        check(ms_surface_genus(s.p, vgamma, &g));
      }
      ms_topology t;
      std::string report;
      ok = report_topology(s.p, vfibers, t, report) && ok;
      std::fputs(report.c_str(), stdout);
      if (!vagainst.empty()) {
        Surface other;
        check(ms_surface_read(slurp(vagainst).c_str(), other.out()));
        int hit = 0;
        double dist = 0;
        check(ms_surface_intersects(s.p, other.p, &hit, &dist));
        kv("intersects", hit ? "true" : "false");
        kv("min_distance", dist);
      }
      return ok ? kExitPass : kExitCheck;
    }

    if (*exp) {
      Surface s;
      check(ms_surface_read(slurp(emesh).c_str(), s.out()));
      char* text = nullptr;
      check(ms_surface_export(s.p, eformat == "obj" ? MS_EXPORT_OBJ : MS_EXPORT_CSV, &text));
      std::string name = eout.empty() ? fs::path(emesh).stem().string() + "." + eformat : eout;
      cfg.save(name, take(text));
      return kExitPass;
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    if (f.code != kExitUsage) {
      try {
        std::ofstream(cfg.path("error.txt")) << "exit " << f.code << '\n' << f.message << '\n';
      } catch (...) {
      }
    }
    return f.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  }
  return kExitPass;
}
