#include "minsurf/plateau.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace minsurf {

using std::numbers::pi;

int edge_code(ContourEdge e) {
  static const int codes[] = {12, 23, 34, 45, 51};
  return codes[static_cast<int>(e)];
}

ContourEdge edge_from_code(int code) {
  switch (code) {
    case 12: return ContourEdge::E12;
    case 23: return ContourEdge::E23;
    case 34: return ContourEdge::E34;
    case 45: return ContourEdge::E45;
    case 51: return ContourEdge::E51;
  }
  fail(ErrorKind::InputDomain, "unknown contour edge " + std::to_string(code));
}

bool is_vertical(ContourEdge e) { return e == ContourEdge::E12 || e == ContourEdge::E34; }

static double orient(const Vec3& a, const Vec3& b, const Vec3& c) { return a.dot(b.cross(c)); }

PlateauGrid build_plateau_grid(const GeodesicPolygon& poly, int resolution, SurfaceMesh& mesh,
                               const std::vector<double>& eta) {
  if (resolution < 2) fail(ErrorKind::InputDomain, "plateau resolution must be >= 2");
  PlateauGrid g;
  g.J = resolution;
  g.K = resolution;
  g.P1 = poly.P1;
  g.P4 = poly.P4;
  g.P5 = poly.P5;
  g.M = (poly.P1 + poly.P4).normalized();

  const double first = 1.0 / g.K;
  g.xi.push_back(0.0);
  for (int r = kGradedRings; r >= 1; --r) g.xi.push_back(first * std::pow(0.5, r));
  for (int k = 1; k <= g.K; ++k) g.xi.push_back(double(k) / g.K);
  if (eta.empty()) {
    for (int j = 0; j <= g.J; ++j) g.eta.push_back(double(j) / g.J);
  } else {
    if (static_cast<int>(eta.size()) != g.J + 1 || eta.front() != 0.0 || eta.back() != 1.0)
      fail(ErrorKind::InputDomain, "angular parameters must run from 0 to 1 with resolution + 1 entries");
    for (int j = 0; j < g.J; ++j)
      if (!(eta[j + 1] > eta[j])) fail(ErrorKind::InputDomain, "angular parameters must increase");
    g.eta = eta;
  }
  const int kt = g.kt();

  mesh = SurfaceMesh();
  auto add = [&](const Vec3& p, BoundaryLabel l) {
    mesh.vertices.emplace_back(SpherePoint(p), 0.0);
    mesh.boundary_tags.push_back(l);
    return mesh.num_vertices() - 1;
  };
  using L = BoundaryLabel;

  auto point = [&](const Vec3& apex, double xi, double eta) {
    Vec3 X = apex + xi * ((1 - eta) * (g.M - apex) + eta * (g.P5 - apex));
    return X;
  };

  g.A.assign(kt + 1, std::vector<int>(g.J + 1, -1));
  g.B.assign(kt + 1, std::vector<int>(g.J + 1, -1));
  for (int k = 0; k <= kt; ++k)
    for (int j = 0; j <= g.J; ++j) {
      L l = L::None;
      if (k == 0) l = j == 0 ? L::Corner2 : (j == g.J ? L::Corner1 : L::Edge12);
      else if (k == kt && j == g.J) l = L::Corner5;
      else if (j == 0) l = L::Edge23;
      else if (j == g.J) l = L::Edge51;
      g.A[k][j] = add(k == 0 ? g.P1 : point(g.P1, g.xi[k], g.eta[j]), l);
    }
  for (int k = 0; k <= kt; ++k)
    for (int j = 0; j <= g.J; ++j) {
      if (k == kt) {
        g.B[k][j] = g.A[k][j];
        continue;
      }
      L l = L::None;
      if (k == 0) l = j == 0 ? L::Corner3 : (j == g.J ? L::Corner4 : L::Edge34);
      else if (j == 0) l = L::Edge23;
      else if (j == g.J) l = L::Edge45;
      g.B[k][j] = add(k == 0 ? g.P4 : point(g.P4, g.xi[k], g.eta[j]), l);
    }

  for (const auto* grid : {&g.A, &g.B}) {
    const auto& G = *grid;
    const Vec3& a = mesh.vertices[G[kt - 1][0]].base.coords();
    const Vec3& b = mesh.vertices[G[kt][0]].base.coords();
    const Vec3& c = mesh.vertices[G[kt][1]].base.coords();
    bool flip = orient(a, b, c) < 0;
    for (int k = 0; k < kt; ++k)
      for (int j = 0; j < g.J; ++j) {
        int v00 = G[k][j], v10 = G[k + 1][j], v11 = G[k + 1][j + 1], v01 = G[k][j + 1];
        // Apex strip: diagonal from ring j to fan j+1.
        Face f1{v00, v10, v11}, f2{v00, v11, v01};
        if (k == 0) {
          f1 = {v00, v10, v01};
          f2 = {v10, v11, v01};
        }
        if (flip) {
          std::swap(f1[1], f1[2]);
          std::swap(f2[1], f2[2]);
        }
        mesh.faces.push_back(f1);
        mesh.faces.push_back(f2);
      }
  }
  return g;
}

static bool height_fixed(BoundaryLabel l) {
  return l != BoundaryLabel::None && l != BoundaryLabel::Edge12 && l != BoundaryLabel::Edge34;
}

static double boundary_height(BoundaryLabel l, double h) {
  using L = BoundaryLabel;
  switch (l) {
    case L::Edge23:
    case L::Corner2:
    case L::Corner3: return 0.0;
    default: return h;
  }
}

// One-sided derivative at x0 from samples at arc distances 0 < d1 < d2.
static double one_sided_derivative(double u0, double u1, double u2, double d1, double d2) {
  return -(d1 + d2) / (d1 * d2) * u0 + d2 / (d1 * (d2 - d1)) * u1 - d1 / (d2 * (d2 - d1)) * u2;
}

namespace {

struct SideInfo {
  const std::vector<std::vector<int>>* grid;
  int row, step;  // row j on the boundary, step toward the interior
  Vec3 inward_pole;
};

}  // namespace

static TraceSample horizontal_sample(const PlateauSolution& sol, const SideInfo& side, int k, const Vec3& origin,
                                     double sign_at_apex) {
  const auto& G = *side.grid;
  const SurfaceMesh& m = sol.mesh;
  int v0 = G[k][side.row];
  const Vec3& x0 = m.vertices[v0].base.coords();
  TraceSample t;
  t.s = sphere_distance(origin, x0);
  t.theta = std::numeric_limits<double>::quiet_NaN();
  BoundaryLabel l = m.tag(v0);
  if (l == BoundaryLabel::Corner5) {
    t.nu = 1.0;
    t.w = 0.0;
    return t;
  }
  if (k == 0) {
    t.nu = 0.0;
    t.w = sign_at_apex;
    return t;
  }
  int v1 = G[k][side.row + side.step], v2 = G[k][side.row + 2 * side.step];
  const Vec3& x1 = m.vertices[v1].base.coords();
  const Vec3& x2 = m.vertices[v2].base.coords();
  double d1 = sphere_distance(x0, x1), d2 = sphere_distance(x0, x2);
  double du = one_sided_derivative(m.vertices[v0].height, m.vertices[v1].height, m.vertices[v2].height, d1, d2);
  double s = direction_to(x0, x1).dot(side.inward_pole);
  double q = du / s;
  double r = std::sqrt(1 + q * q);
  t.nu = 1.0 / r;
  t.w = q / r;
  return t;
}

static Vec3 inward_pole(const Vec3& a, const Vec3& b, const Vec3& opposite) {
  Vec3 n = a.cross(b).normalized();
  return n.dot(opposite) > 0 ? n : -n;
}

std::vector<TraceSample> boundary_trace(const PlateauSolution& sol, ContourEdge edge) {
  if (is_vertical(edge)) fail(ErrorKind::NotApplicable, "boundary_trace is defined on horizontal edges only");
  const PlateauGrid& g = sol.grid;
  const int kt = g.kt();
  std::vector<TraceSample> out;
  if (edge == ContourEdge::E23) {
    Vec3 n = inward_pole(g.P1, g.P4, g.P5);
    SideInfo a{&g.A, 0, 1, n}, b{&g.B, 0, 1, n};
    for (int k = 0; k <= kt; ++k) out.push_back(horizontal_sample(sol, a, k, g.P1, 1.0));
    for (int k = kt - 1; k >= 0; --k) out.push_back(horizontal_sample(sol, b, k, g.P1, 1.0));
  } else if (edge == ContourEdge::E45) {
    SideInfo b{&g.B, g.J, -1, inward_pole(g.P4, g.P5, g.P1)};
    for (int k = 0; k <= kt; ++k) out.push_back(horizontal_sample(sol, b, k, g.P4, -1.0));
  } else {
    SideInfo a{&g.A, g.J, -1, inward_pole(g.P5, g.P1, g.P4)};
    for (int k = kt; k >= 0; --k) out.push_back(horizontal_sample(sol, a, k, g.P5, -1.0));
  }
  return out;
}

double trace_integral_nu(const std::vector<TraceSample>& t) {
  double s = 0;
  for (size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i].nu + t[i - 1].nu) * (t[i].s - t[i - 1].s);
  return s;
}

double trace_integral_w(const std::vector<TraceSample>& t) {
  double s = 0;
  for (size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i].w + t[i - 1].w) * (t[i].s - t[i - 1].s);
  return s;
}

std::vector<int> fan_vertices(const PlateauSolution& sol, ContourEdge edge) {
  if (!is_vertical(edge)) fail(ErrorKind::NotApplicable, "fan vertices exist on vertical edges only");
  const auto& G = edge == ContourEdge::E12 ? sol.grid.A : sol.grid.B;
  return G[0];
}

std::vector<int> mirror_column(const PlateauSolution& sol) { return sol.grid.A[sol.grid.kt()]; }

// Normal angle samples at the apex row, one per fan vertex.
static std::vector<TraceSample> vertical_samples(const PlateauSolution& sol, ContourEdge edge) {
  const PlateauGrid& g = sol.grid;
  const auto& G = edge == ContourEdge::E12 ? g.A : g.B;
  const SurfaceMesh& m = sol.mesh;
  const Vec3 p = m.vertices[G[0][0]].base.coords();
  Vec3 P = direction_to(p, m.vertices[G[1][0]].base.coords());
  Vec3 Q = p.cross(P);

  // Orientation of the horizontal normal, read from the first strip face.
  int sigma = 1;
  bool found = false;
  std::vector<char> on_fan(m.num_vertices(), 0);
  for (int v : G[0]) on_fan[v] = 1;
  for (int f = 0; f < m.num_faces() && !found; ++f) {
    const Face& F = m.faces[f];
    int fan = 0, other = -1;
    for (int v : F) {
      if (on_fan[v]) ++fan;
      else other = v;
    }
    if (fan == 2 && other >= 0) {
      ProdVector n = face_unit_normal(m, f);
      if (std::abs(n.vertical) > 1e-8) fail(ErrorKind::MeshQuality, "normal along the vertical edge is not horizontal");
      Vec3 ref = p.cross(direction_to(p, m.vertices[other].base.coords()));
      sigma = n.horizontal.dot(ref) >= 0 ? 1 : -1;
      found = true;
    }
  }
  if (!found) fail(ErrorKind::MeshQuality, "strip face along the vertical edge not found");

  std::vector<TraceSample> out;
  double prev = 0;
  auto angle_of = [&](int v, bool first) {
    Vec3 dir = direction_to(p, m.vertices[v].base.coords());
    Vec3 N = sigma * p.cross(dir);
    double th = std::atan2(N.dot(Q), N.dot(P));
    if (!first) th = prev + std::remainder(th - prev, 2 * pi);
    prev = th;
    return th;
  };
  auto sample = [&](double s, double th) {
    TraceSample t;
    t.s = s;
    t.nu = 0.0;
    t.theta = th;
    t.w = std::numeric_limits<double>::quiet_NaN();
    out.push_back(t);
  };
  for (int j = 0; j <= g.J; ++j) sample(m.vertices[G[0][j]].height, angle_of(G[1][j], j == 0));
  return out;
}

NormalRotation measure_normal_rotation(const PlateauSolution& sol, ContourEdge edge) {
  if (!is_vertical(edge)) fail(ErrorKind::NotApplicable, "normal rotation is measured on vertical edges only");
  const auto& raw = sol.boundary_traces[static_cast<int>(edge)];
  NormalRotation r;
  const int sub = 8;
  for (size_t i = 0; i + 1 < raw.size(); ++i) {
    for (int k = 0; k < sub; ++k) {
      double a = double(k) / sub;
      r.s.push_back((1 - a) * raw[i].s + a * raw[i + 1].s);
      r.theta.push_back((1 - a) * raw[i].theta + a * raw[i + 1].theta);
    }
    if (raw[i + 1].s <= raw[i].s) r.monotone = false;
  }
  r.s.push_back(raw.back().s);
  r.theta.push_back(raw.back().theta);
  r.delta_theta = raw.back().theta - raw.front().theta;
  double dir = r.delta_theta >= 0 ? 1.0 : -1.0;
  for (size_t i = 0; i + 1 < raw.size(); ++i)
    if (dir * (raw[i + 1].theta - raw[i].theta) < 0) r.monotone = false;
  return r;
}

double measure_symmetry_curve(const PlateauSolution& sol) {
  if (std::abs(sol.spec.hinge.a_tilde - sol.spec.hinge.b_tilde) > 1e-12)
    fail(ErrorKind::NotApplicable, "symmetry curve requires a symmetric hinge (a_tilde = b_tilde)");
  const auto col = mirror_column(sol);
  double len = 0;
  for (size_t i = 1; i < col.size(); ++i) len += prod_distance(sol.mesh.vertices[col[i - 1]], sol.mesh.vertices[col[i]]);
  return len;
}

PlateauSolution plateau_from_heights(const ContourSpec& spec, int resolution, const std::vector<double>& heights,
                                     double tol, const std::vector<double>& eta) {
  PlateauSolution sol;
  sol.spec = spec;
  sol.resolution = resolution;
  sol.tol = tol;
  sol.contour = build_contour(spec);
  sol.grid = build_plateau_grid(sol.contour, resolution, sol.mesh, eta);
  if (heights.size() != sol.mesh.vertices.size())
    fail(ErrorKind::Format, "height count does not match the domain mesh for this resolution");
  for (int v = 0; v < sol.mesh.num_vertices(); ++v) sol.mesh.vertices[v].height = heights[v];
  sol.height_fn = heights;
  compute_normals(sol.mesh);
  sol.boundary_traces[0] = vertical_samples(sol, ContourEdge::E12);
  sol.boundary_traces[2] = vertical_samples(sol, ContourEdge::E34);
  for (ContourEdge e : {ContourEdge::E23, ContourEdge::E45, ContourEdge::E51})
    sol.boundary_traces[static_cast<int>(e)] = boundary_trace(sol, e);
  return sol;
}

// Bilinear interpolation of a solved height field in collapsed coordinates.
static double interpolate_height(const PlateauSolution& sol, int half, double xi, double eta) {
  const PlateauGrid& g = sol.grid;
  const auto& G = half == 0 ? g.A : g.B;
  auto locate = [](const std::vector<double>& x, double v, int& i, double& a) {
    i = 0;
    while (i + 2 < static_cast<int>(x.size()) && x[i + 1] < v) ++i;
    a = std::clamp((v - x[i]) / (x[i + 1] - x[i]), 0.0, 1.0);
  };
  int k, j;
  double a, b;
  locate(g.xi, xi, k, a);
  locate(g.eta, eta, j, b);
  auto H = [&](int kk, int jj) { return sol.mesh.vertices[G[kk][jj]].height; };
  return (1 - a) * ((1 - b) * H(k, j) + b * H(k, j + 1)) + a * ((1 - b) * H(k + 1, j) + b * H(k + 1, j + 1));
}

// Angular parameters that equidistribute the arc length of the two apex fans,
// measured in (h * eta, height), on the coarse solution.
static std::vector<double> equidistributed_eta(const PlateauSolution& coarse, int J) {
  const PlateauGrid& g = coarse.grid;
  const double h = coarse.spec.h_tilde;
  auto H = [&](const std::vector<std::vector<int>>& G, int j) { return coarse.mesh.vertices[G[0][j]].height; };
  std::vector<double> cum(g.J + 1, 0.0);
  for (int j = 0; j < g.J; ++j) {
    double de = h * (g.eta[j + 1] - g.eta[j]);
    double da = H(g.A, j + 1) - H(g.A, j);
    double db = H(g.B, j + 1) - H(g.B, j);
    cum[j + 1] = cum[j] + std::sqrt(de * de + 0.5 * (da * da + db * db)) + de;
  }
  std::vector<double> eta(J + 1);
  eta[0] = 0.0;
  eta[J] = 1.0;
  int j = 0;
  for (int i = 1; i < J; ++i) {
    double target = cum.back() * i / J;
    while (j + 1 < g.J && cum[j + 1] < target) ++j;
    double a = (target - cum[j]) / (cum[j + 1] - cum[j]);
    eta[i] = g.eta[j] + a * (g.eta[j + 1] - g.eta[j]);
  }
  return eta;
}

PlateauSolution solve_graph(const ContourSpec& spec, int resolution, double tol) {
  validate_contour_spec(spec);
  if (!(tol > 0)) fail(ErrorKind::InputDomain, "tolerance must be positive");
  GeodesicPolygon poly = build_contour(spec);
  const bool nested = resolution >= 16 && resolution % 2 == 0;
  PlateauSolution coarse;
  std::vector<double> eta;
  if (nested) {
    coarse = solve_graph(spec, resolution / 2, tol);
    eta = equidistributed_eta(coarse, resolution);
  }
  SurfaceMesh mesh;
  PlateauGrid g = build_plateau_grid(poly, resolution, mesh, eta);
  const double h = spec.h_tilde;

  GraphProblem prob;
  const int n = mesh.num_vertices();
  prob.base.resize(n);
  prob.height.assign(n, 0.0);
  prob.fixed.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    prob.base[v] = mesh.vertices[v].base.coords();
    BoundaryLabel l = mesh.tag(v);
    if (height_fixed(l)) {
      prob.fixed[v] = 1;
      prob.height[v] = boundary_height(l, h);
    }
  }
  for (int half = 0; half < 2; ++half) {
    const auto& G = half == 0 ? g.A : g.B;
    for (int k = 0; k <= g.kt(); ++k)
      for (int j = 0; j <= g.J; ++j) {
        int v = G[k][j];
        if (prob.fixed[v]) continue;
        prob.height[v] = nested ? interpolate_height(coarse, half, g.xi[k], g.eta[j]) : h * g.eta[j];
      }
  }
  prob.faces = mesh.faces;

  // Free fan heights make the area nonsmooth once two of them meet; pin them
  // to the grid parametrization when that stalls the solve.
  GraphProblem pinned = prob;
  GraphSolveReport rep;
  try {
    rep = minimize_graph_area(prob, tol);
  } catch (const SolverError&) {
    for (int half = 0; half < 2; ++half) {
      const auto& G = half == 0 ? g.A : g.B;
      for (int j = 0; j <= g.J; ++j) {
        int v = G[0][j];
        if (pinned.fixed[v]) continue;
        pinned.fixed[v] = 1;
        pinned.height[v] = h * g.eta[j];
      }
    }
    rep = minimize_graph_area(pinned, tol);
    prob = std::move(pinned);
  }

  PlateauSolution sol = plateau_from_heights(spec, resolution, prob.height, tol, eta);
  sol.report = rep;
  sol.residual = rep.gradient_norm;

  for (int v = 0; v < n; ++v)
    if (sol.mesh.tag(v) == BoundaryLabel::None && !(sol.mesh.nu[v] > 0)) {
      std::ostringstream os;
      os << "nu <= 0 at interior vertex " << v << " (nu=" << sol.mesh.nu[v] << "); mesh too coarse";
      fail(ErrorKind::GraphViolation, os.str());
    }
  return sol;
}

}  // namespace minsurf
