#include "minsurf/conjugation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace minsurf {

using std::numbers::pi;

namespace {

struct CurveState {
  Vec3 p, T;
};

CurveState curve_rhs(const CurveState& x, double kappa) {
  return {x.T, -x.p + kappa * x.p.cross(x.T)};
}

void tidy(CurveState& x) {
  x.p.normalize();
  x.T -= x.T.dot(x.p) * x.p;
  x.T.normalize();
}

// Integrates a unit-speed curve on S^2 with piecewise constant left geodesic
// curvature given per sample segment.
SliceCurve integrate_slice(const Vec3& p0, const Vec3& T0, const std::vector<TraceSample>& samples, double sign,
                           Vec3* end_tangent) {
  constexpr int kSub = 8;
  SliceCurve c;
  CurveState x{p0, T0};
  tidy(x);
  double s = 0;
  c.points.push_back(x.p);
  c.s.push_back(0.0);
  for (size_t i = 0; i + 1 < samples.size(); ++i) {
    double ds = samples[i + 1].s - samples[i].s;
    if (!(ds > 0)) fail(ErrorKind::MeshQuality, "fan heights along a vertical edge are not increasing");
    double kappa = sign * (samples[i + 1].theta - samples[i].theta) / ds;
    double hstep = ds / kSub;
    for (int k = 0; k < kSub; ++k) {
      CurveState k1 = curve_rhs(x, kappa);
      CurveState y{x.p + 0.5 * hstep * k1.p, x.T + 0.5 * hstep * k1.T};
      CurveState k2 = curve_rhs(y, kappa);
      y = {x.p + 0.5 * hstep * k2.p, x.T + 0.5 * hstep * k2.T};
      CurveState k3 = curve_rhs(y, kappa);
      y = {x.p + hstep * k3.p, x.T + hstep * k3.T};
      CurveState k4 = curve_rhs(y, kappa);
      x.p += hstep / 6 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p);
      x.T += hstep / 6 * (k1.T + 2 * k2.T + 2 * k3.T + k4.T);
      tidy(x);
      s += hstep;
      c.points.push_back(x.p);
      c.s.push_back(s);
      c.curvature.push_back(std::abs(kappa));
    }
  }
  c.curvature.push_back(c.curvature.empty() ? 0.0 : c.curvature.back());
  if (end_tangent) *end_tangent = x.T;
  return c;
}

std::vector<double> cumulative(const std::vector<TraceSample>& t, bool use_nu) {
  std::vector<double> out{0.0};
  for (size_t i = 1; i < t.size(); ++i) {
    double a = use_nu ? t[i - 1].nu : t[i - 1].w;
    double b = use_nu ? t[i].nu : t[i].w;
    out.push_back(out.back() + 0.5 * (a + b) * (t[i].s - t[i - 1].s));
  }
  return out;
}

// Tangent at x along the great circle with the given pole, pointing toward q.
Vec3 tangent_toward(const Vec3& pole, const Vec3& x, const Vec3& q) {
  Vec3 t = pole.cross(x).normalized();
  return t.dot(q) >= 0 ? t : Vec3(-t);
}

Vec3 nearest_intersection(const Vec3& n1, const Vec3& n2, const Vec3& near) {
  Vec3 v = n1.cross(n2);
  if (v.norm() < 1e-12) fail(ErrorKind::ReconstructionInconsistency, "wall circles coincide");
  v.normalize();
  return v.dot(near) >= 0 ? v : Vec3(-v);
}

double angle_between(const Vec3& a, const Vec3& b) { return std::atan2(a.cross(b).norm(), a.dot(b)); }

Vec3 slerp(const Vec3& a, const Vec3& b, double t) {
  double w = sphere_distance(a, b);
  if (w < 1e-15) return a;
  return ((std::sin((1 - t) * w) * a + std::sin(t * w) * b) / std::sin(w)).normalized();
}

Vec3 point_at_arclength(const SliceCurve& c, double s) {
  auto it = std::lower_bound(c.s.begin(), c.s.end(), s);
  if (it == c.s.begin()) return c.points.front();
  if (it == c.s.end()) return c.points.back();
  size_t i = it - c.s.begin();
  double a = (s - c.s[i - 1]) / (c.s[i] - c.s[i - 1]);
  return slerp(c.points[i - 1], c.points[i], a);
}

}  // namespace

ConjugateResult reconstruct_contour(const PlateauSolution& sol, double closure_tol) {
  const auto& th12 = sol.boundary_traces[0];
  const auto& th34 = sol.boundary_traces[2];
  const auto& tr23 = sol.boundary_traces[1];
  const auto& tr45 = sol.boundary_traces[3];
  const auto& tr51 = sol.boundary_traces[4];
  if (th12.size() < 2 || tr23.size() < 2) fail(ErrorKind::InputDomain, "plateau solution carries no boundary traces");

  ConjugateContour cc;
  cc.h_tilde = sol.spec.h_tilde;
  cc.source_area = total_area(sol.mesh);
  cc.source_c = sol.contour.triangle.c;
  cc.alpha_tilde = std::abs(th12.back().theta - th12.front().theta);
  cc.beta_tilde = std::abs(th34.back().theta - th34.front().theta);
  cc.total_length = 2 * sol.spec.h_tilde + sol.contour.triangle.c + sol.spec.hinge.a_tilde + sol.spec.hinge.b_tilde;
  cc.closure_tolerance = closure_tol > 0 ? closure_tol : 1e-2 * cc.total_length;

  const double s34 = th34.back().theta >= th34.front().theta ? 1.0 : -1.0;
  const double s12 = th12.back().theta >= th12.front().theta ? 1.0 : -1.0;

  // Working frame: corner 3 on the x axis, wall 23 along the equator.
  const Vec3 c3(1, 0, 0), eAB(0, 1, 0);
  const Vec3 n23 = c3.cross(eAB);
  Vec3 t34;
  cc.slice_curves[1] = integrate_slice(c3, c3.cross(eAB), th34, -s34, &t34);
  const Vec3 c4 = cc.slice_curves[1].points.back();

  const double L23 = trace_integral_nu(tr23);
  const Vec3 c2 = sphere_geodesic(SpherePoint(c3), -eAB, L23).coords();
  const Vec3 eAB2 = -sphere_transport(SpherePoint(c3), -eAB, L23);
  Vec3 t_rev;
  cc.slice_curves[0] = integrate_slice(c2, c2.cross(eAB2), th12, s12, &t_rev);
  const Vec3 c1 = cc.slice_curves[0].points.back();

  const double L45 = trace_integral_nu(tr45);
  const double L51 = trace_integral_nu(tr51);
  const Vec3 d45 = c4.cross(t34).normalized();
  const Vec3 d51 = c1.cross(t_rev).normalized();  // direction of travel from 5 to 1 at corner 1
  const Vec3 C1 = sphere_geodesic(SpherePoint(c4), d45, L45).coords();
  const Vec3 C2 = sphere_geodesic(SpherePoint(c1), -d51, L51).coords();
  cc.closure_residual = sphere_distance(C1, C2);
  if (cc.closure_residual > cc.closure_tolerance) {
    std::ostringstream os;
    os << "conjugate contour does not close: residual " << cc.closure_residual << " > tolerance "
       << cc.closure_tolerance;
    fail(ErrorKind::ReconstructionInconsistency, os.str());
  }

  const double I23 = trace_integral_w(tr23);
  if (std::abs(I23) < 1e-9) fail(ErrorKind::DegenerateHeight, "height integral over edge 23 is below noise");
  const double sigma = I23 > 0 ? 1.0 : -1.0;
  const double h = std::abs(I23);
  const double t5 = -sigma * trace_integral_w(tr45);
  const double t1 = t5 - sigma * trace_integral_w(tr51);
  if (std::abs(t1 - h) > cc.closure_tolerance) {
    std::ostringstream os;
    os << "height of corner 1 (" << t1 << ") does not return to h = " << h;
    fail(ErrorKind::ReconstructionInconsistency, os.str());
  }
  if (!(t5 > 0 && t5 < h)) {
    std::ostringstream os;
    os << "height of corner 5 (" << t5 << ") is not strictly inside (0, " << h << ")";
    fail(ErrorKind::ReconstructionInconsistency, os.str());
  }

  PrismData pr;
  const Vec3 n45 = c4.cross(d45).normalized();
  const Vec3 n51 = c1.cross(d51).normalized();
  pr.wall_circles = {n23, n45, n51};
  Vec3 A = nearest_intersection(n23, n51, c2);
  Vec3 B = nearest_intersection(n23, n45, c3);
  Vec3 C = nearest_intersection(n45, n51, (C1 + C2).normalized());
  pr.alpha = angle_between(tangent_toward(n23, A, c3), tangent_toward(n51, A, C2));
  pr.beta = angle_between(tangent_toward(n23, B, c2), tangent_toward(n45, B, C1));
  pr.gamma_measured = angle_between(tangent_toward(n45, C, c4), tangent_toward(n51, C, c1));
  pr.gamma = sol.spec.hinge.gamma;
  pr.h = h;
  pr.slices = {0.0, h};

  // Wall profiles.
  auto wall = [&](const std::vector<TraceSample>& tr, double t0, auto&& place) {
    WallCurve w;
    auto X = cumulative(tr, true), W = cumulative(tr, false);
    for (size_t i = 0; i < tr.size(); ++i) {
      w.s.push_back(tr[i].s - tr.front().s);
      w.x.push_back(X[i]);
      w.t.push_back(t0 - sigma * W[i]);
      w.points.emplace_back(place(X[i]), w.t.back());
    }
    return w;
  };
  cc.wall_curves[0] = wall(tr23, h, [&](double x) { return sphere_geodesic(SpherePoint(c2), eAB2, x).coords(); });
  cc.wall_curves[1] = wall(tr45, 0.0, [&](double x) { return sphere_geodesic(SpherePoint(c4), d45, x).coords(); });
  cc.wall_curves[2] =
      wall(tr51, t5, [&](double x) { return sphere_geodesic(SpherePoint(c1), -d51, L51 - x).coords(); });
  cc.slice_curves[0].height = h;
  cc.slice_curves[1].height = 0.0;
  cc.corner_points = {ProdPoint(c1, h), ProdPoint(c2, h), ProdPoint(c3, 0.0), ProdPoint(c4, 0.0), ProdPoint(C, t5)};

  // Canonical gauge: C at the north pole, A on the +x meridian.
  Vec3 e3 = C;
  Vec3 e1 = (A - A.dot(C) * C).normalized();
  Vec3 e2 = e3.cross(e1);
  Mat3 R;
  R.row(0) = e1.transpose();
  R.row(1) = e2.transpose();
  R.row(2) = e3.transpose();
  auto rot = [&](const Vec3& v) { return Vec3((R * v).normalized()); };
  for (auto& c : cc.slice_curves)
    for (auto& p : c.points) p = rot(p);
  for (auto& w : cc.wall_curves)
    for (auto& p : w.points) p = ProdPoint(rot(p.base.coords()), p.height);
  for (auto& p : cc.corner_points) p = ProdPoint(rot(p.base.coords()), p.height);
  for (auto& n : pr.wall_circles) n = rot(n);
  pr.A = rot(A);
  pr.B = rot(B);
  pr.C = rot(C);
  return {cc, pr};
}

bool polyline_self_intersects(const std::vector<Vec3>& loop) {
  const int n = static_cast<int>(loop.size());
  if (n < 4) return false;
  Vec3 c = Vec3::Zero();
  for (const auto& p : loop) c += p;
  if (c.norm() < 1e-12) return true;
  c.normalize();
  Vec3 e1 = c.unitOrthogonal(), e2 = c.cross(e1);
  std::vector<Eigen::Vector2d> q;
  for (const auto& p : loop) {
    double d = p.dot(c);
    if (d <= 1e-9) return true;
    q.emplace_back(p.dot(e1) / d, p.dot(e2) / d);
  }
  auto cross2 = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a[0] * b[1] - a[1] * b[0]; };
  for (int i = 0; i < n; ++i) {
    const auto &a = q[i], &b = q[(i + 1) % n];
    if ((b - a).norm() < 1e-15) continue;
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const auto &c2 = q[j], &d = q[(j + 1) % n];
      if ((d - c2).norm() < 1e-15) continue;
      double o1 = cross2(b - a, c2 - a), o2 = cross2(b - a, d - a);
      double o3 = cross2(d - c2, a - c2), o4 = cross2(d - c2, b - c2);
      if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return true;
    }
  }
  return false;
}

static double fan_area(const Vec3& apex, const std::vector<Vec3>& poly) {
  double a = 0;
  for (size_t i = 0; i + 1 < poly.size(); ++i) a += spherical_triangle_area(apex, poly[i], poly[i + 1]);
  return std::abs(a);
}

GaussBonnetCheck alpha_gauss_bonnet(const ConjugateContour& contour, const PrismData& prism) {
  if (contour.closure_residual > contour.closure_tolerance)
    fail(ErrorKind::ReconstructionInconsistency, "contour closure residual above tolerance");
  GaussBonnetCheck r;
  const auto& q12 = contour.slice_curves[0].points;
  const auto& q34 = contour.slice_curves[1].points;
  std::vector<Vec3> la{prism.A};
  la.insert(la.end(), q12.begin(), q12.end());
  std::vector<Vec3> lb{prism.B};
  lb.insert(lb.end(), q34.begin(), q34.end());
  if (polyline_self_intersects(la) || polyline_self_intersects(lb))
    fail(ErrorKind::InvalidDomain, "projected slice curve region is not embedded");
  r.area_alpha = fan_area(prism.A, q12);
  r.area_beta = fan_area(prism.B, q34);
  r.alpha_check = contour.alpha_tilde + r.area_alpha;
  r.beta_check = contour.beta_tilde + r.area_beta;
  return r;
}

FreeBoundaryPiece solve_free_boundary(const PrismData& prism, const ConjugateContour& contour, int resolution,
                                      double tol) {
  if (resolution < 2) fail(ErrorKind::InputDomain, "free boundary resolution must be >= 2");
  const int J = resolution, K = resolution;
  const double h = prism.h;
  const double ht = contour.h_tilde;

  // Wall-23 point over the middle of the source edge 2̃3.
  const auto& w23 = contour.wall_curves[0];
  Vec3 Mp;
  {
    const double target = 0.5 * contour.source_c;
    size_t i = std::lower_bound(w23.s.begin(), w23.s.end(), target) - w23.s.begin();
    i = std::clamp<size_t>(i, 1, w23.s.size() - 1);
    double a = (target - w23.s[i - 1]) / (w23.s[i] - w23.s[i - 1]);
    Mp = slerp(w23.points[i - 1].base.coords(), w23.points[i].base.coords(), a);
  }
  const Vec3 Cp = contour.corner_points[4].base.coords();

  FreeBoundaryPiece out;
  SurfaceMesh& m = out.mesh;
  using L = BoundaryLabel;
  std::vector<std::vector<int>> GA(K + 1, std::vector<int>(J + 1)), GB(K + 1, std::vector<int>(J + 1));
  std::vector<double> init;
  auto add = [&](const Vec3& p, L l, double t0) {
    m.vertices.emplace_back(SpherePoint(p), t0);
    m.boundary_tags.push_back(l);
    return m.num_vertices() - 1;
  };
  for (int half = 0; half < 2; ++half) {
    auto& G = half == 0 ? GA : GB;
    const SliceCurve& q = contour.slice_curves[half];
    for (int k = 0; k <= K; ++k) {
      double xi = double(k) / K;
      for (int j = 0; j <= J; ++j) {
        if (half == 1 && k == K) {
          G[k][j] = GA[k][j];
          continue;
        }
        double eta = double(j) / J;
        Vec3 Q = point_at_arclength(q, eta * ht);
        Vec3 Rr = slerp(Mp, Cp, eta);
        Vec3 p = slerp(Q, Rr, xi * xi);
        L l = L::None;
        if (k == 0) {
          if (half == 0) l = j == 0 ? L::Corner2 : (j == J ? L::Corner1 : L::Edge12);
          else l = j == 0 ? L::Corner3 : (j == J ? L::Corner4 : L::Edge34);
        } else if (k == K && j == J) {
          l = L::Corner5;
        } else if (j == 0) {
          l = L::Edge23;
        } else if (j == J) {
          l = half == 0 ? L::Edge51 : L::Edge45;
        }
        double t0 = half == 0 ? h * (1 - xi / 2) : h * xi / 2;
        G[k][j] = add(p, l, t0);
      }
    }
  }
  for (int half = 0; half < 2; ++half) {
    const auto& G = half == 0 ? GA : GB;
    for (int k = 0; k < K; ++k)
      for (int j = 0; j < J; ++j) {
        int v00 = G[k][j], v10 = G[k + 1][j], v11 = G[k + 1][j + 1], v01 = G[k][j + 1];
        for (Face F : {Face{v00, v10, v11}, Face{v00, v11, v01}}) {
          const Vec3 &a = m.vertices[F[0]].base.coords(), &b = m.vertices[F[1]].base.coords(),
                     &c = m.vertices[F[2]].base.coords();
          if (a.dot(b.cross(c)) < 0) std::swap(F[1], F[2]);
          m.faces.push_back(F);
        }
      }
  }

  GraphProblem prob;
  const int n = m.num_vertices();
  prob.base.resize(n);
  prob.height.resize(n);
  prob.fixed.assign(n, 0);
  prob.faces = m.faces;
  for (int v = 0; v < n; ++v) {
    prob.base[v] = m.vertices[v].base.coords();
    prob.height[v] = m.vertices[v].height;
    L l = m.tag(v);
    if (l == L::Edge12 || l == L::Corner1 || l == L::Corner2) {
      prob.fixed[v] = 1;
      prob.height[v] = h;
    } else if (l == L::Edge34 || l == L::Corner3 || l == L::Corner4) {
      prob.fixed[v] = 1;
      prob.height[v] = 0.0;
    }
  }
  out.report = minimize_graph_area(prob, tol, 400);
  for (int v = 0; v < n; ++v) m.vertices[v].height = prob.height[v];
  compute_normals(m);

  for (int v = 0; v < n; ++v) {
    double t = m.vertices[v].height;
    out.height_excursion = std::max({out.height_excursion, -t, t - h});
  }
  if (out.height_excursion > 1e-3 * h) {
    std::ostringstream os;
    os << "free boundary piece leaves the prism (height excursion " << out.height_excursion << ")";
    fail(ErrorKind::Embeddedness, os.str());
  }
  for (int v = 0; v < n; ++v) {
    L l = m.tag(v);
    int wall = l == L::Edge23 ? 0 : (l == L::Edge45 ? 1 : (l == L::Edge51 ? 2 : -1));
    if (wall < 0) continue;
    out.max_dihedral_defect =
        std::max(out.max_dihedral_defect, std::abs(m.normals[v].horizontal.dot(prism.wall_circles[wall])));
  }
  return out;
}

double discrete_total_curvature(const SurfaceMesh& m) {
  const int n = m.num_vertices();
  std::vector<double> angle(n, 0.0), dual(n, 0.0);
  for (int f = 0; f < m.num_faces(); ++f) {
    double A = face_area(m, f);
    for (int c = 0; c < 3; ++c) {
      angle[m.faces[f][c]] += face_angle(m, f, c);
      dual[m.faces[f][c]] += A / 3;
    }
  }
  auto nbrs = vertex_neighbors(m);
  std::vector<double> density(n, 0.0);
  std::vector<char> interior(n, 0);
  double total = 0;
  for (int v = 0; v < n; ++v)
    if (m.tag(v) == BoundaryLabel::None && dual[v] > 0) {
      interior[v] = 1;
      double K = 2 * pi - angle[v];
      density[v] = K / dual[v];
      total += K;
    }
  for (int v = 0; v < n; ++v) {
    if (interior[v] || dual[v] == 0) continue;
    // Nearest interior vertices by breadth-first rings.
    std::vector<int> ring{v}, seen{v};
    double sum = 0;
    int cnt = 0;
    for (int depth = 0; depth < 4 && cnt == 0; ++depth) {
      std::vector<int> next;
      for (int u : ring)
        for (int w : nbrs[u])
          if (std::find(seen.begin(), seen.end(), w) == seen.end()) {
            seen.push_back(w);
            next.push_back(w);
            if (interior[w]) {
              sum += density[w];
              ++cnt;
            }
          }
      ring.swap(next);
    }
    if (cnt > 0) total += dual[v] * sum / cnt;
  }
  return total;
}

static std::vector<std::pair<double, double>> nu_samples(const SurfaceMesh& m) {
  std::vector<std::pair<double, double>> s;
  double tot = 0;
  for (int f = 0; f < m.num_faces(); ++f) {
    double a = face_area(m, f);
    s.emplace_back(std::abs(face_unit_normal(m, f).vertical), a);
    tot += a;
  }
  for (auto& x : s) x.second /= tot;
  return s;
}

double nu_distribution_distance(const SurfaceMesh& a, const SurfaceMesh& b) {
  auto sa = nu_samples(a), sb = nu_samples(b);
  std::vector<std::pair<double, double>> all;
  for (auto& x : sa) all.emplace_back(x.first, x.second);
  for (auto& x : sb) all.emplace_back(x.first, -x.second);
  std::sort(all.begin(), all.end());
  double F = 0, d = 0;
  for (size_t i = 0; i + 1 < all.size(); ++i) {
    F += all[i].second;
    d += std::abs(F) * (all[i + 1].first - all[i].first);
  }
  return d;
}

ConjugateReport verify_conjugate(const PlateauSolution& sol, const PrismData& prism, const SurfaceMesh& piece,
                                 const ConjugateThresholds& thr) {
  ConjugateReport r;
  r.area_source = total_area(sol.mesh);
  r.area_piece = total_area(piece);
  r.area_mismatch = std::abs(r.area_piece - r.area_source) / r.area_source;
  r.nu_distance = nu_distribution_distance(sol.mesh, piece);
  r.total_curvature = discrete_total_curvature(piece);
  r.curvature_target = prism.gamma - pi;
  r.curvature_mismatch = std::abs(r.total_curvature - r.curvature_target) / std::abs(r.curvature_target);
  using L = BoundaryLabel;
  auto wall_dist = [&](int v, int w) {
    return std::abs(piece.vertices[v].base.coords().dot(prism.wall_circles[w]));
  };
  for (int v = 0; v < piece.num_vertices(); ++v) {
    double t = piece.vertices[v].height, res = 0;
    switch (piece.tag(v)) {
      case L::Edge23: res = wall_dist(v, 0); break;
      case L::Edge45: res = wall_dist(v, 1); break;
      case L::Edge51: res = wall_dist(v, 2); break;
      case L::Corner5: res = std::max(wall_dist(v, 1), wall_dist(v, 2)); break;
      case L::Edge12: res = std::abs(t - prism.h); break;
      case L::Edge34: res = std::abs(t); break;
      case L::Corner1: res = std::max(wall_dist(v, 2), std::abs(t - prism.h)); break;
      case L::Corner2: res = std::max(wall_dist(v, 0), std::abs(t - prism.h)); break;
      case L::Corner3: res = std::max(wall_dist(v, 0), std::abs(t)); break;
      case L::Corner4: res = std::max(wall_dist(v, 1), std::abs(t)); break;
      default: break;
    }
    r.planarity_residual = std::max(r.planarity_residual, res);
  }
  r.area_ok = r.area_mismatch <= thr.area;
  r.nu_ok = r.nu_distance <= thr.nu_distance;
  r.curvature_ok = r.curvature_mismatch <= thr.curvature;
  r.planarity_ok = r.planarity_residual <= thr.planarity;
  return r;
}

}  // namespace minsurf
