#include "minsurf/surfaces.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

namespace minsurf {

using std::numbers::pi;

void validate_contour_spec(const ContourSpec& spec) {
  validate_hinge(spec.hinge);
  if (!(spec.h_tilde > 0 && spec.h_tilde <= pi / 2 + 1e-12))
    fail(ErrorKind::InputDomain, "h_tilde must lie in (0, pi/2]");
}

static Vec4 edge_tangent_from(const GeodesicPolygon& g, int v, int w) {
  const ProdPoint& a = g.vertices[v];
  const ProdPoint& b = g.vertices[w];
  if (sphere_distance(a.base, b.base) < 1e-14) return Vec4(0, 0, 0, b.height > a.height ? 1.0 : -1.0);
  Vec3 d = direction_to(a.base.coords(), b.base.coords());
  return Vec4(d[0], d[1], d[2], 0.0);
}

double GeodesicPolygon::vertex_angle(int i) const {
  int prev = (i + 4) % 5, next = (i + 1) % 5;
  Vec4 a = edge_tangent_from(*this, i, prev), b = edge_tangent_from(*this, i, next);
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

double GeodesicPolygon::closure_gap() const {
  double gap = 0;
  for (const PolygonEdge& e : edges) {
    double d = prod_distance(vertices[e.from], vertices[e.to]);
    gap = std::max(gap, std::abs(d - e.length));
  }
  return gap;
}

GeodesicPolygon build_contour(const ContourSpec& spec) {
  validate_contour_spec(spec);
  const double a = spec.hinge.a_tilde, b = spec.hinge.b_tilde, g = spec.hinge.gamma, h = spec.h_tilde;
  GeodesicPolygon poly;
  poly.triangle = solve_hinge(spec.hinge);
  poly.P5 = Vec3(0, 0, 1);
  poly.P1 = Vec3(std::sin(a), 0, std::cos(a));
  poly.P4 = Vec3(std::sin(b) * std::cos(g), std::sin(b) * std::sin(g), std::cos(b));
  poly.vertices[0] = ProdPoint(poly.P1, h);
  poly.vertices[1] = ProdPoint(poly.P1, 0.0);
  poly.vertices[2] = ProdPoint(poly.P4, 0.0);
  poly.vertices[3] = ProdPoint(poly.P4, h);
  poly.vertices[4] = ProdPoint(poly.P5, h);
  poly.edges[0] = {EdgeType::Vertical, 0, 1, h};
  poly.edges[1] = {EdgeType::Horizontal, 1, 2, poly.triangle.c};
  poly.edges[2] = {EdgeType::Vertical, 2, 3, h};
  poly.edges[3] = {EdgeType::Horizontal, 3, 4, b};
  poly.edges[4] = {EdgeType::Horizontal, 4, 0, a};
  if (poly.closure_gap() > 1e-10) fail(ErrorKind::DegenerateTriangle, "contour failed to close");
  return poly;
}

namespace {

struct VertexKey {
  long long x, y, z;
  bool operator<(const VertexKey& o) const { return std::tie(x, y, z) < std::tie(o.x, o.y, o.z); }
};

VertexKey key_of(const Vec3& p) {
  const double q = 1e9;
  return {std::llround(p[0] * q), std::llround(p[1] * q), std::llround(p[2] * q)};
}

}  // namespace

SurfaceMesh slice_mesh(double t0, int resolution) {
  if (resolution < 2) fail(ErrorKind::InputDomain, "slice resolution must be >= 2");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> ico = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi}, {0, 1, phi},
                           {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1},  {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& v : ico) v.normalize();
  std::vector<Face> ifaces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                              {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                              {3, 8, 9},   {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  const double edge_arc = sphere_distance(ico[0], ico[11]);
  const int n = std::max(1, static_cast<int>(std::ceil(resolution * edge_arc - 1e-9)));

  SurfaceMesh m;
  std::map<VertexKey, int> index;
  auto vertex = [&](const Vec3& raw) {
    Vec3 p = raw.normalized();
    VertexKey k = key_of(p);
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    int id = m.num_vertices();
    m.vertices.emplace_back(SpherePoint(p), t0);
    index.emplace(k, id);
    return id;
  };
  for (Face F : ifaces) {
    Vec3 A = ico[F[0]], B = ico[F[1]], C = ico[F[2]];
    if (A.dot((B - A).cross(C - A)) < 0) std::swap(B, C);
    std::vector<std::vector<int>> grid(n + 1);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n - i; ++j)
        grid[i].push_back(vertex(A + (B - A) * (double(i) / n) + (C - A) * (double(j) / n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n - i; ++j) {
        m.faces.push_back({grid[i][j], grid[i + 1][j], grid[i][j + 1]});
        if (j + 1 < n - i) m.faces.push_back({grid[i + 1][j], grid[i + 1][j + 1], grid[i][j + 1]});
      }
  }
  m.boundary_tags.assign(m.num_vertices(), BoundaryLabel::None);
  compute_normals(m);
  return m;
}

SurfaceMesh cylinder_mesh(const Vec3& axis, double r, int resolution) {
  if (resolution < 3) fail(ErrorKind::InputDomain, "cylinder resolution must be >= 3");
  if (!(r > 0)) fail(ErrorKind::InputDomain, "radius must be positive");
  Vec3 n = axis.normalized();
  Vec3 e1 = n.unitOrthogonal(), e2 = n.cross(e1);
  const double P = 2 * pi * r;
  // Even counts keep antipodal fibers and half-period circles on the mesh.
  auto even = [](double x) { int k = std::max(4, static_cast<int>(std::ceil(x - 1e-9))); return k + k % 2; };
  const int nu = even(2 * pi * resolution);
  const int nt = even(P * resolution);
  SurfaceMesh m;
  m.quotient_circumference = P;
  for (int j = 0; j < nt; ++j)
    for (int i = 0; i < nu; ++i) {
      double u = 2 * pi * i / nu;
      m.vertices.emplace_back(SpherePoint(std::cos(u) * e1 + std::sin(u) * e2), P * j / nt);
    }
  auto id = [&](int i, int j) { return ((j % nt) * nu) + (i % nu); };
  for (int j = 0; j < nt; ++j)
    for (int i = 0; i < nu; ++i) {
      m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  m.boundary_tags.assign(m.num_vertices(), BoundaryLabel::None);
  compute_normals(m);
  return m;
}

SurfaceMesh helicoid_mesh(double pitch, double r, int resolution) {
  if (!(r > 0) || !(pitch > 0)) fail(ErrorKind::InputDomain, "pitch and radius must be positive");
  if (resolution < 1) fail(ErrorKind::InputDomain, "helicoid resolution must be >= 1");
  const double P = 2 * pi * r;
  bool klein;
  if (std::abs(pitch - P) < 1e-9 * P) klein = false;
  else if (std::abs(pitch - 2 * P) < 1e-9 * P) klein = true;
  else fail(ErrorKind::InputDomain, "helicoid pitch must equal 2 pi r (torus) or 4 pi r (Klein bottle)");

  // Even counts keep the pole fibers and the half-period rows on the grid.
  int nu = 2 * static_cast<int>(std::ceil(pi * resolution - 1e-9));
  int nt = 2 * static_cast<int>(std::ceil(P * resolution / 2 - 1e-9));
  nu = std::max(nu, 4);
  nt = std::max(nt, 4);
  SurfaceMesh m;
  m.quotient_circumference = P;
  // The Klein bottle uses a triangular lattice (odd columns shifted by half a
  // row) so the glide (u, t + P) ~ (-u, t) maps the triangulation to itself.
  auto height = [&](int i, int j) { return P * (j + (klein && i % 2 ? 0.5 : 0.0)) / nt; };
  for (int j = 0; j < nt; ++j)
    for (int i = 0; i < nu; ++i) {
      double t = height(i, j);
      double th = 2 * pi * t / pitch;
      double u = 2 * pi * i / nu;
      Vec3 p(std::sin(u) * std::cos(th), std::sin(u) * std::sin(th), std::cos(u));
      m.vertices.emplace_back(SpherePoint(p), t);
    }
  auto id = [&](int i, int j) {
    i = ((i % nu) + nu) % nu;
    if (j == nt) {
      j = 0;
      if (klein) i = (nu - i) % nu;
    }
    return j * nu + i;
  };
  for (int j = 0; j < nt; ++j)
    for (int i = 0; i < nu; ++i) {
      if (!klein) {
        m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
        m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
      } else if (i % 2 == 0) {
        m.faces.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
        m.faces.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
      } else {
        m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      }
    }
  m.boundary_tags.assign(m.num_vertices(), BoundaryLabel::None);
  compute_normals(m);
  return m;
}

}  // namespace minsurf
