#include "minsurf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace minsurf {

namespace {
const char* kLabelNames[] = {"none", "edge12", "edge23", "edge34", "edge45", "edge51",
                             "corner1", "corner2", "corner3", "corner4", "corner5"};
}

const char* label_name(BoundaryLabel l) { return kLabelNames[static_cast<int>(l)]; }

BoundaryLabel label_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(BoundaryLabel::Corner5); ++i)
    if (s == kLabelNames[i]) return static_cast<BoundaryLabel>(i);
  fail(ErrorKind::Format, "unknown boundary label '" + s + "'");
}

bool is_corner(BoundaryLabel l) { return l >= BoundaryLabel::Corner1; }

bool label_on_segment(BoundaryLabel l, BoundaryLabel seg) {
  using B = BoundaryLabel;
  if (l == seg) return true;
  switch (seg) {
    case B::Edge12: return l == B::Corner1 || l == B::Corner2;
    case B::Edge23: return l == B::Corner2 || l == B::Corner3;
    case B::Edge34: return l == B::Corner3 || l == B::Corner4;
    case B::Edge45: return l == B::Corner4 || l == B::Corner5;
    case B::Edge51: return l == B::Corner5 || l == B::Corner1;
    default: return false;
  }
}

double wrapped_delta(const SurfaceMesh& m, double a, double b) {
  double d = b - a;
  if (m.quotient_circumference) {
    double P = *m.quotient_circumference;
    d -= P * std::round(d / P);
  }
  return d;
}

std::array<Vec4, 3> face_chordal(const SurfaceMesh& m, int f) {
  const Face& F = m.faces[f];
  std::array<Vec4, 3> x;
  double t0 = m.vertices[F[0]].height;
  for (int i = 0; i < 3; ++i) {
    const ProdPoint& p = m.vertices[F[i]];
    double t = i == 0 ? t0 : t0 + wrapped_delta(m, t0, p.height);
    x[i] = Vec4(p.base[0], p.base[1], p.base[2], t);
  }
  return x;
}

static double chordal_area(const std::array<Vec4, 3>& x) {
  Vec4 e1 = x[1] - x[0], e2 = x[2] - x[0];
  double a = e1.squaredNorm(), b = e1.dot(e2), c = e2.squaredNorm();
  return 0.5 * std::sqrt(std::max(0.0, a * c - b * b));
}

double face_area(const SurfaceMesh& m, int f) { return chordal_area(face_chordal(m, f)); }

double total_area(const SurfaceMesh& m) {
  double s = 0;
  for (int f = 0; f < m.num_faces(); ++f) s += face_area(m, f);
  return s;
}

int EdgeTopology::find(int a, int b) const {
  auto it = index.find({std::min(a, b), std::max(a, b)});
  return it == index.end() ? -1 : it->second;
}

EdgeTopology build_edges(const SurfaceMesh& m) {
  EdgeTopology t;
  for (int f = 0; f < m.num_faces(); ++f) {
    for (int i = 0; i < 3; ++i) {
      int a = m.faces[f][i], b = m.faces[f][(i + 1) % 3];
      auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = t.index.find(key);
      int e;
      if (it == t.index.end()) {
        e = static_cast<int>(t.edges.size());
        t.index.emplace(key, e);
        t.edges.push_back({key.first, key.second});
        t.edge_faces.emplace_back();
      } else {
        e = it->second;
      }
      t.edge_faces[e].push_back(f);
    }
  }
  return t;
}

std::vector<std::vector<int>> vertex_faces(const SurfaceMesh& m) {
  std::vector<std::vector<int>> vf(m.num_vertices());
  for (int f = 0; f < m.num_faces(); ++f)
    for (int v : m.faces[f]) vf[v].push_back(f);
  return vf;
}

std::vector<std::vector<int>> vertex_neighbors(const SurfaceMesh& m) {
  std::vector<std::vector<int>> nb(m.num_vertices());
  for (const Face& F : m.faces)
    for (int i = 0; i < 3; ++i) {
      nb[F[i]].push_back(F[(i + 1) % 3]);
      nb[F[i]].push_back(F[(i + 2) % 3]);
    }
  for (auto& n : nb) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
  return nb;
}

void validate_mesh(const SurfaceMesh& m, double min_area) {
  for (int f = 0; f < m.num_faces(); ++f) {
    const Face& F = m.faces[f];
    for (int v : F)
      if (v < 0 || v >= m.num_vertices()) fail(ErrorKind::InputDomain, "face references a missing vertex");
    if (F[0] == F[1] || F[1] == F[2] || F[0] == F[2]) fail(ErrorKind::MeshQuality, "face repeats a vertex");
    if (!(face_area(m, f) > min_area)) {
      std::ostringstream os;
      os << "degenerate face " << f << " (area " << face_area(m, f) << ")";
      fail(ErrorKind::MeshQuality, os.str());
    }
  }
  EdgeTopology t = build_edges(m);
  for (size_t e = 0; e < t.edges.size(); ++e)
    if (t.edge_faces[e].size() > 2) {
      std::ostringstream os;
      os << "non-manifold edge (" << t.edges[e][0] << "," << t.edges[e][1] << ") shared by "
         << t.edge_faces[e].size() << " faces";
      fail(ErrorKind::InputDomain, os.str());
    }
}

// +1 if face f traverses a->b, -1 if it traverses b->a, 0 otherwise.
static int edge_direction(const Face& F, int a, int b) {
  for (int i = 0; i < 3; ++i) {
    if (F[i] == a && F[(i + 1) % 3] == b) return 1;
    if (F[i] == b && F[(i + 1) % 3] == a) return -1;
  }
  return 0;
}

std::vector<int> propagate_orientation(const SurfaceMesh& m, const EdgeTopology& topo, bool* orientable,
                                       int* components) {
  std::vector<int> sign(m.num_faces(), 0);
  bool ok = true;
  int comps = 0;
  for (int seed = 0; seed < m.num_faces(); ++seed) {
    if (sign[seed] != 0) continue;
    ++comps;
    sign[seed] = 1;
    std::deque<int> q{seed};
    while (!q.empty()) {
      int f = q.front();
      q.pop_front();
      for (int i = 0; i < 3; ++i) {
        int a = m.faces[f][i], b = m.faces[f][(i + 1) % 3];
        int e = topo.find(a, b);
        for (int g : topo.edge_faces[e]) {
          if (g == f) continue;
          // Consistent neighbours traverse the shared edge in opposite directions.
          int want = -sign[f] * edge_direction(m.faces[g], a, b);
          if (sign[g] == 0) {
            sign[g] = want;
            q.push_back(g);
          } else if (sign[g] != want) {
            ok = false;
          }
        }
      }
    }
  }
  if (orientable) *orientable = ok;
  if (components) *components = comps;
  return sign;
}

Vec4 tangent_cross(const Vec3& p, const Vec4& x, const Vec4& y) {
  Vec3 xh = x.head<3>() - x.head<3>().dot(p) * p;
  Vec3 yh = y.head<3>() - y.head<3>().dot(p) * p;
  Vec3 nh = p.cross(x[3] * yh - y[3] * xh);
  double nv = p.dot(xh.cross(yh));
  return Vec4(nh[0], nh[1], nh[2], nv);
}

Vec4 face_normal_at(const SurfaceMesh& m, int f, int v) {
  const Face& F = m.faces[f];
  int i = 0;
  while (F[i] != v) ++i;
  int b = F[(i + 1) % 3], c = F[(i + 2) % 3];
  const ProdPoint& pv = m.vertices[v];
  const Vec3& p = pv.base.coords();
  auto rel = [&](int w) {
    const ProdPoint& q = m.vertices[w];
    Vec4 d;
    d.head<3>() = q.base.coords() - p;
    d[3] = wrapped_delta(m, pv.height, q.height);
    return d;
  };
  return tangent_cross(p, rel(b), rel(c));
}

void compute_normals(SurfaceMesh& m) {
  EdgeTopology topo = build_edges(m);
  std::vector<int> global = propagate_orientation(m, topo);
  auto vf = vertex_faces(m);
  m.normals.assign(m.num_vertices(), ProdVector());
  m.nu.assign(m.num_vertices(), 0.0);
  for (int v = 0; v < m.num_vertices(); ++v) {
    const auto& star = vf[v];
    const Vec3& p = m.vertices[v].base.coords();
    if (star.empty()) {
      m.normals[v] = ProdVector(m.vertices[v].base, Vec3::Zero(), 1.0);
      m.nu[v] = 1.0;
      continue;
    }
    // Orient the star consistently starting from its lowest-index face.
    std::map<int, int> local;
    int anchor = *std::min_element(star.begin(), star.end());
    local[anchor] = global[anchor];
    std::deque<int> q{anchor};
    while (!q.empty()) {
      int f = q.front();
      q.pop_front();
      for (int i = 0; i < 3; ++i) {
        int a = m.faces[f][i], b = m.faces[f][(i + 1) % 3];
        if (a != v && b != v) continue;
        int e = topo.find(a, b);
        for (int g : topo.edge_faces[e]) {
          if (g == f || local.count(g)) continue;
          local[g] = -local[f] * edge_direction(m.faces[g], a, b);
          q.push_back(g);
        }
      }
    }
    Vec4 n = Vec4::Zero();
    for (int f : star) {
      int s = local.count(f) ? local[f] : global[f];
      n += s * face_normal_at(m, f, v);
    }
    double len = n.norm();
    Vec3 h = n.head<3>();
    double vert = n[3];
    if (len > 0) {
      h /= len;
      vert /= len;
    } else {
      h.setZero();
      vert = 1.0;
    }
    h -= h.dot(p) * p;
    m.normals[v] = ProdVector(m.vertices[v].base, h, vert);
    m.nu[v] = std::clamp(vert, -1.0, 1.0);
  }
}

ProdVector face_unit_normal(const SurfaceMesh& m, int f) {
  auto x = face_chordal(m, f);
  Vec3 c = (x[0].head<3>() + x[1].head<3>() + x[2].head<3>()).normalized();
  Vec4 n = tangent_cross(c, x[1] - x[0], x[2] - x[0]);
  double len = n.norm();
  if (!(len > 0)) fail(ErrorKind::MeshQuality, "face normal undefined for degenerate face");
  n /= len;
  Vec3 h = n.head<3>() - n.head<3>().dot(c) * c;
  return ProdVector(SpherePoint(c), h, n[3]);
}

std::array<Vec4, 3> triangle_area_gradient(const std::array<Vec4, 3>& x) {
  Vec4 e1 = x[1] - x[0], e2 = x[2] - x[0];
  double a = e1.squaredNorm(), b = e1.dot(e2), c = e2.squaredNorm();
  double A = 0.5 * std::sqrt(std::max(0.0, a * c - b * b));
  if (!(A > 0)) fail(ErrorKind::MeshQuality, "area gradient undefined for degenerate face");
  Vec4 g1 = (c * e1 - b * e2) / (4 * A);
  Vec4 g2 = (a * e2 - b * e1) / (4 * A);
  return {-(g1 + g2), g1, g2};
}

std::vector<double> mean_curvature_residual(const SurfaceMesh& m) {
  std::vector<Vec4> grad(m.num_vertices(), Vec4::Zero());
  std::vector<double> area(m.num_vertices(), 0.0);
  for (int f = 0; f < m.num_faces(); ++f) {
    auto x = face_chordal(m, f);
    double A = chordal_area(x);
    if (!(A > 1e-14)) fail(ErrorKind::MeshQuality, "degenerate face in residual evaluation");
    auto g = triangle_area_gradient(x);
    for (int i = 0; i < 3; ++i) {
      grad[m.faces[f][i]] += g[i];
      area[m.faces[f][i]] += A;
    }
  }
  std::vector<double> r(m.num_vertices(), 0.0);
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (area[v] == 0) continue;
    const Vec3& p = m.vertices[v].base.coords();
    Vec3 h = grad[v].head<3>();
    h -= h.dot(p) * p;
    double n = std::sqrt(h.squaredNorm() + grad[v][3] * grad[v][3]);
    r[v] = n / (area[v] / 3.0);
  }
  return r;
}

double face_angle(const SurfaceMesh& m, int f, int c) {
  const Face& F = m.faces[f];
  auto pt = [&](int i) {
    ProdPoint q = m.vertices[F[i]];
    if (i != c) q.height = m.vertices[F[c]].height + wrapped_delta(m, m.vertices[F[c]].height, q.height);
    return q;
  };
  ProdPoint o = pt(c), a = pt((c + 1) % 3), b = pt((c + 2) % 3);
  double la = prod_distance(o, a), lb = prod_distance(o, b), lc = prod_distance(a, b);
  double cosang = (la * la + lb * lb - lc * lc) / (2 * la * lb);
  return std::acos(std::clamp(cosang, -1.0, 1.0));
}

}  // namespace minsurf
