#include "minsurf/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace minsurf {

using std::numbers::pi;

int euler_characteristic(const SurfaceMesh& m) {
  EdgeTopology topo = build_edges(m);
  for (size_t e = 0; e < topo.edges.size(); ++e)
    if (topo.edge_faces[e].size() > 2) fail(ErrorKind::InputDomain, "non-manifold edge in mesh");
  std::vector<char> used(m.num_vertices(), 0);
  for (const Face& f : m.faces)
    for (int v : f) used[v] = 1;
  long long V = std::count(used.begin(), used.end(), 1);
  return static_cast<int>(V - static_cast<long long>(topo.edges.size()) + m.num_faces());
}

static int edge_dir(const Face& f, int a, int b) {
  for (int i = 0; i < 3; ++i) {
    if (f[i] == a && f[(i + 1) % 3] == b) return 1;
    if (f[i] == b && f[(i + 1) % 3] == a) return -1;
  }
  return 0;
}

ComponentOrientability orientability_by_component(const SurfaceMesh& m) {
  EdgeTopology topo = build_edges(m);
  ComponentOrientability out;
  std::vector<int> sign(m.num_faces(), 0);
  for (int seed = 0; seed < m.num_faces(); ++seed) {
    if (sign[seed] != 0) continue;
    bool ok = true;
    sign[seed] = 1;
    std::deque<int> q{seed};
    while (!q.empty()) {
      int f = q.front();
      q.pop_front();
      for (int i = 0; i < 3; ++i) {
        int a = m.faces[f][i], b = m.faces[f][(i + 1) % 3];
        for (int g : topo.edge_faces[topo.find(a, b)]) {
          if (g == f) continue;
          int want = -sign[f] * edge_dir(m.faces[g], a, b);
          if (sign[g] == 0) {
            sign[g] = want;
            q.push_back(g);
          } else if (sign[g] != want) {
            ok = false;
          }
        }
      }
    }
    ++out.components;
    out.orientable.push_back(ok);
  }
  return out;
}

bool orientability(const SurfaceMesh& m) {
  ComponentOrientability c = orientability_by_component(m);
  if (c.components == 0) fail(ErrorKind::InputDomain, "empty mesh");
  for (bool b : c.orientable)
    if (b != c.orientable.front())
      fail(ErrorKind::InconsistentConfiguration, "components disagree on orientability");
  return c.orientable.front();
}

// Separation

namespace {

Vec3 fibonacci_point(int i, int n) {
  const double golden = pi * (3.0 - std::sqrt(5.0));
  double z = 1.0 - (2.0 * i + 1.0) / n;
  double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  double phi = golden * i;
  return Vec3(r * std::cos(phi), r * std::sin(phi), z);
}

double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return a.dot(b.cross(c)); }

bool is_slice_union(const SurfaceMesh& m) {
  for (const Face& f : m.faces) {
    double t0 = m.vertices[f[0]].height;
    for (int i = 1; i < 3; ++i)
      if (std::abs(wrapped_delta(m, t0, m.vertices[f[i]].height)) > 1e-12) return false;
  }
  return !m.faces.empty();
}

}  // namespace

bool separation_parity(const SurfaceMesh& m, int fiber_samples, SeparationDetail* detail) {
  if (fiber_samples < 1) fail(ErrorKind::InputDomain, "fiber sample count must be positive");
  SeparationDetail d;
  d.slice_excluded = is_slice_union(m);
  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss;
  const double edge_tol = 1e-10;
  const double angle_tol = 1e-6;
  const int budget = 16;

  for (int s = 0; s < fiber_samples; ++s) {
    Vec3 p = fibonacci_point(s, fiber_samples);
    int tries = 0;
    for (;;) {
      bool ambiguous = false;
      int crossings = 0;
      for (int f = 0; f < m.num_faces() && !ambiguous; ++f) {
        const Vec3& a = m.vertices[m.faces[f][0]].base.coords();
        const Vec3& b = m.vertices[m.faces[f][1]].base.coords();
        const Vec3& c = m.vertices[m.faces[f][2]].base.coords();
        if (p.dot(a + b + c) <= 0) continue;
        double o = det3(a, b, c);
        double d0 = det3(p, b, c), d1 = det3(a, p, c), d2 = det3(a, b, p);
        double scale = (a - b).norm() + (b - c).norm() + (c - a).norm();
        double eps = edge_tol * scale;
        bool pos = d0 > eps && d1 > eps && d2 > eps;
        bool neg = d0 < -eps && d1 < -eps && d2 < -eps;
        if (pos || neg) {
          // Transversality: the face must not be (nearly) vertical.
          if (std::abs(o) < angle_tol * scale * scale) ambiguous = true;
          else ++crossings;
          continue;
        }
        bool near = std::abs(d0) <= eps || std::abs(d1) <= eps || std::abs(d2) <= eps;
        if (near) {
          bool in_closure = (d0 >= -eps && d1 >= -eps && d2 >= -eps) || (d0 <= eps && d1 <= eps && d2 <= eps);
          if (in_closure) ambiguous = true;
        }
      }
      if (!ambiguous) {
        if (crossings % 2 != 0) ++d.odd_fibers;
        break;
      }
      if (++tries > budget)
        fail(ErrorKind::Indeterminate, "fiber sampling could not avoid tangential or edge crossings");
      ++d.resampled;
      p = (p + 1e-3 * Vec3(gauss(rng), gauss(rng), gauss(rng))).normalized();
    }
    ++d.samples;
  }
  if (detail) *detail = d;
  return d.odd_fibers == 0;
}

// Poincare-Hopf

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<int> ring_distance(const std::vector<std::vector<int>>& nbr, const std::vector<int>& seeds, int depth) {
  std::vector<int> dist(nbr.size(), -1);
  std::deque<int> q;
  for (int s : seeds) {
    dist[s] = 0;
    q.push_back(s);
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    if (dist[v] >= depth) continue;
    for (int w : nbr[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
  }
  return dist;
}

double wrap_angle(double a) {
  while (a > pi) a -= 2 * pi;
  while (a <= -pi) a += 2 * pi;
  return a;
}

}  // namespace

PoincareHopfReport poincare_hopf_audit(const SurfaceMesh& input, double threshold, int cluster_rings) {
  SurfaceMesh m = input;
  if (static_cast<int>(m.nu.size()) != m.num_vertices() || static_cast<int>(m.normals.size()) != m.num_vertices())
    compute_normals(m);
  PoincareHopfReport rep;
  const int n = m.num_vertices();
  std::vector<int> cand;
  for (int v = 0; v < n; ++v)
    if (1.0 - m.nu[v] * m.nu[v] < threshold) cand.push_back(v);
  if (!cand.empty() && static_cast<int>(cand.size()) == n) {
    rep.applicable = false;
    return rep;
  }
  auto nbr = vertex_neighbors(m);
  std::vector<int> cand_id(n, -1);
  for (size_t i = 0; i < cand.size(); ++i) cand_id[cand[i]] = static_cast<int>(i);
  UnionFind uf(static_cast<int>(cand.size()));
  for (size_t i = 0; i < cand.size(); ++i) {
    // Local BFS limited to cluster_rings.
    std::unordered_map<int, int> dist{{cand[i], 0}};
    std::deque<int> q{cand[i]};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      if (cand_id[v] >= 0) uf.unite(static_cast<int>(i), cand_id[v]);
      if (dist[v] >= cluster_rings) continue;
      for (int w : nbr[v])
        if (!dist.count(w)) {
          dist[w] = dist[v] + 1;
          q.push_back(w);
        }
    }
  }
  std::map<int, std::vector<int>> clusters;
  for (size_t i = 0; i < cand.size(); ++i) clusters[uf.find(static_cast<int>(i))].push_back(cand[i]);

  for (auto& [root, members] : clusters) {
    ZeroSite site;
    site.cluster_size = static_cast<int>(members.size());
    site.vertex = *std::max_element(members.begin(), members.end(),
                                    [&](int a, int b) { return m.nu[a] * m.nu[a] < m.nu[b] * m.nu[b]; });
    const Vec3 pc = m.vertices[site.vertex].base.coords();
    Vec3 e1 = (std::abs(pc.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY());
    e1 = (e1 - e1.dot(pc) * pc).normalized();
    Vec3 e2 = pc.cross(e1);

    bool done = false;
    std::string last_problem;
    for (int extra = 2; extra <= 5 && !done; ++extra) {
      std::vector<int> dist = ring_distance(nbr, members, extra + 1);
      // Patch faces: every vertex within `extra` rings of the cluster.
      std::map<std::pair<int, int>, int> edge_count;
          for (int f = 0; f < m.num_faces(); ++f) {
        const Face& F = m.faces[f];
        bool in = true;
        for (int v : F)
          if (dist[v] < 0 || dist[v] > extra) in = false;
        if (!in) continue;
        for (int i = 0; i < 3; ++i) {
          int a = F[i], b = F[(i + 1) % 3];
          ++edge_count[{std::min(a, b), std::max(a, b)}];
        }
      }
      std::map<int, std::vector<int>> loop_adj;
      for (auto& [e, c] : edge_count)
        if (c == 1) {
          loop_adj[e.first].push_back(e.second);
          loop_adj[e.second].push_back(e.first);
        }
      bool ok = !loop_adj.empty();
      for (auto& [v, adj] : loop_adj)
        if (adj.size() != 2) ok = false;
      if (!ok) {
        last_problem = "patch boundary is not a simple loop";
        continue;
      }
      std::vector<int> loop{loop_adj.begin()->first};
      int prev = -1, cur = loop.front();
      for (;;) {
        int nxt = loop_adj[cur][0] == prev ? loop_adj[cur][1] : loop_adj[cur][0];
        if (nxt == loop.front()) break;
        prev = cur;
        cur = nxt;
        loop.push_back(cur);
        if (loop.size() > loop_adj.size()) break;
      }
      if (loop.size() != loop_adj.size()) {
        last_problem = "patch boundary has several loops";
        continue;
      }
      double wT = 0, wP = 0;
      bool ambiguous = false;
      auto t_angle = [&](int v) {
        const ProdVector& N = m.normals[v];
        Vec3 th = -m.nu[v] * N.horizontal;
        return std::atan2(th.dot(e2), th.dot(e1));
      };
      auto p_angle = [&](int v) {
        Vec3 d = m.vertices[v].base.coords() - pc;
        return std::atan2(d.dot(e2), d.dot(e1));
      };
      for (size_t i = 0; i < loop.size(); ++i) {
        int a = loop[i], b = loop[(i + 1) % loop.size()];
        Vec3 ta = -m.nu[a] * m.normals[a].horizontal, tb = -m.nu[b] * m.normals[b].horizontal;
        if (ta.norm() < 1e-12 || tb.norm() < 1e-12) ambiguous = true;
        double dT = wrap_angle(t_angle(b) - t_angle(a));
        if (std::abs(dT) > pi / 2) ambiguous = true;
        wT += dT;
        wP += wrap_angle(p_angle(b) - p_angle(a));
      }
      if (ambiguous) {
        last_problem = "T turns too fast along the ring";
        continue;
      }
      int turns_p = static_cast<int>(std::lround(wP / (2 * pi)));
      if (std::abs(turns_p) != 1) {
        last_problem = "ring does not encircle the site";
        continue;
      }
      site.index = static_cast<int>(std::lround(wT / (2 * pi))) * turns_p;
      done = true;
    }
    if (!done) {
      std::ostringstream os;
      os << "zero site at vertex " << site.vertex << ": " << last_problem << "; refine the mesh";
      fail(ErrorKind::Audit, os.str());
    }
    rep.sum += site.index;
    rep.sites.push_back(site);
  }
  return rep;
}

// Intersection

namespace {

struct CellKey {
  long long x, y, z, t;
  bool operator==(const CellKey& o) const { return x == o.x && y == o.y && z == o.z && t == o.t; }
};

struct CellHash {
  size_t operator()(const CellKey& k) const {
    size_t h = std::hash<long long>()(k.x);
    h = h * 1000003u ^ std::hash<long long>()(k.y);
    h = h * 1000003u ^ std::hash<long long>()(k.z);
    h = h * 1000003u ^ std::hash<long long>()(k.t);
    return h;
  }
};

struct Grid {
  double cell = 1;
  double period = 0;  // 0: no wrap
  long long nt = 0;
  double tcell = 1;

  long long tcell_of(double t) const { return static_cast<long long>(std::floor(t / tcell)); }
  long long wrap_t(long long i) const { return nt > 0 ? ((i % nt) + nt) % nt : i; }
  long long c(double x) const { return static_cast<long long>(std::floor(x / cell)); }
};

double max_edge_length(const SurfaceMesh& m) {
  double L = 0;
  for (int f = 0; f < m.num_faces(); ++f) {
    auto x = face_chordal(m, f);
    for (int i = 0; i < 3; ++i) L = std::max(L, (x[i] - x[(i + 1) % 3]).norm());
  }
  return L;
}

template <class Fn>
void face_cells(const SurfaceMesh& m, int f, const Grid& g, Fn&& fn) {
  auto x = face_chordal(m, f);
  Vec4 lo = x[0].cwiseMin(x[1]).cwiseMin(x[2]);
  Vec4 hi = x[0].cwiseMax(x[1]).cwiseMax(x[2]);
  for (long long ix = g.c(lo[0]); ix <= g.c(hi[0]); ++ix)
    for (long long iy = g.c(lo[1]); iy <= g.c(hi[1]); ++iy)
      for (long long iz = g.c(lo[2]); iz <= g.c(hi[2]); ++iz)
        for (long long it = g.tcell_of(lo[3]); it <= g.tcell_of(hi[3]); ++it) fn(CellKey{ix, iy, iz, g.wrap_t(it)});
}

using P3 = Eigen::Vector3d;

// Local chart around base point p0: gnomonic base coordinates plus height.
struct Chart {
  Vec3 p0, e1, e2;
  double t0;
  const SurfaceMesh* mesh;
  P3 map(const ProdPoint& x) const {
    Vec3 q = x.base.coords();
    double d = q.dot(p0);
    Vec3 g = q / std::max(d, 1e-3);
    return P3(g.dot(e1), g.dot(e2), wrapped_delta(*mesh, t0, x.height));
  }
};

bool segment_hits_triangle(const P3& s0, const P3& s1, const P3& a, const P3& b, const P3& c) {
  const double eps = 1e-12;
  P3 d = s1 - s0;
  P3 e1 = b - a, e2 = c - a;
  P3 pv = d.cross(e2);
  double det = e1.dot(pv);
  if (std::abs(det) < eps * e1.norm() * e2.norm() * std::max(d.norm(), 1e-300)) return false;
  double inv = 1.0 / det;
  P3 tv = s0 - a;
  double u = tv.dot(pv) * inv;
  if (u < -eps || u > 1 + eps) return false;
  P3 qv = tv.cross(e1);
  double v = d.dot(qv) * inv;
  if (v < -eps || u + v > 1 + eps) return false;
  double t = e2.dot(qv) * inv;
  return t >= -eps && t <= 1 + eps;
}

bool triangles_intersect(const std::array<P3, 3>& A, const std::array<P3, 3>& B) {
  for (int i = 0; i < 3; ++i) {
    if (segment_hits_triangle(A[i], A[(i + 1) % 3], B[0], B[1], B[2])) return true;
    if (segment_hits_triangle(B[i], B[(i + 1) % 3], A[0], A[1], A[2])) return true;
  }
  return false;
}

}  // namespace

IntersectionResult intersection_check(const SurfaceMesh& a, const SurfaceMesh& b) {
  if (a.quotient_circumference.has_value() != b.quotient_circumference.has_value() ||
      (a.quotient_circumference && std::abs(*a.quotient_circumference - *b.quotient_circumference) > 1e-12))
    fail(ErrorKind::InputDomain, "meshes live in different quotients");
  if (a.faces.empty() || b.faces.empty()) fail(ErrorKind::InputDomain, "empty mesh");
  Grid g;
  g.cell = std::max({max_edge_length(a), max_edge_length(b), 1e-6});
  g.tcell = g.cell;
  if (a.quotient_circumference) {
    g.period = *a.quotient_circumference;
    g.nt = std::max<long long>(1, static_cast<long long>(std::floor(g.period / g.cell)));
    g.tcell = g.period / g.nt;
  }

  std::unordered_map<CellKey, std::vector<int>, CellHash> bf;
  for (int f = 0; f < b.num_faces(); ++f) face_cells(b, f, g, [&](const CellKey& k) { bf[k].push_back(f); });

  IntersectionResult res;
  std::vector<int> cands;
  for (int f = 0; f < a.num_faces() && !res.intersects; ++f) {
    cands.clear();
    face_cells(a, f, g, [&](const CellKey& k) {
      auto it = bf.find(k);
      if (it != bf.end()) cands.insert(cands.end(), it->second.begin(), it->second.end());
    });
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    if (cands.empty()) continue;
    Chart ch;
    ch.p0 = a.vertices[a.faces[f][0]].base.coords();
    ch.e1 = (std::abs(ch.p0.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY());
    ch.e1 = (ch.e1 - ch.e1.dot(ch.p0) * ch.p0).normalized();
    ch.e2 = ch.p0.cross(ch.e1);
    ch.t0 = a.vertices[a.faces[f][0]].height;
    std::array<P3, 3> A;
    ch.mesh = &a;
    for (int i = 0; i < 3; ++i) A[i] = ch.map(a.vertices[a.faces[f][i]]);
    ch.mesh = &b;
    for (int gf : cands) {
      std::array<P3, 3> B;
      for (int i = 0; i < 3; ++i) B[i] = ch.map(b.vertices[b.faces[gf][i]]);
      ++res.pairs_tested;
      if (triangles_intersect(A, B)) {
        res.intersects = true;
        break;
      }
    }
  }

  // Closest vertex pair, searched in neighbouring cells.
  std::unordered_map<CellKey, std::vector<int>, CellHash> bv;
  auto vkey = [&](const SurfaceMesh& m, int v) {
    Vec3 p = m.vertices[v].base.coords();
    double t = m.vertices[v].height;
    if (g.period > 0) t = t - g.period * std::floor(t / g.period);
    return CellKey{g.c(p.x()), g.c(p.y()), g.c(p.z()), g.wrap_t(g.tcell_of(t))};
  };
  for (int v = 0; v < b.num_vertices(); ++v) bv[vkey(b, v)].push_back(v);
  double best = std::numeric_limits<double>::infinity();
  for (int v = 0; v < a.num_vertices(); ++v) {
    CellKey k = vkey(a, v);
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz)
          for (int dt = -1; dt <= 1; ++dt) {
            auto it = bv.find(CellKey{k.x + dx, k.y + dy, k.z + dz, g.wrap_t(k.t + dt)});
            if (it == bv.end()) continue;
            for (int w : it->second) {
              double dh = g.period > 0 ? wrapped_delta(a, a.vertices[v].height, b.vertices[w].height)
                                       : b.vertices[w].height - a.vertices[v].height;
              double d = std::hypot((a.vertices[v].base.coords() - b.vertices[w].base.coords()).norm(), dh);
              best = std::min(best, d);
            }
          }
  }
  res.min_vertex_distance = best;
  return res;
}

// Geodesic companions

GeodesicCompanionReport geodesic_companions(const SurfaceMesh& m, double tol) {
  GeodesicCompanionReport rep;
  if (!m.quotient_circumference) return rep;
  const double P = *m.quotient_circumference;
  EdgeTopology topo = build_edges(m);

  struct Fiber {
    Vec3 p;
    double length;
  };
  struct Circle {
    Vec3 pole;
    double t;
    double length;
  };
  std::vector<Fiber> fibers;
  std::vector<Circle> circles;
  auto canon = [](Vec3 n) {
    for (int i = 0; i < 3; ++i) {
      if (n[i] > 1e-9) break;
      if (n[i] < -1e-9) return Vec3(-n);
    }
    return n;
  };
  auto wrap_t = [&](double t) { return t - P * std::floor(t / P); };

  for (const auto& e : topo.edges) {
    const ProdPoint& x = m.vertices[e[0]];
    const ProdPoint& y = m.vertices[e[1]];
    double dt = wrapped_delta(m, x.height, y.height);
    double db = sphere_distance(x.base, y.base);
    if (db < tol && std::abs(dt) > tol) {
      Fiber* hit = nullptr;
      for (auto& f : fibers)
        if ((f.p - x.base.coords()).norm() < 1e-6) hit = &f;
      if (!hit) {
        fibers.push_back({x.base.coords(), 0.0});
        hit = &fibers.back();
      }
      hit->length += std::abs(dt);
    } else if (std::abs(dt) < tol && db > tol) {
      Vec3 n = canon(x.base.coords().cross(y.base.coords()).normalized());
      double t = wrap_t(x.height);
      Circle* hit = nullptr;
      for (auto& c : circles)
        if ((c.pole - n).norm() < 1e-6 && std::abs(wrapped_delta(m, c.t, t)) < 1e-6) hit = &c;
      if (!hit) {
        circles.push_back({n, t, 0.0});
        hit = &circles.back();
      }
      hit->length += db;
    }
  }
  for (const auto& f : fibers)
    if (f.length > P * (1 - 1e-6)) rep.vertical_fibers.push_back(f.p);
  for (const auto& c : circles)
    if (c.length > 2 * pi * (1 - 1e-6)) rep.horizontal_circles.push_back({c.pole, c.t});

  for (const Vec3& p : rep.vertical_fibers) {
    bool found = false;
    for (const Vec3& q : rep.vertical_fibers)
      if ((q + p).norm() < 1e-6) found = true;
    if (!found) {
      std::ostringstream os;
      os << "vertical fiber over (" << p.x() << ", " << p.y() << ", " << p.z() << ") has no antipodal companion";
      rep.violations.push_back(os.str());
    }
  }
  for (const auto& [n, t] : rep.horizontal_circles) {
    bool found = false;
    for (const auto& [n2, t2] : rep.horizontal_circles)
      if ((n2 - n).norm() < 1e-6 && std::abs(wrapped_delta(m, t + 0.5 * P, t2)) < 1e-6) found = true;
    if (!found) {
      std::ostringstream os;
      os << "horizontal great circle at t=" << t << " has no companion at t+pi r";
      rep.violations.push_back(os.str());
    }
  }
  return rep;
}

TopologyReport topology_report(const SurfaceMesh& m, int fiber_samples) {
  TopologyReport r;
  r.chi = euler_characteristic(m);
  r.orientable = orientability(m);
  r.genus = r.orientable ? 1 - r.chi / 2 : 2 - r.chi;
  r.separates = separation_parity(m, fiber_samples, &r.separation);
  r.ph = poincare_hopf_audit(m);
  r.companions = geodesic_companions(m);
  return r;
}

std::string topology_report_text(const TopologyReport& r) {
  nlohmann::ordered_json j;
  j["chi"] = r.chi;
  j["orientable"] = r.orientable;
  j["genus"] = r.genus;
  j["genus_kind"] = r.orientable ? "orientable" : "non-orientable";
  j["separates"] = r.separates;
  j["separation"] = {{"samples", r.separation.samples},
                     {"resampled", r.separation.resampled},
                     {"odd_fibers", r.separation.odd_fibers},
                     {"slice_excluded", r.separation.slice_excluded}};
  nlohmann::ordered_json ph;
  ph["applicable"] = r.ph.applicable;
  ph["sum"] = r.ph.sum;
  ph["zero_count"] = r.ph.sites.size();
  nlohmann::ordered_json sites = nlohmann::ordered_json::array();
  for (const auto& s : r.ph.sites) sites.push_back({{"vertex", s.vertex}, {"index", s.index}, {"cluster", s.cluster_size}});
  ph["zeros"] = sites;
  j["poincare_hopf"] = ph;
  nlohmann::ordered_json gc;
  gc["vertical_fibers"] = r.companions.vertical_fibers.size();
  gc["horizontal_circles"] = r.companions.horizontal_circles.size();
  gc["violations"] = r.companions.violations;
  gc["pass"] = r.companions.pass();
  j["geodesic_companions"] = gc;
  if (r.intersects) j["intersects"] = *r.intersects;
  if (r.min_distance) j["min_distance"] = *r.min_distance;
  return "TOPOLOGY v1\n" + j.dump(2) + "\n";
}

}  // namespace minsurf
