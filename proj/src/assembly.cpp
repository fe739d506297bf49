#include "minsurf/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "minsurf/topology.hpp"

namespace minsurf {

using std::numbers::pi;

const char* family_name(Family f) {
  switch (f) {
    case Family::Cube: return "cube";
    case Family::Balloon: return "balloon";
    case Family::Pk: return "pk";
    case Family::Rosenberg: return "rosenberg";
    case Family::None: return "none";
  }
  return "none";
}

Family family_from_name(const std::string& s) {
  for (Family f : {Family::Cube, Family::Balloon, Family::Pk, Family::Rosenberg, Family::None})
    if (s == family_name(f)) return f;
  fail(ErrorKind::InputDomain, "unknown family '" + s + "'");
}

TilingSpec make_tiling(Family family, int param, RosenbergMode mode) {
  TilingSpec t;
  t.family = family;
  t.mode = mode;
  switch (family) {
    case Family::Cube: t.copies = 48; break;
    case Family::Balloon:
    case Family::Pk:
      if (param < 2) fail(ErrorKind::InputDomain, "k must be at least 2");
      t.k = param;
      t.copies = 8 * param;
      break;
    case Family::Rosenberg:
      if (param < 2) fail(ErrorKind::InputDomain, "d must be at least 2");
      t.d = param;
      t.copies = (mode == RosenbergMode::Single ? 4 : 8) * param;
      break;
    case Family::None: break;
  }
  return t;
}

std::array<double, 3> family_angles(const TilingSpec& spec) {
  switch (spec.family) {
    case Family::Cube: return {pi / 3, pi / 3, pi / 2};
    case Family::Balloon: return {pi / 2, pi / 2, pi / spec.k};
    case Family::Pk: return {pi / spec.k, pi / 2, pi / 2};
    default: fail(ErrorKind::InputDomain, std::string("family ") + family_name(spec.family) + " has no prism angles");
  }
}

namespace {

struct ElementKey {
  std::array<long long, 11> v;
  bool operator<(const ElementKey& o) const { return v < o.v; }
};

ElementKey element_key(const Isometry& g, double period) {
  ElementKey k;
  const double q = 1e7;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k.v[3 * i + j] = std::llround(g.sphere(i, j) * q);
  k.v[9] = g.height_sign > 0 ? 1 : -1;
  double o = g.height_offset - period * std::floor(g.height_offset / period);
  k.v[10] = std::llround(o / period * q) % static_cast<long long>(q);
  return k;
}

struct Orbit {
  std::vector<Isometry> elements;
  std::vector<std::string> words;
};

Orbit orbit_closure(const std::vector<Isometry>& gens, const std::string& letters, double period, int budget) {
  Orbit o;
  std::map<ElementKey, int> seen;
  o.elements.push_back(Isometry::identity());
  o.words.push_back("");
  seen[element_key(o.elements[0], period)] = 0;
  size_t level_begin = 0;
  for (int depth = 0; depth < budget; ++depth) {
    size_t level_end = o.elements.size();
    for (size_t i = level_begin; i < level_end; ++i)
      for (size_t s = 0; s < gens.size(); ++s) {
        Isometry g = o.elements[i].compose(gens[s]);
        g.kind = IsometryKind::Composite;
        ElementKey key = element_key(g, period);
        if (seen.count(key)) continue;
        seen[key] = static_cast<int>(o.elements.size());
        o.elements.push_back(g);
        o.words.push_back(o.words[i] + letters[s]);
      }
    if (o.elements.size() == level_end) return o;
    level_begin = level_end;
  }
  fail(ErrorKind::Assembly, "reflection orbit does not close within the word-length budget");
}

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

struct Key5 {
  std::array<long long, 5> c;
  bool operator==(const Key5& o) const { return c == o.c; }
};

struct Key5Hash {
  size_t operator()(const Key5& k) const {
    size_t h = 0;
    for (long long x : k.c) h = h * 1000003u ^ std::hash<long long>()(x);
    return h;
  }
};

using Vec5 = Eigen::Matrix<double, 5, 1>;

Vec5 embed(const ProdPoint& x, double period) {
  double rho = period / (2 * pi);
  double a = 2 * pi * x.height / period;
  const Vec3& p = x.base.coords();
  Vec5 v;
  v << p.x(), p.y(), p.z(), rho * std::cos(a), rho * std::sin(a);
  return v;
}

double wrap(double t, double period) { return t - period * std::floor(t / period); }

double piece_diameter(const SurfaceMesh& m) {
  Vec4 lo = Vec4::Constant(std::numeric_limits<double>::infinity());
  Vec4 hi = -lo;
  for (const auto& v : m.vertices) {
    lo = lo.cwiseMin(v.chordal());
    hi = hi.cwiseMax(v.chordal());
  }
  return (hi - lo).norm();
}

// Transforms the piece by every orbit element and identifies boundary
// vertices that coincide in the quotient of the given period.
AssembledSurface sew(const SurfaceMesh& piece, const Orbit& orbit, double period, double snap_tol) {
  const int nv = piece.num_vertices();
  const int copies = static_cast<int>(orbit.elements.size());
  const double tol = snap_tol * std::max(piece_diameter(piece), 1e-12);

  std::vector<int> boundary;
  for (int v = 0; v < nv; ++v)
    if (piece.tag(v) != BoundaryLabel::None) boundary.push_back(v);
  const int nb = static_cast<int>(boundary.size());

  std::vector<ProdPoint> pts(static_cast<size_t>(nv) * copies);
  for (int c = 0; c < copies; ++c)
    for (int v = 0; v < nv; ++v) {
      ProdPoint x = orbit.elements[c].apply(piece.vertices[v]);
      x.height = wrap(x.height, period);
      pts[static_cast<size_t>(c) * nv + v] = x;
    }

  // Candidates: boundary vertices of every copy.
  const int ncand = nb * copies;
  auto cand_point = [&](int i) { return pts[static_cast<size_t>(i / nb) * nv + boundary[i % nb]]; };
  std::vector<Vec5> emb(ncand);
  for (int i = 0; i < ncand; ++i) emb[i] = embed(cand_point(i), period);
  auto key_of = [&](const Vec5& x) {
    Key5 k;
    for (int j = 0; j < 5; ++j) k.c[j] = static_cast<long long>(std::floor(x[j] / tol));
    return k;
  };
  std::unordered_map<Key5, std::vector<int>, Key5Hash> grid;
  for (int i = 0; i < ncand; ++i) grid[key_of(emb[i])].push_back(i);
  UnionFind uf(ncand);
  double max_gap = 0;
  for (int i = 0; i < ncand; ++i) {
    Key5 k = key_of(emb[i]);
    for (int code = 0; code < 243; ++code) {
      Key5 q = k;
      int r = code;
      for (int j = 0; j < 5; ++j, r /= 3) q.c[j] += r % 3 - 1;
      auto it = grid.find(q);
      if (it == grid.end()) continue;
      for (int o : it->second) {
        if (o <= i || o / nb == i / nb) continue;
        double d = (emb[o] - emb[i]).norm();
        if (d <= tol) {
          uf.unite(i, o);
          max_gap = std::max(max_gap, d);
        }
      }
    }
  }

  std::map<int, std::vector<int>> clusters;
  for (int i = 0; i < ncand; ++i) clusters[uf.find(i)].push_back(i);
  std::vector<int> singles;
  for (auto& [root, members] : clusters)
    if (members.size() == 1) singles.push_back(members[0]);
  if (!singles.empty()) {
    double worst = 0;
    int checked = 0;
    for (int i : singles) {
      if (++checked > 200) break;
      double best = std::numeric_limits<double>::infinity();
      for (int o = 0; o < ncand; ++o)
        if (o / nb != i / nb) best = std::min(best, (emb[o] - emb[i]).norm());
      worst = std::max(worst, best);
    }
    std::ostringstream os;
    os << singles.size() << " seam vertices have no partner within the snap tolerance " << tol
       << " (worst seam gap " << worst << ")";
    fail(ErrorKind::Sewing, os.str());
  }

  AssembledSurface out;
  SurfaceMesh& m = out.mesh;
  std::vector<int> index(static_cast<size_t>(nv) * copies, -1);
  for (auto& [root, members] : clusters) {
    ProdPoint first = cand_point(members[0]);
    Vec3 base = Vec3::Zero();
    double dt = 0;
    for (int i : members) {
      ProdPoint x = cand_point(i);
      base += x.base.coords();
      double d = x.height - first.height;
      d -= period * std::round(d / period);
      dt += d;
    }
    BoundaryLabel tag = piece.tag(boundary[members[0] % nb]);
    m.vertices.emplace_back(base.normalized(), wrap(first.height + dt / members.size(), period));
    m.boundary_tags.push_back(tag);
    for (int i : members) index[static_cast<size_t>(i / nb) * nv + boundary[i % nb]] = m.num_vertices() - 1;
  }
  for (int c = 0; c < copies; ++c)
    for (int v = 0; v < nv; ++v) {
      size_t id = static_cast<size_t>(c) * nv + v;
      if (index[id] >= 0) continue;
      m.vertices.push_back(pts[id]);
      m.boundary_tags.push_back(BoundaryLabel::None);
      index[id] = m.num_vertices() - 1;
    }
  for (int c = 0; c < copies; ++c) {
    bool flip = orbit.words[c].size() % 2 == 1;
    for (const Face& f : piece.faces) {
      Face g{index[static_cast<size_t>(c) * nv + f[0]], index[static_cast<size_t>(c) * nv + f[1]],
             index[static_cast<size_t>(c) * nv + f[2]]};
      if (g[0] == g[1] || g[1] == g[2] || g[0] == g[2])
        fail(ErrorKind::Sewing, "a face collapsed while sewing seams");
      if (flip) std::swap(g[1], g[2]);
      m.faces.push_back(g);
    }
  }
  m.quotient_circumference = period;

  EdgeTopology topo = build_edges(m);
  int open = 0, over = 0;
  for (const auto& ef : topo.edge_faces) {
    if (ef.size() == 1) ++open;
    if (ef.size() > 2) ++over;
  }
  if (open || over) {
    std::ostringstream os;
    os << "assembled mesh is not watertight (" << open << " boundary edges, " << over << " non-manifold edges)";
    fail(ErrorKind::Assembly, os.str());
  }
  compute_normals(m);
  out.r = period / (2 * pi);
  out.copies = copies;
  out.generator_log = orbit.elements;
  out.words = orbit.words;
  out.max_seam_gap = max_gap;
  return out;
}

constexpr int kWordBudget = 64;

}  // namespace

AssembledSurface orbit_assemble(const SurfaceMesh& piece, const PrismData& prism, const TilingSpec& spec,
                                double snap_tol) {
  auto [al, be, ga] = family_angles(spec);
  if (std::abs(prism.alpha - al) > 2e-3 || std::abs(prism.beta - be) > 2e-3 ||
      std::abs(prism.gamma - ga) > 2e-3) {
    std::ostringstream os;
    os << "prism angles (" << prism.alpha << ", " << prism.beta << ", " << prism.gamma
       << ") do not match the " << family_name(spec.family) << " family (" << al << ", " << be << ", " << ga << ")";
    fail(ErrorKind::InconsistentConfiguration, os.str());
  }
  if (!(prism.h > 0)) fail(ErrorKind::InputDomain, "prism height must be positive");
  if (piece.boundary_tags.size() != piece.vertices.size())
    fail(ErrorKind::InputDomain, "piece boundary vertices must be tagged");

  // Gauge: C at the north pole, A on the +x meridian.
  Vec3 f3 = prism.C.normalized();
  Vec3 f1 = (prism.A - prism.A.dot(f3) * f3).normalized();
  Vec3 f2 = f3.cross(f1);
  Mat3 R;
  R.row(0) = f1.transpose();
  R.row(1) = f2.transpose();
  R.row(2) = f3.transpose();
  double side = (R * prism.B).y() >= 0 ? 1.0 : -1.0;

  // Exact prism with the family angles.
  double cos_a = (std::cos(al) + std::cos(be) * std::cos(ga)) / (std::sin(be) * std::sin(ga));
  double cos_b = (std::cos(be) + std::cos(al) * std::cos(ga)) / (std::sin(al) * std::sin(ga));
  double a = std::acos(std::clamp(cos_a, -1.0, 1.0)), b = std::acos(std::clamp(cos_b, -1.0, 1.0));
  Vec3 C = Vec3::UnitZ();
  Vec3 A(std::sin(b), 0.0, std::cos(b));
  Vec3 B(std::sin(a) * std::cos(ga), side * std::sin(a) * std::sin(ga), std::cos(a));
  auto inward = [](const Vec3& p, const Vec3& q, const Vec3& opp) {
    Vec3 n = p.cross(q).normalized();
    return n.dot(opp) >= 0 ? n : Vec3(-n);
  };
  Vec3 n23 = inward(A, B, C), n45 = inward(C, B, A), n51 = inward(C, A, B);
  const double h = prism.h;

  SurfaceMesh p = piece;
  double moved = 0;
  for (int v = 0; v < p.num_vertices(); ++v) {
    Vec3 x = R * p.vertices[v].base.coords();
    double t = p.vertices[v].height;
    auto onto = [&](const Vec3& n) { x = (x - x.dot(n) * n).normalized(); };
    using L = BoundaryLabel;
    switch (p.tag(v)) {
      case L::Edge23: onto(n23); break;
      case L::Edge45: onto(n45); break;
      case L::Edge51: onto(n51); break;
      case L::Edge12: t = h; break;
      case L::Edge34: t = 0; break;
      case L::Corner1: onto(n51); t = h; break;
      case L::Corner2: onto(n23); t = h; break;
      case L::Corner3: onto(n23); t = 0; break;
      case L::Corner4: onto(n45); t = 0; break;
      case L::Corner5: x = C; break;
      default: break;
    }
    ProdPoint np(x, t);
    moved = std::max(moved, prod_distance(np, ProdPoint(R * p.vertices[v].base.coords(), p.vertices[v].height)));
    p.vertices[v] = np;
  }

  std::vector<Isometry> gens{Isometry::vertical_plane_reflection(n23), Isometry::vertical_plane_reflection(n45),
                             Isometry::vertical_plane_reflection(n51), Isometry::slice_reflection(0.0),
                             Isometry::slice_reflection(h)};
  const double period = 2 * h;
  Orbit orbit = orbit_closure(gens, "ABCLU", period, kWordBudget);
  if (static_cast<int>(orbit.elements.size()) != spec.copies) {
    std::ostringstream os;
    os << "orbit has " << orbit.elements.size() << " copies, the " << family_name(spec.family) << " family needs "
       << spec.copies;
    fail(ErrorKind::Assembly, os.str());
  }
  AssembledSurface s = sew(p, orbit, period, snap_tol);
  s.spec = spec;
  s.snap_displacement = moved;
  s.wall_angle_defect = std::abs(prism.gamma_measured - ga);
  return s;
}

AssembledSurface rosenberg_assemble(const PlateauSolution& sol, RosenbergMode mode, double snap_tol) {
  const double gamma = sol.spec.hinge.gamma;
  int d = static_cast<int>(std::lround(pi / gamma));
  if (d < 2 || std::abs(gamma - pi / d) > 1e-9) fail(ErrorKind::InputDomain, "rosenberg contour needs gamma = pi/d");
  const TriangleData& tri = sol.contour.triangle;
  if (std::abs(tri.alpha_tilde - pi / 2) > 1e-9 || std::abs(tri.beta_tilde - pi / 2) > 1e-9)
    fail(ErrorKind::InputDomain, "rosenberg contour needs right angles at the vertical edges (a = b = pi/2)");
  const double h = sol.spec.h_tilde;
  std::vector<Isometry> gens;
  std::string letters;
  for (int i = 0; i < 5; ++i) {
    const PolygonEdge& e = sol.contour.edges[i];
    const ProdPoint& x = sol.contour.vertices[e.from];
    const ProdPoint& y = sol.contour.vertices[e.to];
    if (e.type == EdgeType::Vertical) {
      gens.push_back(Isometry::vertical_geodesic_rotation(x.base.coords()));
    } else {
      gens.push_back(Isometry::horizontal_geodesic_rotation(x.base.coords().cross(y.base.coords()), x.height));
    }
    letters += static_cast<char>('1' + i);
  }
  const double period = (mode == RosenbergMode::Single ? 2.0 : 4.0) * h;
  TilingSpec spec = make_tiling(Family::Rosenberg, d, mode);
  Orbit orbit = orbit_closure(gens, letters, period, kWordBudget);
  if (static_cast<int>(orbit.elements.size()) != spec.copies) {
    std::ostringstream os;
    os << "rosenberg orbit has " << orbit.elements.size() << " copies, expected " << spec.copies;
    fail(ErrorKind::Assembly, os.str());
  }
  AssembledSurface s = sew(sol.mesh, orbit, period, snap_tol);
  s.spec = spec;
  return s;
}

double default_a_tilde(Family family) {
  switch (family) {
    case Family::Cube: return 0.6;
    case Family::Balloon: return 0.9;
    default: return 0;
  }
}

FamilyBuild build_family(const TilingSpec& spec, const FamilyOptions& opt) {
  FamilyBuild b;
  const int n = opt.resolution;
  if (spec.family == Family::Rosenberg) {
    b.plateau = solve_graph(ContourSpec{{pi / 2, pi / 2, pi / spec.d}, opt.h_tilde}, n);
    b.surface = rosenberg_assemble(b.plateau, spec.mode);
    return b;
  }
  const auto angles = family_angles(spec);
  const double ga = angles[2];
  ContourSpec cs;
  if (spec.family == Family::Pk) {
    b.shot = solve_general(spec.k, n);
    cs = ContourSpec{{b.shot.a_tilde, b.shot.b_tilde, ga}, b.shot.h_tilde};
  } else {
    double a = opt.a_tilde > 0 ? opt.a_tilde : default_a_tilde(spec.family);
    b.shot = solve_symmetric(ga, angles[0], a, n);
    cs = ContourSpec{{a, a, ga}, b.shot.h_tilde};
  }
  b.plateau = solve_graph(cs, n);
  b.conjugate = reconstruct_contour(b.plateau);
  FreeBoundaryPiece piece = solve_free_boundary(b.conjugate.prism, b.conjugate.contour, n);
  b.surface = orbit_assemble(piece.mesh, b.conjugate.prism, spec);
  return b;
}

AssembledSurface wrap_surface(const SurfaceMesh& mesh) {
  AssembledSurface s;
  s.mesh = mesh;
  s.spec.family = Family::None;
  if (mesh.quotient_circumference) s.r = *mesh.quotient_circumference / (2 * pi);
  return s;
}

GenusConsistency genus_consistency(const AssembledSurface& s, double gamma) {
  GenusConsistency g;
  g.chi = euler_characteristic(s.mesh);
  g.orientable = orientability(s.mesh);
  switch (s.spec.family) {
    case Family::Cube:
    case Family::Balloon:
    case Family::Pk:
      g.formula_applies = true;
      g.genus = genus_from_copies(s.copies, gamma);
      g.expected_chi = 2 - 2 * g.genus;
      g.match = g.orientable && g.chi == g.expected_chi;
      break;
    case Family::Rosenberg: {
      g.formula_applies = true;
      int d = s.spec.d;
      if (s.spec.mode == RosenbergMode::Single) {
        g.expected_chi = 2 * (1 - d);
        g.genus = 2 - g.expected_chi;
        g.match = !g.orientable && g.chi == g.expected_chi;
      } else {
        g.expected_chi = 4 * (1 - d);
        g.genus = 1 - g.expected_chi / 2;
        g.match = g.orientable && g.chi == g.expected_chi;
      }
      break;
    }
    case Family::None:
      g.genus = g.orientable ? 1 - g.chi / 2 : 2 - g.chi;
      g.expected_chi = g.chi;
      break;
  }
  if (!g.match) {
    std::ostringstream os;
    os << "Euler characteristic " << g.chi << " (" << (g.orientable ? "orientable" : "non-orientable")
       << ") does not match the expected " << g.expected_chi << " for the " << family_name(s.spec.family)
       << " family";
    fail(ErrorKind::AssemblyDefect, os.str());
  }
  return g;
}

double symmetry_defect(const SurfaceMesh& m, const Isometry& g, double tol) {
  const double period = m.quotient_circumference.value_or(0.0);
  std::unordered_map<Key5, std::vector<int>, Key5Hash> grid;
  auto emb = [&](const ProdPoint& x) {
    if (period > 0) return embed(x, period);
    Vec5 v;
    v << x.base[0], x.base[1], x.base[2], x.height, 0.0;
    return v;
  };
  auto key_of = [&](const Vec5& x) {
    Key5 k;
    for (int j = 0; j < 5; ++j) k.c[j] = static_cast<long long>(std::floor(x[j] / tol));
    return k;
  };
  std::vector<Vec5> e(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) {
    e[v] = emb(m.vertices[v]);
    grid[key_of(e[v])].push_back(v);
  }
  double worst = 0;
  for (int v = 0; v < m.num_vertices(); ++v) {
    ProdPoint y = g.apply(m.vertices[v]);
    if (period > 0) y.height = wrap(y.height, period);
    Vec5 ey = emb(y);
    Key5 k = key_of(ey);
    double best = std::numeric_limits<double>::infinity();
    for (int code = 0; code < 243; ++code) {
      Key5 q = k;
      int r = code;
      for (int j = 0; j < 5; ++j, r /= 3) q.c[j] += r % 3 - 1;
      auto it = grid.find(q);
      if (it == grid.end()) continue;
      for (int w : it->second) best = std::min(best, (e[w] - ey).norm());
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace minsurf
