#include "minsurf/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace minsurf {

namespace {

std::string num(double x) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string num9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

double to_double(const std::string& s) {
  double v = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    fail(ErrorKind::Format, "not a number: '" + s + "'");
  }
  return v;
}

int to_int(const std::string& s) {
  int v = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) fail(ErrorKind::Format, "not an integer: '" + s + "'");
  return v;
}

// Key-value lines plus "[name] count" CSV blocks with a column header.
struct Document {
  std::map<std::string, std::vector<std::string>> keys;
  std::map<std::string, std::vector<std::vector<std::string>>> blocks;
  std::map<std::string, std::vector<std::string>> block_args;

  const std::vector<std::string>& key(const std::string& k, size_t n) const {
    auto it = keys.find(k);
    if (it == keys.end()) fail(ErrorKind::Format, "missing key '" + k + "'");
    if (it->second.size() != n) fail(ErrorKind::Format, "key '" + k + "' has the wrong number of values");
    return it->second;
  }
  double real(const std::string& k) const { return to_double(key(k, 1)[0]); }
  Vec3 vec(const std::string& k) const {
    const auto& v = key(k, 3);
    return Vec3(to_double(v[0]), to_double(v[1]), to_double(v[2]));
  }
  const std::vector<std::vector<std::string>>& block(const std::string& name, size_t cols) const {
    auto it = blocks.find(name);
    if (it == blocks.end()) fail(ErrorKind::Format, "missing block [" + name + "]");
    for (const auto& row : it->second)
      if (row.size() != cols) fail(ErrorKind::Format, "block [" + name + "] has a malformed row");
    return it->second;
  }
};

Document parse(const std::string& text, const std::string& header) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) fail(ErrorKind::Format, "empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) fail(ErrorKind::Format, "unsupported header '" + line + "', expected '" + header + "'");
  Document d;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line[0] == '[') {
      auto close = line.find(']');
      if (close == std::string::npos) fail(ErrorKind::Format, "bad block line '" + line + "'");
      std::string name = line.substr(1, close - 1);
      auto args = words(line.substr(close + 1));
      if (args.empty()) fail(ErrorKind::Format, "block [" + name + "] lacks a row count");
      int count = to_int(args[0]);
      std::string columns;
      if (!std::getline(is, columns)) fail(ErrorKind::Format, "block [" + name + "] lacks a column header");
      auto& rows = d.blocks[name];
      for (int i = 0; i < count; ++i) {
        if (!std::getline(is, line)) fail(ErrorKind::Format, "block [" + name + "] is truncated");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        rows.push_back(split(line, ','));
      }
      d.block_args[name] = std::vector<std::string>(args.begin() + 1, args.end());
      continue;
    }
    auto w = words(line);
    d.keys[w[0]] = std::vector<std::string>(w.begin() + 1, w.end());
  }
  return d;
}

void put_vec(std::ostream& os, const std::string& k, const Vec3& v) {
  os << k << ' ' << num(v.x()) << ' ' << num(v.y()) << ' ' << num(v.z()) << '\n';
}

void put_vertices(std::ostream& os, const SurfaceMesh& m) {
  os << "[vertices] " << m.num_vertices() << "\nx,y,z,t,label\n";
  for (int v = 0; v < m.num_vertices(); ++v) {
    const Vec3& p = m.vertices[v].base.coords();
    os << num(p.x()) << ',' << num(p.y()) << ',' << num(p.z()) << ',' << num(m.vertices[v].height) << ','
       << label_name(m.tag(v)) << '\n';
  }
}

void put_faces(std::ostream& os, const SurfaceMesh& m) {
  os << "[faces] " << m.num_faces() << "\nv0,v1,v2\n";
  for (const Face& f : m.faces) os << f[0] << ',' << f[1] << ',' << f[2] << '\n';
}

const std::array<const char*, 5> kEdgeCodes{"12", "23", "34", "45", "51"};

}  // namespace

std::string write_plateau(const PlateauSolution& sol) {
  std::ostringstream os;
  os << "PLATEAU v1\n";
  os << "spec " << num(sol.spec.hinge.a_tilde) << ' ' << num(sol.spec.hinge.b_tilde) << ' '
     << num(sol.spec.hinge.gamma) << ' ' << num(sol.spec.h_tilde) << '\n';
  os << "resolution " << sol.resolution << '\n';
  os << "tol " << num(sol.tol) << '\n';
  os << "residual " << num(sol.residual) << '\n';
  os << "eta";
  for (double e : sol.grid.eta) os << ' ' << num(e);
  os << '\n';
  put_vertices(os, sol.mesh);
  put_faces(os, sol.mesh);
  size_t n = 0;
  for (const auto& t : sol.boundary_traces) n += t.size();
  os << "[traces] " << n << "\nedge,s,nu,theta,w\n";
  for (int e = 0; e < 5; ++e)
    for (const auto& s : sol.boundary_traces[e])
      os << kEdgeCodes[e] << ',' << num(s.s) << ',' << num(s.nu) << ',' << num(s.theta) << ',' << num(s.w) << '\n';
  return os.str();
}

PlateauSolution read_plateau(const std::string& text) {
  Document d = parse(text, "PLATEAU v1");
  const auto& sp = d.key("spec", 4);
  ContourSpec spec{{to_double(sp[0]), to_double(sp[1]), to_double(sp[2])}, to_double(sp[3])};
  int res = to_int(d.key("resolution", 1)[0]);
  double tol = d.real("tol");
  auto it = d.keys.find("eta");
  if (it == d.keys.end()) fail(ErrorKind::Format, "missing key 'eta'");
  std::vector<double> eta;
  for (const auto& s : it->second) eta.push_back(to_double(s));
  const auto& rows = d.block("vertices", 5);
  std::vector<double> heights;
  for (const auto& r : rows) heights.push_back(to_double(r[3]));
  PlateauSolution sol = plateau_from_heights(spec, res, heights, tol, eta);
  sol.residual = d.real("residual");
  if (sol.mesh.num_vertices() != static_cast<int>(rows.size()))
    fail(ErrorKind::Format, "vertex count does not match the grid of the stated resolution");
  for (size_t v = 0; v < rows.size(); ++v) {
    Vec3 p(to_double(rows[v][0]), to_double(rows[v][1]), to_double(rows[v][2]));
    if ((p - sol.mesh.vertices[v].base.coords()).norm() > 1e-12)
      fail(ErrorKind::Format, "vertex " + std::to_string(v) + " does not match the rebuilt grid");
  }
  if (d.block("faces", 3).size() != sol.mesh.faces.size()) fail(ErrorKind::Format, "face count mismatch");
  return sol;
}

std::string write_mesh(const SurfaceMesh& m) {
  std::ostringstream os;
  os << "MESH v1\n";
  os << "quotient_circumference " << (m.quotient_circumference ? num(*m.quotient_circumference) : "none") << '\n';
  put_vertices(os, m);
  put_faces(os, m);
  return os.str();
}

SurfaceMesh read_mesh(const std::string& text) {
  Document d = parse(text, "MESH v1");
  SurfaceMesh m;
  const auto& q = d.key("quotient_circumference", 1)[0];
  if (q != "none") m.quotient_circumference = to_double(q);
  bool tagged = false;
  for (const auto& r : d.block("vertices", 5)) {
    m.vertices.emplace_back(Vec3(to_double(r[0]), to_double(r[1]), to_double(r[2])), to_double(r[3]));
    m.boundary_tags.push_back(label_from_name(r[4]));
    tagged = tagged || m.boundary_tags.back() != BoundaryLabel::None;
  }
  if (!tagged) m.boundary_tags.clear();
  const int n = m.num_vertices();
  for (const auto& r : d.block("faces", 3)) {
    Face f{to_int(r[0]), to_int(r[1]), to_int(r[2])};
    for (int v : f)
      if (v < 0 || v >= n) fail(ErrorKind::Format, "face index out of range");
    m.faces.push_back(f);
  }
  if (!m.faces.empty()) compute_normals(m);
  return m;
}

std::string write_conjugate(const ConjugateResult& r) {
  std::ostringstream os;
  const PrismData& p = r.prism;
  const ConjugateContour& c = r.contour;
  os << "CONJUGATE v1\n";
  os << "alpha " << num(p.alpha) << "\nbeta " << num(p.beta) << "\ngamma " << num(p.gamma) << "\ngamma_measured "
     << num(p.gamma_measured) << "\nh " << num(p.h) << '\n';
  os << "slices " << num(p.slices[0]) << ' ' << num(p.slices[1]) << '\n';
  put_vec(os, "A", p.A);
  put_vec(os, "B", p.B);
  put_vec(os, "C", p.C);
  put_vec(os, "pole23", p.wall_circles[0]);
  put_vec(os, "pole45", p.wall_circles[1]);
  put_vec(os, "pole51", p.wall_circles[2]);
  os << "closure_residual " << num(c.closure_residual) << "\nclosure_tolerance " << num(c.closure_tolerance)
     << "\ntotal_length " << num(c.total_length) << "\nalpha_tilde " << num(c.alpha_tilde) << "\nbeta_tilde "
     << num(c.beta_tilde) << "\nh_tilde " << num(c.h_tilde) << "\nsource_area " << num(c.source_area)
     << "\nsource_c " << num(c.source_c) << '\n';
  for (int i = 0; i < 5; ++i) {
    const Vec3& x = c.corner_points[i].base.coords();
    os << "corner" << i + 1 << ' ' << num(x.x()) << ' ' << num(x.y()) << ' ' << num(x.z()) << ' '
       << num(c.corner_points[i].height) << '\n';
  }
  const char* slice_names[2] = {"slice12", "slice34"};
  for (int i = 0; i < 2; ++i) {
    const SliceCurve& s = c.slice_curves[i];
    os << '[' << slice_names[i] << "] " << s.points.size() << ' ' << num(s.height) << "\ns,x,y,z,curvature\n";
    for (size_t j = 0; j < s.points.size(); ++j)
      os << num(s.s[j]) << ',' << num(s.points[j].x()) << ',' << num(s.points[j].y()) << ',' << num(s.points[j].z())
         << ',' << num(s.curvature[j]) << '\n';
  }
  const char* wall_names[3] = {"wall23", "wall45", "wall51"};
  for (int i = 0; i < 3; ++i) {
    const WallCurve& w = c.wall_curves[i];
    os << '[' << wall_names[i] << "] " << w.s.size() << "\ns,x,t,px,py,pz\n";
    for (size_t j = 0; j < w.s.size(); ++j) {
      const Vec3& q = w.points[j].base.coords();
      os << num(w.s[j]) << ',' << num(w.x[j]) << ',' << num(w.t[j]) << ',' << num(q.x()) << ',' << num(q.y()) << ','
         << num(q.z()) << '\n';
    }
  }
  return os.str();
}

ConjugateResult read_conjugate(const std::string& text) {
  Document d = parse(text, "CONJUGATE v1");
  ConjugateResult r;
  PrismData& p = r.prism;
  ConjugateContour& c = r.contour;
  p.alpha = d.real("alpha");
  p.beta = d.real("beta");
  p.gamma = d.real("gamma");
  p.gamma_measured = d.real("gamma_measured");
  p.h = d.real("h");
  const auto& sl = d.key("slices", 2);
  p.slices = {to_double(sl[0]), to_double(sl[1])};
  p.A = d.vec("A");
  p.B = d.vec("B");
  p.C = d.vec("C");
  p.wall_circles = {d.vec("pole23"), d.vec("pole45"), d.vec("pole51")};
  c.closure_residual = d.real("closure_residual");
  c.closure_tolerance = d.real("closure_tolerance");
  c.total_length = d.real("total_length");
  c.alpha_tilde = d.real("alpha_tilde");
  c.beta_tilde = d.real("beta_tilde");
  c.h_tilde = d.real("h_tilde");
  c.source_area = d.real("source_area");
  c.source_c = d.real("source_c");
  for (int i = 0; i < 5; ++i) {
    const auto& v = d.key("corner" + std::to_string(i + 1), 4);
    c.corner_points[i] = ProdPoint(Vec3(to_double(v[0]), to_double(v[1]), to_double(v[2])), to_double(v[3]));
  }
  const char* slice_names[2] = {"slice12", "slice34"};
  for (int i = 0; i < 2; ++i) {
    SliceCurve& s = c.slice_curves[i];
    const auto& args = d.block_args.at(slice_names[i]);
    if (args.size() != 1) fail(ErrorKind::Format, std::string("block [") + slice_names[i] + "] lacks its height");
    s.height = to_double(args[0]);
    for (const auto& row : d.block(slice_names[i], 5)) {
      s.s.push_back(to_double(row[0]));
      s.points.emplace_back(to_double(row[1]), to_double(row[2]), to_double(row[3]));
      s.curvature.push_back(to_double(row[4]));
    }
  }
  const char* wall_names[3] = {"wall23", "wall45", "wall51"};
  for (int i = 0; i < 3; ++i) {
    WallCurve& w = c.wall_curves[i];
    for (const auto& row : d.block(wall_names[i], 6)) {
      w.s.push_back(to_double(row[0]));
      w.x.push_back(to_double(row[1]));
      w.t.push_back(to_double(row[2]));
      w.points.emplace_back(Vec3(to_double(row[3]), to_double(row[4]), to_double(row[5])), w.t.back());
    }
  }
  return r;
}

std::string write_shot(const ShotResult& s) {
  std::ostringstream os;
  os << "SHOT v1\n";
  os << "h_tilde " << num(s.h_tilde) << "\na_tilde " << num(s.a_tilde) << "\nb_tilde " << num(s.b_tilde)
     << "\ngamma " << num(s.gamma) << "\nresolution " << s.resolution << '\n';
  os << "alpha " << num(s.prism.alpha) << "\nbeta " << num(s.prism.beta) << "\nh " << num(s.prism.h)
     << "\ngamma_measured " << num(s.prism.gamma_measured) << '\n';
  const ShotDiagnostics& g = s.diagnostics;
  os << "plateau_residual " << num(g.plateau_residual) << "\nclosure_residual " << num(g.closure_residual)
     << "\nclosure_tolerance " << num(g.closure_tolerance) << "\nplateau_iterations " << g.plateau_iterations << '\n';
  if (g.delta_length >= 0) os << "delta_length " << num(g.delta_length) << '\n';
  if (g.angle_relation_residual >= 0) os << "angle_relation_residual " << num(g.angle_relation_residual) << '\n';
  os << "trusted " << (s.trusted ? "true" : "false") << "\nwinding " << s.winding << '\n';
  return os.str();
}

std::string write_assembly(const AssembledSurface& s) {
  std::ostringstream os;
  os << "ASSEMBLY v1\n";
  os << "family " << family_name(s.spec.family) << '\n';
  if (s.spec.family == Family::Balloon || s.spec.family == Family::Pk) os << "k " << s.spec.k << '\n';
  if (s.spec.family == Family::Rosenberg) {
    os << "d " << s.spec.d << '\n';
    os << "mode " << (s.spec.mode == RosenbergMode::Single ? "single" : "double") << '\n';
  }
  os << "copies " << s.copies << "\nr " << num(s.r) << "\nmax_seam_gap " << num(s.max_seam_gap)
     << "\nsnap_displacement " << num(s.snap_displacement) << "\nwall_angle_defect " << num(s.wall_angle_defect)
     << '\n';
  os << "[words] " << s.words.size() << "\nword\n";
  for (const auto& w : s.words) os << (w.empty() ? "e" : w) << '\n';
  return os.str();
}

std::string write_mesh_csv(const SurfaceMesh& m) {
  std::ostringstream os;
  os << "MESHCSV v1\n";
  os << "[vertices] " << m.num_vertices() << "\nx,y,z,t\n";
  for (const ProdPoint& v : m.vertices) {
    double t = v.height;
    if (m.quotient_circumference) {
      double L = *m.quotient_circumference;
      t = std::fmod(t, L);
      if (t < 0) t += L;
      if (t >= L) t = 0;
    }
    const Vec3& p = v.base.coords();
    os << num(p.x()) << ',' << num(p.y()) << ',' << num(p.z()) << ',' << num(t) << '\n';
  }
  put_faces(os, m);
  return os.str();
}

std::string write_obj(const SurfaceMesh& m) {
  std::ostringstream os;
  double L = 0, t0 = 0;
  if (m.quotient_circumference) {
    L = *m.quotient_circumference;
  } else if (!m.vertices.empty()) {
    double lo = m.vertices[0].height, hi = lo;
    for (const auto& v : m.vertices) {
      lo = std::min(lo, v.height);
      hi = std::max(hi, v.height);
    }
    t0 = lo;
    L = hi > lo ? hi - lo : 1.0;
  }
  os << "# minsurf radial shell chart: (p, t) -> p (2 + t / " << num9(L) << ")\n";
  for (const ProdPoint& v : m.vertices) {
    double t = v.height - t0;
    if (m.quotient_circumference) {
      t = std::fmod(t, L);
      if (t < 0) t += L;
    }
    Vec3 x = v.base.coords() * (2 + t / L);
    os << "v " << num9(x.x()) << ' ' << num9(x.y()) << ' ' << num9(x.z()) << '\n';
  }
  for (const Face& f : m.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InputDomain, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InputDomain, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorKind::InputDomain, "write to '" + path + "' failed");
}

}  // namespace minsurf
