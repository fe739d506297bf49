#include "minsurf/manifold.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

namespace minsurf {

namespace {
std::atomic<double> g_tolerance{1e-10};
}

double geometry_tolerance() { return g_tolerance.load(); }

void set_geometry_tolerance(double tol) {
  if (!(tol > 0)) fail(ErrorKind::InputDomain, "tolerance must be positive");
  g_tolerance.store(tol);
}

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InputDomain: return "input-domain";
    case ErrorKind::DegenerateTriangle: return "degenerate-triangle";
    case ErrorKind::NoSolution: return "no-solution";
    case ErrorKind::InconsistentConfiguration: return "inconsistent-configuration";
    case ErrorKind::SolverFailure: return "solver-failure";
    case ErrorKind::GraphViolation: return "graph-violation";
    case ErrorKind::MeshQuality: return "mesh-quality";
    case ErrorKind::NotApplicable: return "not-applicable";
    case ErrorKind::ReconstructionInconsistency: return "reconstruction-inconsistency";
    case ErrorKind::DegenerateHeight: return "degenerate-height";
    case ErrorKind::InvalidDomain: return "invalid-domain";
    case ErrorKind::Embeddedness: return "embeddedness-failure";
    case ErrorKind::Indeterminate: return "indeterminate";
    case ErrorKind::NoRootCertificate: return "no-root-certificate";
    case ErrorKind::PrecisionLimit: return "precision-limit";
    case ErrorKind::Sewing: return "sewing";
    case ErrorKind::Assembly: return "assembly";
    case ErrorKind::AssemblyDefect: return "assembly-defect";
    case ErrorKind::Audit: return "audit";
    case ErrorKind::Format: return "format";
  }
  return "unknown";
}

SpherePoint::SpherePoint(const Vec3& v) {
  double n = v.norm();
  if (!(n > 0) || !std::isfinite(n)) fail(ErrorKind::InputDomain, "sphere point must be a nonzero finite vector");
  // Vectors already unit to rounding are kept as given.
  c_ = std::abs(n - 1) <= 4 * std::numeric_limits<double>::epsilon() ? v : Vec3(v / n);
}

ProdVector::ProdVector(const SpherePoint& p, const Vec3& h, double v) : base(p), horizontal(h), vertical(v) {
  if (std::abs(h.dot(p.coords())) > 1e-10 * std::max(1.0, h.norm()))
    fail(ErrorKind::InputDomain, "horizontal part is not tangent to the base point");
}

double ProdVector::norm() const { return std::sqrt(horizontal.squaredNorm() + vertical * vertical); }

static void check_same_base(const ProdVector& a, const ProdVector& b) {
  if ((a.base.coords() - b.base.coords()).norm() > 1e-10)
    fail(ErrorKind::InputDomain, "tangent vectors live at different base points");
}

ProdVector ProdVector::operator+(const ProdVector& o) const {
  check_same_base(*this, o);
  ProdVector r = *this;
  r.horizontal += o.horizontal;
  r.vertical += o.vertical;
  return r;
}

ProdVector ProdVector::operator-(const ProdVector& o) const { return *this + o * -1.0; }

ProdVector ProdVector::operator*(double s) const {
  ProdVector r = *this;
  r.horizontal *= s;
  r.vertical *= s;
  return r;
}

double inner(const ProdVector& a, const ProdVector& b) {
  check_same_base(a, b);
  return a.horizontal.dot(b.horizontal) + a.vertical * b.vertical;
}

double sphere_distance(const Vec3& p, const Vec3& q) {
  // atan2 form is accurate for nearby and nearly antipodal points alike.
  return std::atan2(p.cross(q).norm(), p.dot(q));
}

double sphere_distance(const SpherePoint& p, const SpherePoint& q) {
  return sphere_distance(p.coords(), q.coords());
}

static void check_tangent_unit(const SpherePoint& p, const Vec3& u) {
  double tol = std::max(geometry_tolerance(), 1e-10);
  if (std::abs(u.norm() - 1.0) > tol) fail(ErrorKind::InputDomain, "geodesic direction must be a unit vector");
  if (std::abs(u.dot(p.coords())) > tol) fail(ErrorKind::InputDomain, "geodesic direction must be tangent");
}

SpherePoint sphere_geodesic(const SpherePoint& p, const Vec3& u, double s) {
  check_tangent_unit(p, u);
  return SpherePoint(std::cos(s) * p.coords() + std::sin(s) * u);
}

Vec3 sphere_transport(const SpherePoint& p, const Vec3& u, double s) {
  check_tangent_unit(p, u);
  return -std::sin(s) * p.coords() + std::cos(s) * u;
}

double prod_distance(const ProdPoint& x, const ProdPoint& y) {
  double d = sphere_distance(x.base, y.base);
  double dt = x.height - y.height;
  return std::sqrt(d * d + dt * dt);
}

const char* isometry_kind_name(IsometryKind kind) {
  switch (kind) {
    case IsometryKind::SphereRotation: return "sphere-rotation";
    case IsometryKind::VerticalTranslation: return "vertical-translation";
    case IsometryKind::SliceReflection: return "slice-reflection";
    case IsometryKind::VerticalPlaneReflection: return "vertical-plane-reflection";
    case IsometryKind::VerticalGeodesicRotation: return "vertical-geodesic-rotation";
    case IsometryKind::HorizontalGeodesicRotation: return "horizontal-geodesic-rotation";
    case IsometryKind::Composite: return "composite";
  }
  return "unknown";
}

Isometry Isometry::identity() { return Isometry{}; }

Isometry Isometry::sphere_rotation(const Mat3& R) {
  Isometry g;
  g.kind = IsometryKind::SphereRotation;
  g.sphere = R;
  g.validate();
  return g;
}

Isometry Isometry::vertical_translation(double c) {
  Isometry g;
  g.kind = IsometryKind::VerticalTranslation;
  g.height_offset = c;
  return g;
}

Isometry Isometry::slice_reflection(double t0) {
  Isometry g;
  g.kind = IsometryKind::SliceReflection;
  g.height_sign = -1.0;
  g.height_offset = 2.0 * t0;
  return g;
}

static Vec3 unit_or_fail(const Vec3& v) {
  double n = v.norm();
  if (!(n > 0)) fail(ErrorKind::InputDomain, "axis must be nonzero");
  return v / n;
}

Isometry Isometry::vertical_plane_reflection(const Vec3& pole) {
  Vec3 n = unit_or_fail(pole);
  Isometry g;
  g.kind = IsometryKind::VerticalPlaneReflection;
  g.sphere = Mat3::Identity() - 2.0 * n * n.transpose();
  return g;
}

Isometry Isometry::vertical_geodesic_rotation(const Vec3& p0) {
  Vec3 a = unit_or_fail(p0);
  Isometry g;
  g.kind = IsometryKind::VerticalGeodesicRotation;
  g.sphere = 2.0 * a * a.transpose() - Mat3::Identity();
  return g;
}

Isometry Isometry::horizontal_geodesic_rotation(const Vec3& pole, double t0) {
  Vec3 n = unit_or_fail(pole);
  Isometry g;
  g.kind = IsometryKind::HorizontalGeodesicRotation;
  g.sphere = Mat3::Identity() - 2.0 * n * n.transpose();
  g.height_sign = -1.0;
  g.height_offset = 2.0 * t0;
  return g;
}

void Isometry::validate() const {
  if (!sphere.allFinite() || !std::isfinite(height_offset))
    fail(ErrorKind::InputDomain, "isometry has non-finite entries");
  if ((sphere.transpose() * sphere - Mat3::Identity()).norm() > 1e-9)
    fail(ErrorKind::InputDomain, "isometry sphere part is not orthogonal");
  if (height_sign != 1.0 && height_sign != -1.0)
    fail(ErrorKind::InputDomain, "isometry height part must be t -> +-t + c");
}

ProdPoint Isometry::apply(const ProdPoint& x) const {
  return ProdPoint(SpherePoint(sphere * x.base.coords()), apply_height(x.height));
}

ProdVector Isometry::apply_vector(const ProdVector& v) const {
  SpherePoint b(sphere * v.base.coords());
  ProdVector r;
  r.base = b;
  r.horizontal = sphere * v.horizontal;
  r.vertical = height_sign * v.vertical;
  return r;
}

Isometry Isometry::compose(const Isometry& in) const {
  Isometry g;
  g.kind = IsometryKind::Composite;
  g.sphere = sphere * in.sphere;
  g.height_sign = height_sign * in.height_sign;
  g.height_offset = height_sign * in.height_offset + height_offset;
  return g;
}

Isometry Isometry::inverse() const {
  Isometry g;
  g.kind = kind;
  g.sphere = sphere.transpose();
  g.height_sign = height_sign;
  g.height_offset = -height_sign * height_offset;
  return g;
}

ProdPoint apply_isometry(const Isometry& g, const ProdPoint& x) {
  g.validate();
  return g.apply(x);
}

double ricci(const ProdVector& v) { return v.horizontal.squaredNorm(); }

ProdVector curvature_tensor(const ProdVector& x, const ProdVector& y, const ProdVector& z) {
  check_same_base(x, y);
  check_same_base(x, z);
  ProdVector xi = ProdVector::xi(x.base);
  double yz = inner(y, z), xz = inner(x, z);
  double xx = x.vertical, yx = y.vertical, zx = z.vertical;
  ProdVector r = x * yz - y * xz + y * (xx * zx) - x * (yx * zx) + xi * (xz * yx - yz * xx);
  return r;
}

double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  double num = a.dot(b.cross(c));
  double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(num, den);
}

Vec3 direction_to(const Vec3& p, const Vec3& q) {
  Vec3 v = q - p.dot(q) * p;
  double n = v.norm();
  if (!(n > 0)) fail(ErrorKind::InputDomain, "direction undefined for coincident or antipodal points");
  return v / n;
}

}  // namespace minsurf
