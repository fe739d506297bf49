#pragma once

#include <Eigen/Dense>

#include "minsurf/error.hpp"

namespace minsurf {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec4 = Eigen::Vector4d;

// Global tolerance for exact-geometry checks.
double geometry_tolerance();
void set_geometry_tolerance(double tol);

class SpherePoint {
 public:
  SpherePoint() : c_(0, 0, 1) {}
  explicit SpherePoint(const Vec3& v);
  SpherePoint(double x, double y, double z) : SpherePoint(Vec3(x, y, z)) {}

  const Vec3& coords() const { return c_; }
  double operator[](int i) const { return c_[i]; }

 private:
  Vec3 c_;
};

struct ProdPoint {
  SpherePoint base;
  double height = 0.0;

  ProdPoint() = default;
  ProdPoint(const SpherePoint& p, double t) : base(p), height(t) {}
  ProdPoint(const Vec3& p, double t) : base(p), height(t) {}

  Vec4 chordal() const { return Vec4(base[0], base[1], base[2], height); }
};

struct ProdVector {
  SpherePoint base;
  Vec3 horizontal = Vec3::Zero();
  double vertical = 0.0;

  ProdVector() = default;
  // Throws InputDomain if horizontal is not tangent at base.
  ProdVector(const SpherePoint& p, const Vec3& h, double v);

  static ProdVector xi(const SpherePoint& p) { return ProdVector(p, Vec3::Zero(), 1.0); }

  double norm() const;
  ProdVector operator+(const ProdVector& o) const;
  ProdVector operator-(const ProdVector& o) const;
  ProdVector operator*(double s) const;
};

double inner(const ProdVector& a, const ProdVector& b);

double sphere_distance(const Vec3& p, const Vec3& q);
double sphere_distance(const SpherePoint& p, const SpherePoint& q);

// Great-circle exponential map: cos(s) p + sin(s) u.
SpherePoint sphere_geodesic(const SpherePoint& p, const Vec3& u, double s);

// Tangent of the great circle from p in direction u after arc length s.
Vec3 sphere_transport(const SpherePoint& p, const Vec3& u, double s);

double prod_distance(const ProdPoint& x, const ProdPoint& y);

enum class IsometryKind {
  SphereRotation,
  VerticalTranslation,
  SliceReflection,
  VerticalPlaneReflection,
  VerticalGeodesicRotation,
  HorizontalGeodesicRotation,
  Composite,
};

const char* isometry_kind_name(IsometryKind kind);

// (p, t) -> (O p, s t + c) with O orthogonal and s = +-1.
struct Isometry {
  IsometryKind kind = IsometryKind::SphereRotation;
  Mat3 sphere = Mat3::Identity();
  double height_sign = 1.0;
  double height_offset = 0.0;

  static Isometry identity();
  static Isometry sphere_rotation(const Mat3& R);
  static Isometry vertical_translation(double c);
  static Isometry slice_reflection(double t0);
  // Mirror across the vertical plane over the great circle with pole n.
  static Isometry vertical_plane_reflection(const Vec3& pole);
  // pi-rotation about the fiber {p0} x R.
  static Isometry vertical_geodesic_rotation(const Vec3& p0);
  // pi-rotation about the horizontal geodesic (great circle with pole n) x {t0}.
  static Isometry horizontal_geodesic_rotation(const Vec3& pole, double t0);

  void validate() const;
  bool reverses_height() const { return height_sign < 0; }
  // Orientation character on the ambient 3-manifold.
  double orientation_sign() const { return sphere.determinant() * height_sign; }

  ProdPoint apply(const ProdPoint& x) const;
  Vec3 apply_base(const Vec3& p) const { return sphere * p; }
  double apply_height(double t) const { return height_sign * t + height_offset; }
  ProdVector apply_vector(const ProdVector& v) const;
  Isometry compose(const Isometry& inner_map) const;  // this o inner_map
  Isometry inverse() const;
};

ProdPoint apply_isometry(const Isometry& g, const ProdPoint& x);

double ricci(const ProdVector& v);

// R(X,Y)Z = <Y,Z>X - <X,Z>Y + <X,xi><Z,xi>Y - <Y,xi><Z,xi>X
//          + (<X,Z><Y,xi> - <Y,Z><X,xi>) xi
ProdVector curvature_tensor(const ProdVector& x, const ProdVector& y, const ProdVector& z);

// Signed spherical area of the triangle (a, b, c).
double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

// Unit tangent at p pointing along the great circle toward q.
Vec3 direction_to(const Vec3& p, const Vec3& q);

}  // namespace minsurf
