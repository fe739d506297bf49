#include "minsurf/sphtrig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "minsurf/error.hpp"

namespace minsurf {

using std::numbers::pi;

void validate_hinge(const HingeSpec& s) {
  auto bad = [](double x) { return !std::isfinite(x); };
  if (bad(s.a_tilde) || bad(s.b_tilde) || bad(s.gamma))
    fail(ErrorKind::InputDomain, "hinge parameters must be finite");
  if (!(s.a_tilde > 0 && s.a_tilde <= pi / 2 + 1e-12) || !(s.b_tilde > 0 && s.b_tilde <= pi / 2 + 1e-12))
    fail(ErrorKind::InputDomain, "hinge sides must lie in (0, pi/2]");
  if (!(s.gamma > 0 && s.gamma < pi)) fail(ErrorKind::InputDomain, "hinge angle must lie in (0, pi)");
}

static double clamp1(double x) { return std::clamp(x, -1.0, 1.0); }

TriangleData solve_hinge(const HingeSpec& s) {
  validate_hinge(s);
  const double a = s.a_tilde, b = s.b_tilde, g = s.gamma;
  TriangleData t;
  t.c = std::acos(clamp1(std::cos(a) * std::cos(b) + std::sin(a) * std::sin(b) * std::cos(g)));
  const double sc = std::sin(t.c);
  if (!(sc > 0)) fail(ErrorKind::DegenerateTriangle, "hinge closes to a degenerate triangle");
  // alpha_tilde is opposite side b, beta_tilde opposite side a.
  t.alpha_tilde = std::acos(clamp1((std::cos(b) - std::cos(a) * std::cos(t.c)) / (std::sin(a) * sc)));
  t.beta_tilde = std::acos(clamp1((std::cos(a) - std::cos(b) * std::cos(t.c)) / (std::sin(b) * sc)));
  t.area = t.alpha_tilde + t.beta_tilde + g - pi;
  if (t.area < 1e-12) fail(ErrorKind::DegenerateTriangle, "spherical excess below threshold");

  double r1 = std::sin(t.alpha_tilde) / std::sin(b);
  double r2 = std::sin(t.beta_tilde) / std::sin(a);
  double r3 = std::sin(g) / sc;
  if (std::abs(r1 - r3) > 1e-10 * std::max(1.0, r3) || std::abs(r2 - r3) > 1e-10 * std::max(1.0, r3))
    fail(ErrorKind::DegenerateTriangle, "sine rule residual too large");
  return t;
}

double alpha_from_delta(double gamma, double ell_delta) {
  if (!(gamma > 0 && gamma < pi)) fail(ErrorKind::InputDomain, "gamma must lie in (0, pi)");
  if (!(ell_delta >= 0 && ell_delta <= pi)) fail(ErrorKind::InputDomain, "delta length must lie in [0, pi]");
  return std::acos(clamp1(std::sin(gamma / 2) * std::cos(ell_delta)));
}

double delta_from_alpha(double gamma, double alpha) {
  if (!(gamma > 0 && gamma < pi)) fail(ErrorKind::InputDomain, "gamma must lie in (0, pi)");
  double x = std::cos(alpha) / std::sin(gamma / 2);
  if (x > 1.0 + 1e-15 || x < -1.0 - 1e-15) {
    std::ostringstream os;
    os << "alpha=" << alpha << " unreachable for gamma=" << gamma << " (cos(alpha)/sin(gamma/2)=" << x << ")";
    fail(ErrorKind::NoSolution, os.str());
  }
  return std::acos(clamp1(x));
}

double edge23_length(double a_tilde, double gamma) {
  if (!(a_tilde > 0 && a_tilde <= pi / 2 + 1e-12)) fail(ErrorKind::InputDomain, "a_tilde must lie in (0, pi/2]");
  if (!(gamma > 0 && gamma < pi)) fail(ErrorKind::InputDomain, "gamma must lie in (0, pi)");
  double cg = 1.0 / std::tan(gamma / 2);
  double ca = std::cos(a_tilde);
  return 2.0 * std::atan(std::sin(a_tilde) / std::sqrt(cg * cg + ca * ca));
}

int genus_from_copies(int m, double gamma) {
  if (m <= 0) fail(ErrorKind::InputDomain, "copy count must be positive");
  double g = 1.0 + m * (pi - gamma) / (4.0 * pi);
  double r = std::round(g);
  if (std::abs(g - r) > 1e-9) {
    std::ostringstream os;
    os << "m=" << m << ", gamma=" << gamma << " gives non-integer genus " << g;
    fail(ErrorKind::InconsistentConfiguration, os.str());
  }
  return static_cast<int>(r);
}

double hinge_median(const HingeSpec& s) {
  TriangleData t = solve_hinge(s);
  // Median from the hinge vertex to the midpoint of c, via the cosine rule
  // in the sub-triangle at the end of side a.
  double half = t.c / 2;
  return std::acos(clamp1(std::cos(s.a_tilde) * std::cos(half) +
                          std::sin(s.a_tilde) * std::sin(half) * std::cos(t.alpha_tilde)));
}

}  // namespace minsurf
