#pragma once

namespace minsurf {

struct HingeSpec {
  double a_tilde = 0;
  double b_tilde = 0;
  double gamma = 0;
};

// c is the side opposite the hinge vertex; alpha_tilde sits at the end of
// side a (between c and a), beta_tilde at the end of side b.
struct TriangleData {
  double c = 0;
  double alpha_tilde = 0;
  double beta_tilde = 0;
  double area = 0;
};

void validate_hinge(const HingeSpec& spec);
TriangleData solve_hinge(const HingeSpec& spec);

double alpha_from_delta(double gamma, double ell_delta);
double delta_from_alpha(double gamma, double alpha);

// Third side of the isosceles hinge with legs a_tilde and angle gamma.
double edge23_length(double a_tilde, double gamma);

// 1 + m (pi - gamma) / (4 pi), required to be an integer.
int genus_from_copies(int m, double gamma);

// Spherical median from the hinge vertex to the midpoint of side c.
double hinge_median(const HingeSpec& spec);

}  // namespace minsurf
