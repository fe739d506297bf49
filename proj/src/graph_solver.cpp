#include "minsurf/graph_solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <sstream>

namespace minsurf {

namespace {

struct FaceTerms {
  double area;
  Eigen::Vector2d grad;  // with respect to (t1 - t0, t2 - t0)
  Eigen::Matrix2d hess;
  bool smooth;
};

FaceTerms face_terms(const Vec3& p0, const Vec3& p1, const Vec3& p2, double t0, double t1, double t2) {
  Vec3 E1 = p1 - p0, E2 = p2 - p0;
  double a = E1.squaredNorm(), b = E1.dot(E2), c = E2.squaredNorm();
  Eigen::Matrix2d M;
  M << c, -b, -b, a;
  Eigen::Vector2d d(t1 - t0, t2 - t0);
  double D = a * c - b * b + d.dot(M * d);
  FaceTerms r;
  r.smooth = D > 1e-28;
  if (!r.smooth) {
    r.area = 0.5 * std::sqrt(std::max(D, 0.0));
    r.grad.setZero();
    r.hess.setZero();
    return r;
  }
  double sD = std::sqrt(D);
  Eigen::Vector2d Md = M * d;
  r.area = 0.5 * sD;
  r.grad = Md / (2 * sD);
  r.hess = M / (2 * sD) - Md * Md.transpose() / (2 * D * sD);
  return r;
}

}  // namespace

double graph_area(const GraphProblem& p, const std::vector<double>& h) {
  double A = 0;
  for (const Face& F : p.faces)
    A += face_terms(p.base[F[0]], p.base[F[1]], p.base[F[2]], h[F[0]], h[F[1]], h[F[2]]).area;
  return A;
}

std::vector<double> graph_area_gradient(const GraphProblem& p, const std::vector<double>& h) {
  std::vector<double> g(h.size(), 0.0);
  for (const Face& F : p.faces) {
    FaceTerms t = face_terms(p.base[F[0]], p.base[F[1]], p.base[F[2]], h[F[0]], h[F[1]], h[F[2]]);
    g[F[0]] -= t.grad[0] + t.grad[1];
    g[F[1]] += t.grad[0];
    g[F[2]] += t.grad[1];
  }
  return g;
}

GraphSolveReport minimize_graph_area(GraphProblem& p, double tol, int max_iter) {
  const int n = static_cast<int>(p.base.size());
  std::vector<int> dof(n, -1);
  int nfree = 0;
  for (int v = 0; v < n; ++v)
    if (!p.fixed[v]) dof[v] = nfree++;

  GraphSolveReport rep;
  std::vector<double>& h = p.height;
  double area = graph_area(p, h);
  rep.area_history.push_back(area);

  auto free_gradient = [&](const std::vector<double>& full) {
    Eigen::VectorXd g(nfree);
    for (int v = 0; v < n; ++v)
      if (dof[v] >= 0) g[dof[v]] = full[v];
    return g;
  };

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  bool analyzed = false;
  double damping = 0;  // Levenberg term relative to the largest diagonal entry
  for (int it = 0; it <= max_iter; ++it) {
    Eigen::VectorXd g = free_gradient(graph_area_gradient(p, h));
    rep.gradient_norm = g.norm();
    rep.iterations = it;
    if (rep.gradient_norm < tol || nfree == 0) {
      rep.converged = true;
      break;
    }
    if (it == max_iter) break;

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(p.faces.size() * 9);
    double diag_scale = 0;
    for (const Face& F : p.faces) {
      FaceTerms t = face_terms(p.base[F[0]], p.base[F[1]], p.base[F[2]], h[F[0]], h[F[1]], h[F[2]]);
      if (!t.smooth) continue;
      // d = B t with B = [[-1, 1, 0], [-1, 0, 1]].
      Eigen::Matrix<double, 2, 3> B;
      B << -1, 1, 0, -1, 0, 1;
      Eigen::Matrix3d H = B.transpose() * t.hess * B;
      for (int i = 0; i < 3; ++i) {
        if (dof[F[i]] < 0) continue;
        diag_scale = std::max(diag_scale, H(i, i));
        for (int j = 0; j < 3; ++j)
          if (dof[F[j]] >= 0) trip.emplace_back(dof[F[i]], dof[F[j]], H(i, j));
      }
    }
    double reg = (1e-12 + damping) * std::max(diag_scale, 1e-12);
    for (int i = 0; i < nfree; ++i) trip.emplace_back(i, i, reg);
    Eigen::SparseMatrix<double> Hs(nfree, nfree);
    Hs.setFromTriplets(trip.begin(), trip.end());
    if (!analyzed) {
      solver.analyzePattern(Hs);
      analyzed = true;
    }
    solver.factorize(Hs);
    Eigen::VectorXd dir;
    if (solver.info() == Eigen::Success) dir = -solver.solve(g);
    if (dir.size() != nfree || !dir.allFinite() || dir.dot(g) >= 0) dir = -g;

    double slope = dir.dot(g);
    double step = 1.0;
    std::vector<double> trial = h;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (int v = 0; v < n; ++v)
        if (dof[v] >= 0) trial[v] = h[v] + step * dir[dof[v]];
      double a = graph_area(p, trial);
      bool decrease = a <= area + 1e-4 * step * slope;
      // Near the optimum the area change drops below rounding; fall back to the gradient.
      if (!decrease && a <= area + 1e-14 * std::abs(area))
        decrease = free_gradient(graph_area_gradient(p, trial)).norm() < rep.gradient_norm;
      if (decrease) {
        h.swap(trial);
        area = a;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    rep.area_history.push_back(area);
    if (accepted && step < 0.5)
      damping = damping == 0 ? 1e-6 : std::min(damping * 10, 1.0);
    else if (accepted)
      damping = damping < 1e-9 ? 0 : damping * 0.1;
    if (!accepted) {
      // No further decrease is representable in floating point.
      break;
    }
  }
  rep.area = area;
  if (!rep.converged) {
    std::ostringstream os;
    os << "graph area minimization did not converge (gradient norm " << rep.gradient_norm << " after "
       << rep.iterations << " iterations)";
    throw SolverError(os.str(), rep.gradient_norm);
  }
  return rep;
}

}  // namespace minsurf
