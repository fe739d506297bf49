#include "minsurf/shooting.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <future>
#include <iomanip>
#include <map>
#include <memory>
#include <thread>
#include <numbers>
#include <sstream>

namespace minsurf {

using std::numbers::pi;

static void record(ShotLog* log, const std::string& stage, const ShotResult& r) {
  if (!log) return;
  log->push_back({stage, r.h_tilde, r.a_tilde, r.b_tilde, r.prism.h, r.prism.alpha, r.prism.beta,
                  r.diagnostics.closure_residual, r.trusted});
}

ShotResult eval_f(double h_tilde, double a_tilde, double b_tilde, double gamma, int resolution, ShotLog* log) {
  ContourSpec spec{{a_tilde, b_tilde, gamma}, h_tilde};
  validate_contour_spec(spec);
  PlateauSolution sol = solve_graph(spec, resolution);
  // Closure is judged here, so the reconstruction itself is run permissively.
  ConjugateResult cr = reconstruct_contour(sol, 1e3);
  ShotResult r;
  r.h_tilde = h_tilde;
  r.a_tilde = a_tilde;
  r.b_tilde = b_tilde;
  r.gamma = gamma;
  r.resolution = resolution;
  r.prism = cr.prism;
  r.diagnostics.plateau_residual = sol.residual;
  r.diagnostics.plateau_iterations = sol.report.iterations;
  r.diagnostics.closure_residual = cr.contour.closure_residual;
  r.diagnostics.closure_tolerance = 1e-2 * cr.contour.total_length;
  r.trusted = sol.report.converged && cr.contour.closure_residual <= r.diagnostics.closure_tolerance;
  if (std::abs(a_tilde - b_tilde) < 1e-15) {
    r.diagnostics.delta_length = measure_symmetry_curve(sol);
    r.diagnostics.angle_relation_residual =
        std::abs(std::cos(r.prism.alpha) - std::sin(gamma / 2) * std::cos(r.diagnostics.delta_length));
  }
  record(log, "eval", r);
  return r;
}

ShotResult solve_symmetric(double gamma, double alpha_target, double a_tilde, int resolution, ShotLog* log) {
  validate_hinge({a_tilde, a_tilde, gamma});
  const double delta_target = delta_from_alpha(gamma, alpha_target);
  const double h_max = std::min(delta_target, pi / 2);

  auto proxy = [&](double h) {
    PlateauSolution sol = solve_graph({{a_tilde, a_tilde, gamma}, h}, resolution);
    return measure_symmetry_curve(sol) - delta_target;
  };

  constexpr int kScan = 8;
  double lo = 0, g_lo = hinge_median({a_tilde, a_tilde, gamma}) - delta_target;
  double hi = -1, g_hi = 0;
  for (int i = 1; i <= kScan; ++i) {
    double h = h_max * i / kScan;
    double g = proxy(h);
    if (log) log->push_back({"scan", h, a_tilde, a_tilde, 0, 0, 0, g, true});
    if (g_lo < 0 && g >= 0) {
      hi = h;
      g_hi = g;
      break;
    }
    lo = h;
    g_lo = g;
  }
  if (hi < 0) {
    std::ostringstream os;
    os << "no h_tilde in (0, " << h_max << "] brackets the symmetry curve length " << delta_target
       << " (alpha target " << alpha_target << " is out of range for a_tilde " << a_tilde << ")";
    fail(ErrorKind::NoSolution, os.str());
  }

  double h_root;
  if (g_hi == 0) {
    h_root = hi;
  } else {
    std::uintmax_t iters = 40;
    auto tol = boost::math::tools::eps_tolerance<double>(30);
    double left = lo > 0 ? lo : 1e-6 * h_max;
    double g_left = lo > 0 ? g_lo : proxy(left);
    auto bracket = boost::math::tools::toms748_solve(proxy, left, hi, g_left, g_hi, tol, iters);
    h_root = 0.5 * (bracket.first + bracket.second);
  }

  // Secant polish on the reconstructed angle itself.
  ShotResult r0 = eval_f(h_root, a_tilde, a_tilde, gamma, resolution, log);
  double f0 = r0.prism.alpha - alpha_target;
  ShotResult best = r0;
  double h_prev = h_root, f_prev = f0;
  double h_cur = std::min(h_max, h_root * (1 + (f0 > 0 ? -0.01 : 0.01)));
  for (int it = 0; it < 12 && std::abs(best.prism.alpha - alpha_target) >= 2.5e-4; ++it) {
    ShotResult r = eval_f(h_cur, a_tilde, a_tilde, gamma, resolution, log);
    double f = r.prism.alpha - alpha_target;
    if (std::abs(f) < std::abs(best.prism.alpha - alpha_target)) best = r;
    if (f == f_prev) break;
    double h_next = h_cur - f * (h_cur - h_prev) / (f - f_prev);
    h_prev = h_cur;
    f_prev = f;
    h_cur = std::clamp(h_next, 1e-6, h_max);
  }
  if (!(std::abs(best.prism.alpha - alpha_target) < 1e-3)) {
    std::ostringstream os;
    os << "symmetric shooting reached alpha = " << best.prism.alpha << ", target " << alpha_target;
    throw SolverError(os.str(), std::abs(best.prism.alpha - alpha_target));
  }
  record(log, "symmetric", best);
  return best;
}

WindingRectangle default_rectangle(int k) { return {0.5, pi / 2, 1.0 / (2 * k), pi / k}; }

namespace {

// Memoized (alpha, beta) evaluations at fixed h_tilde; batches run concurrently.
class Evaluator {
 public:
  Evaluator(double h_tilde, int resolution, ShotLog* log) : h_(h_tilde), res_(resolution), log_(log) {}

  std::vector<Eigen::Vector2d> batch(const std::vector<Eigen::Vector2d>& params) {
    std::vector<Eigen::Vector2d> todo;
    for (const auto& p : params)
      if (!cache_.count({p[0], p[1]}) &&
          std::find(todo.begin(), todo.end(), p) == todo.end())
        todo.push_back(p);
    const size_t width = std::max(1u, std::thread::hardware_concurrency());
    for (size_t start = 0; start < todo.size(); start += width) {
      std::vector<std::future<ShotResult>> jobs;
      for (size_t i = start; i < std::min(todo.size(), start + width); ++i)
        jobs.push_back(std::async(std::launch::async, [this, p = todo[i]] { return eval_f(h_, p[0], p[1], pi / 2, res_); }));
      for (size_t j = 0; j < jobs.size(); ++j) {
        ShotResult r = jobs[j].get();
        record(log_, "winding", r);
        cache_[{r.a_tilde, r.b_tilde}] = Eigen::Vector2d(r.prism.alpha, r.prism.beta);
      }
    }
    std::vector<Eigen::Vector2d> out;
    for (const auto& p : params) out.push_back(cache_.at({p[0], p[1]}));
    return out;
  }

 private:
  double h_;
  int res_;
  ShotLog* log_;
  std::map<std::pair<double, double>, Eigen::Vector2d> cache_;
};

std::vector<Eigen::Vector2d> boundary_params(const WindingRectangle& r, int n) {
  std::vector<Eigen::Vector2d> p;
  for (int i = 0; i < n; ++i) p.emplace_back(r.a_hi, r.b_lo + (r.b_hi - r.b_lo) * i / n);
  for (int i = 0; i < n; ++i) p.emplace_back(r.a_hi - (r.a_hi - r.a_lo) * i / n, r.b_hi);
  for (int i = 0; i < n; ++i) p.emplace_back(r.a_lo, r.b_hi - (r.b_hi - r.b_lo) * i / n);
  for (int i = 0; i < n; ++i) p.emplace_back(r.a_lo + (r.a_hi - r.a_lo) * i / n, r.b_lo);
  return p;
}

WindingReport winding_with(Evaluator& ev, int k, const WindingRectangle& rect, double at, double bt) {
  constexpr int kMaxSamples = 128;
  for (int n = 16; n <= kMaxSamples; n *= 2) {
    auto params = boundary_params(rect, n);
    auto img = ev.batch(params);
    WindingReport rep;
    rep.samples_per_side = n;
    rep.c1 = rep.c2 = rep.c3 = rep.c4 = true;
    rep.min_distance = 1e300;
    double total = 0;
    bool ambiguous = false;
    const int m = static_cast<int>(img.size());
    for (int i = 0; i < m; ++i) {
      const Eigen::Vector2d z = img[i] - Eigen::Vector2d(at, bt);
      const Eigen::Vector2d zn = img[(i + 1) % m] - Eigen::Vector2d(at, bt);
      rep.min_distance = std::min(rep.min_distance, z.norm());
      double d = std::remainder(std::atan2(zn[1], zn[0]) - std::atan2(z[1], z[0]), 2 * pi);
      if (std::abs(d) > pi / 2) ambiguous = true;
      total += d;
      int side = i / n;
      if (side == 0 && !(img[i][1] > pi / 2)) rep.c1 = false;
      if (side == 1 && !(img[i][0] > pi / k)) rep.c2 = false;
      if (side == 2 && !(img[i][1] < pi / 2)) rep.c3 = false;
      if (side == 3 && !(img[i][0] < pi / k)) rep.c4 = false;
    }
    if (rep.min_distance < 1e-6) ambiguous = true;
    if (!ambiguous) {
      rep.winding = static_cast<int>(std::lround(total / (2 * pi)));
      return rep;
    }
  }
  fail(ErrorKind::Indeterminate, "image curve passes too close to the target; winding is ill-defined");
}

}  // namespace

WindingReport winding_about(double h_tilde, int k, const WindingRectangle& rect, double alpha_target,
                            double beta_target, int resolution, ShotLog* log) {
  if (k < 3) fail(ErrorKind::InputDomain, "k must be >= 3");
  Evaluator ev(h_tilde, resolution, log);
  return winding_with(ev, k, rect, alpha_target, beta_target);
}

int winding_test(double h_tilde, int k, int resolution, ShotLog* log) {
  return winding_about(h_tilde, k, default_rectangle(k), pi / k, pi / 2, resolution, log).winding;
}

ShotResult solve_general(int k, int resolution, ShotLog* log) {
  if (k < 3) fail(ErrorKind::InputDomain, "k must be >= 3");
  const double at = pi / k, bt = pi / 2;
  const WindingRectangle outer = default_rectangle(k);

  // Smallest-effort h_tilde for which the c3/c4 inequalities hold.
  double h = 0.1;
  WindingReport rep;
  std::unique_ptr<Evaluator> ev;
  for (int halvings = 0;; ++halvings) {
    ev = std::make_unique<Evaluator>(h, resolution, log);
    rep = winding_with(*ev, k, outer, at, bt);
    if (rep.c3 && rep.c4) break;
    if (halvings >= 6) fail(ErrorKind::NoRootCertificate, "c3/c4 inequalities fail down to h_tilde = " + std::to_string(h));
    h *= 0.5;
  }
  if (rep.winding == 0) fail(ErrorKind::NoRootCertificate, "winding number of the outer rectangle is zero");
  const int certificate = rep.winding;

  WindingRectangle rect = outer;
  bool located = true;
  for (int depth = 0; depth < 8; ++depth) {
    if (std::max(rect.a_hi - rect.a_lo, rect.b_hi - rect.b_lo) < 0.02) break;
    double am = 0.5 * (rect.a_lo + rect.a_hi), bm = 0.5 * (rect.b_lo + rect.b_hi);
    WindingRectangle kids[4] = {{rect.a_lo, am, rect.b_lo, bm},
                                {am, rect.a_hi, rect.b_lo, bm},
                                {rect.a_lo, am, bm, rect.b_hi},
                                {am, rect.a_hi, bm, rect.b_hi}};
    bool found = false;
    for (const auto& kid : kids) {
      WindingReport w;
      try {
        w = winding_with(*ev, k, kid, at, bt);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Indeterminate) throw;
        continue;
      }
      if (w.winding != 0) {
        rect = kid;
        found = true;
        break;
      }
    }
    if (!found) {
      located = false;
      break;
    }
  }

  // Broyden polish with a finite-difference start.
  auto F = [&](const Eigen::Vector2d& x) {
    ShotResult r = eval_f(h, x[0], x[1], pi / 2, resolution, log);
    return std::make_pair(Eigen::Vector2d(r.prism.alpha - at, r.prism.beta - bt), r);
  };
  auto clamp = [&](Eigen::Vector2d x) {
    x[0] = std::clamp(x[0], outer.a_lo, outer.a_hi);
    x[1] = std::clamp(x[1], outer.b_lo, outer.b_hi);
    return x;
  };
  constexpr double kStep = 1e-3;
  Eigen::Vector2d x(0.5 * (rect.a_lo + rect.a_hi), 0.5 * (rect.b_lo + rect.b_hi));
  auto [fx, rx] = F(x);
  Eigen::Matrix2d Jm;
  for (int c = 0; c < 2; ++c) {
    Eigen::Vector2d e = Eigen::Vector2d::Zero();
    e[c] = (x[c] + kStep <= (c == 0 ? outer.a_hi : outer.b_hi)) ? kStep : -kStep;
    Jm.col(c) = (F(x + e).first - fx) / e[c];
  }
  ShotResult best = rx;
  double best_norm = fx.cwiseAbs().maxCoeff();
  for (int it = 0; it < 25 && best_norm >= 5e-4; ++it) {
    Eigen::Vector2d dx = -Jm.fullPivLu().solve(fx);
    if (!dx.allFinite()) break;
    Eigen::Vector2d xn = clamp(x + dx);
    dx = xn - x;
    if (dx.norm() < 1e-12) break;
    auto [fn, rn] = F(xn);
    Jm += ((fn - fx) - Jm * dx) * dx.transpose() / dx.squaredNorm();
    x = xn;
    fx = fn;
    double nrm = fx.cwiseAbs().maxCoeff();
    if (nrm < best_norm) {
      best_norm = nrm;
      best = rn;
    }
  }
  best.winding = certificate;
  if (!(best_norm < 2e-3)) {
    best.trusted = false;
    record(log, "general-untrusted", best);
    std::ostringstream os;
    os << "2D polish stalled at residual " << best_norm << (located ? "" : " (quadtree lost the root)");
    throw SolverError(os.str(), best_norm);
  }

  ShotResult fine = eval_f(best.h_tilde, best.a_tilde, best.b_tilde, pi / 2, 2 * resolution, log);
  double drift = std::max(std::abs(fine.prism.alpha - best.prism.alpha), std::abs(fine.prism.beta - best.prism.beta));
  if (!(drift < 5e-3)) best.trusted = false;
  record(log, "general", best);
  return best;
}

std::string shot_log_csv(const ShotLog& log) {
  std::ostringstream os;
  os << "SHOTLOG v1\n";
  os << "stage,h_tilde,a_tilde,b_tilde,h,alpha,beta,closure,trusted\n";
  os << std::setprecision(12);
  for (const auto& e : log)
    os << e.stage << ',' << e.h_tilde << ',' << e.a_tilde << ',' << e.b_tilde << ',' << e.h << ',' << e.alpha << ','
       << e.beta << ',' << e.closure << ',' << (e.trusted ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace minsurf
