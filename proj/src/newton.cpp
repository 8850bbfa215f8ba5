#include "hc/newton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hc {

namespace {

Eigen::Vector2d clamp_to(const SearchBox2& box, Eigen::Vector2d x) {
  x(0) = std::clamp(x(0), box.lo(0), box.hi(0));
  x(1) = std::clamp(x(1), box.lo(1), box.hi(1));
  return x;
}

double norm_inf(const Eigen::Vector2d& v) {
  return std::max(std::abs(v(0)), std::abs(v(1)));
}

}  // namespace

NewtonResult newton2d(const ResidualFn2& f, const Eigen::Vector2d& seed,
                      const NewtonOptions& opt) {
  NewtonResult res;
  Eigen::Vector2d x = clamp_to(opt.box, seed);
  Eigen::Vector2d fx = f(x(0), x(1));
  double err = norm_inf(fx);

  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    res.iterations = iter;
    if (!std::isfinite(err)) break;
    if (err < opt.tolerance) {
      res.converged = true;
      break;
    }

    Eigen::Matrix2d jac;
    bool jac_ok = true;
    for (int j = 0; j < 2; ++j) {
      const double h = 1e-7 * std::max(1.0, std::abs(x(j)));
      Eigen::Vector2d xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      xp = clamp_to(opt.box, xp);  // one-sided difference at the box edge
      xm = clamp_to(opt.box, xm);
      const double dh = xp(j) - xm(j);
      if (dh <= 0.0) {
        jac_ok = false;
        break;
      }
      jac.col(j) = (f(xp(0), xp(1)) - f(xm(0), xm(1))) / dh;
    }
    if (!jac_ok) break;
    const double det = jac(0, 0) * jac(1, 1) - jac(0, 1) * jac(1, 0);
    if (!std::isfinite(det) || std::abs(det) < 1e-300) break;
    const Eigen::Vector2d step = jac.partialPivLu().solve(-fx);
    if (!step.allFinite()) break;

    double alpha = 1.0;
    bool improved = false;
    for (int bt = 0; bt < 60; ++bt) {
      const Eigen::Vector2d trial = clamp_to(opt.box, x + alpha * step);
      const Eigen::Vector2d ft = f(trial(0), trial(1));
      const double et = norm_inf(ft);
      if (std::isfinite(et) && et < err) {
        x = trial;
        fx = ft;
        err = et;
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) break;  // stagnated
  }

  if (err < opt.tolerance) res.converged = true;
  res.x = x;
  res.residual = err;
  return res;
}

std::vector<Eigen::Vector2d> multistart2d(const ResidualFn2& f,
                                          const NewtonOptions& opt,
                                          int grid_per_axis, double dedup_tol) {
  struct Found {
    Eigen::Vector2d x;
    double residual;
  };
  std::vector<Found> found;

  const Eigen::Vector2d span = opt.box.hi - opt.box.lo;
  for (int a = 0; a < grid_per_axis; ++a) {
    for (int b = 0; b < grid_per_axis; ++b) {
      Eigen::Vector2d seed = opt.box.lo;
      seed(0) += span(0) * (a + 0.5) / grid_per_axis;
      seed(1) += span(1) * (b + 0.5) / grid_per_axis;
      const NewtonResult r = newton2d(f, seed, opt);
      if (!r.converged) continue;
      bool merged = false;
      for (Found& g : found) {
        if (norm_inf(g.x - r.x) < dedup_tol) {
          if (r.residual < g.residual) g = Found{r.x, r.residual};
          merged = true;
          break;
        }
      }
      if (!merged) found.push_back(Found{r.x, r.residual});
    }
  }

  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    if (a.x(0) != b.x(0)) return a.x(0) < b.x(0);
    return a.x(1) < b.x(1);
  });
  std::vector<Eigen::Vector2d> out;
  out.reserve(found.size());
  for (const Found& g : found) out.push_back(g.x);
  return out;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              int iterations) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw std::invalid_argument("bisect: no sign change on the interval");
  for (int j = 0; j < iterations; ++j) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-16 * std::max(1.0, std::abs(lo))) break;
  }
  return 0.5 * (lo + hi);
}

double golden_minimize(const std::function<double(double)>& f, double lo,
                       double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace hc
