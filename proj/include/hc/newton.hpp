#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace hc {

using ResidualFn2 = std::function<Eigen::Vector2d(double, double)>;

struct SearchBox2 {
  Eigen::Vector2d lo;
  Eigen::Vector2d hi;
};

struct NewtonOptions {
  SearchBox2 box;
  int max_iterations = 200;
  double tolerance = 1e-13;  // max-norm residual target
};

struct NewtonResult {
  Eigen::Vector2d x;
  double residual = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Damped Newton with a finite-difference Jacobian and backtracking line
// search; iterates are projected back into the box.
NewtonResult newton2d(const ResidualFn2& f, const Eigen::Vector2d& seed,
                      const NewtonOptions& opt);

// Newton from a grid_per_axis^2 lattice of seeds; converged end points are
// deduplicated at dedup_tol in the max-norm (keeping the lowest residual)
// and returned sorted lexicographically.
std::vector<Eigen::Vector2d> multistart2d(const ResidualFn2& f,
                                          const NewtonOptions& opt,
                                          int grid_per_axis, double dedup_tol);

// Plain bisection for a sign change of f on [lo, hi].
double bisect(const std::function<double(double)>& f, double lo, double hi,
              int iterations = 200);

// Golden-section minimizer, followed by enough shrinkage for ~1e-10
// bracket width.
double golden_minimize(const std::function<double(double)>& f, double lo,
                       double hi, double tol = 1e-10);

}  // namespace hc
