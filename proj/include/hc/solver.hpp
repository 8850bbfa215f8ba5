#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hc/graphs.hpp"

namespace hc::solver {

enum class SystemKind { I2, I3, I4, WP8, TI3_hinge, TI3_wand, TI2 };

enum class Classification { translation_invariant, weakly_periodic_nonperiodic };

struct SolutionRecord {
  SystemKind system;
  int k = 2;
  int i = 2;
  double lambda = 0.0;
  Eigen::Vector2d x;        // (s,t), (x,y) or (z1,z2) depending on the system
  double residual = 0.0;    // max-norm of the system residual at x
  Classification cls = Classification::translation_invariant;
  bool tangency = false;    // fold root reported once at lambda == lambda_cr
};

// All solutions of a system in its search region at one activity, sorted
// lexicographically by coordinates. Duplicates are merged at 1e-8 in the
// max-norm. The diagonal (translation-invariant) root is located by a
// one-dimensional solve and is therefore exact to rounding.
//
// solve_I2 reports the fold specially: within 2e-9 of the critical
// activity the coalescing off-diagonal pair is returned as a single
// tangency-flagged record next to the diagonal one.
std::vector<SolutionRecord> solve_I2(double lambda);
std::vector<SolutionRecord> solve_I3(double lambda);
std::vector<SolutionRecord> solve_I4(double lambda, int k);
std::vector<SolutionRecord> solve_TI3(const FertileGraph& graph, int k,
                                      double lambda);

// Dispatch by system tag; validates the (k,i) combination first.
std::vector<SolutionRecord> solve_system(SystemKind system, int k, int i,
                                         double lambda);

// Translation-invariant iff all components agree within 1e-8.
Classification classify(const Eigen::Ref<const Eigen::VectorXd>& coords);

struct CriticalPoint {
  double lambda = 0.0;
  double arg = 0.0;  // fold coordinate t_cr where one exists, else NaN
  std::string method;
};

// Fold of I2 (k=2, i=2) via minimization of the positive branch curve;
// solution-count transition of the three-state systems via bisection on
// the count. Other systems have no detectable critical point here.
CriticalPoint critical_lambda(SystemKind system, int k, int i);

struct SweepPoint {
  double lambda = 0.0;
  int count = -1;  // -1 when the solve failed; see error
  std::vector<SolutionRecord> records;
  std::string error;
};

struct SweepReport {
  SystemKind system;
  int k = 2;
  int i = 2;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int steps = 0;
  std::vector<SweepPoint> points;
  struct Critical {
    double lambda;
    std::string method;
  };
  std::vector<Critical> criticals;
};

// Uniform activity grid; every count transition between adjacent grid
// points is refined by bisection to grid_resolution * 1e-3. Grid points
// are independent; HC_THREADS caps the parallelism.
SweepReport sweep(SystemKind system, int k, int i, double lambda_min,
                  double lambda_max, int steps);

const char* to_string(SystemKind system);
const char* to_string(Classification cls);
std::optional<SystemKind> system_from_string(std::string_view name);

}  // namespace hc::solver
