#include "hc/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "hc/boundary_laws.hpp"
#include "hc/branches.hpp"
#include "hc/newton.hpp"

namespace hc::solver {

namespace {

constexpr double kDedupTol = 1e-8;
constexpr double kDomainMargin = 1e-9;
constexpr int kSeedGrid = 64;
constexpr double kTangencyWindow = 2e-9;

NewtonOptions unit_box_options() {
  NewtonOptions opt;
  opt.box.lo = {kDomainMargin, kDomainMargin};
  opt.box.hi = {1.0 - kDomainMargin, 1.0 - kDomainMargin};
  return opt;
}

// t + lambda * t^(p+1) - 1 = 0: the diagonal restriction of the I2/I3
// systems (p = 2) and of the I4 system (p = k). Unique root in (0,1).
double diagonal_root(double lambda, int p) {
  auto g = [&](double t) { return t + lambda * std::pow(t, p + 1) - 1.0; };
  double t = bisect(g, 1e-12, 1.0 - 1e-12);
  for (int j = 0; j < 8; ++j) {  // Newton polish
    const double dg = 1.0 + lambda * (p + 1) * std::pow(t, p);
    t -= g(t) / dg;
  }
  return t;
}

double norm_inf2(const Eigen::Vector2d& v) {
  return std::max(std::abs(v(0)), std::abs(v(1)));
}

SolutionRecord make_record(SystemKind system, int k, int i, double lambda,
                           const Eigen::Vector2d& x, const ResidualFn2& f) {
  SolutionRecord rec;
  rec.system = system;
  rec.k = k;
  rec.i = i;
  rec.lambda = lambda;
  rec.x = x;
  rec.residual = norm_inf2(f(x(0), x(1)));
  rec.cls = classify(x);
  return rec;
}

// multistart over the box plus the separately polished diagonal root
std::vector<SolutionRecord> solve_two_variable(SystemKind system, int k, int i,
                                               double lambda,
                                               const ResidualFn2& f,
                                               const NewtonOptions& opt,
                                               double diag) {
  std::vector<Eigen::Vector2d> points = multistart2d(f, opt, kSeedGrid, kDedupTol);

  const Eigen::Vector2d diag_point{diag, diag};
  bool have_diag = false;
  for (Eigen::Vector2d& p : points) {
    if (norm_inf2(p - diag_point) < kDedupTol) {
      p = diag_point;  // snap to the polished diagonal value
      have_diag = true;
    }
  }
  if (!have_diag) points.push_back(diag_point);
  std::sort(points.begin(), points.end(),
            [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
              if (a(0) != b(0)) return a(0) < b(0);
              return a(1) < b(1);
            });

  std::vector<SolutionRecord> out;
  out.reserve(points.size());
  for (const Eigen::Vector2d& p : points)
    out.push_back(make_record(system, k, i, lambda, p, f));
  return out;
}

struct I2Fold {
  double lambda_cr;
  double t_cr;
};

const I2Fold& i2_fold() {
  static const I2Fold fold = [] {
    auto phi3 = [](double t) { return branches::i2_branches(t).phi3; };
    double t_cr = golden_minimize(phi3, 1e-6, 1.0 - 1e-6, 1e-9);
    // Value comparisons go blind ~1e-9 from the flat minimum; polishing on
    // the sign of the difference quotient pins the argmin much tighter.
    const double h = 1e-5;
    auto slope = [&](double t) { return phi3(t + h) - phi3(t - h); };
    double lo = t_cr - 1e-4, hi = t_cr + 1e-4;
    if (slope(lo) < 0 && slope(hi) > 0) {
      for (int j = 0; j < 80 && hi - lo > 1e-13; ++j) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) < 0 ? lo : hi) = mid;
      }
      t_cr = 0.5 * (lo + hi);
    }
    return I2Fold{phi3(t_cr), t_cr};
  }();
  return fold;
}

void require_lambda(double lambda) {
  if (!(lambda > 0)) throw std::domain_error("lambda must be positive");
}

int thread_budget(int work_items) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("HC_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return std::max(1, std::min<int>(static_cast<int>(n), work_items));
}

}  // namespace

Classification classify(const Eigen::Ref<const Eigen::VectorXd>& coords) {
  const double spread = coords.maxCoeff() - coords.minCoeff();
  return spread < 1e-8 ? Classification::translation_invariant
                       : Classification::weakly_periodic_nonperiodic;
}

std::vector<SolutionRecord> solve_I2(double lambda) {
  require_lambda(lambda);
  const auto f = [lambda](double s, double t) {
    return laws::i2_system_residual(s, t, lambda);
  };

  const I2Fold& fold = i2_fold();
  if (std::abs(lambda - fold.lambda_cr) <= kTangencyWindow) {
    // At the fold the off-diagonal pair coalesces; report it once,
    // flagged, alongside the diagonal root.
    const double diag = diagonal_root(lambda, 2);
    std::vector<SolutionRecord> out;
    out.push_back(make_record(SystemKind::I2, 2, 2, lambda, {diag, diag}, f));
    SolutionRecord tang = make_record(
        SystemKind::I2, 2, 2, lambda, {1.0 - fold.t_cr, fold.t_cr}, f);
    tang.tangency = true;
    out.push_back(tang);
    return out;
  }
  return solve_two_variable(SystemKind::I2, 2, 2, lambda, f,
                            unit_box_options(), diagonal_root(lambda, 2));
}

std::vector<SolutionRecord> solve_I3(double lambda) {
  require_lambda(lambda);
  const auto f = [lambda](double s, double t) {
    return laws::i3_system_residual(s, t, lambda);
  };
  return solve_two_variable(SystemKind::I3, 2, 2, lambda, f,
                            unit_box_options(), diagonal_root(lambda, 2));
}

std::vector<SolutionRecord> solve_I4(double lambda, int k) {
  require_lambda(lambda);
  if (k < 2) throw std::domain_error("solve_I4: needs k >= 2");
  const auto f = [lambda, k](double x, double y) {
    return laws::i4_system_residual(x, y, k, lambda);
  };
  return solve_two_variable(SystemKind::I4, k, k, lambda, f,
                            unit_box_options(), diagonal_root(lambda, k));
}

std::vector<SolutionRecord> solve_TI3(const FertileGraph& graph, int k,
                                      double lambda) {
  require_lambda(lambda);
  if (graph.num_states() != 3)
    throw std::domain_error("solve_TI3: needs a three-state graph");
  if (k < 1) throw std::domain_error("solve_TI3: needs k >= 1");
  const SystemKind system = graph.name() == GraphName::hinge
                                ? SystemKind::TI3_hinge
                                : SystemKind::TI3_wand;
  const auto f = [&graph, k, lambda](double z1, double z2) {
    return laws::ti3_residual(z1, z2, graph, k, lambda);
  };

  const double z_max = 4.0 * (lambda + 1.0);
  NewtonOptions opt;
  opt.box.lo = {kDomainMargin, kDomainMargin};
  opt.box.hi = {z_max, z_max};

  // diagonal root of z = lambda * ((1+z)/den(z,z))^k
  const Eigen::MatrixXi& a = graph.incidence();
  auto g = [&](double z) {
    const double den = a(0, 0) + (a(0, 1) + a(0, 2)) * z;
    return z - lambda * std::pow((a(1, 0) + a(1, 1) * z + a(1, 2) * z) / den, k);
  };
  double diag = bisect(g, 1e-12, z_max);
  for (int j = 0; j < 6; ++j) {  // secant polish
    const double h = 1e-9 * std::max(1.0, diag);
    const double d = (g(diag + h) - g(diag - h)) / (2.0 * h);
    if (d == 0.0) break;
    diag -= g(diag) / d;
  }
  return solve_two_variable(system, k, 1, lambda, f, opt, diag);
}

std::vector<SolutionRecord> solve_system(SystemKind system, int k, int i,
                                         double lambda) {
  switch (system) {
    case SystemKind::I2:
      if (k != 2 || i != 2)
        throw std::invalid_argument("system I2 is solvable for k=2, i=2 only");
      return solve_I2(lambda);
    case SystemKind::I3:
      if (k != 2 || i != 2)
        throw std::invalid_argument("system I3 is solvable for k=2, i=2 only");
      return solve_I3(lambda);
    case SystemKind::I4:
      if (i != k)
        throw std::invalid_argument("system I4 requires i = k");
      return solve_I4(lambda, k);
    case SystemKind::TI3_hinge:
      return solve_TI3(FertileGraph::hinge(), k, lambda);
    case SystemKind::TI3_wand:
      return solve_TI3(FertileGraph::wand(), k, lambda);
    default:
      throw std::invalid_argument("no direct solver for this system");
  }
}

CriticalPoint critical_lambda(SystemKind system, int k, int i) {
  if (system == SystemKind::I2) {
    if (k != 2 || i != 2)
      throw std::invalid_argument("I2 fold detection covers k=2, i=2 only");
    const I2Fold& fold = i2_fold();
    return CriticalPoint{fold.lambda_cr, fold.t_cr, "fold-min"};
  }
  if (system == SystemKind::TI3_hinge || system == SystemKind::TI3_wand) {
    const FertileGraph graph = system == SystemKind::TI3_hinge
                                   ? FertileGraph::hinge()
                                   : FertileGraph::wand();
    auto count = [&](double lambda) {
      return static_cast<int>(solve_TI3(graph, k, lambda).size());
    };
    // multiplicative scan for a bracket, then bisection on the count
    double lo = 1.0 / 16.0;
    int count_lo = count(lo);
    double hi = lo;
    bool bracketed = false;
    for (int j = 0; j < 24; ++j) {
      hi = lo * 1.5;
      const int count_hi = count(hi);
      if (count_hi != count_lo) {
        bracketed = true;
        break;
      }
      lo = hi;
      count_lo = count_hi;
    }
    if (!bracketed)
      throw std::runtime_error(
          "critical_lambda: no solution-count change found in the scan range");
    while (hi - lo > 1e-3) {
      const double mid = 0.5 * (lo + hi);
      if (count(mid) == count_lo)
        lo = mid;
      else
        hi = mid;
    }

    // Raw counts blur within ~1e-5 of the branch point: the residual is
    // cubically flat there, so distinct-root detection saturates. The
    // count changes exactly where the Jacobian at the symmetric root goes
    // singular, and that determinant stays a clean sign probe all the way
    // in. Finish the bracket on it.
    const Eigen::MatrixXi& a = graph.incidence();
    auto det_at_symmetric = [&](double lambda) {
      auto g = [&](double z) {
        const double den = a(0, 0) + (a(0, 1) + a(0, 2)) * z;
        return z - lambda * std::pow((a(1, 0) + (a(1, 1) + a(1, 2)) * z) / den, k);
      };
      double z = bisect(g, 1e-12, 4.0 * (lambda + 1.0));
      Eigen::Matrix2d jac;
      const double den = a(0, 0) + a(0, 1) * z + a(0, 2) * z;
      for (int row = 1; row <= 2; ++row) {
        const double num = a(row, 0) + a(row, 1) * z + a(row, 2) * z;
        const double scale = lambda * k * std::pow(num / den, k - 1) / (den * den);
        for (int col = 1; col <= 2; ++col)
          jac(row - 1, col - 1) = (row == col ? 1.0 : 0.0) -
                                  scale * (a(row, col) * den - num * a(0, col));
      }
      return jac.determinant();
    };
    lo = std::max(lo - 1e-3, 1e-6);
    hi = hi + 1e-3;
    double det_lo = det_at_symmetric(lo);
    if (det_lo * det_at_symmetric(hi) < 0) {
      while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (det_at_symmetric(mid) * det_lo > 0)
          lo = mid;
        else
          hi = mid;
      }
    }
    return CriticalPoint{0.5 * (lo + hi),
                         std::numeric_limits<double>::quiet_NaN(),
                         "count-bisection"};
  }
  throw std::invalid_argument(
      "critical_lambda: no fold-type critical point for this system");
}

SweepReport sweep(SystemKind system, int k, int i, double lambda_min,
                  double lambda_max, int steps) {
  if (!(lambda_min > 0)) throw std::domain_error("lambda_min must be positive");
  if (!(lambda_max > lambda_min))
    throw std::domain_error("need lambda_max > lambda_min");
  if (steps < 2) throw std::domain_error("need at least 2 sweep steps");

  SweepReport report;
  report.system = system;
  report.k = k;
  report.i = i;
  report.lambda_min = lambda_min;
  report.lambda_max = lambda_max;
  report.steps = steps;
  report.points.resize(steps);

  const double step = (lambda_max - lambda_min) / (steps - 1);
  auto eval_point = [&](int j) {
    SweepPoint& p = report.points[j];
    p.lambda = lambda_min + j * step;
    try {
      p.records = solve_system(system, k, i, p.lambda);
      p.count = static_cast<int>(p.records.size());
    } catch (const std::exception& e) {
      p.count = -1;
      p.error = e.what();
    }
  };

  const int threads = thread_budget(steps);
  if (threads <= 1) {
    for (int j = 0; j < steps; ++j) eval_point(j);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int j = next.fetch_add(1); j < steps; j = next.fetch_add(1))
          eval_point(j);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  // refine every count transition to step * 1e-3
  const double refine_tol = step * 1e-3;
  for (int j = 0; j + 1 < steps; ++j) {
    const SweepPoint& a = report.points[j];
    const SweepPoint& b = report.points[j + 1];
    if (a.count < 0 || b.count < 0 || a.count == b.count) continue;
    double lo = a.lambda, hi = b.lambda;
    const int count_lo = a.count;
    while (hi - lo > refine_tol) {
      const double mid = 0.5 * (lo + hi);
      int count_mid;
      try {
        count_mid = static_cast<int>(solve_system(system, k, i, mid).size());
      } catch (const std::exception&) {
        break;
      }
      if (count_mid == count_lo)
        lo = mid;
      else
        hi = mid;
    }
    report.criticals.push_back({0.5 * (lo + hi), "count-bisection"});
  }

  // A grid point sitting on a fold carries the in-between count, which
  // splits one transition into two refinements a hair apart; fold them
  // back together.
  std::vector<SweepReport::Critical> merged;
  for (const auto& c : report.criticals) {
    if (!merged.empty() && c.lambda - merged.back().lambda <= step)
      merged.back().lambda = 0.5 * (merged.back().lambda + c.lambda);
    else
      merged.push_back(c);
  }
  report.criticals = std::move(merged);
  return report;
}

const char* to_string(SystemKind system) {
  switch (system) {
    case SystemKind::I2: return "I2";
    case SystemKind::I3: return "I3";
    case SystemKind::I4: return "I4";
    case SystemKind::WP8: return "WP8";
    case SystemKind::TI3_hinge: return "ti3-hinge";
    case SystemKind::TI3_wand: return "ti3-wand";
    case SystemKind::TI2: return "TI2";
  }
  return "?";
}

const char* to_string(Classification cls) {
  return cls == Classification::translation_invariant
             ? "translation_invariant"
             : "weakly_periodic_nonperiodic";
}

std::optional<SystemKind> system_from_string(std::string_view name) {
  if (name == "I2") return SystemKind::I2;
  if (name == "I3") return SystemKind::I3;
  if (name == "I4") return SystemKind::I4;
  if (name == "WP8") return SystemKind::WP8;
  if (name == "ti3-hinge") return SystemKind::TI3_hinge;
  if (name == "ti3-wand") return SystemKind::TI3_wand;
  if (name == "TI2") return SystemKind::TI2;
  return std::nullopt;
}

}  // namespace hc::solver
