#include "hc/branches.hpp"

#include <cmath>
#include <stdexcept>

namespace hc::branches {

namespace {

void require_open_unit(double t) {
  if (!(t > 0.0) || !(t < 1.0))
    throw std::domain_error("t must lie in the open interval (0,1)");
}

double ipow(double base, int e) {
  double r = 1.0;
  for (int j = 0; j < e; ++j) r *= base;
  return r;
}

// relative residual of a cubic (ascending coefficients) at x
double cubic_relative_residual(const Eigen::Vector4d& c, double x) {
  double value = 0.0;
  double scale = 0.0;
  double p = 1.0;
  for (int j = 0; j < 4; ++j) {
    value += c(j) * p;
    scale += std::abs(c(j) * p);
    p *= x;
  }
  if (scale == 0.0) return 0.0;
  return std::abs(value) / scale;
}

}  // namespace

double polyval(const Eigen::Ref<const Eigen::VectorXd>& coeffs, double x) {
  double acc = 0.0;
  for (Eigen::Index j = coeffs.size() - 1; j >= 0; --j) acc = acc * x + coeffs(j);
  return acc;
}

Eigen::VectorXd i2_poly(double lambda) {
  if (lambda <= 0) throw std::domain_error("lambda must be positive");
  const double l = lambda, l2 = lambda * lambda, l3 = l2 * lambda;
  Eigen::VectorXd c(10);
  c << -1.0,
      l + 3.0,
      -(6.0 * l + 3.0),
      2.0 * l2 + 11.0 * l + 1.0,
      -(7.0 * l2 + 9.0 * l),
      12.0 * l2 + 3.0 * l,
      -(9.0 * l2 + 2.0 * l3),
      4.0 * l3 + 3.0 * l2,
      -3.0 * l3,
      l3;
  return c;
}

Eigen::VectorXd i3_poly(double lambda) {
  if (lambda <= 0) throw std::domain_error("lambda must be positive");
  const double l = lambda, l2 = lambda * lambda, l3 = l2 * lambda;
  Eigen::VectorXd c(6);
  c << -(l + 1.0),
      1.0,
      -2.0 * l2,
      3.0 * l2 + 2.0 * l,
      l2,
      2.0 * l3 + l2;
  return c;
}

Eigen::Vector4d i2_cubic_in_lambda(double t) {
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t6 = t3 * t3;
  return {(t - 1.0) * (t - 1.0) * (t - 1.0),
          t * (3.0 * t4 - 9.0 * t3 + 11.0 * t2 - 6.0 * t + 1.0),
          t3 * (3.0 * t4 - 9.0 * t3 + 12.0 * t2 - 7.0 * t + 2.0),
          t6 * (t - 1.0) * (t2 - 2.0 * t + 2.0)};
}

Eigen::Vector4d i3_cubic_in_lambda(double t) {
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  return {t - 1.0, 2.0 * t3 - 1.0, t5 + t4 + 3.0 * t3 - 2.0 * t2, 2.0 * t5};
}

I2Branches i2_branches(double t) {
  require_open_unit(t);
  const double q = t * t - 2.0 * t - 2.0;  // never zero on (0,1)
  I2Branches b;
  b.phi1 = -(t - 1.0) * (t - 1.0) / (q * q);
  b.phi2 = (1.0 - t) / (t * t * t);
  b.phi3 = 1.0 / (t * (1.0 - t));
  return b;
}

I3Branches i3_branches(double t) {
  require_open_unit(t);
  I3Branches b;
  b.lambda1 = (1.0 - t) / (t * t * t);
  const double t2 = t * t;
  const double disc = t2 * t2 + 2.0 * t2 * t - 5.0 * t2 + 2.0 * t + 1.0;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    b.lambda2 = -(t2 + t + 1.0 - root) / (4.0 * t2);
    b.lambda3 = -(t2 + t + 1.0 + root) / (4.0 * t2);
  }
  return b;
}

double branch_poly_consistency(BranchCase which, double t) {
  require_open_unit(t);
  double worst = 0.0;
  if (which == BranchCase::I2) {
    const Eigen::Vector4d cubic = i2_cubic_in_lambda(t);
    const I2Branches b = i2_branches(t);
    for (double lambda : {b.phi1, b.phi2, b.phi3})
      if (lambda > 0.0)
        worst = std::max(worst, cubic_relative_residual(cubic, lambda));
  } else {
    const Eigen::Vector4d cubic = i3_cubic_in_lambda(t);
    const I3Branches b = i3_branches(t);
    if (b.lambda1 > 0.0)
      worst = std::max(worst, cubic_relative_residual(cubic, b.lambda1));
    for (const auto& lam : {b.lambda2, b.lambda3})
      if (lam && *lam > 0.0)
        worst = std::max(worst, cubic_relative_residual(cubic, *lam));
  }
  return worst;
}

double i4_offdiag_factor(double x, double y, int k, double lambda) {
  if (k < 1) throw std::domain_error("need k >= 1");
  double s_k = 0.0;  // x^(k-1) + x^(k-2) y + ... + y^(k-1)
  for (int j = 0; j < k; ++j) s_k += ipow(x, k - 1 - j) * ipow(y, j);
  double s_km1 = 0.0;
  for (int j = 0; j + 1 < k; ++j) s_km1 += ipow(x, k - 2 - j) * ipow(y, j);
  return 1.0 + lambda * (2.0 * s_k - x * y * s_km1);
}

double i4_factor_identity(double x, double y, int k, double lambda) {
  if (k < 1) throw std::domain_error("need k >= 1");
  const double xk = ipow(x, k);
  const double yk = ipow(y, k);
  const double lhs1 = lambda * xk + lambda * x * yk + x - lambda * yk;
  const double lhs2 = lambda * yk + lambda * y * xk + y - lambda * xk;
  const double factored = (x - y) * i4_offdiag_factor(x, y, k, lambda);
  return std::abs((lhs1 - lhs2) - factored);
}

double ti_curve_phi(double x, int k) {
  require_open_unit(x);
  if (k < 1) throw std::domain_error("need k >= 1");
  return (1.0 - x) / ipow(x, k + 1);
}

}  // namespace hc::branches
