#pragma once

#include <optional>

#include <Eigen/Dense>

namespace hc::branches {

// Horner evaluation; coefficients ascending in the power of x.
double polyval(const Eigen::Ref<const Eigen::VectorXd>& coeffs, double x);

// Degree-9 polynomial in t whose positive roots carry the I2 off-diagonal
// solutions; coefficients (ascending powers of t) depend on lambda.
Eigen::VectorXd i2_poly(double lambda);

// Degree-5 polynomial in t for the I3 case, same layout.
Eigen::VectorXd i3_poly(double lambda);

// The same polynomials regrouped as cubics in lambda with t fixed;
// coefficients ascending in lambda. Identical as bivariate polynomials,
// which the tests check on random (lambda, t).
Eigen::Vector4d i2_cubic_in_lambda(double t);
Eigen::Vector4d i3_cubic_in_lambda(double t);

// Solution branches of the I2 cubic. phi2 and phi3 are exact positive
// roots on 0<t<1; phi1 is negative there, so only the positive pair ever
// feeds the solvers.
//   phi1 = -(t-1)^2/(t^2-2t-2)^2, phi2 = (1-t)/t^3, phi3 = 1/(t(1-t))
struct I2Branches {
  double phi1;
  double phi2;
  double phi3;
};
I2Branches i2_branches(double t);

// I3 branches: lambda1 = (1-t)/t^3 is the positive root; the other two,
// -(t^2+t+1 -+ sqrt(t^4+2t^3-5t^2+2t+1))/(4t^2), are negative and are
// reported as absent when the discriminant dips below zero.
struct I3Branches {
  double lambda1;
  std::optional<double> lambda2;
  std::optional<double> lambda3;
};
I3Branches i3_branches(double t);

enum class BranchCase { I2, I3 };

// Max relative residual of the case's cubic in lambda over its real
// positive branch values at t. Exactness of the branch formulas puts this
// at rounding level.
double branch_poly_consistency(BranchCase which, double t);

// Difference of the two I4 balance equations minus its exact factoring
// (x-y) * i4_offdiag_factor(x,y,k,lambda); zero up to rounding for all
// inputs.
double i4_factor_identity(double x, double y, int k, double lambda);

// The bracket multiplying (x-y):
//   1 + lambda*(2*S_k - x*y*S_{k-1}),
// S_m = x^(m-1) + x^(m-2) y + ... + y^(m-1). Strictly positive on (0,1)^2,
// which pins every I4 solution to the diagonal x = y.
double i4_offdiag_factor(double x, double y, int k, double lambda);

// Activity carried by the diagonal solution x of the k=i case:
// lambda = (1-x)/x^(k+1), strictly decreasing on (0,1).
double ti_curve_phi(double x, int k);

}  // namespace hc::branches
