#pragma once

#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "hc/graphs.hpp"

namespace hc::laws {

using Vector8 = Eigen::Matrix<double, 8, 1>;

// Weakly periodic field over the index-four coset structure: one positive
// value per (own class, parent class) slot, together with the branching
// order k, the letter-set cardinality i = |A| and the activity lambda.
// At any solution every component lies in (0,1): each is a product of
// factors 1/(1+lambda*z) < 1.
struct WeaklyPeriodicLaw {
  Vector8 z;
  int k = 2;
  int i = 2;
  double lambda = 1.0;
};

enum class InvariantSet { I1, I2, I3, I4 };

// z = prod over children of 1/(1 + lambda*z_child), the two-state
// boundary-law step.
double hc_recursion(std::span<const double> children, double lambda);

// Residual of the full eight-slot fixed-point system. Slots 1,2,7,8 see
// exponents (i, k-i); slots 3..6 see (i-1, k-i+1), matching the child
// label multiplicities on the tree.
Vector8 wp8_residual(const WeaklyPeriodicLaw& law);

// Residual of the reduced system in (z1,z2,z7,z8) obtained by eliminating
// the four middle slots. Uses fractional powers z^(1-1/i), (1+lambda z)^(k/i)
// on the principal real branch.
Eigen::Vector4d wp4_residual(double z1, double z2, double z7, double z8,
                             int k, int i, double lambda);

// Number of times wp4_residual / wp8_residual clamped an argument up to
// 1e-300 to dodge underflow in a fractional power. Diagnostic only.
std::uint64_t clamp_events();
void reset_clamp_events();

// Recovers the four middle slots from (z1,z2,z7,z8) by the exact
// elimination behind the reduced system. When the input solves the
// reduced system, the returned eight-tuple drives wp8_residual below
// 1e-9 for any admissible (k, i, lambda).
WeaklyPeriodicLaw lift_reduced(double z1, double z2, double z7, double z8,
                               int k, int i, double lambda);

// k=2, i=2 specializations of the reduced system on the invariant sets,
// in square-root variables.
//   I2 (z1=z7, z2=z8), s=sqrt(z1), t=sqrt(z2):
//     s = (1+l s^2)/(1+l s^2+l t),  t = (1+l t^2)/(1+l t^2+l s)
//   I3 (z1=z2, z7=z8), s=sqrt(z1), t=sqrt(z7):
//     s = (1+l t^2)/(1+l t^2+l t),  t = (1+l s^2)/(1+l s^2+l s)
Eigen::Vector2d i2_system_residual(double s, double t, double lambda);
Eigen::Vector2d i3_system_residual(double s, double t, double lambda);

// I4 (z1=z8, z2=z7) with k=i, in k-th-root variables x=z1^(1/k), y=z2^(1/k):
//   l x^k + l x y^k + x - l y^k = 1   and the same with x,y swapped.
Eigen::Vector2d i4_system_residual(double x, double y, int k, double lambda);

// Constant-field consistency equations of the three-state models:
//   z_j = lambda * ((a_j0 + a_j1 z1 + a_j2 z2)/(a_00 + a_01 z1 + a_02 z2))^k
// for j = 1,2, with a the incidence matrix of the hinge or wand.
Eigen::Vector2d ti3_residual(double z1, double z2, const FertileGraph& graph,
                             int k, double lambda);

// Embeddings of the two-variable invariant-set solutions into the reduced
// four-tuple (z1, z2, z7, z8).
Eigen::Vector4d reduced_from_i2(double s, double t);
Eigen::Vector4d reduced_from_i3(double s, double t);
Eigen::Vector4d reduced_from_i4(double x, double y, int k);

}  // namespace hc::laws
