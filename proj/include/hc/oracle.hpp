#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "hc/graphs.hpp"
#include "hc/tree.hpp"

namespace hc {

// States by vertex in tree (breadth-first) order.
using Configuration = std::vector<std::int8_t>;

// Boundary weights for one generation W_level: one row per vertex of the
// generation in tree order, one column per state. Column 0 is the vacant
// weight (conventionally 1); the measure weighs a boundary vertex x in
// state s by w(x, s).
struct LevelWeights {
  int level = 0;
  Eigen::MatrixXd w;
};

// Number of admissible configurations on V_n, computed by the transfer
// recursion over generations (independent of the explicit enumeration).
std::uint64_t count_admissible(const FiniteTree& tree, const FertileGraph& graph);

// Visits every admissible configuration exactly once, in lexicographic
// order of the state vector. The reference passed to the callback is
// reused between calls.
void for_each_admissible(const FiniteTree& tree, const FertileGraph& graph,
                         const std::function<void(const Configuration&)>& fn);

std::vector<Configuration> enumerate_admissible(const FiniteTree& tree,
                                                const FertileGraph& graph);

bool is_admissible(const FiniteTree& tree, const FertileGraph& graph,
                   const Configuration& sigma);

// Normalization constant: sum over admissible sigma of
// lambda^{#sigma} * prod_{x in W_n} w(x, sigma(x)).
double partition_function(const FiniteTree& tree, const FertileGraph& graph,
                          double lambda, const LevelWeights& boundary);

// Probability of one admissible configuration under the finite-volume
// measure with the given boundary weights. #sigma counts the occupied
// (state >= 1) vertices of the whole volume.
double measure_mu_n(const FiniteTree& tree, const FertileGraph& graph,
                    double lambda, const LevelWeights& boundary,
                    const Configuration& sigma);

// Largest absolute defect of the compatibility between the volume-n and
// volume-(n-1) measures: for every admissible sigma_{n-1}, the volume-n
// probabilities of its admissible extensions must sum to its volume-(n-1)
// probability. A residual at rounding level certifies consistency of the
// pair; a law that does not solve the recursion shows up as a residual
// orders of magnitude above it.
double check_consistency(const FiniteTree& tree, const FertileGraph& graph,
                         double lambda, const LevelWeights& boundary_n,
                         const LevelWeights& boundary_nm1);

// Per-vertex field of a weakly periodic 8-tuple on generation W_level:
// vertex x receives z[slot-1] where the slot is read off the coset pair
// of x with A = {1..a_count}. Needs level >= 1.
Eigen::VectorXd weakly_periodic_field(const FiniteTree& tree, int level,
                                      const Eigen::Matrix<double, 8, 1>& z,
                                      int a_count);

// Two-state boundary weights (1, z_x) from per-vertex recursion values.
LevelWeights two_state_weights(const FiniteTree& tree, int level,
                               const Eigen::VectorXd& zx);
LevelWeights two_state_weights(const FiniteTree& tree, int level, double z);

// Three-state boundary weights (1, z1/lambda, z2/lambda) from a constant
// solution of the consistency equations; the division undoes the lambda
// factor those equations carry relative to the measure weights.
LevelWeights three_state_weights(const FiniteTree& tree, int level, double z1,
                                 double z2, double lambda);

}  // namespace hc
