#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hc {

// Constraint graphs of the hard-core models. States are 0..m with 0 vacant;
// a pair of nearest-neighbour states (a,b) is allowed iff {a,b} is an edge.
enum class GraphName { pipe, hinge, wand };

class FertileGraph {
public:
  static FertileGraph pipe();
  static FertileGraph hinge();
  static FertileGraph wand();

  // Accepts "pipe", "hinge", "wand". "wrench" is rejected: its edge set is
  // not defined in this library, so constructing it would be a guess.
  static FertileGraph from_name(std::string_view name);

  GraphName name() const { return name_; }
  int num_states() const { return static_cast<int>(incidence_.rows()); }
  const Eigen::MatrixXi& incidence() const { return incidence_; }

  bool admissible(int a, int b) const {
    if (a < 0 || b < 0 || a >= num_states() || b >= num_states())
      throw std::domain_error("FertileGraph::admissible: state out of range");
    return incidence_(a, b) == 1;
  }

private:
  FertileGraph(GraphName name, Eigen::MatrixXi incidence)
      : name_(name), incidence_(std::move(incidence)) {}

  GraphName name_;
  Eigen::MatrixXi incidence_;
};

const char* to_string(GraphName name);

inline const Eigen::MatrixXi& incidence_matrix(const FertileGraph& g) {
  return g.incidence();
}

inline bool is_admissible_pair(const FertileGraph& g, int a, int b) {
  return g.admissible(a, b);
}

}  // namespace hc
