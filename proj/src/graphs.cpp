#include "hc/graphs.hpp"

namespace hc {

namespace {

Eigen::MatrixXi from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(n, n);
  for (auto [a, b] : edges) {
    m(a, b) = 1;
    m(b, a) = 1;
  }
  return m;
}

}  // namespace

FertileGraph FertileGraph::pipe() {
  return FertileGraph(GraphName::pipe, from_edges(2, {{0, 0}, {0, 1}}));
}

FertileGraph FertileGraph::hinge() {
  return FertileGraph(GraphName::hinge,
                      from_edges(3, {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {2, 2}}));
}

FertileGraph FertileGraph::wand() {
  return FertileGraph(GraphName::wand,
                      from_edges(3, {{0, 1}, {0, 2}, {1, 1}, {2, 2}}));
}

FertileGraph FertileGraph::from_name(std::string_view name) {
  if (name == "pipe") return pipe();
  if (name == "hinge") return hinge();
  if (name == "wand") return wand();
  if (name == "wrench")
    throw std::invalid_argument(
        "the wrench graph has no edge set defined here; "
        "supported graphs: pipe, hinge, wand");
  throw std::invalid_argument("unknown graph '" + std::string(name) +
                              "'; supported: pipe, hinge, wand");
}

const char* to_string(GraphName name) {
  switch (name) {
    case GraphName::pipe: return "pipe";
    case GraphName::hinge: return "hinge";
    case GraphName::wand: return "wand";
  }
  return "?";
}

}  // namespace hc
