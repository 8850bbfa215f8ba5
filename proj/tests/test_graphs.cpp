#include <doctest.h>

#include "hc/graphs.hpp"

using namespace hc;

TEST_CASE("incidence matrices match the edge lists") {
  Eigen::MatrixXi pipe(2, 2);
  pipe << 1, 1, 1, 0;
  CHECK(incidence_matrix(FertileGraph::pipe()) == pipe);

  Eigen::MatrixXi hinge(3, 3);
  hinge << 1, 1, 1, 1, 1, 0, 1, 0, 1;
  CHECK(incidence_matrix(FertileGraph::hinge()) == hinge);

  Eigen::MatrixXi wand(3, 3);
  wand << 0, 1, 1, 1, 1, 0, 1, 0, 1;
  CHECK(incidence_matrix(FertileGraph::wand()) == wand);
}

TEST_CASE("pair admissibility") {
  CHECK_FALSE(is_admissible_pair(FertileGraph::pipe(), 1, 1));
  CHECK(is_admissible_pair(FertileGraph::hinge(), 0, 0));
  CHECK_FALSE(is_admissible_pair(FertileGraph::wand(), 0, 0));
  CHECK_THROWS_AS(is_admissible_pair(FertileGraph::pipe(), 0, 2),
                  std::domain_error);
  CHECK_THROWS_AS(is_admissible_pair(FertileGraph::hinge(), -1, 0),
                  std::domain_error);
}

TEST_CASE("admissibility is symmetric and vacancy rows are as expected") {
  for (const auto& g : {FertileGraph::pipe(), FertileGraph::hinge(),
                        FertileGraph::wand()}) {
    for (int a = 0; a < g.num_states(); ++a)
      for (int b = 0; b < g.num_states(); ++b)
        CHECK(is_admissible_pair(g, a, b) == is_admissible_pair(g, b, a));
  }
  // state 0 is compatible with everything on the pipe and hinge
  for (const auto& g : {FertileGraph::pipe(), FertileGraph::hinge()})
    for (int b = 0; b < g.num_states(); ++b) CHECK(is_admissible_pair(g, 0, b));
  CHECK(incidence_matrix(FertileGraph::wand())(0, 0) == 0);
}

TEST_CASE("graph lookup by name") {
  CHECK(FertileGraph::from_name("pipe").num_states() == 2);
  CHECK(FertileGraph::from_name("hinge").name() == GraphName::hinge);
  CHECK(FertileGraph::from_name("wand").num_states() == 3);
  CHECK_THROWS_AS(FertileGraph::from_name("wrench"), std::invalid_argument);
  CHECK_THROWS_AS(FertileGraph::from_name("cube"), std::invalid_argument);
}
