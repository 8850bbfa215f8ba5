#include <doctest.h>

#include <set>

#include "hc/tree.hpp"

using namespace hc;

TEST_CASE("volume sizes") {
  CHECK(build_tree(2, 1).size() == 4);
  CHECK(build_tree(2, 2).size() == 10);
  CHECK(build_tree(3, 1).size() == 5);
  CHECK(build_tree(1, 3).size() == 7);  // 1 + 2 + 2 + 2

  const FiniteTree t = build_tree(2, 3);
  CHECK(t.level_size(0) == 1);
  CHECK(t.level_size(1) == 3);
  CHECK(t.level_size(2) == 6);
  CHECK(t.level_size(3) == 12);
}

TEST_CASE("capacity cap") {
  CHECK_THROWS_AS(build_tree(2, 4), std::length_error);  // |V_4| = 46
  CHECK_THROWS_AS(build_tree(5, 2), std::length_error);  // |V_2| = 37
  CHECK_NOTHROW(build_tree(4, 2));                       // |V_2| = 26
}

TEST_CASE("structure invariants") {
  const FiniteTree t = build_tree(3, 2);
  for (int v = 1; v < t.size(); ++v) {
    const TreeVertex& vert = t.vertex(v);
    CHECK(vert.parent >= 0);
    CHECK(vert.parent < v);
    CHECK(t.vertex(vert.parent).depth == vert.depth - 1);
  }
  // distinct labels around every vertex, child labels exclude the parent's
  for (int v = 0; v < t.size(); ++v) {
    std::set<int> labels;
    if (v != t.root()) labels.insert(t.vertex(v).edge_label);
    for (int c : t.vertex(v).children) {
      const int label = t.vertex(c).edge_label;
      CHECK(label >= 1);
      CHECK(label <= t.order() + 1);
      CHECK(labels.insert(label).second);
    }
    if (!t.vertex(v).children.empty())
      CHECK(static_cast<int>(labels.size()) == t.order() + 1);
  }
}

TEST_CASE("coset classes from path parities") {
  const FiniteTree t = build_tree(2, 2);
  const int i = 1;  // A = {1}
  CHECK(coset_of(t, t.root(), i) == CosetClass::H0);

  // depth-1 child over the label-1 edge: odd length, odd A-count
  const int c1 = t.vertex(t.root()).children[0];
  CHECK(t.vertex(c1).edge_label == 1);
  CHECK(coset_of(t, c1, i) == CosetClass::H3);

  // depth-2 vertex with both path labels outside A
  const int c3 = t.vertex(t.root()).children[2];
  CHECK(t.vertex(c3).edge_label == 3);
  int grandchild = -1;
  for (int c : t.vertex(c3).children)
    if (t.vertex(c).edge_label == 2) grandchild = c;
  REQUIRE(grandchild >= 0);
  CHECK(coset_of(t, grandchild, i) == CosetClass::H0);

  CHECK_THROWS_AS(classify_vertex(t, t.root(), i), std::domain_error);
}

TEST_CASE("slot table covers exactly the eight reachable pairs") {
  using C = CosetClass;
  CHECK(wp_slot(C::H3, C::H1) == 1);
  CHECK(wp_slot(C::H1, C::H3) == 2);
  CHECK(wp_slot(C::H3, C::H0) == 3);
  CHECK(wp_slot(C::H0, C::H3) == 4);
  CHECK(wp_slot(C::H1, C::H2) == 5);
  CHECK(wp_slot(C::H2, C::H1) == 6);
  CHECK(wp_slot(C::H2, C::H0) == 7);
  CHECK(wp_slot(C::H0, C::H2) == 8);
  CHECK_THROWS_AS(wp_slot(C::H0, C::H0), std::domain_error);
  CHECK_THROWS_AS(wp_slot(C::H3, C::H2), std::domain_error);
}

TEST_CASE("slot multiplicities on the k=2, |A|=2 volume") {
  // Children of a slot-j vertex realize exactly the slot pattern the
  // fixed-point system encodes: here W_1 carries slots {3,3,7} and W_2
  // carries {4,2,4,2,5,5}.
  const FiniteTree t = build_tree(2, 2);
  const int i = 2;
  std::multiset<int> w1, w2;
  for (int v = t.level_begin(1); v < t.level_end(1); ++v) {
    const CosetPair p = classify_vertex(t, v, i);
    w1.insert(wp_slot(p.own, p.parent));
  }
  for (int v = t.level_begin(2); v < t.level_end(2); ++v) {
    const CosetPair p = classify_vertex(t, v, i);
    w2.insert(wp_slot(p.own, p.parent));
  }
  CHECK(w1 == std::multiset<int>{3, 3, 7});
  CHECK(w2 == std::multiset<int>{2, 2, 4, 4, 5, 5});
}
