#pragma once

#include <stdexcept>
#include <vector>

namespace hc {

// Finite volume of the rooted Cayley tree of order k: the root has k+1
// children, every other vertex has k. Vertices are stored breadth-first,
// so generation W_m occupies one contiguous index range and every parent
// precedes its children.
//
// Each edge carries a label from 1..k+1. Labels around any vertex are
// pairwise distinct; a child edge never repeats the parent edge label.
// Labels are assigned smallest-first in creation order, which makes the
// layout fully deterministic. The labels along the root->x path spell the
// group word of x.
struct TreeVertex {
  int parent = -1;      // -1 for the root
  int depth = 0;
  int edge_label = 0;   // label of the edge towards the parent; 0 for the root
  std::vector<int> children;
};

class FiniteTree {
public:
  FiniteTree(int k, int n, std::vector<TreeVertex> vertices,
             std::vector<int> level_offsets)
      : k_(k), n_(n), vertices_(std::move(vertices)),
        level_offsets_(std::move(level_offsets)) {}

  int order() const { return k_; }   // branching number k
  int depth() const { return n_; }   // outermost generation index n
  int size() const { return static_cast<int>(vertices_.size()); }
  int root() const { return 0; }

  const TreeVertex& vertex(int v) const { return vertices_.at(v); }

  // vertices of W_m are [level_begin(m), level_end(m))
  int level_begin(int m) const { return level_offsets_.at(m); }
  int level_end(int m) const { return level_offsets_.at(m + 1); }
  int level_size(int m) const { return level_end(m) - level_begin(m); }

private:
  int k_;
  int n_;
  std::vector<TreeVertex> vertices_;
  std::vector<int> level_offsets_;
};

// Builds V_n for the order-k tree. The volume is capped at 32 vertices;
// anything larger is useless for exhaustive enumeration.
FiniteTree build_tree(int k, int n);

// Coset classes of the index-four normal subgroup: a vertex x lands in a
// class according to (parity of the count of path labels in A, parity of
// the word length |x|), with A = {1..a_count}.
//   H0: A-count even, |x| even      H1: A-count odd, |x| even
//   H2: A-count even, |x| odd       H3: A-count odd, |x| odd
enum class CosetClass { H0, H1, H2, H3 };

struct CosetPair {
  CosetClass own;
  CosetClass parent;
};

CosetClass coset_of(const FiniteTree& tree, int v, int a_count);

// Own and parent class of a non-root vertex; the root has no parent class.
CosetPair classify_vertex(const FiniteTree& tree, int v, int a_count);

// Slot 1..8 of a weakly periodic field value for the given class pair.
// Only eight pairs can occur on the tree; the rest are a domain error.
int wp_slot(CosetClass own, CosetClass parent);

const char* to_string(CosetClass c);

}  // namespace hc
