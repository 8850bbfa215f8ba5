#include "hc/tree.hpp"

#include <string>

namespace hc {

namespace {

constexpr int kMaxVolume = 32;

long long volume_size(int k, int n) {
  // |V_n| = 1 + (k+1) * (k^n - 1) / (k - 1), with the k = 1 special case
  long long total = 1;
  long long w = k + 1;
  for (int m = 1; m <= n; ++m) {
    total += w;
    w *= k;
  }
  return total;
}

}  // namespace

FiniteTree build_tree(int k, int n) {
  if (k < 1) throw std::invalid_argument("build_tree: k must be >= 1");
  if (n < 0) throw std::invalid_argument("build_tree: n must be >= 0");
  if (volume_size(k, n) > kMaxVolume)
    throw std::length_error("build_tree: |V_n| exceeds the enumeration cap of " +
                            std::to_string(kMaxVolume) + " vertices");

  std::vector<TreeVertex> vertices(1);
  std::vector<int> offsets = {0, 1};
  int level_start = 0;
  for (int m = 1; m <= n; ++m) {
    const int level_stop = static_cast<int>(vertices.size());
    for (int p = level_start; p < level_stop; ++p) {
      // smallest labels first, skipping the parent edge label
      const int skip = vertices[p].edge_label;
      const int want = (p == 0) ? k + 1 : k;
      for (int label = 1, made = 0; made < want; ++label) {
        if (label == skip) continue;
        TreeVertex child;
        child.parent = p;
        child.depth = m;
        child.edge_label = label;
        vertices[p].children.push_back(static_cast<int>(vertices.size()));
        vertices.push_back(std::move(child));
        ++made;
      }
    }
    level_start = level_stop;
    offsets.push_back(static_cast<int>(vertices.size()));
  }
  return FiniteTree(k, n, std::move(vertices), std::move(offsets));
}

CosetClass coset_of(const FiniteTree& tree, int v, int a_count) {
  if (v < 0 || v >= tree.size())
    throw std::domain_error("coset_of: vertex out of range");
  int in_a = 0;
  int len = 0;
  for (int x = v; x != tree.root(); x = tree.vertex(x).parent) {
    if (tree.vertex(x).edge_label <= a_count) ++in_a;
    ++len;
  }
  const bool a_odd = (in_a % 2) != 0;
  const bool len_odd = (len % 2) != 0;
  if (!a_odd && !len_odd) return CosetClass::H0;
  if (a_odd && !len_odd) return CosetClass::H1;
  if (!a_odd) return CosetClass::H2;
  return CosetClass::H3;
}

CosetPair classify_vertex(const FiniteTree& tree, int v, int a_count) {
  if (v == tree.root())
    throw std::domain_error("classify_vertex: the root has no parent class");
  return CosetPair{coset_of(tree, v, a_count),
                   coset_of(tree, tree.vertex(v).parent, a_count)};
}

int wp_slot(CosetClass own, CosetClass parent) {
  using C = CosetClass;
  if (own == C::H3 && parent == C::H1) return 1;
  if (own == C::H1 && parent == C::H3) return 2;
  if (own == C::H3 && parent == C::H0) return 3;
  if (own == C::H0 && parent == C::H3) return 4;
  if (own == C::H1 && parent == C::H2) return 5;
  if (own == C::H2 && parent == C::H1) return 6;
  if (own == C::H2 && parent == C::H0) return 7;
  if (own == C::H0 && parent == C::H2) return 8;
  throw std::domain_error("wp_slot: class pair cannot occur on the tree");
}

const char* to_string(CosetClass c) {
  switch (c) {
    case CosetClass::H0: return "H0";
    case CosetClass::H1: return "H1";
    case CosetClass::H2: return "H2";
    case CosetClass::H3: return "H3";
  }
  return "?";
}

}  // namespace hc
