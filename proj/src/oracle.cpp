#include "hc/oracle.hpp"

#include <cmath>
#include <unordered_map>

namespace hc {

namespace {

void check_capacity(const FiniteTree& tree, const FertileGraph& graph) {
  const double states = static_cast<double>(graph.num_states());
  if (tree.size() * std::log(states) > std::log(1e8))
    throw std::length_error(
        "enumeration capacity exceeded: num_states^|V_n| > 1e8");
}

void check_boundary(const FiniteTree& tree, const FertileGraph& graph,
                    const LevelWeights& boundary, int level) {
  if (boundary.level != level)
    throw std::invalid_argument("boundary weights are for the wrong level");
  if (boundary.w.rows() != tree.level_size(level) ||
      boundary.w.cols() != graph.num_states())
    throw std::invalid_argument("boundary weight matrix has the wrong shape");
  if (!(boundary.w.array() > 0.0).all())
    throw std::domain_error("boundary weights must be positive");
}

// lambda^{#sigma} * prod over W_level of w(x, sigma(x))
double config_weight(const FiniteTree& tree, double lambda,
                     const LevelWeights& boundary, int level,
                     const Configuration& sigma) {
  int occupied = 0;
  for (std::int8_t s : sigma) occupied += (s >= 1);
  double weight = std::pow(lambda, occupied);
  const int begin = tree.level_begin(level);
  const int end = tree.level_end(level);
  for (int v = begin; v < end; ++v) weight *= boundary.w(v - begin, sigma[v]);
  return weight;
}

}  // namespace

std::uint64_t count_admissible(const FiniteTree& tree, const FertileGraph& graph) {
  const int m = graph.num_states();
  using Vec = Eigen::Matrix<std::uint64_t, Eigen::Dynamic, 1>;
  if (tree.depth() == 0) return static_cast<std::uint64_t>(m);

  const Eigen::MatrixXi& a = graph.incidence();
  Vec f = Vec::Ones(m);  // admissible labelings of a hanging subtree by root state
  auto contract = [&](const Vec& g, int arity) {
    Vec out = Vec::Zero(m);
    for (int c = 0; c < m; ++c) {
      std::uint64_t sum = 0;
      for (int d = 0; d < m; ++d)
        if (a(c, d) == 1) sum += g(d);
      std::uint64_t p = 1;
      for (int e = 0; e < arity; ++e) p *= sum;
      out(c) = p;
    }
    return out;
  };
  for (int depth = 1; depth < tree.depth(); ++depth) f = contract(f, tree.order());
  return contract(f, tree.order() + 1).sum();
}

void for_each_admissible(const FiniteTree& tree, const FertileGraph& graph,
                         const std::function<void(const Configuration&)>& fn) {
  check_capacity(tree, graph);
  const int m = graph.num_states();
  const Eigen::MatrixXi& a = graph.incidence();
  Configuration sigma(tree.size(), 0);

  // Parents precede children in the layout, so admissibility of sigma[v]
  // against the already-assigned parent is the only check needed.
  auto recurse = [&](auto&& self, int v) -> void {
    if (v == tree.size()) {
      fn(sigma);
      return;
    }
    const int parent = tree.vertex(v).parent;
    for (int s = 0; s < m; ++s) {
      if (parent >= 0 && a(sigma[parent], s) != 1) continue;
      sigma[v] = static_cast<std::int8_t>(s);
      self(self, v + 1);
    }
  };
  recurse(recurse, 0);
}

std::vector<Configuration> enumerate_admissible(const FiniteTree& tree,
                                                const FertileGraph& graph) {
  std::vector<Configuration> out;
  for_each_admissible(tree, graph,
                      [&](const Configuration& sigma) { out.push_back(sigma); });
  return out;
}

bool is_admissible(const FiniteTree& tree, const FertileGraph& graph,
                   const Configuration& sigma) {
  if (static_cast<int>(sigma.size()) != tree.size())
    throw std::invalid_argument("configuration size does not match the tree");
  for (int v = 1; v < tree.size(); ++v)
    if (!graph.admissible(sigma[tree.vertex(v).parent], sigma[v])) return false;
  return true;
}

double partition_function(const FiniteTree& tree, const FertileGraph& graph,
                          double lambda, const LevelWeights& boundary) {
  if (lambda <= 0) throw std::domain_error("lambda must be positive");
  check_boundary(tree, graph, boundary, tree.depth());
  double z = 0;
  for_each_admissible(tree, graph, [&](const Configuration& sigma) {
    z += config_weight(tree, lambda, boundary, tree.depth(), sigma);
  });
  return z;
}

double measure_mu_n(const FiniteTree& tree, const FertileGraph& graph,
                    double lambda, const LevelWeights& boundary,
                    const Configuration& sigma) {
  if (lambda <= 0) throw std::domain_error("lambda must be positive");
  check_boundary(tree, graph, boundary, tree.depth());
  if (!is_admissible(tree, graph, sigma))
    throw std::domain_error("measure_mu_n: configuration is not admissible");
  const double z = partition_function(tree, graph, lambda, boundary);
  return config_weight(tree, lambda, boundary, tree.depth(), sigma) / z;
}

double check_consistency(const FiniteTree& tree, const FertileGraph& graph,
                         double lambda, const LevelWeights& boundary_n,
                         const LevelWeights& boundary_nm1) {
  const int n = tree.depth();
  if (n < 1) throw std::invalid_argument("check_consistency needs n >= 1");
  if (lambda <= 0) throw std::domain_error("lambda must be positive");
  check_boundary(tree, graph, boundary_n, n);

  // V_{n-1} occupies the same leading index range in its own tree, so the
  // restriction of an admissible sigma_n is just its prefix.
  const FiniteTree inner = build_tree(tree.order(), n - 1);
  check_boundary(inner, graph, boundary_nm1, n - 1);
  const int inner_size = inner.size();
  if (inner_size * 2 > 64)
    throw std::length_error("check_consistency: inner volume too large to key");

  auto prefix_key = [&](const Configuration& sigma) {
    std::uint64_t key = 0;
    for (int v = 0; v < inner_size; ++v)
      key = (key << 2) | static_cast<std::uint64_t>(sigma[v]);
    return key;
  };

  std::unordered_map<std::uint64_t, double> pushed;
  double z_n = 0;
  for_each_admissible(tree, graph, [&](const Configuration& sigma) {
    const double w = config_weight(tree, lambda, boundary_n, n, sigma);
    z_n += w;
    pushed[prefix_key(sigma)] += w;
  });

  double z_inner = 0;
  std::vector<std::pair<std::uint64_t, double>> inner_weights;
  for_each_admissible(inner, graph, [&](const Configuration& sigma) {
    const double w = config_weight(inner, lambda, boundary_nm1, n - 1, sigma);
    z_inner += w;
    inner_weights.emplace_back(prefix_key(sigma), w);
  });

  double residual = 0;
  for (const auto& [key, w] : inner_weights) {
    const auto it = pushed.find(key);
    const double lhs = (it == pushed.end()) ? 0.0 : it->second / z_n;
    residual = std::max(residual, std::abs(lhs - w / z_inner));
  }
  return residual;
}

Eigen::VectorXd weakly_periodic_field(const FiniteTree& tree, int level,
                                      const Eigen::Matrix<double, 8, 1>& z,
                                      int a_count) {
  if (level < 1 || level > tree.depth())
    throw std::domain_error("weakly_periodic_field: level must be in 1..n");
  if (a_count < 1 || a_count > tree.order() + 1)
    throw std::domain_error("weakly_periodic_field: need 1 <= |A| <= k+1");
  const int begin = tree.level_begin(level);
  Eigen::VectorXd field(tree.level_size(level));
  for (int v = begin; v < tree.level_end(level); ++v) {
    const CosetPair pair = classify_vertex(tree, v, a_count);
    field(v - begin) = z(wp_slot(pair.own, pair.parent) - 1);
  }
  return field;
}

LevelWeights two_state_weights(const FiniteTree& tree, int level,
                               const Eigen::VectorXd& zx) {
  if (zx.size() != tree.level_size(level))
    throw std::invalid_argument("two_state_weights: field size mismatch");
  LevelWeights out;
  out.level = level;
  out.w.resize(zx.size(), 2);
  out.w.col(0).setOnes();
  out.w.col(1) = zx;
  return out;
}

LevelWeights two_state_weights(const FiniteTree& tree, int level, double z) {
  return two_state_weights(
      tree, level, Eigen::VectorXd::Constant(tree.level_size(level), z));
}

LevelWeights three_state_weights(const FiniteTree& tree, int level, double z1,
                                 double z2, double lambda) {
  if (lambda <= 0) throw std::domain_error("lambda must be positive");
  LevelWeights out;
  out.level = level;
  out.w.resize(tree.level_size(level), 3);
  out.w.col(0).setOnes();
  out.w.col(1).setConstant(z1 / lambda);
  out.w.col(2).setConstant(z2 / lambda);
  return out;
}

}  // namespace hc
