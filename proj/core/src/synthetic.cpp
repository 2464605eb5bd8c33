#include <algorithm>
#include <numeric>

#include "ghrelax/classification.hpp"
#include "ghrelax/error.hpp"

namespace ghrelax {

namespace {

constexpr int kGenericAttempts = 1000;
constexpr double kMinGenericGap = 1e-6;

}  // namespace

FiniteMetricSpace random_generic_space(int n, std::mt19937_64& rng, int dim) {
  if (n < 1 || dim < 1) throw Error(ErrorCode::InvalidArgument, "n and dim must be positive");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // The smallest spacing among k uniform distances is of order 1/k^2.
  const double pairs = 0.5 * n * (n - 1.0);
  const double min_gap = std::min(kMinGenericGap, 1e-2 / std::max(1.0, pairs * pairs));
  for (int attempt = 0; attempt < kGenericAttempts; ++attempt) {
    Eigen::MatrixXd pts(n, dim);
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < dim; ++c) pts(i, c) = unit(rng);
    }
    FiniteMetricSpace s = from_point_cloud(pts);
    const GenericityReport g = is_generic(s);
    if (n < 2 || (g.generic && g.min_gap > min_gap)) return s;
  }
  throw Error(ErrorCode::NumericalBreakdown, "could not draw a generic space");
}

std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

SimpleGraph random_graph(int n, double edge_probability, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(edge_probability);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return SimpleGraph(n, std::move(edges));
}

LabeledSpaces synthetic_classes(const SyntheticClassConfig& cfg) {
  if (cfg.classes < 1 || cfg.per_class < 1 || cfg.points < 2) {
    throw Error(ErrorCode::InvalidArgument, "synthetic benchmark needs classes, members and at least two points");
  }
  if (!(cfg.perturbation_fraction >= 0.0 && cfg.perturbation_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "perturbation_fraction must lie in [0, 1)");
  }
  std::mt19937_64 rng(cfg.seed);
  LabeledSpaces out;
  for (int c = 0; c < cfg.classes; ++c) {
    const FiniteMetricSpace proto = random_generic_space(cfg.points, rng, cfg.dim);
    const double delta = is_generic(proto).min_gap;
    const double magnitude = cfg.perturbation_fraction * delta / (2.0 * cfg.points);
    for (int k = 0; k < cfg.per_class; ++k) {
      const FiniteMetricSpace noisy = perturb(proto, magnitude, rng());
      out.spaces.push_back(noisy.permuted(random_permutation(cfg.points, rng)));
      out.labels.push_back("class" + std::to_string(c));
    }
  }
  return out;
}

}  // namespace ghrelax
